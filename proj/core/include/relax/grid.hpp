#pragma once

#include <cstddef>

#include "relax/errors.hpp"

namespace relax {

/// Uniform 1D grid on [a, b] with n cells, n+1 nodes. u lives on nodes;
/// gradients, d and b live on cells.
struct Grid1D {
  double a = 0.0;
  double b = 1.0;
  std::size_t n = 1;  ///< number of cells

  Grid1D() = default;
  Grid1D(double a_, double b_, std::size_t n_) : a(a_), b(b_), n(n_) {
    if (!(a < b) || n < 1) throw InvalidInputError("Grid1D: need a < b and n >= 1");
  }

  double dx() const { return (b - a) / static_cast<double>(n); }
  std::size_t nodes() const { return n + 1; }
  double node(std::size_t i) const { return a + dx() * static_cast<double>(i); }
  double mid(std::size_t c) const { return a + dx() * (static_cast<double>(c) + 0.5); }
};

}  // namespace relax
