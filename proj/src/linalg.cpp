/**
 * @file  linalg.cpp
 * @brief Exact elimination routines over the expression field.
 */
#include "geofield/linalg.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>

namespace geofield {

namespace {

// A pivot candidate must be nonzero as a function, not merely as a canonical
// form. Structural nonzero + "probably zero" means a transcendental identity
// cancels it; such entries are treated as zero and the caller is told a
// randomized decision was taken.
bool entry_is_zero(const Expr& e, bool* probabilistic) {
  if (e.is_zero()) return true;
  if (is_probably_zero(e)) {
    if (probabilistic) *probabilistic = true;
    return true;
  }
  return false;
}

}  // namespace

int symbolic_rank(ExprMatrix m, bool* probabilistic) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  int rank = 0;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = pivot_row; r < rows; ++r) {
      if (!entry_is_zero(m[r][col], probabilistic)) {
        sel = r;
        break;
      }
    }
    if (sel == rows) continue;
    std::swap(m[sel], m[pivot_row]);
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      const Expr factor = m[r][col] / m[pivot_row][col];
      for (std::size_t c = col; c < cols; ++c) {
        m[r][c] = m[r][c] - factor * m[pivot_row][c];
      }
    }
    ++pivot_row;
    ++rank;
  }
  return rank;
}

Expr determinant(const ExprMatrix& m) {
  const std::size_t dim = m.size();
  for (const auto& row : m) {
    if (row.size() != dim) throw std::invalid_argument("determinant: matrix must be square");
  }
  if (dim == 0) return Expr::integer(1);
  // Fraction-free Bareiss elimination; divisions are exact in the expression
  // field, so the final pivot is the determinant itself.
  ExprMatrix a = m;
  Expr prev = Expr::integer(1);
  int sign = 1;
  for (std::size_t p = 0; p + 1 < dim; ++p) {
    if (a[p][p].is_zero()) {
      std::size_t sel = dim;
      for (std::size_t r = p + 1; r < dim; ++r) {
        if (!a[r][p].is_zero()) {
          sel = r;
          break;
        }
      }
      if (sel == dim) return Expr::integer(0);
      std::swap(a[sel], a[p]);
      sign = -sign;
    }
    for (std::size_t r = p + 1; r < dim; ++r) {
      for (std::size_t c = p + 1; c < dim; ++c) {
        a[r][c] = (a[p][p] * a[r][c] - a[r][p] * a[p][c]) / prev;
      }
      a[r][p] = Expr::integer(0);
    }
    prev = a[p][p];
  }
  Expr det = a[dim - 1][dim - 1];
  return sign < 0 ? -det : det;
}

bool solve_linear(ExprMatrix a, std::vector<Expr> b, std::vector<Expr>& x,
                  bool* probabilistic) {
  const std::size_t dim = a.size();
  if (b.size() != dim) throw std::invalid_argument("solve_linear: size mismatch");
  for (const auto& row : a) {
    if (row.size() != dim) throw std::invalid_argument("solve_linear: matrix must be square");
  }
  for (std::size_t p = 0; p < dim; ++p) {
    std::size_t sel = dim;
    for (std::size_t r = p; r < dim; ++r) {
      if (!entry_is_zero(a[r][p], probabilistic)) {
        sel = r;
        break;
      }
    }
    if (sel == dim) return false;
    std::swap(a[sel], a[p]);
    std::swap(b[sel], b[p]);
    for (std::size_t r = p + 1; r < dim; ++r) {
      if (a[r][p].is_zero()) continue;
      const Expr factor = a[r][p] / a[p][p];
      for (std::size_t c = p; c < dim; ++c) {
        a[r][c] = a[r][c] - factor * a[p][c];
      }
      b[r] = b[r] - factor * b[p];
    }
  }
  x.assign(dim, Expr::integer(0));
  for (std::size_t rp = dim; rp-- > 0;) {
    Expr acc = b[rp];
    for (std::size_t c = rp + 1; c < dim; ++c) {
      acc = acc - a[rp][c] * x[c];
    }
    x[rp] = acc / a[rp][rp];
  }
  return true;
}

}  // namespace geofield
