/**
 * @file  linalg.hpp
 * @brief Exact linear algebra over the expression field: rank, determinant,
 *        linear solves. Zero tests are structural first (canonical forms make
 *        every polynomial/rational zero structural) with a randomized
 *        fallback for transcendental-atom identities; callers can observe
 *        whether the fallback participated.
 */
#pragma once

#include "geofield/symexpr.hpp"

#include <vector>

namespace geofield {

using ExprMatrix = std::vector<std::vector<Expr>>;

/// Rank of a matrix of expressions. Sets *probabilistic when a sampling-based
/// zero decision participated.
int symbolic_rank(ExprMatrix m, bool* probabilistic = nullptr);

/// Determinant of a square matrix (fraction-free Bareiss elimination).
Expr determinant(const ExprMatrix& m);

/// Solve the square system A x = b over the expression field. Returns false
/// when A is (detectably) singular.
bool solve_linear(ExprMatrix a, std::vector<Expr> b, std::vector<Expr>& x,
                  bool* probabilistic = nullptr);

}  // namespace geofield
