/**
 * @file  solver.hpp
 * @brief Numerical construction and verification of integral sections of
 *        k-vector fields on rectangular grids: classic 4-stage one-step
 *        integration axis by axis, integrability diagnostics through
 *        commutator sampling, and finite-difference residual evaluation of
 *        jet-alphabet equation sets.
 */
#pragma once

#include "geofield/forms.hpp"
#include "geofield/hamiltonian.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace geofield {

/// One grid axis: the range [0, length] divided into `steps` equal steps.
struct AxisSpec {
  double length = 1.0;
  int steps = 100;
  double h() const { return length / steps; }
};

/// Rectangular grid layout, one axis per base direction.
struct GridSpec {
  std::vector<AxisSpec> axes;
};

/// Discrete section values on a rectangular grid. Nodes are stored row-major
/// with the last axis fastest; base values are implicit from node indices.
struct GridSolution {
  int k = 0;
  FrameRef frame;                    ///< frame of the integrated field
  std::vector<AxisSpec> axes;        ///< one per base direction
  std::vector<std::string> coords;   ///< non-base coordinate names, frame order
  std::vector<int> extents;          ///< nodes per axis (steps + 1)
  std::vector<double> values;        ///< node-major, then coordinate
  double commutator_max = 0.0;       ///< max |[X_A,X_B]| sampled on the grid
  bool integral_section = false;     ///< commutator_max <= 1e-6

  std::size_t node_count() const;
  std::size_t flat_index(const std::vector<int>& idx) const;
  double value_at(const std::vector<int>& idx, int coord) const;
  double base_value(int axis, int step) const;  ///< axis and step 0-based
};

/// Integrates the k-vector field from the initial state along axis t¹, then
/// along t² from every t¹-line, and so on (or in the given 1-based axis
/// order). The initial assignment must provide every non-base coordinate.
/// Frames carrying base coordinates must have the base block pinned to
/// δᴮ_A. Commutators of the factors are sampled at grid nodes as an
/// integrability diagnostic. Throws Error on non-finite states or when a
/// step's doubling error estimate exceeds 1e3·h⁵·scale.
GridSolution integrate(const KVectorField& x, const Assignment& x0, const GridSpec& grid,
                       std::vector<int> axis_order = {});

/// Max |coefficient| of any pairwise commutator [X_A, X_B] over `samples`
/// uniform draws from the box [lo, hi] (per coordinate; missing coordinates
/// default to [-1, 1]). Deterministic for a fixed seed.
double commutator_residual(const KVectorField& x, const Assignment& lo, const Assignment& hi,
                           int samples);

/// Max |residual| of a jet-alphabet equation set over all grid nodes, with
/// jets from 2nd-order stencils (central inside, one-sided at boundaries;
/// second jets by composition). Requires at least 3 nodes per axis.
double grid_residual(const EquationSet& eqs, const GridSolution& sol);

/// CSV rendering: header t1,…,tk,<coords>; one row per node, row-major with
/// the last axis fastest; values printed with %.17g.
void write_csv(const GridSolution& sol, std::ostream& os);

}  // namespace geofield
