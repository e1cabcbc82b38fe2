/**
 * @file  model.hpp
 * @brief Model-file ingestion: a flat key/value + table (TOML subset) format
 *        describing a field theory, optional k-vector component overrides,
 *        candidate symbolic sections, and a solver grid.
 */
#pragma once

#include "geofield/hamiltonian.hpp"
#include "geofield/solver.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace geofield {

/// A parsed and validated model file.
struct ModelFile {
  FieldTheory system;
  /// Free-component overrides "X{A}_{coord}" -> expression applied on top of
  /// the default gauge representative before solving.
  std::map<std::string, Expr> components;
  /// Named candidate sections ([section] or [section.<name>] tables).
  std::vector<std::pair<std::string, SymbolicSection>> sections;
  /// Solver grid; defaults to length 1.0 and 100 steps per axis.
  GridSpec grid;
  bool has_grid = false;
  /// Initial state for `solve` ([x0] table).
  Assignment x0;
};

/// Parses model text. `origin` names the source in error messages, which are
/// prefixed "<origin>:<line>:" for syntax and value errors.
ModelFile parse_model(const std::string& text, const std::string& origin = "<memory>");

/// Reads and parses a model file from disk.
ModelFile load_model(const std::string& path);

}  // namespace geofield
