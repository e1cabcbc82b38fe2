#include "geofield/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace geofield {

namespace {

std::vector<int> non_base_indices(const CoordinateFrame& frame) {
  std::vector<int> out;
  for (int i = 0; i < frame.dim(); ++i) {
    if (frame.coord(i).role != Role::Base) out.push_back(i);
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Checks the base block of a factor: on frames with base coordinates the
/// component along tᴮ must be the constant δᴮ_A.
void require_base_block(const KVectorField& x) {
  const CoordinateFrame& frame = *x.frame();
  std::vector<int> base = frame.indices_with_role(Role::Base);
  for (int a = 1; a <= x.k(); ++a) {
    for (std::size_t b = 0; b < base.size(); ++b) {
      const Expr& comp = x.factor(a).component(base[b]);
      Expr want = Expr::integer(static_cast<int>(b) + 1 == a ? 1 : 0);
      if (!(comp - want).is_zero()) {
        throw Error("base component of factor " + std::to_string(a) + " along " +
                    frame.coord(base[b]).name + " must be " + want.str() + ", got " + comp.str());
      }
    }
  }
}

struct Stepper {
  const VectorField& field;
  const CoordinateFrame& frame;
  const std::vector<int>& state_idx;  // frame indices of the state coordinates
  int axis;                           // 0-based axis being integrated

  /// dstate/ds at base point `t` (length k) and state `y`.
  std::vector<double> rhs(const std::vector<double>& t, const std::vector<double>& y) const {
    Assignment a;
    for (std::size_t b = 0; b < t.size(); ++b) a["t" + std::to_string(b + 1)] = t[b];
    for (std::size_t i = 0; i < state_idx.size(); ++i) a[frame.coord(state_idx[i]).name] = y[i];
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < state_idx.size(); ++i) {
      out[i] = eval_expr(field.component(state_idx[i]), a);
    }
    return out;
  }

  std::vector<double> rk4(const std::vector<double>& t0, const std::vector<double>& y0,
                          double h) const {
    auto shifted = [&](double ds) {
      std::vector<double> t = t0;
      t[static_cast<std::size_t>(axis)] += ds;
      return t;
    };
    auto axpy = [&](const std::vector<double>& y, double c, const std::vector<double>& k) {
      std::vector<double> out = y;
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * k[i];
      return out;
    };
    std::vector<double> k1 = rhs(t0, y0);
    std::vector<double> k2 = rhs(shifted(h / 2), axpy(y0, h / 2, k1));
    std::vector<double> k3 = rhs(shifted(h / 2), axpy(y0, h / 2, k2));
    std::vector<double> k4 = rhs(shifted(h), axpy(y0, h, k3));
    std::vector<double> y = y0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
    return y;
  }

  /// One accepted step: the classic 4-stage value, guarded by a step-doubling
  /// error estimate against 1e3·h⁵·scale.
  std::vector<double> step(const std::vector<double>& t0, const std::vector<double>& y0,
                           double h) const {
    std::vector<double> full = rk4(t0, y0, h);
    std::vector<double> half = rk4(t0, y0, h / 2);
    std::vector<double> mid_t = t0;
    mid_t[static_cast<std::size_t>(axis)] += h / 2;
    std::vector<double> twice = rk4(mid_t, half, h / 2);
    double err = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < full.size(); ++i) {
      if (!std::isfinite(full[i]) || !std::isfinite(twice[i])) {
        throw Error("non-finite state while integrating axis t" + std::to_string(axis + 1) +
                    " near t" + std::to_string(axis + 1) + " = " +
                    format_double(t0[static_cast<std::size_t>(axis)]));
      }
      err = std::max(err, std::abs(full[i] - twice[i]));
      scale = std::max(scale, std::abs(full[i]));
    }
    double tol = 1e3 * std::pow(h, 5) * scale;
    if (err > tol) {
      throw Error("integration step rejected on axis t" + std::to_string(axis + 1) + " at t" +
                  std::to_string(axis + 1) + " = " +
                  format_double(t0[static_cast<std::size_t>(axis)]) + ": error estimate " +
                  format_double(err) + " exceeds " + format_double(tol));
    }
    return full;
  }
};

/// Max |coefficient| over all pairwise commutators at the given assignments.
double max_commutator_at(const KVectorField& x, const std::vector<Assignment>& points) {
  double worst = 0.0;
  for (int a = 1; a <= x.k(); ++a) {
    for (int b = a + 1; b <= x.k(); ++b) {
      VectorField bracket = lie_bracket(x.factor(a), x.factor(b));
      for (const Expr& comp : bracket.components()) {
        if (comp.is_zero()) continue;
        for (const Assignment& pt : points) {
          worst = std::max(worst, std::abs(eval_expr(comp, pt)));
        }
      }
    }
  }
  return worst;
}

/// 2nd-order first-derivative stencil along one axis of a per-coordinate
/// grid: central inside, one-sided at the two boundary nodes.
std::vector<double> differentiate_axis(const GridSolution& sol, const std::vector<double>& f,
                                       int axis) {
  const double h = sol.axes[static_cast<std::size_t>(axis)].h();
  std::vector<double> out(f.size());
  const int n = sol.extents[static_cast<std::size_t>(axis)];
  // Stride of one step along `axis` in the flat row-major layout.
  std::size_t stride = 1;
  for (std::size_t b = static_cast<std::size_t>(axis) + 1; b < sol.extents.size(); ++b) {
    stride *= static_cast<std::size_t>(sol.extents[b]);
  }
  std::vector<int> idx(sol.extents.size(), 0);
  const std::size_t total = sol.node_count();
  for (std::size_t flat = 0; flat < total; ++flat) {
    const int i = idx[static_cast<std::size_t>(axis)];
    if (i == 0) {
      out[flat] = (-3 * f[flat] + 4 * f[flat + stride] - f[flat + 2 * stride]) / (2 * h);
    } else if (i == n - 1) {
      out[flat] = (3 * f[flat] - 4 * f[flat - stride] + f[flat - 2 * stride]) / (2 * h);
    } else {
      out[flat] = (f[flat + stride] - f[flat - stride]) / (2 * h);
    }
    for (int b = static_cast<int>(idx.size()) - 1; b >= 0; --b) {
      if (++idx[static_cast<std::size_t>(b)] < sol.extents[static_cast<std::size_t>(b)]) break;
      idx[static_cast<std::size_t>(b)] = 0;
    }
  }
  return out;
}

}  // namespace

std::size_t GridSolution::node_count() const {
  std::size_t total = 1;
  for (int e : extents) total *= static_cast<std::size_t>(e);
  return total;
}

std::size_t GridSolution::flat_index(const std::vector<int>& idx) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < extents.size(); ++a) {
    flat = flat * static_cast<std::size_t>(extents[a]) + static_cast<std::size_t>(idx[a]);
  }
  return flat;
}

double GridSolution::value_at(const std::vector<int>& idx, int coord) const {
  return values[flat_index(idx) * coords.size() + static_cast<std::size_t>(coord)];
}

double GridSolution::base_value(int axis, int step) const {
  return step * axes[static_cast<std::size_t>(axis)].h();
}

GridSolution integrate(const KVectorField& x, const Assignment& x0, const GridSpec& grid,
                       std::vector<int> axis_order) {
  const CoordinateFrame& frame = *x.frame();
  const int k = x.k();
  if (static_cast<int>(grid.axes.size()) != k) {
    throw Error("grid needs " + std::to_string(k) + " axes, got " +
                std::to_string(grid.axes.size()));
  }
  for (const AxisSpec& ax : grid.axes) {
    if (!(ax.length > 0) || ax.steps < 1) throw Error("grid axes need positive length and steps");
  }
  if (axis_order.empty()) {
    for (int a = 1; a <= k; ++a) axis_order.push_back(a);
  }
  {
    std::vector<int> sorted = axis_order;
    std::sort(sorted.begin(), sorted.end());
    for (int a = 1; a <= k; ++a) {
      if (static_cast<int>(sorted.size()) < a || sorted[static_cast<std::size_t>(a - 1)] != a) {
        throw Error("axis order must be a permutation of 1.." + std::to_string(k));
      }
    }
  }
  require_base_block(x);

  GridSolution sol;
  sol.k = k;
  sol.frame = x.frame();
  sol.axes = grid.axes;
  std::vector<int> state_idx = non_base_indices(frame);
  for (int i : state_idx) sol.coords.push_back(frame.coord(i).name);
  for (const AxisSpec& ax : grid.axes) sol.extents.push_back(ax.steps + 1);
  sol.values.assign(sol.node_count() * sol.coords.size(), 0.0);

  std::vector<double> origin(state_idx.size());
  for (std::size_t i = 0; i < state_idx.size(); ++i) {
    auto it = x0.find(sol.coords[i]);
    if (it == x0.end()) throw Error("initial state is missing coordinate " + sol.coords[i]);
    origin[i] = it->second;
  }
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  auto store = [&](const std::vector<double>& y) {
    std::size_t flat = sol.flat_index(idx) * sol.coords.size();
    std::copy(y.begin(), y.end(), sol.values.begin() + static_cast<std::ptrdiff_t>(flat));
  };
  store(origin);

  // Sweep axes in order: each pass extends the filled subgrid of the already
  // processed axes along one more axis, line by line.
  std::vector<int> processed;
  for (int axis1 : axis_order) {
    const int axis = axis1 - 1;
    Stepper stepper{x.factor(axis1), frame, state_idx, axis};
    const double h = grid.axes[static_cast<std::size_t>(axis)].h();
    // Enumerate start nodes: all indices over the processed axes, zero elsewhere.
    std::vector<int> cursor(processed.size(), 0);
    bool done_lines = false;
    while (!done_lines) {
      std::fill(idx.begin(), idx.end(), 0);
      for (std::size_t j = 0; j < processed.size(); ++j) {
        idx[static_cast<std::size_t>(processed[j] - 1)] = cursor[j];
      }
      std::vector<double> y(state_idx.size());
      std::vector<double> t(static_cast<std::size_t>(k));
      for (int a = 0; a < k; ++a) t[static_cast<std::size_t>(a)] = sol.base_value(a, idx[static_cast<std::size_t>(a)]);
      {
        std::size_t flat = sol.flat_index(idx) * sol.coords.size();
        std::copy(sol.values.begin() + static_cast<std::ptrdiff_t>(flat),
                  sol.values.begin() + static_cast<std::ptrdiff_t>(flat + sol.coords.size()),
                  y.begin());
      }
      for (int step = 1; step <= grid.axes[static_cast<std::size_t>(axis)].steps; ++step) {
        t[static_cast<std::size_t>(axis)] = sol.base_value(axis, step - 1);
        y = stepper.step(t, y, h);
        idx[static_cast<std::size_t>(axis)] = step;
        store(y);
      }
      // Advance the cursor over the processed axes.
      done_lines = true;
      for (std::size_t j = processed.size(); j-- > 0;) {
        if (++cursor[j] < sol.extents[static_cast<std::size_t>(processed[j] - 1)]) {
          done_lines = false;
          break;
        }
        cursor[j] = 0;
      }
    }
    processed.push_back(axis1);
  }

  // Integrability diagnostic: sample the pairwise commutators at up to 32
  // grid nodes spread deterministically over the computed solution.
  std::vector<Assignment> points;
  {
    const std::size_t total = sol.node_count();
    const std::size_t want = std::min<std::size_t>(total, 32);
    SampleRng rng(global_seed() ^ 0x636f6d6d75746174ULL);
    for (std::size_t s = 0; s < want; ++s) {
      std::size_t flat =
          want == total ? s : static_cast<std::size_t>(rng.uniform(0.0, static_cast<double>(total)));
      flat = std::min(flat, total - 1);
      std::vector<int> node(static_cast<std::size_t>(k));
      std::size_t rest = flat;
      for (int a = k - 1; a >= 0; --a) {
        node[static_cast<std::size_t>(a)] = static_cast<int>(rest % static_cast<std::size_t>(sol.extents[static_cast<std::size_t>(a)]));
        rest /= static_cast<std::size_t>(sol.extents[static_cast<std::size_t>(a)]);
      }
      Assignment pt;
      for (int a = 0; a < k; ++a) {
        pt["t" + std::to_string(a + 1)] = sol.base_value(a, node[static_cast<std::size_t>(a)]);
      }
      for (std::size_t i = 0; i < sol.coords.size(); ++i) {
        pt[sol.coords[i]] = sol.value_at(node, static_cast<int>(i));
      }
      points.push_back(std::move(pt));
    }
  }
  sol.commutator_max = max_commutator_at(x, points);
  sol.integral_section = sol.commutator_max <= 1e-6;
  return sol;
}

double commutator_residual(const KVectorField& x, const Assignment& lo, const Assignment& hi,
                           int samples) {
  if (samples < 1) throw Error("commutator_residual needs at least one sample");
  const CoordinateFrame& frame = *x.frame();
  SampleRng rng(global_seed() ^ 0x626f78636f6d6dULL);
  std::vector<Assignment> points;
  for (int s = 0; s < samples; ++s) {
    Assignment pt;
    for (const Coordinate& c : frame.coords()) {
      auto lit = lo.find(c.name);
      auto hit = hi.find(c.name);
      double a = lit == lo.end() ? -1.0 : lit->second;
      double b = hit == hi.end() ? 1.0 : hit->second;
      pt[c.name] = rng.uniform(a, b);
    }
    points.push_back(std::move(pt));
  }
  return max_commutator_at(x, points);
}

double grid_residual(const EquationSet& eqs, const GridSolution& sol) {
  if (eqs.alphabet != Alphabet::Jet) {
    throw Error("grid_residual needs a jet-alphabet equation set");
  }
  for (int e : sol.extents) {
    if (e < 3) throw Error("grid_residual needs at least 3 nodes per axis");
  }
  const std::size_t total = sol.node_count();
  const std::size_t nc = sol.coords.size();
  const int k = sol.k;

  // Per-coordinate grids, then first jets along every axis, then second jets
  // of configuration coordinates by composing first-derivative stencils.
  std::vector<std::vector<double>> field(nc, std::vector<double>(total));
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (std::size_t c = 0; c < nc; ++c) field[c][flat] = sol.values[flat * nc + c];
  }
  std::vector<std::vector<std::vector<double>>> first(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    for (int a = 0; a < k; ++a) first[c].push_back(differentiate_axis(sol, field[c], a));
  }
  const CoordinateFrame& frame = *sol.frame;
  std::map<std::string, std::vector<double>> jets;
  for (std::size_t c = 0; c < nc; ++c) {
    for (int a = 0; a < k; ++a) {
      jets[jet_symbol(sol.coords[c], a + 1)] = first[c][static_cast<std::size_t>(a)];
    }
    const Coordinate& coord = frame.coord(frame.index_of(sol.coords[c]));
    if (coord.role == Role::Config) {
      for (int a = 1; a <= k; ++a) {
        for (int b = a; b <= k; ++b) {
          jets[second_jet_symbol(coord.i, a, b)] =
              differentiate_axis(sol, first[c][static_cast<std::size_t>(b - 1)], a - 1);
        }
      }
    }
  }

  double worst = 0.0;
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Assignment a;
    for (int ax = 0; ax < k; ++ax) {
      a["t" + std::to_string(ax + 1)] = sol.base_value(ax, idx[static_cast<std::size_t>(ax)]);
    }
    for (std::size_t c = 0; c < nc; ++c) a[sol.coords[c]] = field[c][flat];
    for (const auto& [name, grid] : jets) a[name] = grid[flat];
    for (const Equation& eq : eqs.equations) {
      double r = eval_expr(eq.residual, a);
      if (!std::isfinite(r)) throw Error("non-finite residual for " + eq.label);
      worst = std::max(worst, std::abs(r));
    }
    for (int b = k - 1; b >= 0; --b) {
      if (++idx[static_cast<std::size_t>(b)] < sol.extents[static_cast<std::size_t>(b)]) break;
      idx[static_cast<std::size_t>(b)] = 0;
    }
  }
  return worst;
}

void write_csv(const GridSolution& sol, std::ostream& os) {
  std::ostringstream line;
  for (int a = 1; a <= sol.k; ++a) {
    if (a > 1) line << ',';
    line << 't' << a;
  }
  for (const std::string& c : sol.coords) line << ',' << c;
  os << line.str() << '\n';
  const std::size_t total = sol.node_count();
  std::vector<int> idx(static_cast<std::size_t>(sol.k), 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::string row;
    for (int a = 0; a < sol.k; ++a) {
      if (a > 0) row += ',';
      row += format_double(sol.base_value(a, idx[static_cast<std::size_t>(a)]));
    }
    for (std::size_t c = 0; c < sol.coords.size(); ++c) {
      row += ',';
      row += format_double(sol.values[flat * sol.coords.size() + c]);
    }
    os << row << '\n';
    for (int b = sol.k - 1; b >= 0; --b) {
      if (++idx[static_cast<std::size_t>(b)] < sol.extents[static_cast<std::size_t>(b)]) break;
      idx[static_cast<std::size_t>(b)] = 0;
    }
  }
}

}  // namespace geofield
