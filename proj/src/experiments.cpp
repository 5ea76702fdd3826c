#include "rabi_qpt/experiments.hpp"

#include "rabi_qpt/errors.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

namespace rabi_qpt {

namespace {

struct QuantityName {
  Quantity q;
  const char* name;
};

constexpr std::array<QuantityName, 7> kQuantityNames{{
    {Quantity::psi_q_numeric, "psi_q_numeric"},
    {Quantity::psi_q_analytic, "psi_q_analytic"},
    {Quantity::entropy, "entropy"},
    {Quantity::gap, "gap"},
    {Quantity::coherence, "coherence"},
    {Quantity::ground_energy, "ground_energy"},
    {Quantity::Omega_over_omega_n, "Omega_over_omega_n"},
}};

struct GridPoint {
  double axis1;
  std::optional<double> axis2;
  int n;
  ModelParams params;
};

std::vector<SweepRow> evaluate_grid_point(const GridPoint& gp, const SweepSpec& spec) {
  std::vector<SweepRow> rows;
  rows.reserve(spec.quantities.size());
  auto emit_null = [&](RowFlag flag, const std::string& reason) {
    for (Quantity q : spec.quantities) {
      rows.push_back({gp.axis1, gp.axis2, gp.n, q, std::nullopt, flag, 0.0, reason});
    }
  };
  try {
    const PointSolution sol = solve_point(gp.params, HilbertConfig(spec.fock_dim));
    const RowFlag flag =
        sol.edge_weight > kTruncationThreshold ? RowFlag::truncation : RowFlag::ok;
    for (Quantity q : spec.quantities) {
      rows.push_back({gp.axis1, gp.axis2, gp.n, q, evaluate_quantity(sol, q), flag,
                      sol.max_residual, flag == RowFlag::truncation ? "fock_dim too small" : ""});
    }
  } catch (const FrameUndefined& e) {
    emit_null(RowFlag::frame_undefined, e.what());
  } catch (const Error& e) {
    emit_null(RowFlag::error, e.what());
  }
  return rows;
}

double golden_section(const std::function<double(double)>& f, double a, double b,
                      double resolution) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > resolution) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

std::string to_string(Quantity q) {
  for (const auto& entry : kQuantityNames) {
    if (entry.q == q) return entry.name;
  }
  return "unknown";
}

Quantity parse_quantity(const std::string& name) {
  for (const auto& entry : kQuantityNames) {
    if (name == entry.name) return entry.q;
  }
  throw InvalidArgument("unknown quantity '" + name + "'");
}

const std::vector<Quantity>& all_quantities() {
  static const std::vector<Quantity> all = [] {
    std::vector<Quantity> v;
    for (const auto& entry : kQuantityNames) v.push_back(entry.q);
    return v;
  }();
  return all;
}

std::string to_string(AxisParameter a) {
  switch (a) {
    case AxisParameter::chi: return "chi";
    case AxisParameter::g0_over_omega: return "g0_over_omega";
    case AxisParameter::Omega_over_omega: return "Omega_over_omega";
  }
  return "unknown";
}

AxisParameter parse_axis_parameter(const std::string& name) {
  if (name == "chi") return AxisParameter::chi;
  if (name == "g0_over_omega") return AxisParameter::g0_over_omega;
  if (name == "Omega_over_omega") return AxisParameter::Omega_over_omega;
  throw InvalidArgument("unknown sweep axis '" + name +
                        "' (expected chi, g0_over_omega or Omega_over_omega)");
}

std::string to_string(RowFlag f) {
  switch (f) {
    case RowFlag::ok: return "ok";
    case RowFlag::truncation: return "truncation";
    case RowFlag::frame_undefined: return "frame_undefined";
    case RowFlag::error: return "error";
  }
  return "unknown";
}

void SweepSpec::validate() const {
  auto check_axis = [](const SweepAxis& axis, const char* label) {
    if (axis.values.empty()) throw InvalidArgument(std::string(label) + " has no values");
    for (double v : axis.values) {
      if (!std::isfinite(v)) throw InvalidArgument(std::string(label) + " has non-finite values");
    }
  };
  check_axis(axis1, "axis1");
  if (axis2) check_axis(*axis2, "axis2");
  if (n_values.empty()) throw InvalidArgument("sweep needs at least one ancilla number n");
  for (int n : n_values) {
    if (n < 0) throw InvalidArgument("ancilla numbers must be >= 0");
  }
  if (quantities.empty()) throw InvalidArgument("sweep needs at least one quantity");
  HilbertConfig check(fock_dim);
  (void)check;
  base.validate();
}

int SweepResult::hard_errors() const {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.flag == RowFlag::error; }));
}

ModelParams with_axis_value(ModelParams p, AxisParameter axis, double value) {
  switch (axis) {
    case AxisParameter::chi: p.chi = value; break;
    case AxisParameter::g0_over_omega: p.g0 = value * p.omega; break;
    case AxisParameter::Omega_over_omega: p.Omega = value * p.omega; break;
  }
  return p;
}

PointSolution solve_point(const ModelParams& p, const HilbertConfig& cfg, double tol) {
  PointSolution sol;
  sol.params = p;
  sol.frame = derive_frame(p);
  const int k = std::min(2, cfg.fock_dim());
  sol.even = lowest_eigenpairs(hamiltonian_squeezed_sector(p, cfg, ParitySector::even), k, tol);
  sol.odd = lowest_eigenpairs(hamiltonian_squeezed_sector(p, cfg, ParitySector::odd), k, tol);

  std::array<double, 4> levels{sol.even.values(0), sol.even.values(k - 1), sol.odd.values(0),
                               sol.odd.values(k - 1)};
  std::sort(levels.begin(), levels.end());
  sol.e0 = levels[0];
  sol.e1 = levels[1];

  const double even0 = sol.even.values(0);
  const double odd0 = sol.odd.values(0);
  sol.degenerate = std::abs(even0 - odd0) < degeneracy_tolerance(std::min(even0, odd0));
  const bool even_ground = sol.degenerate || even0 <= odd0;
  const QuantumState even_state = embed_sector(sol.even.vectors.col(0), ParitySector::even);
  const QuantumState odd_state = embed_sector(sol.odd.vectors.col(0), ParitySector::odd);
  sol.ground = even_ground ? even_state : odd_state;
  sol.odd_ground = odd_state;
  sol.max_residual = std::max(sol.even.max_residual(), sol.odd.max_residual());
  sol.edge_weight = std::max(edge_weight(sol.ground.field_component(Spin::down)),
                             edge_weight(sol.ground.field_component(Spin::up)));
  return sol;
}

double evaluate_quantity(const PointSolution& s, Quantity q) {
  switch (q) {
    case Quantity::psi_q_numeric:
      return order_parameter_from_squeezed(s.ground, s.frame, s.params);
    case Quantity::psi_q_analytic:
      return psi_q_analytic(s.params);
    case Quantity::entropy:
      return entanglement_entropy(s.ground);
    case Quantity::gap:
      return s.e1 - s.e0;
    case Quantity::coherence: {
      // Only a degenerate doublet can break the symmetry; the broken state
      // is (|even> + |odd>)/sqrt(2) with the sign chosen so <b> > 0.
      if (!s.degenerate) return std::abs(moments_to_lab(field_moments(s.ground), s.frame.r_n).b);
      const QuantumState broken = (s.ground + s.odd_ground).normalized();
      return std::abs(moments_to_lab(field_moments(broken), s.frame.r_n).b);
    }
    case Quantity::ground_energy:
      return s.e0;
    case Quantity::Omega_over_omega_n:
      return s.params.Omega / s.frame.omega_n;
  }
  throw InvalidArgument("unhandled quantity");
}

int default_thread_count() {
  if (const char* env = std::getenv("RABI_QPT_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepResult run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  std::vector<GridPoint> points;
  const std::vector<double> axis2_values =
      spec.axis2 ? spec.axis2->values : std::vector<double>{std::numeric_limits<double>::quiet_NaN()};
  for (double v1 : spec.axis1.values) {
    for (double v2 : axis2_values) {
      for (int n : spec.n_values) {
        ModelParams p = with_axis_value(spec.base, spec.axis1.parameter, v1);
        std::optional<double> a2;
        if (spec.axis2) {
          p = with_axis_value(p, spec.axis2->parameter, v2);
          a2 = v2;
        }
        p.n = n;
        points.push_back({v1, a2, n, p});
      }
    }
  }

  std::vector<std::vector<SweepRow>> per_point(points.size());
  const int workers =
      std::max(1, std::min<int>(threads > 0 ? threads : default_thread_count(),
                                static_cast<int>(points.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      per_point[i] = evaluate_grid_point(points[i], spec);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  SweepResult result;
  for (auto& rows : per_point) {
    for (auto& row : rows) result.rows.push_back(std::move(row));
  }
  return result;
}

ConvergenceReport convergence_study(const ModelParams& p, const std::vector<int>& fock_dims) {
  if (fock_dims.empty()) throw InvalidArgument("convergence_study: no truncations given");
  ConvergenceReport report;
  double prev_de = INFINITY;
  double prev_dpsi = INFINITY;
  for (std::size_t i = 0; i < fock_dims.size(); ++i) {
    const PointSolution sol = solve_point(p, HilbertConfig(fock_dims[i]));
    ConvergenceRow row{fock_dims[i], sol.e0,
                       order_parameter_from_squeezed(sol.ground, sol.frame, p), 0.0, 0.0,
                       sol.edge_weight};
    if (i > 0) {
      row.delta_energy = row.ground_energy - report.rows.back().ground_energy;
      row.delta_psi_q = row.psi_q - report.rows.back().psi_q;
      const double de = std::abs(row.delta_energy);
      const double dpsi = std::abs(row.delta_psi_q);
      // Allow roundoff-level wiggle once converged.
      const double slack_e = 1e-12 * std::max(1.0, std::abs(row.ground_energy));
      const double slack_p = 1e-12 * std::max(1.0, std::abs(row.psi_q));
      if (de > prev_de + slack_e || dpsi > prev_dpsi + slack_p) report.monotone = false;
      prev_de = de;
      prev_dpsi = dpsi;
      report.final_energy_change = de;
      report.final_psi_q_change = dpsi;
    }
    report.rows.push_back(row);
  }
  return report;
}

double sector_gap(const ModelParams& p, const HilbertConfig& cfg) {
  const RealVector v =
      lowest_eigenvalues(hamiltonian_squeezed_sector(p, cfg, ParitySector::even), 2);
  return v(1) - v(0);
}

std::vector<GapMinimum> gap_minimum_locator(const ModelParams& p, const GapSearch& search,
                                            const std::vector<double>& omega_ratios) {
  if (!(search.chi_hi > search.chi_lo)) throw InvalidArgument("gap search: empty chi window");
  if (search.coarse_points < 3) throw InvalidArgument("gap search: need >= 3 coarse points");
  const HilbertConfig cfg(search.fock_dim);
  std::vector<GapMinimum> out;
  for (double ratio : omega_ratios) {
    const ModelParams base = with_axis_value(p, AxisParameter::Omega_over_omega, ratio);
    auto objective = [&](double chi) {
      try {
        return sector_gap(with_axis_value(base, AxisParameter::chi, chi), cfg);
      } catch (const FrameUndefined&) {
        return std::numeric_limits<double>::infinity();
      }
    };
    const int n = search.coarse_points;
    const double step = (search.chi_hi - search.chi_lo) / (n - 1);
    int best = 0;
    double best_gap = INFINITY;
    for (int i = 0; i < n; ++i) {
      const double g = objective(search.chi_lo + i * step);
      if (g < best_gap) {
        best_gap = g;
        best = i;
      }
    }
    const double a = search.chi_lo + std::max(0, best - 1) * step;
    const double b = search.chi_lo + std::min(n - 1, best + 1) * step;
    const double chi = golden_section(objective, a, b, search.resolution);
    out.push_back({ratio, chi, objective(chi)});
  }
  return out;
}

}  // namespace rabi_qpt
