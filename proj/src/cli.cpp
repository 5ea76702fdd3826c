#include "rabi_qpt/cli.hpp"

#include "rabi_qpt/errors.hpp"
#include "rabi_qpt/observables.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace rabi_qpt::cli {

namespace {

using json = nlohmann::ordered_json;

enum class Format { csv, json };

/// Options shared by every subcommand. Frequencies are ratios to omega,
/// which is 1 internally.
struct CommonOptions {
  double alpha = 0.0;
  double chi = 0.0;
  double g0 = 0.0;
  double Omega = 1.0;
  std::optional<double> omega_a;
  std::string n = "0";
  int fock_dim = 1000;
  std::string config;
  std::string output;
  Format format = Format::csv;
  bool no_timestamp = false;
};

struct SweepOptions {
  std::string axis1;
  std::string axis2;
  std::string quantities = "all";
};

struct WignerOptions {
  std::string state = "numeric_ground";
  GridSpec grid;
  bool fixed_grid = false;
};

void add_common(CLI::App& sub, CommonOptions& o, bool n_is_list) {
  sub.add_option("--alpha", o.alpha, "A^2-term strength alpha (>= 0)");
  sub.add_option("--chi", o.chi, "rescaled coupling chi = 2 lambda / sqrt(Omega omega)");
  sub.add_option("--g0,--g0-ratio", o.g0, "quadratic coupling g0/omega");
  sub.add_option("--Omega,--Omega-ratio", o.Omega, "qubit splitting Omega/omega");
  sub.add_option("--omega-a-ratio", o.omega_a, "ancilla frequency omega_a/omega (default 1)");
  sub.add_option("--n", o.n,
                 n_is_list ? "ancilla photon numbers, comma separated (e.g. 0,1)"
                           : "ancilla photon number");
  sub.add_option("--fock-dim", o.fock_dim, "retained Fock levels of mode b");
  sub.add_option("--config", o.config, "flat JSON file of option values; flags override it");
  sub.add_option("--output,-o", o.output, "output file (default stdout)");
  sub.add_option("--format", o.format, "csv or json")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  sub.add_flag("--no-timestamp", o.no_timestamp, "omit the timestamp header line");
}

ModelParams model_params(const CommonOptions& o, int n) {
  ModelParams p;
  p.omega = 1.0;
  p.Omega = o.Omega;
  p.chi = o.chi;
  p.alpha = o.alpha;
  p.g0 = o.g0;
  p.omega_a = o.omega_a;
  p.n = n;
  p.validate();
  return p;
}

int single_n(const CommonOptions& o) {
  const auto values = parse_int_list(o.n);
  if (values.size() != 1) throw InvalidArgument("this command takes a single --n value");
  return values.front();
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream s;
  s << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

/// Wraps the destination stream so commands do not care whether they write
/// to stdout or a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InvalidArgument("cannot open output file '" + path + "'");
    }
    stream_ = file_ ? file_.get() : &fallback;
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

json number_or_null(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

std::string csv_number(std::optional<double> v) {
  if (!v || !std::isfinite(*v)) return "null";
  return format_number(*v);
}

// --- config file ------------------------------------------------------------

/// Turn a flat JSON object into command-line tokens for `sub`. Tokens are
/// placed before the real arguments so that flags given on the command line
/// win (every option keeps its last value).
std::vector<std::string> config_tokens(const std::string& path, const CLI::App& sub) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("config file must hold a flat JSON object");

  std::vector<std::string> tokens;
  for (const auto& [key, value] : doc.items()) {
    const CLI::Option* opt = sub.get_option_no_throw("--" + key);
    if (opt == nullptr || key == "config") {
      throw InvalidArgument("unknown config key '" + key + "'");
    }
    if (value.is_boolean()) {  // flags
      if (value.get<bool>()) tokens.push_back("--" + key);
      continue;
    }
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number()) {
      text = value.dump();
    } else if (value.is_array()) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i > 0) text += ",";
        text += value[i].is_string() ? value[i].get<std::string>() : value[i].dump();
      }
    } else {
      throw InvalidArgument("config key '" + key + "' has an unsupported value type");
    }
    tokens.push_back("--" + key);
    tokens.push_back(text);
  }
  return tokens;
}

/// Value of --config among the raw arguments of the subcommand, if any.
std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// --- commands ---------------------------------------------------------------

int cmd_critical_point(const CommonOptions& o, std::ostream& out) {
  const ModelParams p = model_params(o, single_n(o));
  const double chi_c = critical_chi(p);
  const bool sp_below = superradiant_below_critical(p);
  const DerivedFrame at_critical = derive_frame(with_axis_value(p, AxisParameter::chi, chi_c));

  std::vector<std::pair<std::string, json>> fields{
      {"chi_c", chi_c},
      {"r_n", at_critical.r_n + 0.0},
      {"exp_minus_2r_n", at_critical.squeeze_factor()},
      {"Omega_over_omega_n", p.Omega / at_critical.omega_n},
      {"phase_below", sp_below ? "SP" : "NP"},
      {"phase_above", sp_below ? "NP" : "SP"},
  };
  if (p.chi > 0.0) {
    const DerivedFrame here = derive_frame(p);
    fields.emplace_back("chi", p.chi);
    fields.emplace_back("chi_n", here.chi_n);
    fields.emplace_back("phase", to_string(classify_phase(p)));
  }

  if (o.format == Format::json) {
    json doc = json::object();
    for (const auto& [k, v] : fields) doc[k] = v;
    out << doc.dump(2) << "\n";
  } else {
    out << "quantity,value\n";
    for (const auto& [k, v] : fields) {
      out << k << "," << (v.is_number() ? format_number(v.get<double>()) : v.get<std::string>())
          << "\n";
    }
  }
  return 0;
}

int cmd_sweep(const CommonOptions& o, const SweepOptions& s, std::ostream& out,
              std::ostream& err) {
  if (s.axis1.empty()) throw InvalidArgument("sweep needs --axis name:start:stop:count");
  SweepSpec spec;
  spec.base = model_params(o, 0);
  spec.axis1 = parse_axis(s.axis1);
  if (!s.axis2.empty()) spec.axis2 = parse_axis(s.axis2);
  spec.n_values = parse_int_list(o.n);
  spec.fock_dim = o.fock_dim;
  spec.quantities = parse_quantity_list(s.quantities);
  spec.validate();

  const SweepResult result = run_sweep(spec);
  const std::string axis1_name = to_string(spec.axis1.parameter);
  const std::string axis2_name = spec.axis2 ? to_string(spec.axis2->parameter) : "";

  if (o.format == Format::json) {
    json doc;
    doc["axis1"] = axis1_name;
    doc["axis2"] = spec.axis2 ? json(axis2_name) : json(nullptr);
    doc["fock_dim"] = spec.fock_dim;
    if (!o.no_timestamp) doc["generated"] = timestamp();
    json rows = json::array();
    for (const SweepRow& r : result.rows) {
      rows.push_back({{"axis1", r.axis1},
                      {"axis2", number_or_null(r.axis2)},
                      {"n", r.n},
                      {"quantity", to_string(r.quantity)},
                      {"value", number_or_null(r.value)},
                      {"flag", to_string(r.flag)}});
    }
    doc["rows"] = rows;
    out << doc.dump(2) << "\n";
  } else {
    if (!o.no_timestamp) out << "# generated " << timestamp() << "\n";
    out << "# axis1=" << axis1_name << " axis2=" << (spec.axis2 ? axis2_name : "none")
        << " fock_dim=" << spec.fock_dim << "\n";
    out << "axis1,axis2,n,quantity,value,flag\n";
    for (const SweepRow& r : result.rows) {
      out << format_number(r.axis1) << "," << (r.axis2 ? format_number(*r.axis2) : "") << ","
          << r.n << "," << to_string(r.quantity) << "," << csv_number(r.value) << ","
          << to_string(r.flag) << "\n";
    }
  }

  const int hard = result.hard_errors();
  if (hard > 0) {
    json summary;
    summary["hard_errors"] = hard;
    json failures = json::array();
    for (const SweepRow& r : result.rows) {
      if (r.flag != RowFlag::error) continue;
      failures.push_back({{"axis1", r.axis1},
                          {"axis2", number_or_null(r.axis2)},
                          {"n", r.n},
                          {"quantity", to_string(r.quantity)},
                          {"reason", r.reason}});
    }
    summary["failures"] = failures;
    err << summary.dump() << "\n";
    return 1;
  }
  return 0;
}

std::array<Complex, 2> measurement_spin_vector(const ModelParams& p) {
  const auto plus = sp_spin_state(p, Sign::plus);
  const auto minus = sp_spin_state(p, Sign::minus);
  std::array<Complex, 2> v{plus[0] + minus[0], plus[1] + minus[1]};
  const double norm = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  return {v[0] / norm, v[1] / norm};
}

int cmd_wigner(const CommonOptions& o, const WignerOptions& w, std::ostream& out) {
  const ModelParams p = model_params(o, single_n(o));
  const HilbertConfig cfg(o.fock_dim);
  const DerivedFrame frame = derive_frame(p);

  // Every state is built in the squeezed frame; the Wigner function of mode
  // b follows by rescaling the quadratures with r_n.
  std::vector<ComplexVector> fields;
  std::optional<QuantumState> product;
  if (w.state == "numeric_ground") {
    product = solve_point(p, cfg).ground;
  } else if (w.state == "G0") {
    product = approx_ground_n0(p, cfg, Frame::squeezed);
  } else if (w.state == "G1") {
    product = approx_ground_n1(p, cfg, Frame::squeezed);
  } else if (w.state == "cat_plus") {
    fields.push_back(squeezed_cat(p, Sign::plus, cfg, Frame::squeezed));
  } else if (w.state == "cat_minus") {
    fields.push_back(squeezed_cat(p, Sign::minus, cfg, Frame::squeezed));
  } else if (w.state == "projected") {
    const QuantumState ground = solve_point(p, cfg).ground;
    fields.push_back(project_qubit(ground, measurement_spin_vector(p)).field);
  } else {
    throw InvalidArgument("unknown --state '" + w.state + "'");
  }
  if (product) {
    fields.push_back(product->field_component(Spin::down));
    fields.push_back(product->field_component(Spin::up));
  }

  const GridSpec grid = w.fixed_grid ? w.grid : covering_grid(fields, w.grid, frame.r_n);
  const WignerGrid result =
      product ? wigner(*product, grid, frame.r_n) : wigner(fields.front(), grid, frame.r_n);

  if (o.format == Format::json) {
    json doc;
    doc["state"] = w.state;
    if (!o.no_timestamp) doc["generated"] = timestamp();
    doc["x"] = std::vector<double>(result.x_axis.begin(), result.x_axis.end());
    doc["y"] = std::vector<double>(result.y_axis.begin(), result.y_axis.end());
    json values = json::array();
    for (Eigen::Index ix = 0; ix < result.values.rows(); ++ix) {
      RealVector row = result.values.row(ix);
      values.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["W"] = values;
    doc["integral"] = result.integral();
    doc["min"] = result.min();
    out << doc.dump() << "\n";
  } else {
    if (!o.no_timestamp) out << "# generated " << timestamp() << "\n";
    out << "x,y,W\n";
    for (Eigen::Index ix = 0; ix < result.values.rows(); ++ix) {
      for (Eigen::Index iy = 0; iy < result.values.cols(); ++iy) {
        out << format_number(result.x_axis(ix)) << "," << format_number(result.y_axis(iy)) << ","
            << format_number(result.values(ix, iy)) << "\n";
      }
    }
  }
  return 0;
}

struct Check {
  std::string name;
  std::optional<double> value;  // empty when skipped
  double tolerance;
  bool lower_bound = false;  // pass when value >= tolerance instead of <=
  std::string note;

  bool skipped() const { return !value.has_value(); }
  bool passed() const {
    if (!value) return true;
    return lower_bound ? *value >= tolerance : *value <= tolerance;
  }
  std::string status() const { return skipped() ? "SKIP" : (passed() ? "PASS" : "FAIL"); }
};

double commutator_norm(const Operator& a, const Operator& b) {
  return (a * b - b * a).cwiseAbs().maxCoeff();
}

std::vector<Check> validation_battery(const ModelParams& p, const HilbertConfig& cfg) {
  std::vector<Check> checks;
  const DerivedFrame frame = derive_frame(p);
  checks.push_back({"chi_identity", std::abs(frame.chi_n * frame.squeeze_factor() - p.chi),
                    1e-12, false, "|chi_n exp(-2 r_n) - chi|"});

  const Operator pi = parity(cfg);
  const Operator h_lab = hamiltonian_original(p, cfg);
  const Operator h_sq = hamiltonian_squeezed(p, cfg);
  checks.push_back({"parity_symmetry_lab", commutator_norm(pi, h_lab), 1e-10, false,
                    "max |[Pi, H]| entry"});
  checks.push_back({"parity_symmetry_squeezed", commutator_norm(pi, h_sq), 1e-10, false,
                    "max |[Pi, H_n]| entry"});

  const int k = std::min(4, cfg.product_dim());
  const EigenResult lab = lowest_eigenpairs(h_lab, k);
  const EigenResult sq = lowest_eigenpairs(h_sq, k);
  double rel = 0.0;
  for (int i = 0; i < k; ++i) {
    rel = std::max(rel, std::abs(lab.values(i) - sq.values(i)) /
                            std::max(std::abs(sq.values(i)), 1e-300));
  }
  // A lab-frame spectrum whose eigenvectors reach the truncation edge says
  // nothing about the frame map, so the comparison is inconclusive there.
  double lab_edge = 0.0;
  for (int i = 0; i < k; ++i) {
    const QuantumState v(cfg.fock_dim(), lab.vectors.col(i).cast<Complex>());
    lab_edge = std::max(lab_edge, edge_weight(v.field_component(Spin::down)) +
                                      edge_weight(v.field_component(Spin::up)));
  }
  if (lab_edge > kTruncationThreshold) {
    checks.push_back({"frame_equivalence", std::nullopt, 1e-6, false,
                      "lab-frame eigenvectors truncated; increase --fock-dim"});
  } else {
    checks.push_back({"frame_equivalence", rel, 1e-6, false,
                      "max relative difference of the lowest eigenvalues"});
  }

  const PointSolution sol = solve_point(p, cfg);
  const double residual =
      std::max({lab.max_residual(), sq.max_residual(), sol.max_residual});
  checks.push_back({"eigen_residual", residual, 1e-9, false, "max ||H v - E v||"});
  checks.push_back({"truncation", sol.edge_weight, kTruncationThreshold, false,
                    "ground-state weight in the top Fock decile"});

  const double psi_num = evaluate_quantity(sol, Quantity::psi_q_numeric);
  const double psi_an = psi_q_analytic(p);
  checks.push_back({"order_parameter", std::abs(psi_num - psi_an), 0.05 * std::max(psi_an, 0.1),
                    false, "|psi_q numeric - analytic| (asymptotic in Omega/omega)"});

  const Phase phase = classify_phase(p);
  if (phase == Phase::normal) {
    const QuantumState analytic = ground_state_np(p, cfg, Frame::squeezed);
    checks.push_back({"analytic_fidelity", fidelity(sol.ground, analytic), 0.99, true,
                      "|<numeric|G_np>|^2"});
  } else if (phase == Phase::superradiant) {
    const QuantumState analytic = approx_ground_n1(p, cfg, Frame::squeezed);
    checks.push_back({"analytic_fidelity", fidelity(sol.ground, analytic), 0.99, true,
                      "|<numeric even|G+ + G->|^2"});
  } else {
    checks.push_back({"analytic_fidelity", std::nullopt, 0.99, true,
                      "no analytic state at the critical point"});
  }
  return checks;
}

int cmd_validate(const CommonOptions& o, std::ostream& out) {
  const ModelParams p = model_params(o, single_n(o));
  const std::vector<Check> checks = validation_battery(p, HilbertConfig(o.fock_dim));
  bool ok = true;
  for (const Check& c : checks) ok = ok && c.passed();

  if (o.format == Format::json) {
    json doc;
    json list = json::array();
    for (const Check& c : checks) {
      list.push_back({{"check", c.name},
                      {"status", c.status()},
                      {"value", number_or_null(c.value)},
                      {"tolerance", c.tolerance},
                      {"bound", c.lower_bound ? ">=" : "<="},
                      {"note", c.note}});
    }
    doc["checks"] = list;
    doc["passed"] = ok;
    out << doc.dump(2) << "\n";
  } else {
    out << "check,status,value,bound,tolerance,note\n";
    for (const Check& c : checks) {
      out << c.name << "," << c.status() << "," << csv_number(c.value) << ","
          << (c.lower_bound ? ">=" : "<=") << "," << format_number(c.tolerance) << ",\""
          << c.note << "\"\n";
    }
  }
  return ok ? 0 : 1;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& message) {
  json summary;
  summary["error"] = kind;
  summary["message"] = message;
  err << summary.dump() << "\n";
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const FrameUndefined*>(&e)) return "FrameUndefined";
  if (dynamic_cast<const NoCriticalPoint*>(&e)) return "NoCriticalPoint";
  if (dynamic_cast<const WrongPhase*>(&e)) return "WrongPhase";
  if (dynamic_cast<const ZeroNorm*>(&e)) return "ZeroNorm";
  if (dynamic_cast<const InvalidArgument*>(&e)) return "InvalidArgument";
  if (dynamic_cast<const NoConvergence*>(&e)) return "NoConvergence";
  if (dynamic_cast<const ParityMixed*>(&e)) return "ParityMixed";
  return "Error";
}

}  // namespace

std::string format_number(double value) {
  std::ostringstream s;
  s << std::setprecision(12) << (value + 0.0);  // + 0.0 folds -0 into 0
  return s.str();
}

SweepAxis parse_axis(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ':');) parts.push_back(part);
  if (parts.size() != 4) {
    throw InvalidArgument("axis '" + text + "' is not of the form name:start:stop:count");
  }
  SweepAxis axis;
  axis.parameter = parse_axis_parameter(parts[0]);
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  try {
    std::size_t used = 0;
    start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    count = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument(parts[3]);
  } catch (const std::logic_error&) {
    throw InvalidArgument("axis '" + text + "' has a malformed number");
  }
  if (count < 1) throw InvalidArgument("axis '" + text + "' needs count >= 1");
  axis.values.resize(count);
  for (int i = 0; i < count; ++i) {
    axis.values[i] = count == 1 ? start : start + (stop - start) * i / (count - 1);
  }
  return axis;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      values.push_back(v);
    } catch (const std::logic_error&) {
      throw InvalidArgument("'" + part + "' is not a non-negative integer");
    }
  }
  if (values.empty()) throw InvalidArgument("empty integer list");
  return values;
}

std::vector<Quantity> parse_quantity_list(const std::string& text) {
  if (text == "all") return all_quantities();
  std::vector<Quantity> values;
  std::stringstream in(text);
  for (std::string part; std::getline(in, part, ',');) values.push_back(parse_quantity(part));
  if (values.empty()) throw InvalidArgument("empty quantity list");
  return values;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ground states and phase diagram of the photon-conditioned quantum Rabi model",
               "rabi-qpt"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  CommonOptions critical_opts;
  CommonOptions sweep_opts;
  CommonOptions wigner_opts;
  CommonOptions validate_opts;
  SweepOptions sweep_extra;
  WignerOptions wigner_extra;

  CLI::App* critical = app.add_subcommand("critical-point", "critical coupling and phase sides");
  add_common(*critical, critical_opts, false);

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate quantities over a parameter grid");
  add_common(*sweep, sweep_opts, true);
  sweep->add_option("--axis", sweep_extra.axis1, "name:start:stop:count");
  sweep->add_option("--axis2", sweep_extra.axis2, "optional second axis, same form");
  sweep->add_option("--quantities", sweep_extra.quantities,
                    "comma-separated quantity names or 'all'");

  CLI::App* wig = app.add_subcommand("wigner", "Wigner function of the field mode on a grid");
  add_common(*wig, wigner_opts, false);
  wig->add_option("--state", wigner_extra.state,
                  "numeric_ground, G0, G1, cat_plus, cat_minus or projected");
  wig->add_option("--x-min", wigner_extra.grid.x_min, "lower x quadrature bound");
  wig->add_option("--x-max", wigner_extra.grid.x_max, "upper x quadrature bound");
  wig->add_option("--nx", wigner_extra.grid.nx, "grid points along x");
  wig->add_option("--y-min", wigner_extra.grid.y_min, "lower y quadrature bound");
  wig->add_option("--y-max", wigner_extra.grid.y_max, "upper y quadrature bound");
  wig->add_option("--ny", wigner_extra.grid.ny, "grid points along y");
  wig->add_flag("--fixed-grid", wigner_extra.fixed_grid,
                "do not widen the grid to cover the state");

  CLI::App* validate = app.add_subcommand("validate", "analytic-vs-numeric oracle battery");
  add_common(*validate, validate_opts, false);

  // Splice config-file values in front of the subcommand's own arguments.
  std::vector<std::string> args(argv + std::min(argc, 1), argv + argc);
  if (!args.empty()) {
    if (const auto config = find_config({args.begin() + 1, args.end()})) {
      try {
        const CLI::App* sub = app.get_subcommand_no_throw(args.front());
        if (sub == nullptr) throw InvalidArgument("--config needs a subcommand");
        auto tokens = config_tokens(*config, *sub);
        args.insert(args.begin() + 1, tokens.begin(), tokens.end());
      } catch (const Error& e) {
        report_error(err, "InvalidArgument", e.what());
        return 2;
      }
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (critical->parsed()) {
      Sink sink(critical_opts.output, out);
      return cmd_critical_point(critical_opts, sink.stream());
    }
    if (sweep->parsed()) {
      Sink sink(sweep_opts.output, out);
      return cmd_sweep(sweep_opts, sweep_extra, sink.stream(), err);
    }
    if (wig->parsed()) {
      Sink sink(wigner_opts.output, out);
      return cmd_wigner(wigner_opts, wigner_extra, sink.stream());
    }
    if (validate->parsed()) {
      Sink sink(validate_opts.output, out);
      return cmd_validate(validate_opts, sink.stream());
    }
  } catch (const Error& e) {
    report_error(err, error_kind(e), e.what());
    return 1;
  }
  return 2;
}

}  // namespace rabi_qpt::cli
