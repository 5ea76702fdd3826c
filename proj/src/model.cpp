#include "rabi_qpt/model.hpp"

#include "rabi_qpt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rabi_qpt {

namespace {

constexpr double kCriticalRelTol = 1e-10;

std::string describe(const ModelParams& p) {
  std::ostringstream os;
  os << "(alpha=" << p.alpha << ", chi=" << p.chi << ", g0/omega=" << p.g0 / p.omega
     << ", n=" << p.n << ")";
  return os.str();
}

// field (x) spin for a 2x2 spin matrix in the (down, up) basis.
Operator kron_field_spin(const Operator& field, const Eigen::Matrix2d& spin) {
  const Eigen::Index d = field.rows();
  Operator out = Operator::Zero(2 * d, 2 * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double f = field(i, j);
      if (f == 0.0) continue;
      out.block<2, 2>(2 * i, 2 * j) = f * spin;
    }
  }
  return out;
}

const Eigen::Matrix2d& sigma_x() {
  static const Eigen::Matrix2d s = (Eigen::Matrix2d() << 0, 1, 1, 0).finished();
  return s;
}

ComplexVector squeezed_vacuum(double r, int fock_dim) {
  return apply_squeeze(r, fock_state(fock_dim, 0)).value;
}

ComplexVector to_lab(const ComplexVector& field, const ModelParams& p, Frame frame) {
  if (frame == Frame::squeezed) return field;
  return apply_squeeze(derive_frame(p).r_n, field).value;
}

Truncated<QuantumState> squeeze_field_factor(const QuantumState& state, double r) {
  auto down = apply_squeeze(r, state.field_component(Spin::down));
  auto up = apply_squeeze(r, state.field_component(Spin::up));
  const int d = state.fock_dim();
  ComplexVector amps(2 * d);
  for (int m = 0; m < d; ++m) {
    amps(product_index(m, Spin::down)) = down.value(m);
    amps(product_index(m, Spin::up)) = up.value(m);
  }
  const double edge = std::max(down.report.edge_weight, up.report.edge_weight);
  return {QuantumState(d, std::move(amps)), {edge}};
}

}  // namespace

double ModelParams::lambda() const { return 0.5 * chi * std::sqrt(Omega * omega); }

double ModelParams::stiffness() const {
  return 1.0 + alpha * chi * chi - 4.0 * n * g0 / omega;
}

void ModelParams::validate() const {
  if (!(omega > 0)) throw InvalidArgument("omega must be > 0");
  if (!(Omega > 0)) throw InvalidArgument("Omega must be > 0");
  if (!(chi >= 0)) throw InvalidArgument("chi must be >= 0");
  if (!(alpha >= 0)) throw InvalidArgument("alpha must be >= 0");
  if (!(g0 >= 0)) throw InvalidArgument("g0 must be >= 0");
  if (n < 0) throw InvalidArgument("ancilla photon number n must be >= 0");
  if (omega_a && !std::isfinite(*omega_a)) throw InvalidArgument("omega_a must be finite");
}

double DerivedFrame::squeeze_factor() const { return std::exp(-2.0 * r_n); }

std::string to_string(Phase phase) {
  switch (phase) {
    case Phase::normal: return "NP";
    case Phase::superradiant: return "SP";
    case Phase::critical: return "critical";
  }
  return "unknown";
}

DerivedFrame derive_frame(const ModelParams& p) {
  p.validate();
  const double arg = p.stiffness();
  if (!(arg > 0)) {
    throw FrameUndefined("squeezed frame undefined: 1 + alpha chi^2 - 4 n g0/omega = " +
                         std::to_string(arg) + " <= 0 at " + describe(p));
  }
  DerivedFrame f{};
  f.r_n = -0.25 * std::log(arg);
  const double e2r = std::sqrt(arg);  // exp(-2 r_n)
  f.omega_n = e2r * p.omega;
  f.lambda_n = std::exp(f.r_n) * p.lambda();
  f.C_n = p.n * p.ancilla_frequency() + (e2r - 1.0) * 0.5 * p.omega;
  f.chi_n = 2.0 * f.lambda_n / std::sqrt(p.Omega * f.omega_n);
  return f;
}

double critical_chi(const ModelParams& p) {
  p.validate();
  if (p.alpha == 1.0) {
    throw NoCriticalPoint("alpha = 1: the critical condition does not depend on chi");
  }
  const double ratio = (1.0 - 4.0 * p.n * p.g0 / p.omega) / (1.0 - p.alpha);
  if (!(ratio > 0)) {
    throw NoCriticalPoint("no positive critical coupling at " + describe(p));
  }
  return std::sqrt(ratio);
}

bool superradiant_below_critical(const ModelParams& p) {
  critical_chi(p);
  return p.alpha > 1.0;
}

Phase classify_phase(const ModelParams& p) {
  const DerivedFrame f = derive_frame(p);
  const double threshold = f.squeeze_factor();
  if (std::abs(p.chi - threshold) <= kCriticalRelTol * threshold) return Phase::critical;
  return p.chi < threshold ? Phase::normal : Phase::superradiant;
}

Operator hamiltonian_original(const ModelParams& p, const HilbertConfig& cfg) {
  p.validate();
  const Operator x = quadrature_sum(cfg);
  const Operator x2 = x * x;
  const double quadratic = p.alpha * p.lambda() * p.lambda() / p.Omega - p.n * p.g0;

  Operator field = p.omega * number(cfg) + quadratic * x2;
  Operator h = lift_field(field);
  h += 0.5 * p.Omega * spin_operator(Pauli::z, cfg);
  h -= p.lambda() * kron_field_spin(x, sigma_x());
  h.diagonal().array() += p.n * p.ancilla_frequency();
  return h;
}

Operator hamiltonian_squeezed(const ModelParams& p, const HilbertConfig& cfg) {
  const DerivedFrame f = derive_frame(p);
  const Operator x = quadrature_sum(cfg);
  Operator h = lift_field(f.omega_n * number(cfg));
  h += 0.5 * p.Omega * spin_operator(Pauli::z, cfg);
  h -= f.lambda_n * kron_field_spin(x, sigma_x());
  h.diagonal().array() += f.C_n;
  return h;
}

Tridiagonal hamiltonian_squeezed_sector(const ModelParams& p, const HilbertConfig& cfg,
                                        ParitySector sector) {
  const DerivedFrame f = derive_frame(p);
  const int d = cfg.fock_dim();
  const int offset = sector == ParitySector::even ? 0 : 1;
  Tridiagonal t{RealVector(d), RealVector(d - 1)};
  for (int m = 0; m < d; ++m) {
    const bool up = (m + offset) % 2 == 1;
    t.diagonal(m) = f.omega_n * m + (up ? 0.5 : -0.5) * p.Omega + f.C_n;
    if (m + 1 < d) t.off_diagonal(m) = -f.lambda_n * std::sqrt(static_cast<double>(m + 1));
  }
  return t;
}

QuantumState embed_sector(const RealVector& chain, ParitySector sector) {
  const int d = static_cast<int>(chain.size());
  const int offset = sector == ParitySector::even ? 0 : 1;
  ComplexVector amps = ComplexVector::Zero(2 * d);
  for (int m = 0; m < d; ++m) {
    const Spin s = (m + offset) % 2 == 1 ? Spin::up : Spin::down;
    amps(product_index(m, s)) = chain(m);
  }
  return QuantumState(d, std::move(amps));
}

AnalyticNP analytic_np(const ModelParams& p) {
  const DerivedFrame f = derive_frame(p);
  if (!(f.chi_n < 1.0)) {
    throw WrongPhase("normal-phase closed forms need chi_n < 1, got chi_n = " +
                     std::to_string(f.chi_n));
  }
  const double c2 = f.chi_n * f.chi_n;
  AnalyticNP a{};
  a.l = -0.25 * std::log(1.0 - c2);
  a.omega_e = f.omega_n * std::sqrt(1.0 - c2);
  a.E_g = 0.5 * f.omega_n * (std::sqrt(1.0 - c2) - 1.0) - 0.5 * p.Omega + f.C_n;
  a.r_tot = f.r_n + a.l;
  return a;
}

AnalyticSP analytic_sp(const ModelParams& p) {
  const DerivedFrame f = derive_frame(p);
  if (!(f.chi_n > 1.0)) {
    throw WrongPhase("superradiant closed forms need chi_n > 1, got chi_n = " +
                     std::to_string(f.chi_n));
  }
  const double c2 = f.chi_n * f.chi_n;
  const double inv2 = 1.0 / c2;
  const double inv4 = inv2 * inv2;
  AnalyticSP a{};
  a.beta = std::sqrt(p.Omega / (4.0 * f.omega_n) * (c2 - inv2));
  a.theta = 0.5 * std::atan2(-4.0 * f.lambda_n * a.beta, p.Omega);
  a.Omega_tilde = c2 * p.Omega;
  a.lambda_tilde = std::sqrt(p.Omega * f.omega_n) / (2.0 * f.chi_n);
  a.l_tilde = -0.25 * std::log(1.0 - inv4);
  a.omega_e_tilde = f.omega_n * std::sqrt(1.0 - inv4);
  a.E_g_tilde =
      0.5 * f.omega_n * (std::sqrt(1.0 - inv4) - 1.0) - 0.25 * p.Omega * (c2 + inv2) + f.C_n;
  a.r_tot_tilde = f.r_n + a.l_tilde;
  return a;
}

double psi_q_analytic(const ModelParams& p) {
  const DerivedFrame f = derive_frame(p);
  if (f.chi_n <= 1.0) return 0.0;
  const double c2 = f.chi_n * f.chi_n;
  return 0.25 * (c2 - 1.0 / c2);
}

std::array<Complex, 2> sp_spin_state(const ModelParams& p, Sign sign) {
  const DerivedFrame f = derive_frame(p);
  if (!(f.chi_n > 1.0)) throw WrongPhase("|down>_+- needs chi_n > 1");
  const double inv2 = 1.0 / (f.chi_n * f.chi_n);
  // The printed coefficients sqrt(1 +- chi_n^-2)/2 have squared norm 1/2;
  // rescale to unit norm.
  const double down = std::sqrt((1.0 + inv2) / 2.0);
  const double up = static_cast<int>(sign) * std::sqrt((1.0 - inv2) / 2.0);
  return {Complex(down), Complex(up)};
}

Truncated<QuantumState> frame_change_to_b(const QuantumState& squeezed_state,
                                          const ModelParams& p) {
  return squeeze_field_factor(squeezed_state, derive_frame(p).r_n);
}

Truncated<QuantumState> frame_change_to_squeezed(const QuantumState& lab_state,
                                                 const ModelParams& p) {
  return squeeze_field_factor(lab_state, -derive_frame(p).r_n);
}

QuantumState ground_state_np(const ModelParams& p, const HilbertConfig& cfg, Frame frame) {
  const AnalyticNP np = analytic_np(p);
  const ComplexVector field = to_lab(squeezed_vacuum(np.l, cfg.fock_dim()), p, frame);
  return QuantumState::product(field, 1.0, 0.0).normalized();
}

std::pair<QuantumState, QuantumState> ground_states_sp(const ModelParams& p,
                                                       const HilbertConfig& cfg, Frame frame) {
  const AnalyticSP sp = analytic_sp(p);
  const ComplexVector vacuum = squeezed_vacuum(sp.l_tilde, cfg.fock_dim());
  auto branch = [&](Sign sign) {
    const double shift = static_cast<int>(sign) * sp.beta;
    const ComplexVector field = to_lab(apply_displacement(shift, vacuum).value, p, frame);
    const auto spin = sp_spin_state(p, sign);
    return QuantumState::product(field, spin[0], spin[1]).normalized();
  };
  return {branch(Sign::plus), branch(Sign::minus)};
}

QuantumState approx_ground_n0(const ModelParams& p, const HilbertConfig& cfg, Frame frame) {
  ComplexVector field = fock_state(cfg.fock_dim(), 0);
  if (frame == Frame::squeezed) field = apply_squeeze(-derive_frame(p).r_n, field).value;
  return QuantumState::product(field, 1.0, 0.0).normalized();
}

QuantumState approx_ground_n1(const ModelParams& p, const HilbertConfig& cfg, Frame frame) {
  const auto [plus, minus] = ground_states_sp(p, cfg, frame);
  return (plus + minus).normalized();
}

ComplexVector squeezed_cat(const ModelParams& p, Sign sign, const HilbertConfig& cfg,
                           Frame frame) {
  const AnalyticSP sp = analytic_sp(p);
  const ComplexVector vacuum = squeezed_vacuum(sp.l_tilde, cfg.fock_dim());
  ComplexVector cat = apply_displacement(sp.beta, vacuum).value;
  const ComplexVector mirror = apply_displacement(-sp.beta, vacuum).value;
  if (sign == Sign::plus) {
    cat += mirror;
  } else {
    cat -= mirror;
  }
  const double norm = cat.norm();
  if (norm < 1e-14) throw ZeroNorm("squeezed cat: branches cancel");
  return to_lab(cat / norm, p, frame);
}

}  // namespace rabi_qpt
