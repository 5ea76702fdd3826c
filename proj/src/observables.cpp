#include "rabi_qpt/observables.hpp"

#include "rabi_qpt/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rabi_qpt {

namespace {

constexpr double kTraceTolerance = 1e-10;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kPositivityTolerance = 1e-10;
constexpr double kProbabilityFloor = 1e-14;
constexpr double kParityTolerance = 1e-6;

// Values of a field vector in the quadrature representation,
//   psi(q) = sum_m c_m phi_m(q),  phi_m the normalized Hermite functions,
// on q_j = q0 + j h, j = 0..count-1. The recurrence is carried with a
// running log-scale so large |q| and large m neither overflow nor flush to
// zero prematurely.
ComplexVector quadrature_wavefunction(const ComplexVector& c, double q0, double h, int count) {
  const Eigen::Index d = c.size();
  ComplexVector psi(count);
  const double log_norm0 = -0.25 * std::log(std::numbers::pi);
  constexpr double kRescale = 1e150;
  const double log_rescale = std::log(kRescale);
  for (int j = 0; j < count; ++j) {
    const double q = q0 + j * h;
    double prev = 0.0;
    double cur = 1.0;
    double log_scale = log_norm0 - 0.5 * q * q;
    double scale = std::exp(log_scale);
    Complex acc = c(0) * (cur * scale);
    for (Eigen::Index m = 1; m < d; ++m) {
      const double md = static_cast<double>(m);
      const double next = std::sqrt(2.0 / md) * q * cur - std::sqrt((md - 1.0) / md) * prev;
      prev = cur;
      cur = next;
      if (std::abs(cur) > kRescale) {
        cur /= kRescale;
        prev /= kRescale;
        log_scale += log_rescale;
        scale = std::exp(log_scale);
      }
      if (scale != 0.0) acc += c(m) * (cur * scale);
    }
    psi(j) = acc;
  }
  return psi;
}

// Coefficients of the momentum-representation wavefunction:
// psi~(p) = sum_m c_m (-i)^m phi_m(p).
ComplexVector momentum_coefficients(const ComplexVector& c) {
  ComplexVector out(c.size());
  const Complex phases[4] = {1.0, Complex(0, -1), -1.0, Complex(0, 1)};
  for (Eigen::Index m = 0; m < c.size(); ++m) out(m) = c(m) * phases[m % 4];
  return out;
}

Eigen::Index highest_occupied_level(const ComplexVector& c) {
  const double peak = c.cwiseAbs().maxCoeff();
  Eigen::Index top = 0;
  for (Eigen::Index m = 0; m < c.size(); ++m) {
    if (std::abs(c(m)) > 1e-12 * peak) top = m;
  }
  return top;
}

RealVector axis(double lo, double hi, int count) {
  if (count < 1) throw InvalidArgument("grid axis needs at least one point");
  if (count == 1) return RealVector::Constant(1, lo);
  return RealVector::LinSpaced(count, lo, hi);
}

// Wigner function of sum_k |v_k><v_k| (unnormalized v_k) on the grid, in
// the frame of the vectors, evaluated at the lab-frame grid points mapped
// through exp(-r) x, exp(r) y.
WignerGrid wigner_of_components(const std::vector<ComplexVector>& vectors, const GridSpec& grid,
                                double r) {
  if (vectors.empty()) throw InvalidArgument("wigner: no field components");
  WignerGrid out;
  out.x_axis = axis(grid.x_min, grid.x_max, grid.nx);
  out.y_axis = axis(grid.y_min, grid.y_max, grid.ny);
  const double dx = grid.nx > 1 ? (grid.x_max - grid.x_min) / (grid.nx - 1) : 1.0;
  const double dy = grid.ny > 1 ? (grid.y_max - grid.y_min) / (grid.ny - 1) : 1.0;
  out.cell_area = dx * dy;
  out.values = RealMatrix::Zero(grid.nx, grid.ny);

  // Quadrature-frame coordinates: q = sqrt(2) x_n, p = sqrt(2) y_n.
  const double qscale = std::numbers::sqrt2 * std::exp(-r);
  const double pscale = std::numbers::sqrt2 * std::exp(r);
  const double q_first = qscale * grid.x_min;
  const double q_step = qscale * dx;
  RealVector p_values = pscale * out.y_axis;
  const double p_max = p_values.cwiseAbs().maxCoeff();

  Eigen::Index top = 0;
  for (const auto& v : vectors) top = std::max(top, highest_occupied_level(v));
  const double turning = std::sqrt(2.0 * static_cast<double>(top) + 1.0);
  const double support = turning + 8.0;

  // Sample spacing: the integrand carries frequencies up to 2 (turning + p)
  // after modulation; keep two samples per shortest period plus margin.
  const double h_max = 0.5 * std::numbers::pi / (turning + 3.0 + p_max);
  int refine = 1;
  double h = h_max;
  if (grid.nx > 1) {
    refine = std::max(1, static_cast<int>(std::ceil(q_step / h_max)));
    h = q_step / refine;
  }
  const double q_last = q_first + (grid.nx - 1) * q_step;
  const double lo = std::min(q_first, -support);
  const double hi = std::max(q_last, support);
  // Align the sample array so every grid point is a sample.
  const int pad_lo = static_cast<int>(std::ceil((q_first - lo) / h));
  const int pad_hi = static_cast<int>(std::ceil((hi - q_last) / h));
  const int count = pad_lo + (grid.nx - 1) * refine + pad_hi + 1;
  const double sample0 = q_first - pad_lo * h;

  std::vector<ComplexVector> sampled;
  sampled.reserve(vectors.size());
  for (const auto& v : vectors) sampled.push_back(quadrature_wavefunction(v, sample0, h, count));

  // Phase table exp(2 i p s_k) for s_k = k h.
  const int k_max = count;
  std::vector<ComplexVector> phase(static_cast<std::size_t>(grid.ny));
  for (int iy = 0; iy < grid.ny; ++iy) {
    ComplexVector row(k_max);
    for (int k = 0; k < k_max; ++k) row(k) = std::polar(1.0, 2.0 * p_values(iy) * k * h);
    phase[static_cast<std::size_t>(iy)] = std::move(row);
  }

  ComplexVector f(k_max);
  for (int ix = 0; ix < grid.nx; ++ix) {
    const int c = pad_lo + ix * refine;
    const int reach = std::min(c, count - 1 - c);
    for (int k = 0; k <= reach; ++k) {
      Complex acc = 0.0;
      for (const auto& psi : sampled) acc += std::conj(psi(c + k)) * psi(c - k);
      f(k) = acc;
    }
    for (int iy = 0; iy < grid.ny; ++iy) {
      const ComplexVector& ph = phase[static_cast<std::size_t>(iy)];
      double sum = f(0).real();
      for (int k = 1; k <= reach; ++k) sum += 2.0 * (f(k) * ph(k)).real();
      out.values(ix, iy) = 2.0 / std::numbers::pi * h * sum;
    }
  }
  return out;
}

// Half-width of the region where |psi|^2 exceeds rel * peak, in the
// quadrature coordinate.
double support_half_width(const std::vector<ComplexVector>& coefficient_sets, double rel) {
  Eigen::Index top = 0;
  for (const auto& v : coefficient_sets) top = std::max(top, highest_occupied_level(v));
  const double turning = std::sqrt(2.0 * static_cast<double>(top) + 1.0);
  const double span = turning + 8.0;
  const double h = std::min(0.05, 0.25 * std::numbers::pi / (turning + 1.0));
  const int count = 2 * static_cast<int>(std::ceil(span / h)) + 1;
  RealVector density = RealVector::Zero(count);
  for (const auto& v : coefficient_sets) {
    density += quadrature_wavefunction(v, -span, h, count).cwiseAbs2();
  }
  const double peak = density.maxCoeff();
  double half = 0.0;
  for (int j = 0; j < count; ++j) {
    if (density(j) > rel * peak) half = std::max(half, std::abs(-span + j * h));
  }
  return half;
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
    throw InvalidArgument("DensityMatrix: entries must be a non-empty square matrix");
  }
  const double herm = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTolerance) {
    throw InvalidArgument("DensityMatrix: not Hermitian (defect " + std::to_string(herm) + ")");
  }
  const double trace = entries_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw InvalidArgument("DensityMatrix: trace " + std::to_string(trace) + " != 1");
  }
  const double min_eig = spectrum().minCoeff();
  if (min_eig < -kPositivityTolerance) {
    throw InvalidArgument("DensityMatrix: negative eigenvalue " + std::to_string(min_eig));
  }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& field) {
  const double n = field.norm();
  if (n < kProbabilityFloor) throw ZeroNorm("DensityMatrix::pure: zero vector");
  const ComplexVector v = field / n;
  ComplexMatrix rho = v * v.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::mixture(double p, const DensityMatrix& rho1,
                                     const DensityMatrix& rho2) {
  if (p < 0.0 || p > 1.0) throw InvalidArgument("mixture weight outside [0, 1]");
  if (rho1.dim() != rho2.dim()) throw InvalidArgument("mixture: dimension mismatch");
  return DensityMatrix(p * rho1.entries_ + (1.0 - p) * rho2.entries_);
}

double DensityMatrix::purity() const { return (entries_ * entries_).trace().real(); }

RealVector DensityMatrix::spectrum() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DensityMatrix reduce_to_field(const QuantumState& s) {
  const ComplexVector down = s.field_component(Spin::down);
  const ComplexVector up = s.field_component(Spin::up);
  ComplexMatrix rho = down * down.adjoint() + up * up.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix(std::move(rho));
}

Eigen::Matrix2cd reduce_to_spin(const QuantumState& s) {
  const ComplexVector down = s.field_component(Spin::down);
  const ComplexVector up = s.field_component(Spin::up);
  Eigen::Matrix2cd rho;
  rho(0, 0) = down.squaredNorm();
  rho(1, 1) = up.squaredNorm();
  rho(0, 1) = up.dot(down);  // sum_m down(m) conj(up(m))
  rho(1, 0) = std::conj(rho(0, 1));
  return rho;
}

double entropy_bits(const RealVector& probabilities) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < probabilities.size(); ++i) {
    const double p = probabilities(i);
    if (p >= kEntropyFloor) s -= p * std::log2(p);
  }
  return std::max(s, 0.0);
}

double entropy(const DensityMatrix& rho) { return entropy_bits(rho.spectrum()); }

double entanglement_entropy(const QuantumState& s) {
  const Eigen::Matrix2cd rho = reduce_to_spin(s.normalized());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(rho, Eigen::EigenvaluesOnly);
  return entropy_bits(solver.eigenvalues());
}

FieldMoments field_moments(const QuantumState& s) {
  const int d = s.fock_dim();
  FieldMoments mom{0.0, 0.0, 0.0};
  for (int si = 0; si < 2; ++si) {
    const ComplexVector v = s.field_component(static_cast<Spin>(si));
    for (int m = 0; m < d; ++m) {
      mom.n += m * std::norm(v(m));
      if (m + 1 < d) mom.b += std::conj(v(m)) * std::sqrt(m + 1.0) * v(m + 1);
      if (m + 2 < d) mom.b2 += std::conj(v(m)) * std::sqrt((m + 1.0) * (m + 2.0)) * v(m + 2);
    }
  }
  return mom;
}

Complex coherence(const QuantumState& s) { return field_moments(s).b; }
double occupation(const QuantumState& s) { return field_moments(s).n; }

FieldMoments moments_to_lab(const FieldMoments& sq, double r) {
  const double ch = std::cosh(r);
  const double sh = std::sinh(r);
  FieldMoments lab{};
  lab.b = ch * sq.b + sh * std::conj(sq.b);
  lab.n = std::cosh(2.0 * r) * sq.n + sh * sh + std::sinh(2.0 * r) * sq.b2.real();
  // b^2 = ch^2 b_n^2 + sh^2 b_n^dag^2 + ch sh (2 b_n^dag b_n + 1)
  lab.b2 = ch * ch * sq.b2 + sh * sh * std::conj(sq.b2) + ch * sh * (2.0 * sq.n + 1.0);
  return lab;
}

double order_parameter(const QuantumState& lab_state, const DerivedFrame& frame,
                       const ModelParams& p) {
  const double prefactor = std::exp(-4.0 * frame.r_n) * p.omega / p.Omega;
  return prefactor * occupation(lab_state) / lab_state.amplitudes().squaredNorm();
}

double order_parameter_from_squeezed(const QuantumState& squeezed_state,
                                     const DerivedFrame& frame, const ModelParams& p) {
  const double norm2 = squeezed_state.amplitudes().squaredNorm();
  FieldMoments sq = field_moments(squeezed_state);
  sq.b /= norm2;
  sq.n /= norm2;
  sq.b2 /= norm2;
  const FieldMoments lab = moments_to_lab(sq, frame.r_n);
  return std::exp(-4.0 * frame.r_n) * p.omega / p.Omega * lab.n;
}

double fidelity(const ComplexVector& a, const ComplexVector& b) {
  if (a.size() != b.size()) throw InvalidArgument("fidelity: dimension mismatch");
  return std::norm(a.dot(b));
}

double fidelity(const QuantumState& a, const QuantumState& b) {
  return fidelity(a.amplitudes(), b.amplitudes());
}

double fidelity_mixed(const DensityMatrix& rho, const ComplexVector& pure) {
  if (pure.size() != rho.dim()) throw InvalidArgument("fidelity_mixed: dimension mismatch");
  return pure.dot(rho.entries() * pure).real();
}

std::pair<QuantumState, QuantumState> parity_resolve(const QuantumState& first,
                                                     const QuantumState& second,
                                                     const Operator& parity_op) {
  const ComplexVector& u = first.amplitudes();
  const ComplexVector& v = second.amplitudes();
  const ComplexMatrix pi = parity_op.cast<Complex>();
  Eigen::Matrix2cd proj;
  proj(0, 0) = u.dot(pi * u);
  proj(0, 1) = u.dot(pi * v);
  proj(1, 0) = v.dot(pi * u);
  proj(1, 1) = v.dot(pi * v);
  proj = 0.5 * (proj + proj.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(proj);
  const RealVector ev = solver.eigenvalues();  // ascending: odd first
  if (std::abs(ev(0) + 1.0) > kParityTolerance || std::abs(ev(1) - 1.0) > kParityTolerance) {
    throw ParityMixed("parity_resolve: projected parity eigenvalues (" + std::to_string(ev(0)) +
                      ", " + std::to_string(ev(1)) + ") are not +-1");
  }
  const Eigen::Matrix2cd w = solver.eigenvectors();
  auto combine = [&](int col) {
    ComplexVector out = w(0, col) * u + w(1, col) * v;
    // Fix the global phase so the largest amplitude is real positive.
    Eigen::Index imax = 0;
    out.cwiseAbs().maxCoeff(&imax);
    out *= std::conj(out(imax)) / std::abs(out(imax));
    return QuantumState(first.fock_dim(), out.normalized());
  };
  return {combine(1), combine(0)};
}

QubitProjection project_qubit(const QuantumState& s, const std::array<Complex, 2>& spin) {
  const double spin_norm = std::sqrt(std::norm(spin[0]) + std::norm(spin[1]));
  if (std::abs(spin_norm - 1.0) > 1e-10) {
    throw InvalidArgument("project_qubit: spin vector must be normalized");
  }
  const ComplexVector field = std::conj(spin[0]) * s.field_component(Spin::down) +
                              std::conj(spin[1]) * s.field_component(Spin::up);
  const double probability = field.squaredNorm() / s.amplitudes().squaredNorm();
  if (probability < kProbabilityFloor) {
    throw ZeroNorm("project_qubit: outcome probability " + std::to_string(probability));
  }
  return {field / field.norm(), probability};
}

WignerGrid wigner(const DensityMatrix& rho, const GridSpec& grid, double r_n) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.entries());
  std::vector<ComplexVector> components;
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    const double p = solver.eigenvalues()(i);
    if (p > kEntropyFloor) components.push_back(std::sqrt(p) * solver.eigenvectors().col(i));
  }
  return wigner_of_components(components, grid, r_n);
}

WignerGrid wigner(const ComplexVector& field, const GridSpec& grid, double r_n) {
  return wigner_of_components({field / field.norm()}, grid, r_n);
}

WignerGrid wigner(const QuantumState& s, const GridSpec& grid, double r_n) {
  const double norm = s.norm();
  std::vector<ComplexVector> components;
  for (Spin spin : {Spin::down, Spin::up}) {
    ComplexVector v = s.field_component(spin) / norm;
    if (v.squaredNorm() > kEntropyFloor) components.push_back(std::move(v));
  }
  return wigner_of_components(components, grid, r_n);
}

double wigner_at(const DensityMatrix& rho, Complex a) {
  const HilbertConfig cfg(rho.dim());
  const ComplexMatrix d = displacement(a, cfg).value;
  const ComplexMatrix pi = field_parity(cfg).cast<Complex>();
  const Complex value = (rho.entries() * d * pi * d.adjoint()).trace();
  return 2.0 / std::numbers::pi * value.real();
}

GridSpec covering_grid(const std::vector<ComplexVector>& fields, const GridSpec& base,
                       double r_n) {
  constexpr double kRel = 1e-10;
  std::vector<ComplexVector> momentum;
  momentum.reserve(fields.size());
  for (const auto& f : fields) momentum.push_back(momentum_coefficients(f));
  const double q_half = support_half_width(fields, kRel);
  const double p_half = support_half_width(momentum, kRel);
  // Back to lab-frame quadratures x = exp(r) q / sqrt(2), y = exp(-r) p / sqrt(2).
  const double x_half = std::exp(r_n) * q_half / std::numbers::sqrt2;
  const double y_half = std::exp(-r_n) * p_half / std::numbers::sqrt2;
  GridSpec out = base;
  out.x_min = std::min(base.x_min, -x_half);
  out.x_max = std::max(base.x_max, x_half);
  out.y_min = std::min(base.y_min, -y_half);
  out.y_max = std::max(base.y_max, y_half);
  return out;
}

}  // namespace rabi_qpt
