#include "rabi_qpt/fock_algebra.hpp"

#include "rabi_qpt/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rabi_qpt {

namespace {

constexpr double kZeroNorm = 1e-14;
constexpr int kTaylorDegree = 18;

template <class Matrix>
Matrix expm_impl(const Matrix& a) {
  if (a.rows() != a.cols()) throw InvalidArgument("expm: generator must be square");
  const double norm = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix scaled = a / std::ldexp(1.0, squarings);

  // Horner evaluation of sum_k scaled^k / k!.
  const Matrix identity = Matrix::Identity(a.rows(), a.cols());
  Matrix result = identity + scaled / static_cast<double>(kTaylorDegree);
  for (int k = kTaylorDegree - 1; k >= 1; --k) {
    result = identity + (scaled * result) / static_cast<double>(k);
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

ComplexVector displacement_generator(Complex a, const ComplexVector& v) {
  const Eigen::Index d = v.size();
  ComplexVector out = ComplexVector::Zero(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    if (m > 0) out(m) += a * std::sqrt(static_cast<double>(m)) * v(m - 1);
    if (m + 1 < d) out(m) -= std::conj(a) * std::sqrt(static_cast<double>(m + 1)) * v(m + 1);
  }
  return out;
}

ComplexVector squeeze_generator(double r, const ComplexVector& v) {
  const Eigen::Index d = v.size();
  ComplexVector out = ComplexVector::Zero(d);
  for (Eigen::Index m = 0; m < d; ++m) {
    const double md = static_cast<double>(m);
    if (m >= 2) out(m) += 0.5 * r * std::sqrt(md * (md - 1.0)) * v(m - 2);
    if (m + 2 < d) out(m) -= 0.5 * r * std::sqrt((md + 1.0) * (md + 2.0)) * v(m + 2);
  }
  return out;
}

}  // namespace

HilbertConfig::HilbertConfig(int fock_dim) : fock_dim_(fock_dim) {
  if (fock_dim < 2) throw InvalidArgument("fock_dim must be >= 2, got " + std::to_string(fock_dim));
}

QuantumState::QuantumState(int fock_dim, ComplexVector amplitudes)
    : fock_dim_(fock_dim), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != 2 * fock_dim_) {
    throw InvalidArgument("QuantumState: expected " + std::to_string(2 * fock_dim_) +
                          " amplitudes, got " + std::to_string(amplitudes_.size()));
  }
}

QuantumState QuantumState::product(const ComplexVector& field, Complex c_down, Complex c_up) {
  const int d = static_cast<int>(field.size());
  ComplexVector amps(2 * d);
  for (int m = 0; m < d; ++m) {
    amps(product_index(m, Spin::down)) = field(m) * c_down;
    amps(product_index(m, Spin::up)) = field(m) * c_up;
  }
  return QuantumState(d, std::move(amps));
}

QuantumState QuantumState::basis(int fock_dim, int m, Spin s) {
  ComplexVector amps = ComplexVector::Zero(2 * fock_dim);
  amps(product_index(m, s)) = 1.0;
  return QuantumState(fock_dim, std::move(amps));
}

ComplexVector QuantumState::field_component(Spin s) const {
  ComplexVector out(fock_dim_);
  for (int m = 0; m < fock_dim_; ++m) out(m) = amplitudes_(product_index(m, s));
  return out;
}

QuantumState QuantumState::normalized() const {
  const double n = norm();
  if (n < kZeroNorm) throw ZeroNorm("cannot normalize a state with norm " + std::to_string(n));
  return QuantumState(fock_dim_, amplitudes_ / n);
}

QuantumState QuantumState::operator+(const QuantumState& other) const {
  if (other.fock_dim_ != fock_dim_) throw InvalidArgument("QuantumState: fock_dim mismatch");
  return QuantumState(fock_dim_, amplitudes_ + other.amplitudes_);
}

QuantumState QuantumState::operator*(Complex factor) const {
  return QuantumState(fock_dim_, amplitudes_ * factor);
}

ComplexVector fock_state(int fock_dim, int m) {
  if (m < 0 || m >= fock_dim) throw InvalidArgument("fock_state: level outside truncation");
  ComplexVector v = ComplexVector::Zero(fock_dim);
  v(m) = 1.0;
  return v;
}

Operator annihilation(const HilbertConfig& cfg) {
  const int d = cfg.fock_dim();
  Operator b = Operator::Zero(d, d);
  for (int m = 1; m < d; ++m) b(m - 1, m) = std::sqrt(static_cast<double>(m));
  return b;
}

Operator creation(const HilbertConfig& cfg) { return annihilation(cfg).transpose(); }

Operator number(const HilbertConfig& cfg) {
  const int d = cfg.fock_dim();
  Operator n = Operator::Zero(d, d);
  for (int m = 0; m < d; ++m) n(m, m) = m;
  return n;
}

Operator quadrature_sum(const HilbertConfig& cfg) {
  const Operator b = annihilation(cfg);
  return b + b.transpose();
}

Operator field_parity(const HilbertConfig& cfg) {
  const int d = cfg.fock_dim();
  Operator p = Operator::Zero(d, d);
  for (int m = 0; m < d; ++m) p(m, m) = (m % 2 == 0) ? 1.0 : -1.0;
  return p;
}

Operator spin_operator(Pauli which, const HilbertConfig& cfg) {
  Eigen::Matrix2d sigma = Eigen::Matrix2d::Zero();
  // Spin index 0 = down, 1 = up; sigma_+ = |up><down|.
  switch (which) {
    case Pauli::x: sigma << 0, 1, 1, 0; break;
    case Pauli::z: sigma << -1, 0, 0, 1; break;
    case Pauli::plus: sigma(1, 0) = 1; break;
    case Pauli::minus: sigma(0, 1) = 1; break;
  }
  const int d = cfg.fock_dim();
  Operator out = Operator::Zero(2 * d, 2 * d);
  for (int m = 0; m < d; ++m) out.block<2, 2>(2 * m, 2 * m) = sigma;
  return out;
}

Operator lift_field(const Operator& field_op) {
  const Eigen::Index d = field_op.rows();
  Operator out = Operator::Zero(2 * d, 2 * d);
  for (Eigen::Index j = 0; j < d; ++j) {
    for (Eigen::Index i = 0; i < d; ++i) {
      const double v = field_op(i, j);
      if (v == 0.0) continue;
      out(2 * i, 2 * j) = v;
      out(2 * i + 1, 2 * j + 1) = v;
    }
  }
  return out;
}

Operator parity(const HilbertConfig& cfg) {
  const int n = cfg.product_dim();
  Operator p = Operator::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    // i = 2m + s, so m + s and i have the same parity up to m: (-1)^(m+s).
    const int m = i / 2;
    const int s = i % 2;
    p(i, i) = ((m + s) % 2 == 0) ? 1.0 : -1.0;
  }
  return p;
}

double symmetry_defect(const Operator& op) {
  if (op.rows() != op.cols()) return INFINITY;
  return (op - op.transpose()).cwiseAbs().maxCoeff();
}

double edge_weight(const ComplexVector& field) {
  const Eigen::Index d = field.size();
  const Eigen::Index window = std::max<Eigen::Index>(1, d / 10);
  return field.tail(window).squaredNorm();
}

ComplexMatrix expm(const ComplexMatrix& generator) { return expm_impl(generator); }
RealMatrix expm(const RealMatrix& generator) { return expm_impl(generator); }

Truncated<ComplexMatrix> displacement(Complex amplitude, const HilbertConfig& cfg) {
  const Operator b = annihilation(cfg);
  const ComplexMatrix gen =
      amplitude * b.transpose().cast<Complex>() - std::conj(amplitude) * b.cast<Complex>();
  ComplexMatrix d = expm(gen);
  const ComplexVector vacuum_image = d.col(0);
  return {std::move(d), {edge_weight(vacuum_image)}};
}

Truncated<RealMatrix> squeeze(double r, const HilbertConfig& cfg) {
  const Operator b = annihilation(cfg);
  const RealMatrix b2 = b * b;
  const RealMatrix gen = 0.5 * r * (b2.transpose() - b2);
  RealMatrix s = expm(gen);
  const ComplexVector vacuum_image = s.col(0).cast<Complex>();
  return {std::move(s), {edge_weight(vacuum_image)}};
}

ComplexVector expm_multiply(const std::function<ComplexVector(const ComplexVector&)>& generator,
                            double norm_bound, const ComplexVector& v) {
  const int steps = std::max(1, static_cast<int>(std::ceil(norm_bound)));
  const double h = 1.0 / steps;
  ComplexVector acc = v;
  for (int step = 0; step < steps; ++step) {
    ComplexVector term = acc;
    ComplexVector next = acc;
    const double ref = acc.norm();
    for (int k = 1; k <= 60; ++k) {
      term = generator(term) * (h / k);
      next += term;
      if (term.norm() <= 1e-17 * ref) break;
    }
    acc = std::move(next);
  }
  return acc;
}

Truncated<ComplexVector> apply_displacement(Complex amplitude, const ComplexVector& field) {
  const double d = static_cast<double>(field.size());
  const double bound = 2.0 * std::abs(amplitude) * std::sqrt(d);
  ComplexVector out = expm_multiply(
      [amplitude](const ComplexVector& v) { return displacement_generator(amplitude, v); }, bound,
      field);
  const double w = edge_weight(out);
  return {std::move(out), {w}};
}

Truncated<ComplexVector> apply_squeeze(double r, const ComplexVector& field) {
  const double d = static_cast<double>(field.size());
  const double bound = std::abs(r) * d;
  ComplexVector out = expm_multiply(
      [r](const ComplexVector& v) { return squeeze_generator(r, v); }, bound, field);
  const double w = edge_weight(out);
  return {std::move(out), {w}};
}

}  // namespace rabi_qpt
