#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>

namespace rabi_qpt {

using Complex = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Every operator the model builds is real; Hermitian therefore means
/// symmetric. Complex unitaries (displacements) use ComplexMatrix.
using Operator = RealMatrix;

/// Truncation of the bosonic mode: Fock levels m = 0 .. fock_dim-1,
/// tensored with a spin-1/2.
class HilbertConfig {
 public:
  explicit HilbertConfig(int fock_dim);

  int fock_dim() const { return fock_dim_; }
  int product_dim() const { return 2 * fock_dim_; }

 private:
  int fock_dim_;
};

enum class Spin : int { down = 0, up = 1 };

/// Basis ordering of the product space: index(m, s) = 2m + s.
constexpr int product_index(int m, Spin s) { return 2 * m + static_cast<int>(s); }

/// Amplitudes over the Fock x spin product basis.
class QuantumState {
 public:
  QuantumState(int fock_dim, ComplexVector amplitudes);

  /// |field> (x) (c_down |down> + c_up |up>).
  static QuantumState product(const ComplexVector& field, Complex c_down, Complex c_up);
  static QuantumState basis(int fock_dim, int m, Spin s);

  int fock_dim() const { return fock_dim_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(int m, Spin s) const { return amplitudes_(product_index(m, s)); }

  /// Unnormalized field vector <s|psi>.
  ComplexVector field_component(Spin s) const;

  double norm() const { return amplitudes_.norm(); }
  /// Throws ZeroNorm below 1e-14.
  QuantumState normalized() const;

  QuantumState operator+(const QuantumState& other) const;
  QuantumState operator*(Complex factor) const;

 private:
  int fock_dim_;
  ComplexVector amplitudes_;
};

/// Field vectors are plain ComplexVector of length fock_dim.
ComplexVector fock_state(int fock_dim, int m);

// --- Field operators (fock_dim x fock_dim) ---------------------------------

Operator annihilation(const HilbertConfig& cfg);
Operator creation(const HilbertConfig& cfg);
Operator number(const HilbertConfig& cfg);
/// b + b^dagger. Its square is formed inside the same truncation, so the
/// last diagonal entry is 2m+1 - (m+1) = m rather than 2m+1.
Operator quadrature_sum(const HilbertConfig& cfg);
/// (-1)^m on the field alone.
Operator field_parity(const HilbertConfig& cfg);

// --- Product-space operators (2 fock_dim square) ----------------------------

enum class Pauli { x, z, plus, minus };

/// identity_field (x) sigma.
Operator spin_operator(Pauli which, const HilbertConfig& cfg);
/// field_op (x) identity_spin.
Operator lift_field(const Operator& field_op);
/// Pi = exp(i pi (b^dagger b + (sigma_z + 1)/2)); diagonal (-1)^(m+s).
Operator parity(const HilbertConfig& cfg);

/// max_ij |A_ij - A_ji|.
double symmetry_defect(const Operator& op);

// --- Exponentials of truncated generators ------------------------------------

/// Weight of a field vector in the top decile of Fock levels; large values
/// mean the truncation is cutting into the state.
double edge_weight(const ComplexVector& field);

/// Threshold above which a truncated construction is flagged.
inline constexpr double kTruncationThreshold = 1e-6;

struct TruncationReport {
  double edge_weight = 0.0;
  bool warning() const { return edge_weight > kTruncationThreshold; }
};

template <class Value>
struct Truncated {
  Value value;
  TruncationReport report;
};

/// exp(A) by scaling and squaring around a degree-18 Taylor polynomial.
ComplexMatrix expm(const ComplexMatrix& generator);
RealMatrix expm(const RealMatrix& generator);

/// D(a) = exp(a b^dagger - a* b) on the truncated space. The report holds
/// the edge weight of D(a)|0>.
Truncated<ComplexMatrix> displacement(Complex amplitude, const HilbertConfig& cfg);
/// S(r) = exp(r (b^dagger^2 - b^2) / 2). The report holds the edge weight of
/// S(r)|0>.
Truncated<RealMatrix> squeeze(double r, const HilbertConfig& cfg);

/// D(a) v without forming the matrix (Taylor sub-stepping on the banded
/// generator). Same truncated operator as displacement().
Truncated<ComplexVector> apply_displacement(Complex amplitude, const ComplexVector& field);
/// S(r) v without forming the matrix.
Truncated<ComplexVector> apply_squeeze(double r, const ComplexVector& field);

/// exp(G) v for a generator given by its action and a bound on its 1-norm.
ComplexVector expm_multiply(const std::function<ComplexVector(const ComplexVector&)>& generator,
                            double norm_bound, const ComplexVector& v);

}  // namespace rabi_qpt
