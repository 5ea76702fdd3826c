#pragma once

#include "rabi_qpt/fock_algebra.hpp"
#include "rabi_qpt/model.hpp"

#include <array>
#include <utility>
#include <vector>

namespace rabi_qpt {

/// Hermitian, positive semi-definite, unit-trace field density matrix.
class DensityMatrix {
 public:
  /// Validates the invariants (trace 1 within 1e-10, Hermitian within 1e-12,
  /// min eigenvalue >= -1e-10) and throws InvalidArgument otherwise.
  explicit DensityMatrix(ComplexMatrix entries);

  static DensityMatrix pure(const ComplexVector& field);
  /// p rho1 + (1 - p) rho2.
  static DensityMatrix mixture(double p, const DensityMatrix& rho1, const DensityMatrix& rho2);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const { return entries_; }
  double purity() const;
  /// Ascending eigenvalues.
  RealVector spectrum() const;

 private:
  ComplexMatrix entries_;
};

/// Partial trace over the qubit.
DensityMatrix reduce_to_field(const QuantumState& s);
/// Partial trace over the field; 2x2 in the (down, up) basis.
Eigen::Matrix2cd reduce_to_spin(const QuantumState& s);

/// Eigenvalues below this contribute nothing to the entropy.
inline constexpr double kEntropyFloor = 1e-14;

/// -sum p log2 p over the given probabilities.
double entropy_bits(const RealVector& probabilities);
double entropy(const DensityMatrix& rho);
/// Field-qubit entanglement entropy of a pure state, from the 2x2 qubit
/// reduction (equal to entropy(reduce_to_field(s)) by the Schmidt
/// decomposition).
double entanglement_entropy(const QuantumState& s);

/// <b>, <b^dag b> and <b^2> of the field mode in the frame the state is
/// expressed in.
struct FieldMoments {
  Complex b;
  double n;
  Complex b2;
};

FieldMoments field_moments(const QuantumState& s);
Complex coherence(const QuantumState& s);
double occupation(const QuantumState& s);

/// Lab-frame moments from squeezed-frame ones, using
/// b = cosh(r) b_n + sinh(r) b_n^dag.
FieldMoments moments_to_lab(const FieldMoments& squeezed, double r_n);

/// psi_q = exp(-4 r_n) (omega / Omega) <b^dag b> for a lab-frame state.
double order_parameter(const QuantumState& lab_state, const DerivedFrame& frame,
                       const ModelParams& p);
/// Same quantity for a squeezed-frame state; the frame change is applied to
/// the moments instead of the amplitudes, so it needs no extra truncation
/// headroom.
double order_parameter_from_squeezed(const QuantumState& squeezed_state,
                                     const DerivedFrame& frame, const ModelParams& p);

double fidelity(const QuantumState& a, const QuantumState& b);
double fidelity(const ComplexVector& a, const ComplexVector& b);
/// <psi|rho|psi>.
double fidelity_mixed(const DensityMatrix& rho, const ComplexVector& pure);

/// Rotate two orthonormal states spanning a parity doublet into parity
/// eigenstates. Returns (even, odd). Throws ParityMixed when the projected
/// parity matrix has eigenvalues further than 1e-6 from +-1.
std::pair<QuantumState, QuantumState> parity_resolve(const QuantumState& first,
                                                     const QuantumState& second,
                                                     const Operator& parity_op);

struct QubitProjection {
  ComplexVector field;  // normalized
  double probability;
};

/// Project the qubit onto spin_vector = (c_down, c_up). Throws ZeroNorm when
/// the outcome probability is below 1e-14.
QubitProjection project_qubit(const QuantumState& s, const std::array<Complex, 2>& spin_vector);

// --- Wigner functions -------------------------------------------------------

/// Rectangular grid over the quadratures x = (b + b^dag)/2 and
/// y = -i(b - b^dag)/2.
struct GridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  int nx = 201;
  double y_min = -4.0;
  double y_max = 4.0;
  int ny = 201;
};

struct WignerGrid {
  RealVector x_axis;
  RealVector y_axis;
  RealMatrix values;  // values(ix, iy)
  double cell_area = 0.0;

  double integral() const { return values.sum() * cell_area; }
  double min() const { return values.minCoeff(); }
  double max() const { return values.maxCoeff(); }
};

/// W(x, y) = (2/pi) tr[rho D(a) Pi D(-a)], a = x + i y, for the mode the
/// field amplitudes are expressed in. When those amplitudes are in the
/// squeezed frame, pass its r_n to get the Wigner function of mode b:
/// W_b(x, y) = W_bn(exp(-r_n) x, exp(r_n) y).
///
/// The displaced-parity trace is evaluated in the quadrature
/// representation, where D(a) is a phase-space translation and Pi the
/// reflection q -> -q, so it carries no truncation error beyond the state's
/// own.
WignerGrid wigner(const DensityMatrix& rho, const GridSpec& grid, double r_n = 0.0);
WignerGrid wigner(const ComplexVector& field, const GridSpec& grid, double r_n = 0.0);
/// Wigner function of the field reduction of a product-space state,
/// computed from its two spin components without forming rho.
WignerGrid wigner(const QuantumState& s, const GridSpec& grid, double r_n = 0.0);

/// Direct (2/pi) tr[rho D(a) Pi D(-a)] with D from the truncated matrix
/// exponential; O(dim^3) per point, meant for small truncations.
double wigner_at(const DensityMatrix& rho, Complex a);

/// Widen a grid so it covers the support of the given field components
/// (where the quadrature densities exceed 1e-10 of their peak). Never
/// shrinks the base grid.
GridSpec covering_grid(const std::vector<ComplexVector>& fields, const GridSpec& base,
                       double r_n = 0.0);

}  // namespace rabi_qpt
