#pragma once

#include "rabi_qpt/eigensolver.hpp"
#include "rabi_qpt/fock_algebra.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace rabi_qpt {

/// Physical parameters of the hybrid model. Frequencies are in units of the
/// caller's choosing (hbar = 1); chi = 2 lambda / sqrt(Omega omega) is the
/// stored coupling and lambda is derived from it.
struct ModelParams {
  double omega = 1.0;
  double Omega = 1.0;
  double chi = 0.0;
  double alpha = 0.0;
  double g0 = 0.0;
  std::optional<double> omega_a;  // defaults to omega
  int n = 0;

  double lambda() const;
  double ancilla_frequency() const { return omega_a.value_or(omega); }
  /// Throws InvalidArgument on any violated sign constraint.
  void validate() const;
  /// 1 + alpha chi^2 - 4 n g0 / omega; the squeezed frame exists iff > 0.
  double stiffness() const;
};

/// Quantities of the photon-number-dependent squeezed frame.
struct DerivedFrame {
  double r_n;
  double omega_n;
  double lambda_n;
  double C_n;
  double chi_n;

  /// exp(-2 r_n); the critical chi for this n.
  double squeeze_factor() const;
};

enum class Phase { normal, superradiant, critical };

std::string to_string(Phase phase);

DerivedFrame derive_frame(const ModelParams& p);

/// chi_c solving chi^2 = 1 + alpha chi^2 - 4 n g0/omega. Throws
/// NoCriticalPoint when no positive root exists (including alpha == 1).
double critical_chi(const ModelParams& p);

/// True when the superradiant phase lies at chi < chi_c (the reversed
/// transition, alpha > 1).
bool superradiant_below_critical(const ModelParams& p);

Phase classify_phase(const ModelParams& p);

/// n omega_a + (Omega/2) sigma_z + omega b^dag b - lambda (b + b^dag) sigma_x
///   + (alpha lambda^2 / Omega - n g0) (b + b^dag)^2
Operator hamiltonian_original(const ModelParams& p, const HilbertConfig& cfg);

/// (Omega/2) sigma_z + omega_n b_n^dag b_n - lambda_n (b_n + b_n^dag) sigma_x + C_n
/// in the Fock basis of b_n.
Operator hamiltonian_squeezed(const ModelParams& p, const HilbertConfig& cfg);

enum class ParitySector : int { even = +1, odd = -1 };

/// Restriction of hamiltonian_squeezed to one parity sector. Sector states
/// are |m, s> with (-1)^(m+s) fixed, indexed by m, so the chain is
/// tridiagonal.
Tridiagonal hamiltonian_squeezed_sector(const ModelParams& p, const HilbertConfig& cfg,
                                        ParitySector sector);

/// Lift a sector vector (length fock_dim) back to the product space.
QuantumState embed_sector(const RealVector& chain, ParitySector sector);

struct AnalyticNP {
  double l;
  double omega_e;
  double E_g;
  double r_tot;
};

struct AnalyticSP {
  double beta;  // |beta|
  double theta;
  double Omega_tilde;
  double lambda_tilde;
  double l_tilde;
  double omega_e_tilde;
  double E_g_tilde;
  double r_tot_tilde;
};

/// Requires chi_n < 1, else WrongPhase.
AnalyticNP analytic_np(const ModelParams& p);
/// Requires chi_n > 1, else WrongPhase.
AnalyticSP analytic_sp(const ModelParams& p);

/// Order parameter in the Omega/omega -> infinity limit:
/// 0 in the normal phase, (chi_n^2 - chi_n^-2)/4 in the superradiant phase.
double psi_q_analytic(const ModelParams& p);

/// Frame in which a state's field amplitudes are expressed: the Fock basis
/// of b (lab) or of b_n (squeezed).
enum class Frame { lab, squeezed };

enum class Sign : int { plus = +1, minus = -1 };

/// Normalized rotated spin state |down>_+- with amplitudes
/// proportional to (sqrt(1 + chi_n^-2), +-sqrt(1 - chi_n^-2)).
std::array<Complex, 2> sp_spin_state(const ModelParams& p, Sign sign);

/// S(r_n) applied to the field factor: squeezed-frame amplitudes to lab.
Truncated<QuantumState> frame_change_to_b(const QuantumState& squeezed_state,
                                          const ModelParams& p);
/// Inverse map, S(-r_n).
Truncated<QuantumState> frame_change_to_squeezed(const QuantumState& lab_state,
                                                 const ModelParams& p);

/// |G>_np = S(r_n) S(l) |0> |down>.
QuantumState ground_state_np(const ModelParams& p, const HilbertConfig& cfg,
                             Frame frame = Frame::lab);

/// |G>_sp^+- built in the squeezed frame as D(+-|beta|) S(l~) |0> (x) |down>_+-.
std::pair<QuantumState, QuantumState> ground_states_sp(const ModelParams& p,
                                                       const HilbertConfig& cfg,
                                                       Frame frame = Frame::lab);

/// |G>_0 = |0>_b |down>.
QuantumState approx_ground_n0(const ModelParams& p, const HilbertConfig& cfg,
                              Frame frame = Frame::lab);
/// |G>_1 proportional to |G>_sp^+ + |G>_sp^-, renormalized.
QuantumState approx_ground_n1(const ModelParams& p, const HilbertConfig& cfg,
                              Frame frame = Frame::lab);

/// Field-only cat: S(r_n) [D(|beta|) +- D(-|beta|)] S(l~) |0>, renormalized.
/// This is the field factor left in |G>_1 after measuring the qubit.
ComplexVector squeezed_cat(const ModelParams& p, Sign sign, const HilbertConfig& cfg,
                           Frame frame = Frame::lab);

}  // namespace rabi_qpt
