#pragma once

#include "rabi_qpt/eigensolver.hpp"
#include "rabi_qpt/model.hpp"
#include "rabi_qpt/observables.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rabi_qpt {

enum class Quantity {
  psi_q_numeric,
  psi_q_analytic,
  entropy,
  gap,
  coherence,
  ground_energy,
  Omega_over_omega_n,
};

std::string to_string(Quantity q);
/// Throws InvalidArgument on an unknown name.
Quantity parse_quantity(const std::string& name);
const std::vector<Quantity>& all_quantities();

/// Sweepable parameters, all as ratios to omega.
enum class AxisParameter { chi, g0_over_omega, Omega_over_omega };

std::string to_string(AxisParameter a);
AxisParameter parse_axis_parameter(const std::string& name);

struct SweepAxis {
  AxisParameter parameter = AxisParameter::chi;
  std::vector<double> values;
};

struct SweepSpec {
  ModelParams base;
  SweepAxis axis1;
  std::optional<SweepAxis> axis2;
  std::vector<int> n_values{0};
  int fock_dim = 1000;
  std::vector<Quantity> quantities;

  void validate() const;
};

enum class RowFlag { ok, truncation, frame_undefined, error };

std::string to_string(RowFlag f);

struct SweepRow {
  double axis1 = 0.0;
  std::optional<double> axis2;
  int n = 0;
  Quantity quantity = Quantity::ground_energy;
  std::optional<double> value;  // empty for null rows
  RowFlag flag = RowFlag::ok;
  double residual = 0.0;
  std::string reason;
};

struct SweepResult {
  std::vector<SweepRow> rows;

  /// Rows that failed for reasons other than an undefined frame.
  int hard_errors() const;
};

ModelParams with_axis_value(ModelParams p, AxisParameter axis, double value);

/// Numerical ground-state data of one parameter point, solved per parity
/// sector of the squeezed-frame Hamiltonian.
struct PointSolution {
  ModelParams params;
  DerivedFrame frame{};
  EigenResult even;
  EigenResult odd;
  double e0 = 0.0;
  double e1 = 0.0;
  /// The two sector ground energies are within degeneracy_tolerance(e0).
  bool degenerate = false;
  /// Canonical ground state in the squeezed frame: the lower sector's
  /// ground state, or the parity-even one when the doublet is degenerate.
  QuantumState ground{2, ComplexVector::Zero(4)};
  QuantumState odd_ground{2, ComplexVector::Zero(4)};
  double max_residual = 0.0;
  double edge_weight = 0.0;
};

/// Solve the squeezed-frame Hamiltonian at one point (lowest two levels of
/// each parity sector). Throws FrameUndefined.
PointSolution solve_point(const ModelParams& p, const HilbertConfig& cfg,
                          double tol = kDefaultEigenTolerance);

double evaluate_quantity(const PointSolution& s, Quantity q);

/// Grid points run concurrently (threads <= 0: RABI_QPT_THREADS or the
/// hardware concurrency); rows are ordered by (axis1, axis2, n, quantity)
/// index regardless of scheduling.
SweepResult run_sweep(const SweepSpec& spec, int threads = 0);

/// Worker count from RABI_QPT_THREADS, falling back to the hardware.
int default_thread_count();

struct ConvergenceRow {
  int fock_dim;
  double ground_energy;
  double psi_q;
  double delta_energy;  // relative to the previous row; 0 for the first
  double delta_psi_q;
  double edge_weight;
};

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// Successive |differences| never grow.
  bool monotone = true;
  /// |delta| of the last step, absolute.
  double final_energy_change = 0.0;
  double final_psi_q_change = 0.0;
};

ConvergenceReport convergence_study(const ModelParams& p, const std::vector<int>& fock_dims);

/// E1 - E0 inside the parity-even sector. Unlike the overall gap, which
/// closes exponentially once the doublet forms, this gap has its minimum at
/// the transition.
double sector_gap(const ModelParams& p, const HilbertConfig& cfg);

struct GapMinimum {
  double Omega_over_omega;
  double chi;
  double gap;
};

struct GapSearch {
  double chi_lo;
  double chi_hi;
  int coarse_points = 41;
  double resolution = 1e-4;
  int fock_dim = 1500;
};

/// Coarse scan of sector_gap over chi, then golden-section refinement to
/// the requested resolution. Points where the frame is undefined count as
/// +infinity.
std::vector<GapMinimum> gap_minimum_locator(const ModelParams& p, const GapSearch& search,
                                            const std::vector<double>& omega_ratios);

}  // namespace rabi_qpt
