#pragma once

#include "rabi_qpt/fock_algebra.hpp"

#include <vector>

namespace rabi_qpt {

struct EigenResult {
  RealVector values;   // ascending
  RealMatrix vectors;  // one orthonormal column per value
  RealVector residuals;

  double max_residual() const { return residuals.size() ? residuals.maxCoeff() : 0.0; }
};

inline constexpr double kDefaultEigenTolerance = 1e-9;

/// Lowest k eigenpairs of a dense real-symmetric matrix (tridiagonal
/// reduction followed by implicit QR). Throws NotSymmetric if the input is
/// asymmetric beyond 1e-12 and NoConvergence if a residual exceeds tol.
EigenResult lowest_eigenpairs(const Operator& h, int k, double tol = kDefaultEigenTolerance);

/// Symmetric tridiagonal matrix: diagonal d (size n) and off-diagonal e
/// (size n-1, e(i) couples i and i+1).
struct Tridiagonal {
  RealVector diagonal;
  RealVector off_diagonal;

  Eigen::Index size() const { return diagonal.size(); }
  RealVector multiply(const RealVector& v) const;
  RealMatrix to_dense() const;
};

/// Lowest k eigenvalues by Sturm-sequence bisection; vectors by inverse
/// iteration with Gram-Schmidt inside clusters. Costs O(k n) per sweep, so
/// truncations of several thousand levels are cheap.
EigenResult lowest_eigenpairs(const Tridiagonal& t, int k, double tol = kDefaultEigenTolerance);
/// Eigenvalues only; residuals are left empty.
RealVector lowest_eigenvalues(const Tridiagonal& t, int k);

/// Number of eigenvalues strictly below x.
Eigen::Index sturm_count(const Tridiagonal& t, double x);

struct GroundPair {
  double e0;
  double e1;
  double gap;
};

GroundPair ground_pair_gap(const Operator& h, double tol = kDefaultEigenTolerance);

/// Default near-degeneracy threshold 1e-8 * max(|e0|, 1).
double degeneracy_tolerance(double e0);

}  // namespace rabi_qpt
