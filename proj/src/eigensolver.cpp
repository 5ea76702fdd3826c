#include "rabi_qpt/eigensolver.hpp"

#include "rabi_qpt/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace rabi_qpt {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSymmetryTolerance = 1e-12;

void fix_sign(Eigen::Ref<RealVector> v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
}

double tridiagonal_norm(const Tridiagonal& t) {
  const Eigen::Index n = t.size();
  double norm = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = std::abs(t.diagonal(i));
    if (i > 0) row += std::abs(t.off_diagonal(i - 1));
    if (i + 1 < n) row += std::abs(t.off_diagonal(i));
    norm = std::max(norm, row);
  }
  return norm;
}

// LU factorization with partial pivoting of (T - shift I), following the
// layout of LAPACK dgttrf: after elimination U has diagonal d, first
// super-diagonal du and second super-diagonal du2.
class ShiftedTridiagonalLU {
 public:
  ShiftedTridiagonalLU(const Tridiagonal& t, double shift, double pivot_floor) {
    const Eigen::Index n = t.size();
    d_ = t.diagonal.array() - shift;
    dl_ = t.off_diagonal;
    du_ = t.off_diagonal;
    du2_ = RealVector::Zero(std::max<Eigen::Index>(n - 2, 0));
    swapped_.assign(static_cast<std::size_t>(n), false);
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (std::abs(d_(i)) >= std::abs(dl_(i))) {
        if (d_(i) == 0.0) d_(i) = pivot_floor;
        const double f = dl_(i) / d_(i);
        dl_(i) = f;
        d_(i + 1) -= f * du_(i);
      } else {
        // Swap rows i and i+1.
        swapped_[static_cast<std::size_t>(i)] = true;
        const double f = d_(i) / dl_(i);
        d_(i) = dl_(i);
        dl_(i) = f;
        const double tmp = du_(i);
        du_(i) = d_(i + 1);
        d_(i + 1) = tmp - f * d_(i + 1);
        if (i + 2 < n) {
          du2_(i) = du_(i + 1);
          du_(i + 1) = -f * du_(i + 1);
        }
      }
    }
    if (n > 0 && d_(n - 1) == 0.0) d_(n - 1) = pivot_floor;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (std::abs(d_(i)) < pivot_floor) d_(i) = std::copysign(pivot_floor, d_(i));
    }
  }

  RealVector solve(RealVector b) const {
    const Eigen::Index n = d_.size();
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (swapped_[static_cast<std::size_t>(i)]) {
        const double tmp = b(i);
        b(i) = b(i + 1);
        b(i + 1) = tmp - dl_(i) * b(i);
      } else {
        b(i + 1) -= dl_(i) * b(i);
      }
    }
    for (Eigen::Index i = n - 1; i >= 0; --i) {
      double s = b(i);
      if (i + 1 < n) s -= du_(i) * b(i + 1);
      if (i + 2 < n) s -= du2_(i) * b(i + 2);
      b(i) = s / d_(i);
    }
    return b;
  }

 private:
  RealVector d_, dl_, du_, du2_;
  std::vector<bool> swapped_;
};

double bisect_eigenvalue(const Tridiagonal& t, Eigen::Index j, double lo, double hi) {
  // Invariant: sturm_count(lo) <= j < sturm_count(hi).
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + 1e-300) break;
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > j) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> gershgorin(const Tridiagonal& t) {
  const Eigen::Index n = t.size();
  double lo = INFINITY;
  double hi = -INFINITY;
  for (Eigen::Index i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off_diagonal(i - 1));
    if (i + 1 < n) radius += std::abs(t.off_diagonal(i));
    lo = std::min(lo, t.diagonal(i) - radius);
    hi = std::max(hi, t.diagonal(i) + radius);
  }
  const double pad = 2.0 * kEps * std::max(std::abs(lo), std::abs(hi)) + 1e-300;
  return {lo - pad, hi + pad};
}

void check_tridiagonal(const Tridiagonal& t, int k) {
  const Eigen::Index n = t.size();
  if (n == 0) throw InvalidArgument("tridiagonal eigensolver: empty matrix");
  if (t.off_diagonal.size() != n - 1) {
    throw InvalidArgument("tridiagonal eigensolver: off-diagonal must have size n-1");
  }
  if (k < 1 || k > n) {
    throw InvalidArgument("tridiagonal eigensolver: k=" + std::to_string(k) + " outside [1, " +
                          std::to_string(n) + "]");
  }
}

}  // namespace

RealVector Tridiagonal::multiply(const RealVector& v) const {
  const Eigen::Index n = size();
  RealVector out = diagonal.cwiseProduct(v);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    out(i) += off_diagonal(i) * v(i + 1);
    out(i + 1) += off_diagonal(i) * v(i);
  }
  return out;
}

RealMatrix Tridiagonal::to_dense() const {
  const Eigen::Index n = size();
  RealMatrix m = RealMatrix::Zero(n, n);
  m.diagonal() = diagonal;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    m(i, i + 1) = off_diagonal(i);
    m(i + 1, i) = off_diagonal(i);
  }
  return m;
}

Eigen::Index sturm_count(const Tridiagonal& t, double x) {
  const Eigen::Index n = t.size();
  const double pivmin = std::numeric_limits<double>::min() * 1e10;
  Eigen::Index count = 0;
  double q = t.diagonal(0) - x;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0) ++count;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double e = t.off_diagonal(i - 1);
    q = t.diagonal(i) - x - e * e / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0) ++count;
  }
  return count;
}

RealVector lowest_eigenvalues(const Tridiagonal& t, int k) {
  check_tridiagonal(t, k);
  const auto [lo, hi] = gershgorin(t);
  RealVector values(k);
  double floor = lo;
  for (int j = 0; j < k; ++j) {
    values(j) = bisect_eigenvalue(t, j, floor, hi);
    // Eigenvalues are ascending, so the previous one bounds the next from
    // below; step back one ulp to keep the bracket invariant.
    floor = std::nextafter(values(j), -INFINITY);
    if (sturm_count(t, floor) > j + 1) floor = lo;
  }
  return values;
}

EigenResult lowest_eigenpairs(const Tridiagonal& t, int k, double tol) {
  const RealVector values = lowest_eigenvalues(t, k);
  const Eigen::Index n = t.size();
  const double norm = std::max(tridiagonal_norm(t), 1e-300);
  const double pivot_floor = kEps * norm;
  const double cluster_gap = 1e-3 * norm;

  RealMatrix vectors(n, k);
  RealVector residuals(k);
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);

  for (int j = 0; j < k; ++j) {
    const double lambda = values(j);
    const ShiftedTridiagonalLU lu(t, lambda, pivot_floor);
    RealVector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = uniform(rng);
    x.normalize();

    double residual = INFINITY;
    for (int iter = 0; iter < 10; ++iter) {
      x = lu.solve(x);
      for (int prev = 0; prev < j; ++prev) {
        if (std::abs(values(prev) - lambda) < cluster_gap) {
          x -= vectors.col(prev).dot(x) * vectors.col(prev);
        }
      }
      const double xn = x.norm();
      if (!(xn > 0.0) || !std::isfinite(xn)) {
        throw NoConvergence("inverse iteration broke down for eigenvalue " + std::to_string(j));
      }
      x /= xn;
      residual = (t.multiply(x) - lambda * x).norm();
      if (iter >= 1 && residual <= std::min(0.01 * tol, 100.0 * kEps * norm)) break;
    }
    if (residual > tol) {
      throw NoConvergence("inverse iteration: residual " + std::to_string(residual) +
                          " exceeds tolerance for eigenvalue " + std::to_string(j));
    }
    fix_sign(x);
    vectors.col(j) = x;
    residuals(j) = residual;
  }
  return {values, std::move(vectors), std::move(residuals)};
}

EigenResult lowest_eigenpairs(const Operator& h, int k, double tol) {
  if (h.rows() != h.cols()) throw NotSymmetric("eigensolver: matrix is not square");
  if (k < 1 || k > h.rows()) {
    throw InvalidArgument("eigensolver: k=" + std::to_string(k) + " outside [1, " +
                          std::to_string(h.rows()) + "]");
  }
  const double defect = symmetry_defect(h);
  if (defect > kSymmetryTolerance) {
    throw NotSymmetric("eigensolver: asymmetry " + std::to_string(defect) + " exceeds 1e-12");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(h, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NoConvergence("eigensolver: implicit QR iteration did not converge (dim " +
                        std::to_string(h.rows()) + ")");
  }
  EigenResult out;
  out.values = solver.eigenvalues().head(k);
  out.vectors = solver.eigenvectors().leftCols(k);
  out.residuals.resize(k);
  for (int j = 0; j < k; ++j) {
    fix_sign(out.vectors.col(j));
    out.residuals(j) = (h * out.vectors.col(j) - out.values(j) * out.vectors.col(j)).norm();
    if (out.residuals(j) > tol) {
      throw NoConvergence("eigensolver: residual " + std::to_string(out.residuals(j)) +
                          " exceeds tolerance for eigenpair " + std::to_string(j));
    }
  }
  return out;
}

GroundPair ground_pair_gap(const Operator& h, double tol) {
  const EigenResult r = lowest_eigenpairs(h, 2, tol);
  return {r.values(0), r.values(1), r.values(1) - r.values(0)};
}

double degeneracy_tolerance(double e0) { return 1e-8 * std::max(std::abs(e0), 1.0); }

}  // namespace rabi_qpt
