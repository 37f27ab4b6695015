#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gausslab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Tolerances for orthonormality: tight at construction, looser for
// round-trip checks that accumulate Gram-Schmidt drift.
inline constexpr double kOrthoConstructTol = 1e-12;
inline constexpr double kOrthoRoundTripTol = 1e-10;

// A u_j/v_j index pair on a doubled frame (phase-space bookkeeping).
struct PhasePair {
  int u;
  int v;
};

// Finite truncation of the Hilbert basis (e_j), 0 <= j < dim.  A frame may
// carry a phase pairing marking index pairs as (u_j, v_j); the index set
// Gamma is then the set of pairs, otherwise the plain index range.
class OrthonormalFrame {
 public:
  explicit OrthonormalFrame(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("frame dim must be >= 1");
  }

  OrthonormalFrame(int dim, std::vector<PhasePair> pairs)
      : dim_(dim), pairs_(std::move(pairs)) {
    if (dim < 1) throw std::invalid_argument("frame dim must be >= 1");
    std::vector<bool> seen(static_cast<size_t>(dim), false);
    for (const auto& p : pairs_) {
      if (p.u < 0 || p.u >= dim || p.v < 0 || p.v >= dim || p.u == p.v)
        throw std::invalid_argument("invalid phase pair");
      if (seen[static_cast<size_t>(p.u)] || seen[static_cast<size_t>(p.v)])
        throw std::invalid_argument("index appears in more than one phase pair");
      seen[static_cast<size_t>(p.u)] = seen[static_cast<size_t>(p.v)] = true;
    }
  }

  // Doubled frame of dimension 2n modeling H^2, pairs (2j, 2j+1).
  static OrthonormalFrame doubled(int pair_count) {
    std::vector<PhasePair> pairs;
    pairs.reserve(static_cast<size_t>(pair_count));
    for (int j = 0; j < pair_count; ++j) pairs.push_back({2 * j, 2 * j + 1});
    return OrthonormalFrame(2 * pair_count, std::move(pairs));
  }

  int dim() const { return dim_; }
  bool paired() const { return !pairs_.empty(); }

  // Size of the index set Gamma: pairs when paired, plain indices otherwise.
  int gamma_size() const {
    return paired() ? static_cast<int>(pairs_.size()) : dim_;
  }

  // Gamma index j -> (u index, v index); v == -1 on an unpaired frame.
  PhasePair gamma(int j) const {
    if (paired()) return pairs_[static_cast<size_t>(j)];
    return {j, -1};
  }

  Vec basis_vector(int j) const {
    Vec e = Vec::Zero(dim_);
    e[j] = 1.0;
    return e;
  }

 private:
  int dim_;
  std::vector<PhasePair> pairs_;
};

// Finite-dimensional subspace E, stored as orthonormal basis columns.
class Subspace {
 public:
  explicit Subspace(Mat basis) : basis_(std::move(basis)) {
    if (basis_.cols() > 0) {
      Mat gram = basis_.transpose() * basis_;
      double err = (gram - Mat::Identity(basis_.cols(), basis_.cols()))
                       .cwiseAbs()
                       .maxCoeff();
      if (err > kOrthoConstructTol)
        throw std::invalid_argument("subspace basis is not orthonormal");
    }
  }

  static Subspace zero(int ambient_dim) {
    return Subspace(Mat::Zero(ambient_dim, 0));
  }

  // span(e_0 .. e_{r-1})
  static Subspace coordinate(int ambient_dim, int r) {
    return Subspace(Mat::Identity(ambient_dim, ambient_dim).leftCols(r));
  }

  static Subspace full(int ambient_dim) {
    return coordinate(ambient_dim, ambient_dim);
  }

  int ambient_dim() const { return static_cast<int>(basis_.rows()); }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const { return basis_; }

  bool is_full() const { return dim() == ambient_dim(); }

  // pi_E(x) = sum_k <x, b_k> b_k
  Vec project(const Vec& x) const {
    if (x.size() != basis_.rows())
      throw std::invalid_argument("project: dimension mismatch");
    if (basis_.cols() == 0) return Vec::Zero(x.size());
    return basis_ * (basis_.transpose() * x);
  }

 private:
  Mat basis_;
};

inline Vec project(const Subspace& E, const Vec& x) { return E.project(x); }

class OrthogonalMap;

// Selfadjoint nonnegative trace-class operator A, stored by its nonzero
// eigenpairs (kernel directions implicit).
class TraceClassOperator {
 public:
  TraceClassOperator(Vec eigenvalues, Mat eigenvectors)
      : lambda_(std::move(eigenvalues)), u_(std::move(eigenvectors)) {
    if (lambda_.size() != u_.cols())
      throw std::invalid_argument("eigenvalue/eigenvector count mismatch");
    for (int j = 0; j < lambda_.size(); ++j) {
      if (!(lambda_[j] >= 0.0))
        throw std::invalid_argument("eigenvalues must be nonnegative");
      if (j > 0 && lambda_[j] > lambda_[j - 1] + kOrthoConstructTol)
        throw std::invalid_argument("eigenvalues must be nonincreasing");
    }
    if (u_.cols() > 0) {
      Mat gram = u_.transpose() * u_;
      double err =
          (gram - Mat::Identity(u_.cols(), u_.cols())).cwiseAbs().maxCoeff();
      if (err > kOrthoConstructTol)
        throw std::invalid_argument("eigenvectors are not orthonormal");
    }
  }

  static TraceClassOperator zero(int ambient_dim) {
    return TraceClassOperator(Vec::Zero(0), Mat::Zero(ambient_dim, 0));
  }

  // a a^T: single eigenvalue |a|^2 with eigenvector a/|a|.
  static TraceClassOperator rank_one(const Vec& a) {
    double n = a.norm();
    if (n == 0.0) return zero(static_cast<int>(a.size()));
    Vec lambda(1);
    lambda[0] = n * n;
    Mat u(a.size(), 1);
    u.col(0) = a / n;
    return TraceClassOperator(lambda, u);
  }

  // Eigendecomposition of a dense symmetric nonnegative matrix, dropping
  // eigenvalues below tol.
  static TraceClassOperator from_dense(const Mat& m, double tol = 1e-12);

  int ambient_dim() const { return static_cast<int>(u_.rows()); }
  int rank() const { return static_cast<int>(lambda_.size()); }
  const Vec& eigenvalues() const { return lambda_; }
  const Mat& eigenvectors() const { return u_; }
  Vec eigenvector(int j) const { return u_.col(j); }

  double trace() const { return lambda_.sum(); }

  Mat dense() const {
    return u_ * lambda_.asDiagonal() * u_.transpose();
  }

  // Q_A(x) = <Ax, x> = sum_j lambda_j <u_j, x>^2
  double q_form(const Vec& x) const {
    if (x.size() != u_.rows())
      throw std::invalid_argument("q_form: dimension mismatch");
    if (rank() == 0) return 0.0;
    Vec c = u_.transpose() * x;
    return (lambda_.array() * c.array().square()).sum();
  }

  double a_norm(const Vec& x) const { return std::sqrt(q_form(x)); }

  TraceClassOperator scaled(double c) const {
    if (!(c >= 0.0)) throw std::invalid_argument("scale must be nonnegative");
    return TraceClassOperator(c * lambda_, u_);
  }

  // phi^* A phi
  TraceClassOperator conjugated(const OrthogonalMap& phi) const;

 private:
  Vec lambda_;
  Mat u_;
};

inline double q_form(const TraceClassOperator& a, const Vec& x) {
  return a.q_form(x);
}
inline double a_norm(const TraceClassOperator& a, const Vec& x) {
  return a.a_norm(x);
}

// Nonnegative weights eps_j attached to frame indices, with cached sums.
class EpsilonSequence {
 public:
  explicit EpsilonSequence(Vec values) : values_(std::move(values)) {
    for (int j = 0; j < values_.size(); ++j)
      if (!(values_[j] >= 0.0))
        throw std::invalid_argument("epsilon values must be nonnegative");
    sum_ = values_.sum();
    sum_sq_ = values_.squaredNorm();
  }

  // eps_j = first * ratio^j
  static EpsilonSequence geometric(int n, double ratio = 0.5,
                                   double first = 1.0) {
    Vec v(n);
    double x = first;
    for (int j = 0; j < n; ++j, x *= ratio) v[j] = x;
    return EpsilonSequence(v);
  }

  int size() const { return static_cast<int>(values_.size()); }
  double operator[](int j) const { return values_[j]; }
  const Vec& values() const { return values_; }
  double sum() const { return sum_; }
  double sum_sq() const { return sum_sq_; }

  // eps attached to the Gamma index j of the frame (the u member's entry;
  // paired frames are built with equal eps on both pair members).
  double gamma_value(const OrthonormalFrame& frame, int j) const {
    return values_[frame.gamma(j).u];
  }

  double gamma_sum(const OrthonormalFrame& frame) const {
    double s = 0.0;
    for (int j = 0; j < frame.gamma_size(); ++j) s += gamma_value(frame, j);
    return s;
  }

  double gamma_sum_sq(const OrthonormalFrame& frame) const {
    double s = 0.0;
    for (int j = 0; j < frame.gamma_size(); ++j) {
      double e = gamma_value(frame, j);
      s += e * e;
    }
    return s;
  }

 private:
  Vec values_;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

// phi with phi phi^* = phi^* phi = Id.
class OrthogonalMap {
 public:
  explicit OrthogonalMap(Mat m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
      throw std::invalid_argument("orthogonal map must be square");
    Mat g1 = m_ * m_.transpose();
    Mat g2 = m_.transpose() * m_;
    Mat id = Mat::Identity(m_.rows(), m_.cols());
    double err = std::max((g1 - id).cwiseAbs().maxCoeff(),
                          (g2 - id).cwiseAbs().maxCoeff());
    if (err > kOrthoRoundTripTol)
      throw std::invalid_argument("matrix is not orthogonal");
  }

  static OrthogonalMap identity(int dim) {
    return OrthogonalMap(Mat::Identity(dim, dim));
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const Mat& matrix() const { return m_; }

  Vec apply(const Vec& x) const { return m_ * x; }
  Vec apply_adjoint(const Vec& x) const { return m_.transpose() * x; }

 private:
  Mat m_;
};

// Haar-distributed orthogonal matrix, deterministic in seed.
OrthogonalMap random_orthogonal(int dim, std::uint64_t seed);

// Gram-Schmidt an arbitrary full-rank matrix into a Subspace basis.
Subspace orthonormalize(const Mat& columns);

}  // namespace gausslab
