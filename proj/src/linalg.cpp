#include "gausslab/linalg.hpp"
#include "gausslab/rng.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <numeric>

namespace gausslab {

TraceClassOperator TraceClassOperator::from_dense(const Mat& m, double tol) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("from_dense: matrix must be square");
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (m + m.transpose()));
  const Vec& ev = solver.eigenvalues();
  std::vector<int> keep;
  for (int j = 0; j < ev.size(); ++j) {
    if (ev[j] < -1e-9)
      throw std::invalid_argument("from_dense: matrix has a negative eigenvalue");
    if (ev[j] > tol) keep.push_back(j);
  }
  // descending order
  std::reverse(keep.begin(), keep.end());
  Vec lambda(static_cast<int>(keep.size()));
  Mat u(m.rows(), static_cast<int>(keep.size()));
  for (size_t i = 0; i < keep.size(); ++i) {
    lambda[static_cast<int>(i)] = ev[keep[i]];
    u.col(static_cast<int>(i)) = solver.eigenvectors().col(keep[i]);
  }
  return TraceClassOperator(lambda, u);
}

TraceClassOperator TraceClassOperator::conjugated(const OrthogonalMap& phi) const {
  // phi^* A phi has eigenpairs (lambda_j, phi^* u_j)
  return TraceClassOperator(lambda_, phi.matrix().transpose() * u_);
}

OrthogonalMap random_orthogonal(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("dim must be >= 1");
  NormalStream stream(seed, /*stream_id=*/0x0f70u);
  Mat g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = stream.next();
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix column signs by sign(diag(R)) to get the Haar distribution.
  for (int j = 0; j < dim; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return OrthogonalMap(q);
}

Subspace orthonormalize(const Mat& columns) {
  Mat basis(columns.rows(), columns.cols());
  int r = 0;
  for (int j = 0; j < columns.cols(); ++j) {
    Vec v = columns.col(j);
    // two-pass modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < r; ++k) v -= basis.col(k).dot(v) * basis.col(k);
    double n = v.norm();
    if (n < 1e-12)
      throw std::invalid_argument("orthonormalize: columns are rank deficient");
    basis.col(r++) = v / n;
  }
  return Subspace(basis.leftCols(r));
}

}  // namespace gausslab
