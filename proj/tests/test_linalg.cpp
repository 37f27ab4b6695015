#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gausslab/linalg.hpp"
#include "gausslab/rng.hpp"

using namespace gausslab;

namespace {

Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("projection basics") {
  Subspace full = Subspace::full(3);
  Subspace zero = Subspace::zero(3);
  Vec x = make_vec({1.0, -2.0, 3.0});
  CHECK((full.project(x) - x).norm() == doctest::Approx(0.0));
  CHECK(zero.project(x).norm() == doctest::Approx(0.0));

  Subspace e1 = Subspace::coordinate(2, 1);
  Vec y = make_vec({3.0, 4.0});
  Vec py = e1.project(y);
  CHECK(py[0] == doctest::Approx(3.0));
  CHECK(py[1] == doctest::Approx(0.0));

  CHECK_THROWS_AS(e1.project(x), std::invalid_argument);
}

TEST_CASE("projection is idempotent and Pythagorean") {
  NormalStream stream(123);
  Mat cols(5, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 2; ++j) cols(i, j) = stream.next();
  Subspace e = orthonormalize(cols);
  for (int trial = 0; trial < 100; ++trial) {
    Vec x = stream.vector(5);
    Vec p = e.project(x);
    CHECK((e.project(p) - p).cwiseAbs().maxCoeff() < 1e-12);
    double lhs = x.squaredNorm();
    double rhs = p.squaredNorm() + (x - p).squaredNorm();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("quadratic form examples") {
  Vec lambda = make_vec({2.0});
  Mat u(2, 1);
  u << 1.0, 0.0;
  TraceClassOperator a(lambda, u);
  CHECK(a.q_form(make_vec({0.0, 0.0})) == doctest::Approx(0.0));
  CHECK(a.q_form(make_vec({1.0, 1.0})) == doctest::Approx(2.0));

  // Rayleigh bound
  NormalStream stream(7);
  Mat m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = stream.next();
  TraceClassOperator op = TraceClassOperator::from_dense(m * m.transpose());
  double lmax = op.eigenvalues()[0];
  for (int trial = 0; trial < 100; ++trial) {
    Vec x = stream.vector(4);
    CHECK(op.q_form(x) <= lmax * x.squaredNorm() + 1e-10);
  }
}

TEST_CASE("a_norm examples and triangle inequality") {
  Vec lambda = make_vec({4.0});
  Mat u(2, 1);
  u << 1.0, 0.0;
  TraceClassOperator a(lambda, u);
  CHECK(a.a_norm(make_vec({0.0, 0.0})) == doctest::Approx(0.0));
  CHECK(a.a_norm(make_vec({1.0, 0.0})) == doctest::Approx(2.0));

  NormalStream stream(11);
  Mat m(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = stream.next();
  TraceClassOperator op = TraceClassOperator::from_dense(m * m.transpose());
  for (int trial = 0; trial < 100; ++trial) {
    Vec x = stream.vector(3);
    Vec y = stream.vector(3);
    CHECK(op.a_norm(x + y) <= op.a_norm(x) + op.a_norm(y) + 1e-10);
  }
}

TEST_CASE("random orthogonal maps") {
  OrthogonalMap q1 = random_orthogonal(1, 5);
  CHECK(std::abs(std::abs(q1.matrix()(0, 0)) - 1.0) < 1e-12);

  OrthogonalMap q3 = random_orthogonal(3, 7);
  Mat id = Mat::Identity(3, 3);
  CHECK((q3.matrix() * q3.matrix().transpose() - id).cwiseAbs().maxCoeff() <
        1e-10);

  OrthogonalMap again = random_orthogonal(3, 7);
  CHECK((q3.matrix() - again.matrix()).cwiseAbs().maxCoeff() == 0.0);

  OrthogonalMap other = random_orthogonal(3, 8);
  CHECK((q3.matrix() - other.matrix()).cwiseAbs().maxCoeff() > 1e-8);
}

TEST_CASE("conjugated operator matches composed form") {
  NormalStream stream(21);
  Mat m(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = stream.next();
  TraceClassOperator a = TraceClassOperator::from_dense(m * m.transpose());
  OrthogonalMap phi = random_orthogonal(4, 33);
  TraceClassOperator conj = a.conjugated(phi);
  for (int trial = 0; trial < 50; ++trial) {
    Vec x = stream.vector(4);
    CHECK(a.q_form(phi.apply(x)) == doctest::Approx(conj.q_form(x)).epsilon(1e-10));
  }
}

TEST_CASE("trace is basis independent") {
  NormalStream stream(31);
  Mat m(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) m(i, j) = stream.next();
  TraceClassOperator a = TraceClassOperator::from_dense(m * m.transpose());

  double canonical = 0.0;
  for (int j = 0; j < 5; ++j) {
    Vec e = Vec::Zero(5);
    e[j] = 1.0;
    canonical += a.q_form(e);
  }
  CHECK(canonical == doctest::Approx(a.trace()).epsilon(1e-10));

  OrthogonalMap phi = random_orthogonal(5, 77);
  double rotated = 0.0;
  for (int j = 0; j < 5; ++j) rotated += a.q_form(phi.matrix().col(j));
  CHECK(rotated == doctest::Approx(a.trace()).epsilon(1e-10));
}

TEST_CASE("rank-one operator") {
  Vec a = make_vec({3.0, 4.0});
  TraceClassOperator op = TraceClassOperator::rank_one(a);
  CHECK(op.rank() == 1);
  CHECK(op.trace() == doctest::Approx(25.0));
  Vec x = make_vec({1.0, 0.0});
  // <a,x>^2 = 9
  CHECK(op.q_form(x) == doctest::Approx(9.0));
}

TEST_CASE("operator validation") {
  Vec lambda = make_vec({1.0, 2.0});  // increasing: invalid
  CHECK_THROWS_AS(TraceClassOperator(lambda, Mat::Identity(2, 2)),
                  std::invalid_argument);
  Vec neg = make_vec({-1.0});
  Mat u(2, 1);
  u << 1.0, 0.0;
  CHECK_THROWS_AS(TraceClassOperator(neg, u), std::invalid_argument);
  Mat bad(2, 2);
  bad << 1.0, 1.0, 0.0, 1.0;
  CHECK_THROWS_AS(TraceClassOperator(make_vec({2.0, 1.0}), bad),
                  std::invalid_argument);
}

TEST_CASE("epsilon sequences") {
  EpsilonSequence eps = EpsilonSequence::geometric(4);
  CHECK(eps[0] == doctest::Approx(1.0));
  CHECK(eps[3] == doctest::Approx(0.125));
  CHECK(eps.sum() == doctest::Approx(1.875));
  CHECK(eps.sum_sq() == doctest::Approx(1.0 + 0.25 + 0.0625 + 0.015625));

  Vec bad = make_vec({1.0, -0.5});
  CHECK_THROWS_AS((void)EpsilonSequence(bad), std::invalid_argument);
}

TEST_CASE("paired frames and index sets") {
  OrthonormalFrame plain(4);
  CHECK(plain.gamma_size() == 4);
  CHECK(plain.gamma(2).u == 2);
  CHECK(plain.gamma(2).v == -1);

  OrthonormalFrame doubled = OrthonormalFrame::doubled(3);
  CHECK(doubled.dim() == 6);
  CHECK(doubled.gamma_size() == 3);
  CHECK(doubled.gamma(1).u == 2);
  CHECK(doubled.gamma(1).v == 3);

  // equal eps on pair members: gamma sums count each pair once
  EpsilonSequence eps(make_vec({1.0, 1.0, 0.5, 0.5, 0.25, 0.25}));
  CHECK(eps.gamma_sum(doubled) == doctest::Approx(1.75));
  CHECK(eps.gamma_sum_sq(doubled) == doctest::Approx(1.0 + 0.25 + 0.0625));

  CHECK_THROWS_AS(OrthonormalFrame(4, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(OrthonormalFrame(4, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("orthonormalize rejects rank deficiency") {
  Mat cols(3, 2);
  cols.col(0) = make_vec({1.0, 1.0, 0.0});
  cols.col(1) = make_vec({2.0, 2.0, 0.0});
  CHECK_THROWS_AS(orthonormalize(cols), std::invalid_argument);
}
