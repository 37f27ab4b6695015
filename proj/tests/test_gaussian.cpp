#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gausslab/moments.hpp"
#include "gausslab/quadrature.hpp"
#include "gausslab/rng.hpp"

#include <cmath>
#include <numbers>

using namespace gausslab;

TEST_CASE("k_constant values") {
  CHECK(k_constant(2.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(k_constant(1.0) ==
        doctest::Approx(std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));
  // (E|v|^4)^{1/4} = 3^{1/4}
  CHECK(k_constant(4.0) == doctest::Approx(std::pow(3.0, 0.25)).epsilon(1e-12));
  CHECK_THROWS_AS(k_constant(0.5), std::invalid_argument);
}

TEST_CASE("absolute moments of linear functionals") {
  CHECK(abs_moment(1.0, 2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(abs_moment(0.0, 3.0, 1.0) == doctest::Approx(0.0));
  CHECK(abs_moment(1.0, 2.0, 3.0) == doctest::Approx(3.0).epsilon(1e-13));

  // consistency with the K(p) reformulation
  for (double p : {1.0, 1.5, 2.0, 3.0, 4.0})
    for (double h : {0.5, 1.0, 2.0}) {
      double direct = abs_moment(1.7, p, h);
      double via_k = std::pow(k_constant(p) * std::sqrt(h) * 1.7, p);
      CHECK(direct == doctest::Approx(via_k).epsilon(1e-12));
    }

  // quadrature oracle for p in {1,2,3,4}, |a| = h = 1
  for (double p : {1.0, 2.0, 3.0, 4.0}) {
    double quad = integrate_normal_kinked(
        [p](double v) { return std::pow(std::abs(v), p); }, {0.0});
    CHECK(abs_moment(1.0, p, 1.0) == doctest::Approx(quad).epsilon(1e-10));
  }
}

TEST_CASE("exponential moments") {
  Vec z = Vec::Zero(2);
  CHECK(exp_moment(z, z, 1.0).real() == doctest::Approx(1.0));
  CHECK(exp_moment(z, z, 1.0).imag() == doctest::Approx(0.0));

  Vec u(2), v(2);
  u << 1.0, 0.0;
  v << 0.0, 0.0;
  CHECK(exp_moment(u, v, 1.0).real() ==
        doctest::Approx(std::exp(0.5)).epsilon(1e-13));

  u << 0.0, 0.0;
  v << 1.0, 0.0;
  CHECK(exp_moment(u, v, 2.0).real() ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-13));

  Vec w(3);
  w.setZero();
  CHECK_THROWS_AS(exp_moment(u, w, 1.0), std::invalid_argument);
}

TEST_CASE("exponential moment matches quadrature in one dimension") {
  // e^{(u + iv) s} against N(0, h): real part by quadrature
  double uu = 0.7, vv = 0.4, h = 1.3;
  double quad_re = integrate_normal([&](double s) {
    double y = std::sqrt(h) * s;
    return std::exp(uu * y) * std::cos(vv * y);
  });
  Vec u1(1), v1(1);
  u1 << uu;
  v1 << vv;
  auto closed = exp_moment(u1, v1, h);
  CHECK(quad_re == doctest::Approx(closed.real()).epsilon(1e-10));
}

TEST_CASE("mixed moment identity") {
  // b = 0 reduces to the absolute moment
  for (double p : {1.0, 2.0, 3.0})
    CHECK(mixed_moment_rhs(1.3, 0.0, 0.0, p, 1.0) ==
          doctest::Approx(abs_moment(1.3, p, 1.0)).epsilon(1e-9));

  // degenerate integrand
  CHECK(mixed_moment_rhs(0.0, 0.0, 1.0, 1.0, 1.0) == doctest::Approx(0.0));

  // |a|=|b|=<a,b>=1, p=2, h=1: e^{1/2} E(v+1)^2 = 2 e^{1/2}
  CHECK(mixed_moment_rhs(1.0, 1.0, 1.0, 2.0, 1.0) ==
        doctest::Approx(2.0 * std::exp(0.5)).epsilon(1e-9));

  CHECK_THROWS_AS(mixed_moment_rhs(1.0, 2.0, 1.0, 2.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("mixed moment matches direct Monte Carlo") {
  // E[ e^{l_b} |l_a|^p ] in dim 2 vs the closed-form RHS
  int dim = 2;
  double h = 1.0, p = 2.0;
  Vec a(2), b(2);
  a << 1.0, 0.5;
  b << 0.25, -0.5;
  SampleBatch batch = gaussian_sample({dim, h}, 99, 200000);
  Vec la = batch.samples * a;
  Vec lb = batch.samples * b;
  Vec vals = (lb.array().exp() * la.array().abs().pow(p)).matrix();
  McEstimate est = mc_mean(vals);
  double rhs = mixed_moment_rhs(a.norm(), a.dot(b), b.norm(), p, h);
  CHECK(std::abs(est.value - rhs) < 3.0 * est.stderr_);
}

TEST_CASE("central even moments") {
  CHECK(central_moment_even(0) == doctest::Approx(1.0));
  CHECK(central_moment_even(1) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(central_moment_even(2) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(central_moment_even(4) == doctest::Approx(105.0).epsilon(1e-12));
}

TEST_CASE("pairing enumeration") {
  auto p2 = enumerate_pairings(2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0].pairs[0] == std::pair<int, int>{0, 1});

  CHECK(enumerate_pairings(4).size() == 3);
  CHECK(enumerate_pairings(6).size() == 15);

  for (int two_p = 2; two_p <= 16; two_p += 2) {
    auto pairings = enumerate_pairings(two_p);
    CHECK(static_cast<double>(pairings.size()) ==
          doctest::Approx(double_factorial_odd(two_p)));
    for (const Pairing& pp : pairings) {
      std::vector<bool> seen(static_cast<size_t>(two_p), false);
      int prev_first = -1;
      for (auto [i, j] : pp.pairs) {
        CHECK(i < j);
        CHECK(i > prev_first);
        prev_first = i;
        CHECK(!seen[static_cast<size_t>(i)]);
        CHECK(!seen[static_cast<size_t>(j)]);
        seen[static_cast<size_t>(i)] = seen[static_cast<size_t>(j)] = true;
      }
      for (bool s : seen) CHECK(s);
    }
  }

  CHECK_THROWS_AS(enumerate_pairings(3), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_pairings(18), std::invalid_argument);
}

TEST_CASE("pairing-sum moments") {
  Vec u(3), w(3);
  u << 1.0, 2.0, 0.0;
  w << 0.5, -1.0, 2.0;
  CHECK(wick_integral({u, w}, 1.0) == doctest::Approx(u.dot(w)).epsilon(1e-13));

  Vec e = Vec::Zero(3);
  e[0] = 1.0;
  CHECK(wick_integral({e, e, e, e}, 1.0) == doctest::Approx(3.0));
  CHECK(wick_integral({e, e, e, e}, 2.0) == doctest::Approx(12.0));
  // 2p copies of a unit vector: (2p-1)!! h^p
  for (int p = 1; p <= 4; ++p) {
    std::vector<Vec> copies(static_cast<size_t>(2 * p), e);
    CHECK(wick_integral(copies, 1.5) ==
          doctest::Approx(double_factorial_odd(2 * p) * std::pow(1.5, p))
              .epsilon(1e-12));
  }

  CHECK_THROWS_AS(wick_integral({u, w, e}, 1.0), std::invalid_argument);
  CHECK(wick_integral({u, w, e}, 1.0, /*allow_odd=*/true) == 0.0);

  // variance scaling is exact
  std::vector<Vec> vs = {u, w, e, u};
  CHECK(wick_integral(vs, 2.0) ==
        doctest::Approx(4.0 * wick_integral(vs, 1.0)).epsilon(1e-13));
}

TEST_CASE("pairing sums match Monte Carlo") {
  int dim = 6;
  double h = 1.0;
  NormalStream stream(2024, 1);
  SampleBatch batch = gaussian_sample({dim, h}, 5150, 1000000);
  for (int p = 1; p <= 3; ++p) {
    std::vector<Vec> vectors;
    for (int i = 0; i < 2 * p; ++i) vectors.push_back(stream.vector(dim));
    double exact = wick_integral(vectors, h);
    McEstimate mc = wick_mc(vectors, batch);
    INFO("p = ", p);
    CHECK(std::abs(mc.value - exact) < 3.0 * mc.stderr_);
  }
  // odd product has mean zero
  std::vector<Vec> odd = {stream.vector(dim), stream.vector(dim),
                          stream.vector(dim)};
  McEstimate mc_odd = wick_mc(odd, batch);
  CHECK(std::abs(mc_odd.value) < 3.0 * mc_odd.stderr_);
}

TEST_CASE("sampling determinism and empirical law") {
  SampleBatch a = gaussian_sample({1, 1.0}, 42, 1000000);
  SampleBatch b = gaussian_sample({1, 1.0}, 42, 1000000);
  CHECK((a.samples - b.samples).cwiseAbs().maxCoeff() == 0.0);

  double mean = a.samples.col(0).mean();
  double var = (a.samples.col(0).array() - mean).square().mean();
  CHECK(std::abs(var - 1.0) < 0.01);
  CHECK(std::abs(mean) < 0.01);

  SampleBatch c = gaussian_sample({1, 4.0}, 42, 1000000);
  double mean4 = c.samples.col(0).mean();
  double var4 = (c.samples.col(0).array() - mean4).square().mean();
  CHECK(std::abs(var4 - 4.0) < 0.04);

  // prefix consistency of the shard scheme
  SampleBatch small = gaussian_sample({3, 1.0}, 42, 10000);
  SampleBatch large = gaussian_sample({3, 1.0}, 42, 30000);
  CHECK((large.samples.topRows(10000) - small.samples).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("telescoping product inequality") {
  Vec w2(2);
  w2 << 0.5, 0.5;

  // identical lists: zero left side
  Vec f(2);
  f << 1.0, -2.0;
  auto same = holder_telescoping_check({f, f}, {f, f}, 2.0, w2);
  CHECK(same.lhs == doctest::Approx(0.0));
  CHECK(same.pass);

  // two factors on two points
  Vec f1(2), f2(2), g1(2), g2(2);
  f1 << 1.0, 1.0;
  f2 << 1.0, 1.0;
  g1 << 0.0, 0.0;
  g2 << 1.0, 1.0;
  auto rep = holder_telescoping_check({f1, f2}, {g1, g2}, 1.0, w2);
  CHECK(rep.lhs == doctest::Approx(1.0));
  CHECK(rep.pass);
  // RHS = ||f1-g1||_2 ||g2||_2 + ||f1||_2 ||f2-g2||_2 = 1
  CHECK(rep.rhs == doctest::Approx(1.0).epsilon(1e-12));

  // randomized instances
  NormalStream stream(314);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 2 + static_cast<int>(stream.uniform01() * 3.0);  // 2..4 factors
    int pts = 3 + static_cast<int>(stream.uniform01() * 5.0);
    Vec weights(pts);
    for (int i = 0; i < pts; ++i) weights[i] = stream.uniform01();
    weights /= weights.sum();
    std::vector<Vec> fs, gs;
    for (int i = 0; i < n; ++i) {
      fs.push_back(stream.vector(pts));
      gs.push_back(stream.vector(pts));
    }
    double p = (trial % 3) + 1.0;
    if (!holder_telescoping_check(fs, gs, p, weights).pass) ++violations;
  }
  CHECK(violations == 0);
}
