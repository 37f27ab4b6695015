#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gausslab/extension.hpp"
#include "gausslab/quadrature.hpp"

#include <cmath>

using namespace gausslab;

namespace {

Vec unit(int dim, int j) {
  Vec e = Vec::Zero(dim);
  e[j] = 1.0;
  return e;
}

// light controls for unit tests; the acceptance suite runs the presets
McControls quick() {
  McControls mc;
  mc.initial = 20000;
  mc.cap = 320000;
  mc.target_fraction = 0.1;
  return mc;
}

Vec geometric_direction(int dim) {
  Vec a(dim);
  for (int j = 0; j < dim; ++j) a[j] = std::pow(0.5, j);
  return a;
}

}  // namespace

TEST_CASE("subspace chains") {
  SUBCASE("coordinate chain nests") {
    SubspaceChain chain = SubspaceChain::coordinate(8, {1, 2, 4, 8});
    CHECK(chain.size() == 4);
    CHECK(chain.level(3).is_full());
    CHECK(chain.level(0).dim() == 1);
  }

  SUBCASE("rotated chain nests and stays orthonormal") {
    SubspaceChain chain = SubspaceChain::rotated(6, {2, 4, 6}, 9);
    Vec x = NormalStream(3).vector(6);
    // projections are themselves nested: pi_2 pi_4 x = pi_2 x
    Vec p4 = chain.level(1).project(x);
    CHECK((chain.level(0).project(p4) - chain.level(0).project(x)).norm() <
          1e-12);
  }

  SUBCASE("non-nested levels throw") {
    std::vector<Subspace> levels = {Subspace(Mat::Identity(3, 3).col(1)),
                                    Subspace::coordinate(3, 2)};
    CHECK_THROWS_AS((void)SubspaceChain(std::move(levels), 3),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)SubspaceChain({}, 3), std::invalid_argument);
  }
}

TEST_CASE("projected distance in L^q") {
  int dim = 6;
  double h = 1.0;
  NormalStream stream(5);
  Vec a = stream.vector(dim);

  SUBCASE("full subspace gives exactly zero") {
    Symbol f = trig_symbol(a);
    auto batch = gaussian_sample({dim, h}, 2, 5000);
    auto est = lq_distance(f, Subspace::full(dim), 2.0, h, batch);
    CHECK(est.value == 0.0);
    CHECK(est.stderr_ == 0.0);
  }

  SUBCASE("linear symbol matches the closed form") {
    Symbol f = linear_symbol(a);
    Subspace e = Subspace::coordinate(dim, 3);
    for (double q : {1.0, 2.0, 4.0}) {
      auto batch = gaussian_sample({dim, h}, 7, 200000);
      auto est = lq_distance(f, e, q, h, batch);
      double exact = linear_extension_distance(a, e, q, h);
      CHECK(std::abs(est.value - exact) <= 3.0 * est.stderr_);
    }
  }

  SUBCASE("orthogonal subspace reduces to a 1-D integral") {
    Vec a0 = unit(dim, 3);  // e orthogonal to a0
    Symbol f = trig_symbol(2.0 * a0);
    Subspace e = Subspace::coordinate(dim, 2);
    auto batch = gaussian_sample({dim, h}, 11, 400000);
    auto est = lq_distance(f, e, 2.0, h, batch);
    // F o pi_E = cos(0) = 1; ||1 - cos(2v)||_2 over mu_{R,1}
    double oracle = std::sqrt(integrate_normal(
        [](double v) { return std::pow(1.0 - std::cos(2.0 * v), 2); }));
    CHECK(std::abs(est.value - oracle) <= 3.0 * est.stderr_);
  }

  SUBCASE("h scaling of the closed form") {
    Subspace e = Subspace::coordinate(dim, 3);
    double d1 = linear_extension_distance(a, e, 2.0, 1.0);
    double d2 = linear_extension_distance(a, e, 2.0, 2.0);
    CHECK(d2 == doctest::Approx(std::sqrt(2.0) * d1));
  }
}

TEST_CASE("rate constants") {
  CHECK(qa_rate_exponent(1.0) == 2.0);
  CHECK(qa_rate_exponent(2.0) == 2.0);
  CHECK(qa_rate_exponent(4.0) == 4.0);
  CHECK(qa_rate_constant(2.0, 5.0) == 1.0);
  CHECK(qa_rate_constant(4.0, 2.0) ==
        doctest::Approx(k_constant(4.0) * std::pow(2.0, 0.25)));
}

TEST_CASE("weighted-class convergence rates") {
  int dim = 16;
  double h = 1.0;
  OrthonormalFrame frame(dim);
  auto eps = std::make_shared<EpsilonSequence>(
      EpsilonSequence::geometric(dim));
  Vec a = geometric_direction(dim);  // |a_j| = eps_j, so norm claim 1 is valid
  Symbol f = trig_symbol(a).with_sm_claim(1.0, 1, eps);
  SubspaceChain chain = SubspaceChain::coordinate(dim, {2, 4, 8, 16});

  auto report = sm_rate_check(f, frame, chain, 2.0, h, quick());
  CHECK(report.pass);
  REQUIRE(report.steps.size() == 4);

  // monotone decreasing LHS down to exact zero at the full level
  for (size_t i = 1; i < report.steps.size(); ++i)
    CHECK(report.steps[i].lhs <=
          report.steps[i - 1].lhs + 3.0 * report.steps[i].stderr_);
  CHECK(report.steps.back().lhs == 0.0);

  // every step is below its bound, and Cauchy steps carry their own bounds
  for (const RateStep& s : report.steps) CHECK(s.lhs <= s.rhs + 3.0 * s.stderr_);
  REQUIRE(report.cauchy_steps.size() == 3);
  for (const RateStep& s : report.cauchy_steps) {
    CHECK(s.lhs <= s.rhs + 3.0 * s.stderr_);
    CHECK(s.rhs > 0.0);
  }

  SUBCASE("claim is mandatory") {
    Symbol bare = trig_symbol(a);
    CHECK_THROWS_AS((void)sm_rate_check(bare, frame, chain, 2.0, h, quick()),
                    std::invalid_argument);
  }
}

TEST_CASE("quadratic-class convergence rates") {
  int dim = 12;
  double h = 1.0;
  NormalStream stream(17);
  Vec a = stream.vector(dim).normalized();
  auto op = std::make_shared<TraceClassOperator>(TraceClassOperator::rank_one(a));
  Symbol f = trig_symbol(a).with_qa_claim(1.0, op);
  SubspaceChain chain = SubspaceChain::coordinate(dim, {3, 6, 12});

  SUBCASE("p = 2 and the p > 2 branch") {
    for (double p : {2.0, 4.0}) {
      auto report = qa_rate_check(f, chain, p, h, quick());
      CHECK(report.pass);
      CHECK(report.steps.back().lhs == 0.0);  // full level is exact
      CHECK(report.steps.back().rhs == doctest::Approx(0.0));
    }
  }

  SUBCASE("subspace containing the range forces zero on both sides") {
    // symbol built on a coordinate direction: E = span(e_0..e_2) covers it
    Vec a0 = unit(dim, 1);
    auto op0 =
        std::make_shared<TraceClassOperator>(TraceClassOperator::rank_one(a0));
    Symbol g = trig_symbol(a0).with_qa_claim(1.0, op0);
    SubspaceChain cover = SubspaceChain::coordinate(dim, {3, dim});
    auto report = qa_rate_check(g, cover, 2.0, h, quick());
    CHECK(report.steps[0].rhs == doctest::Approx(0.0));
    CHECK(report.steps[0].lhs == 0.0);
  }
}

TEST_CASE("projected quadratic-form moments") {
  int dim = 8;
  double h = 1.0;

  SUBCASE("zero operator") {
    auto report = qa_projection_moment_check(
        TraceClassOperator::zero(dim), Subspace::coordinate(dim, 3), 2.0, h,
        quick());
    CHECK(report.pass);
    CHECK(report.lhs == 0.0);
    CHECK(report.rhs == 0.0);
  }

  SUBCASE("p = 2 is an equality") {
    NormalStream stream(19);
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = stream.next();
    TraceClassOperator a = TraceClassOperator::from_dense(0.2 * m * m.transpose());
    Subspace e = Subspace::coordinate(dim, 4);
    auto report = qa_projection_moment_check(a, e, 2.0, h, quick());
    CHECK(report.pass);
    CHECK(std::abs(report.lhs - report.rhs) <= 3.0 * report.stderr_);
    CHECK(report.rhs <= report.rhs_e_free + 1e-12);
  }

  SUBCASE("p = 4 with a rank-two operator") {
    Vec lambda(2);
    lambda << 2.0, 1.0;
    Mat u(dim, 2);
    u.col(0) = unit(dim, 0);
    u.col(1) = (unit(dim, 1) + unit(dim, 5)) / std::sqrt(2.0);
    TraceClassOperator a(lambda, u);
    auto report = qa_projection_moment_check(a, Subspace::coordinate(dim, 2),
                                             4.0, h, quick());
    CHECK(report.pass);
  }
}

TEST_CASE("derivative form rates along the chain") {
  int dim = 10;
  double h = 1.0;
  NormalStream stream(23);
  Vec a = stream.vector(dim).normalized();
  auto op = std::make_shared<TraceClassOperator>(TraceClassOperator::rank_one(a));
  Symbol f = trig_symbol(a).with_qa_claim(1.0, op);
  Vec x = stream.vector(dim);
  SubspaceChain chain = SubspaceChain::coordinate(dim, {3, 6, 10});

  SUBCASE("k = 1 matches the linear-functional closed form") {
    auto report = derivative_extension_rate(f, x, 1, chain, 2.0, h, quick());
    CHECK(report.pass);
    for (int n = 0; n < 2; ++n) {
      const Subspace& e = chain.level(n);
      // d f(x) y = -sin<a,x> <a,y>: distance K(2) h^{1/2} |sin| |pi a - a|
      double exact = std::abs(std::sin(a.dot(x))) *
                     linear_extension_distance(a, e, 2.0, h);
      CHECK(report.steps[static_cast<size_t>(n)].lhs ==
            doctest::Approx(exact).epsilon(0.05));
    }
    CHECK(report.steps.back().lhs == 0.0);
  }

  SUBCASE("k = 2, p in {1, 2, 4}") {
    for (double p : {1.0, 2.0, 4.0}) {
      auto report = derivative_extension_rate(f, x, 2, chain, p, h, quick());
      CHECK(report.pass);
      CHECK(report.steps.back().lhs == 0.0);
    }
  }
}

TEST_CASE("scalar-product polynomial rates") {
  int dim = 8;
  double h = 1.0;

  SUBCASE("directions inside every level are exact") {
    Mat dirs(dim, 1);
    dirs.col(0) = unit(dim, 0);
    SubspaceChain chain = SubspaceChain::coordinate(dim, {2, dim});
    auto report = prodscal_rate_check(dirs, {2}, chain, 2.0, h, quick());
    CHECK(report.steps[0].lhs == 0.0);
    CHECK(report.steps[0].rhs == doctest::Approx(0.0));
  }

  SUBCASE("single linear factor is an equality") {
    NormalStream stream(29);
    Vec a = stream.vector(dim);
    Mat dirs(dim, 1);
    dirs.col(0) = a;
    SubspaceChain chain = SubspaceChain::coordinate(dim, {3, 5, dim});
    for (double p : {1.0, 2.0}) {
      auto report = prodscal_rate_check(dirs, {1}, chain, p, h, quick());
      CHECK(report.pass);
      for (int n = 0; n < 2; ++n) {
        const RateStep& s = report.steps[static_cast<size_t>(n)];
        double exact =
            linear_extension_distance(a, chain.level(n), p, h);
        CHECK(s.rhs == doctest::Approx(exact).epsilon(1e-12));
        CHECK(std::abs(s.lhs - exact) <= 3.0 * s.stderr_);
      }
    }
  }

  SUBCASE("two orthonormal factors against the pairing oracle at p = 2") {
    Mat dirs(dim, 2);
    dirs.col(0) = (unit(dim, 0) + unit(dim, 4)) / std::sqrt(2.0);
    dirs.col(1) = (unit(dim, 1) + unit(dim, 5)) / std::sqrt(2.0);
    Subspace e = Subspace::coordinate(dim, 2);
    SubspaceChain chain({e, Subspace::full(dim)}, dim);
    auto report = prodscal_rate_check(dirs, {1, 1}, chain, 2.0, h, quick());
    CHECK(report.pass);

    // LHS^2 expands into fourth moments of linear functionals
    Vec p0 = e.project(dirs.col(0));
    Vec p1 = e.project(dirs.col(1));
    double lhs_sq =
        wick_integral({p0, p1, p0, p1}, h) -
        2.0 * wick_integral({p0, p1, dirs.col(0), dirs.col(1)}, h) +
        wick_integral({dirs.col(0), dirs.col(1), dirs.col(0), dirs.col(1)}, h);
    double oracle = std::sqrt(lhs_sq);
    CHECK(std::abs(report.steps[0].lhs - oracle) <=
          3.0 * report.steps[0].stderr_ + 1e-9);
    CHECK(oracle <= report.steps[0].rhs + 1e-12);
  }
}

TEST_CASE("translation-average norm of linear-factor products") {
  int dim = 6;

  SUBCASE("single factor at the origin matches the plain moment") {
    Vec a = unit(dim, 0);
    Mat a_dirs(dim, 1);
    a_dirs.col(0) = a;
    Mat b_dirs(dim, 0);
    double h = 2.0;  // integration measure mu_{h/2} = mu_1
    auto entries = nm_bound_check(a_dirs, {1}, b_dirs, {}, h,
                                  {{Vec::Zero(dim), Vec::Zero(dim)}}, quick());
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].pass);
    CHECK(std::abs(entries[0].lhs - abs_moment(1.0, 1.0, 1.0)) <=
          3.0 * entries[0].stderr_);
  }

  SUBCASE("random translations never beat the bound") {
    NormalStream stream(31);
    Mat a_dirs(dim, 2);
    a_dirs.col(0) = stream.vector(dim);
    a_dirs.col(1) = stream.vector(dim);
    Mat b_dirs(dim, 1);
    b_dirs.col(0) = stream.vector(dim);
    std::vector<std::pair<Vec, Vec>> grid;
    for (double scale : {0.0, 1.0, 5.0}) {
      Vec y = stream.vector(dim);
      Vec eta = stream.vector(dim);
      grid.push_back({scale * y / std::max(y.norm(), 1e-12),
                      scale * eta / std::max(eta.norm(), 1e-12)});
    }
    auto entries = nm_bound_check(a_dirs, {2, 1}, b_dirs, {1}, 1.0, grid,
                                  quick());
    for (const NmEntry& entry : entries) CHECK(entry.pass);
  }

  SUBCASE("at least one factor required") {
    CHECK_THROWS_AS(
        (void)nm_bound_check(Mat(dim, 0), {}, Mat(dim, 0), {}, 1.0, {},
                             quick()),
        std::invalid_argument);
  }
}

TEST_CASE("projected Taylor expansion") {
  int dim = 6;
  double h = 1.0;
  NormalStream stream(37);
  Vec a = stream.vector(dim).normalized();
  Symbol f = trig_symbol(a);
  Vec x = stream.vector(dim);

  SUBCASE("full chain level zeroes every term distance") {
    SubspaceChain chain({Subspace::full(dim)}, dim);
    auto report = extended_taylor_residual(f, x, 2, chain, 2.0, h, quick());
    CHECK(report.pass);
    CHECK(report.pointwise_residual < 1e-8);
    for (const TaylorTermReport& term : report.terms)
      for (const RateStep& s : term.steps) CHECK(s.lhs == 0.0);
  }

  SUBCASE("k = 2 along a genuine chain") {
    SubspaceChain chain = SubspaceChain::coordinate(dim, {2, 4, dim});
    auto report = extended_taylor_residual(f, x, 2, chain, 2.0, h, quick());
    CHECK(report.pass);
    REQUIRE(report.terms.size() == 3);  // two derivative terms + remainder

    // first-order term matches the linear-functional closed form
    const TaylorTermReport& first = report.terms[0];
    for (int n = 0; n < 2; ++n) {
      double exact = std::abs(std::sin(a.dot(x))) *
                     linear_extension_distance(a, chain.level(n), 2.0, h);
      CHECK(first.steps[static_cast<size_t>(n)].lhs ==
            doctest::Approx(exact).epsilon(0.05));
    }

    // remainder vanishes at the top of the chain
    const TaylorTermReport& rem = report.terms.back();
    CHECK(rem.steps.back().lhs <=
          std::max(3.0 * rem.steps.back().stderr_, 1e-12));
  }
}
