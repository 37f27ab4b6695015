#include "gausslab/extension.hpp"

#include "gausslab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gausslab {

namespace {

// K(p) looked up through a lazily built table, cross-checked against a fresh
// evaluation at every use; the two routes must agree to 1e-12.
double checked_k(double p) {
  static std::map<double, double> table;
  static std::mutex mutex;
  double fresh = k_constant(p);
  double stored;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = table.find(p);
    if (it == table.end()) it = table.emplace(p, k_constant(p)).first;
    stored = it->second;
  }
  if (std::abs(fresh - stored) > 1e-12)
    throw std::logic_error("constant table out of sync with its definition");
  return fresh;
}

// (mean of vals_q)^{1/q} with block jackknife standard error; vals_q are the
// q-th powers of the sampled distances.
McEstimate power_mean_jackknife(const Vec& vals_q, double q) {
  int n = static_cast<int>(vals_q.size());
  double total = vals_q.sum();
  if (total <= 0.0) return {0.0, 0.0};
  double full = std::pow(total / n, 1.0 / q);
  int blocks = std::min(100, n);
  int per = n / blocks;
  std::vector<double> leave_out;
  leave_out.reserve(static_cast<size_t>(blocks));
  double mean_lo = 0.0;
  for (int b = 0; b < blocks; ++b) {
    int begin = b * per;
    int end = (b == blocks - 1) ? n : begin + per;
    double block_sum = vals_q.segment(begin, end - begin).sum();
    double est =
        std::pow((total - block_sum) / (n - (end - begin)), 1.0 / q);
    leave_out.push_back(est);
    mean_lo += est;
  }
  mean_lo /= blocks;
  double ss = 0.0;
  for (double est : leave_out) ss += (est - mean_lo) * (est - mean_lo);
  double se = std::sqrt((blocks - 1.0) / blocks * ss);
  return {full, se};
}

struct AdaptiveResult {
  McEstimate est;
  int samples = 0;
};

// Doubles the sample count until the standard error is below
// target_fraction * rhs (or the cap is hit).
template <typename Measure>
AdaptiveResult adaptive_mc(Measure&& measure, int dim, double h,
                           const McControls& mc, double rhs) {
  int count = mc.initial;
  while (true) {
    SampleBatch batch = gaussian_sample({dim, h}, mc.seed, count);
    McEstimate est = measure(batch);
    if (est.stderr_ == 0.0 || count >= mc.cap ||
        (rhs > 0.0 && est.stderr_ < mc.target_fraction * rhs))
      return {est, count};
    count = std::min(mc.cap, 2 * count);
  }
}

bool step_pass(const RateStep& s) { return s.lhs <= s.rhs + 3.0 * s.stderr_; }

}  // namespace

SubspaceChain::SubspaceChain(std::vector<Subspace> levels, int ambient_dim)
    : levels_(std::move(levels)), ambient_dim_(ambient_dim) {
  if (levels_.empty()) throw std::invalid_argument("chain must be non-empty");
  for (size_t n = 0; n < levels_.size(); ++n) {
    const Subspace& e = levels_[n];
    if (e.ambient_dim() != ambient_dim_)
      throw std::invalid_argument("chain level has wrong ambient dimension");
    if (n > 0) {
      const Subspace& prev = levels_[n - 1];
      if (e.dim() < prev.dim())
        throw std::invalid_argument("chain dimensions must not decrease");
      double err = (e.basis().leftCols(prev.dim()) - prev.basis())
                       .cwiseAbs()
                       .maxCoeff();
      if (err > kOrthoConstructTol)
        throw std::invalid_argument("chain level does not extend the previous");
    }
  }
}

SubspaceChain SubspaceChain::coordinate(int ambient_dim,
                                        const std::vector<int>& dims) {
  std::vector<Subspace> levels;
  for (int d : dims) levels.push_back(Subspace::coordinate(ambient_dim, d));
  return SubspaceChain(std::move(levels), ambient_dim);
}

SubspaceChain SubspaceChain::rotated(int ambient_dim,
                                     const std::vector<int>& dims,
                                     std::uint64_t seed) {
  OrthogonalMap q = random_orthogonal(ambient_dim, seed);
  std::vector<Subspace> levels;
  for (int d : dims) levels.push_back(Subspace(q.matrix().leftCols(d)));
  return SubspaceChain(std::move(levels), ambient_dim);
}

McEstimate lq_distance(const Symbol& f, const Subspace& e, double q, double h,
                       const SampleBatch& batch) {
  if (!(q >= 1.0)) throw std::invalid_argument("lq_distance: q must be >= 1");
  if (batch.spec.dim != f.ambient_dim())
    throw std::invalid_argument("lq_distance: dimension mismatch");
  (void)h;
  Eigen::VectorXcd projected =
      f.compose_projection(e).eval_batch(batch.samples);
  Eigen::VectorXcd plain = f.eval_batch(batch.samples);
  Vec vals_q = (projected - plain).cwiseAbs().array().pow(q);
  if (!vals_q.allFinite())
    throw std::overflow_error("lq_distance: non-finite sample values");
  return power_mean_jackknife(vals_q, q);
}

double linear_extension_distance(const Vec& a, const Subspace& e, double q,
                                 double h) {
  return checked_k(q) * std::sqrt(h) * (e.project(a) - a).norm();
}

double qa_rate_exponent(double p) { return p <= 2.0 ? 2.0 : p; }

double qa_rate_constant(double p, double lambda_sum) {
  if (p <= 2.0) return 1.0;
  return checked_k(p) * std::pow(lambda_sum, 0.5 - 1.0 / p);
}

ConvergenceReport sm_rate_check(const Symbol& f, const OrthonormalFrame& frame,
                                const SubspaceChain& chain, double q, double h,
                                const McControls& mc) {
  const ClassClaims& claims = f.claims();
  if (!claims.sm_norm || !claims.eps)
    throw std::invalid_argument("sm_rate_check: symbol carries no depth claim");
  if (frame.dim() != f.ambient_dim() ||
      chain.ambient_dim() != f.ambient_dim())
    throw std::invalid_argument("sm_rate_check: dimension mismatch");
  const EpsilonSequence& eps = *claims.eps;
  double prefactor = *claims.sm_norm * checked_k(q) * std::sqrt(h);

  // eps-weighted projection defect of the frame vectors; `reference` holds
  // the projections of a finer level for the Cauchy variant (empty: ambient).
  auto eps_defect = [&](const Subspace& e, const Subspace* finer) {
    double sum = 0.0;
    for (int j = 0; j < frame.gamma_size(); ++j) {
      PhasePair pair = frame.gamma(j);
      double term = 0.0;
      for (int idx : {pair.u, pair.v}) {
        if (idx < 0) continue;
        Vec base = frame.basis_vector(idx);
        Vec target = finer ? finer->project(base) : base;
        term += (target - e.project(base)).norm();
      }
      sum += eps.gamma_value(frame, j) * term;
    }
    return sum;
  };

  ConvergenceReport report;
  report.exponent = q;
  report.h = h;
  report.seed = mc.seed;
  for (int n = 0; n < chain.size(); ++n) {
    const Subspace& e = chain.level(n);
    RateStep step;
    step.n = e.dim();
    step.rhs = prefactor * eps_defect(e, nullptr);
    AdaptiveResult res = adaptive_mc(
        [&](const SampleBatch& batch) {
          return lq_distance(f, e, q, h, batch);
        },
        f.ambient_dim(), h, mc, step.rhs);
    step.lhs = res.est.value;
    step.stderr_ = res.est.stderr_;
    step.pass = step_pass(step);
    report.samples = std::max(report.samples, res.samples);
    report.pass = report.pass && step.pass;
    report.steps.push_back(step);
  }
  for (int n = 0; n + 1 < chain.size(); ++n) {
    const Subspace& coarse = chain.level(n);
    const Subspace& fine = chain.level(n + 1);
    RateStep step;
    step.n = fine.dim();
    step.rhs = prefactor * eps_defect(coarse, &fine);
    AdaptiveResult res = adaptive_mc(
        [&](const SampleBatch& batch) {
          Eigen::VectorXcd a =
              f.compose_projection(coarse).eval_batch(batch.samples);
          Eigen::VectorXcd b =
              f.compose_projection(fine).eval_batch(batch.samples);
          Vec vals_q = (a - b).cwiseAbs().array().pow(q);
          return power_mean_jackknife(vals_q, q);
        },
        f.ambient_dim(), h, mc, step.rhs);
    step.lhs = res.est.value;
    step.stderr_ = res.est.stderr_;
    step.pass = step_pass(step);
    report.samples = std::max(report.samples, res.samples);
    report.pass = report.pass && step.pass;
    report.cauchy_steps.push_back(step);
  }
  return report;
}

ConvergenceReport qa_rate_check(const Symbol& f, const SubspaceChain& chain,
                                double p, double h, const McControls& mc) {
  const ClassClaims& claims = f.claims();
  if (!claims.qa_norm || !claims.qa_op)
    throw std::invalid_argument("qa_rate_check: symbol carries no Q_A claim");
  const TraceClassOperator& a = *claims.qa_op;
  double alpha = qa_rate_exponent(p);
  double c = qa_rate_constant(p, a.trace());

  ConvergenceReport report;
  report.exponent = p;
  report.h = h;
  report.seed = mc.seed;
  for (int n = 0; n < chain.size(); ++n) {
    const Subspace& e = chain.level(n);
    double defect = 0.0;
    for (int j = 0; j < a.rank(); ++j) {
      Vec u = a.eigenvector(j);
      defect +=
          a.eigenvalues()[j] * std::pow((e.project(u) - u).norm(), alpha);
    }
    RateStep step;
    step.n = e.dim();
    step.rhs =
        c * std::sqrt(h) * *claims.qa_norm * std::pow(defect, 1.0 / alpha);
    AdaptiveResult res = adaptive_mc(
        [&](const SampleBatch& batch) {
          return lq_distance(f, e, p, h, batch);
        },
        f.ambient_dim(), h, mc, step.rhs);
    step.lhs = res.est.value;
    step.stderr_ = res.est.stderr_;
    step.pass = step_pass(step);
    report.samples = std::max(report.samples, res.samples);
    report.pass = report.pass && step.pass;
    report.steps.push_back(step);
  }
  return report;
}

ProjectionMomentReport qa_projection_moment_check(const TraceClassOperator& a,
                                                  const Subspace& e, double p,
                                                  double h,
                                                  const McControls& mc) {
  if (a.ambient_dim() != e.ambient_dim())
    throw std::invalid_argument("projection moment check: dimension mismatch");
  double alpha = qa_rate_exponent(p);
  double c = qa_rate_constant(p, a.trace());
  ProjectionMomentReport report;
  double weighted = 0.0;
  for (int j = 0; j < a.rank(); ++j)
    weighted += a.eigenvalues()[j] *
                std::pow(e.project(a.eigenvector(j)).norm(), alpha);
  report.rhs = c * std::pow(weighted, 1.0 / alpha) * std::sqrt(h);
  report.rhs_e_free = c * std::pow(a.trace(), 1.0 / alpha) * std::sqrt(h);

  if (a.rank() == 0) {
    report.pass = true;
    return report;
  }
  AdaptiveResult res = adaptive_mc(
      [&](const SampleBatch& batch) {
        Vec vals_p(batch.count);
        for (int i = 0; i < batch.count; ++i) {
          Vec x = batch.samples.row(i).transpose();
          vals_p[i] = std::pow(a.a_norm(e.project(x)), p);
        }
        return power_mean_jackknife(vals_p, p);
      },
      a.ambient_dim(), h, mc, report.rhs);
  report.lhs = res.est.value;
  report.stderr_ = res.est.stderr_;
  report.pass = report.lhs <= report.rhs + 3.0 * report.stderr_ &&
                report.lhs <= report.rhs_e_free + 3.0 * report.stderr_;
  return report;
}

namespace {

// Coefficients of y -> d^k f(x) y^k as a polynomial in the slot products
// <a_r, y>: counts c with |c| = k carry multinomial(c) * (mixed partial of
// the profile at the coordinates of x).
struct DkPolynomial {
  std::vector<std::pair<std::vector<int>, CScalar>> terms;
};

DkPolynomial dk_polynomial(const Symbol& f, const Vec& x, int k) {
  DkPolynomial poly;
  ProfileDerivatives derivs(f.profile());
  Vec w = f.coordinates(x);
  int arity = f.arity();
  std::vector<int> counts(static_cast<size_t>(arity), 0);
  auto rec = [&](auto&& self, int slot, int remaining, double multinom,
                 double used_fact) -> void {
    if (slot == arity - 1 || remaining == 0) {
      if (slot < arity) counts[static_cast<size_t>(slot)] = remaining;
      double tail_fact = 1.0;
      for (int i = 2; i <= remaining; ++i) tail_fact *= i;
      CScalar coeff = multinom / (used_fact * tail_fact) *
                      derivs.mixed_partial(counts, w);
      if (coeff != CScalar(0.0)) poly.terms.push_back({counts, coeff});
      if (slot < arity) counts[static_cast<size_t>(slot)] = 0;
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[static_cast<size_t>(slot)] = c;
      double fact = 1.0;
      for (int i = 2; i <= c; ++i) fact *= i;
      self(self, slot + 1, remaining - c, multinom, used_fact * fact);
      counts[static_cast<size_t>(slot)] = 0;
    }
  };
  if (arity == 0) return poly;
  double k_fact = 1.0;
  for (int i = 2; i <= k; ++i) k_fact *= i;
  rec(rec, 0, k, k_fact, 1.0);
  return poly;
}

// Row-wise values of the polynomial at z = samples * directions.
Eigen::VectorXcd dk_values(const DkPolynomial& poly, const Mat& z) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(z.rows());
  for (const auto& [counts, coeff] : poly.terms) {
    Vec prod = Vec::Ones(z.rows());
    for (size_t r = 0; r < counts.size(); ++r)
      for (int rep = 0; rep < counts[r]; ++rep)
        prod.array() *= z.col(static_cast<Eigen::Index>(r)).array();
    out += coeff * prod;
  }
  return out;
}

}  // namespace

ConvergenceReport derivative_extension_rate(const Symbol& f, const Vec& x,
                                            int k, const SubspaceChain& chain,
                                            double p, double h,
                                            const McControls& mc) {
  const ClassClaims& claims = f.claims();
  if (!claims.qa_norm || !claims.qa_op)
    throw std::invalid_argument("derivative rate: symbol carries no Q_A claim");
  if (k < 1) throw std::invalid_argument("derivative rate: k must be >= 1");
  const TraceClassOperator& a = *claims.qa_op;
  double s = a.trace();
  double alpha = qa_rate_exponent(p * k);
  double c = qa_rate_constant(p * k, s);
  DkPolynomial poly = dk_polynomial(f, x, k);

  ConvergenceReport report;
  report.exponent = p;
  report.h = h;
  report.seed = mc.seed;
  for (int n = 0; n < chain.size(); ++n) {
    const Subspace& e = chain.level(n);
    double defect = 0.0;
    for (int j = 0; j < a.rank(); ++j) {
      Vec u = a.eigenvector(j);
      defect +=
          a.eigenvalues()[j] * std::pow((e.project(u) - u).norm(), alpha);
    }
    RateStep step;
    step.n = e.dim();
    step.rhs = k * *claims.qa_norm * std::pow(c, k) *
               std::pow(s, (k - 1.0) / alpha) * std::pow(h, k / 2.0) *
               std::pow(defect, 1.0 / alpha);
    Mat projected_dirs(f.ambient_dim(), f.arity());
    for (int r = 0; r < f.arity(); ++r)
      projected_dirs.col(r) = e.project(f.directions().col(r));
    AdaptiveResult res = adaptive_mc(
        [&](const SampleBatch& batch) {
          Eigen::VectorXcd amb = dk_values(poly, batch.samples * f.directions());
          Eigen::VectorXcd prj = dk_values(poly, batch.samples * projected_dirs);
          Vec vals_p = (prj - amb).cwiseAbs().array().pow(p);
          return power_mean_jackknife(vals_p, p);
        },
        f.ambient_dim(), h, mc, step.rhs);
    step.lhs = res.est.value;
    step.stderr_ = res.est.stderr_;
    step.pass = step_pass(step);
    report.samples = std::max(report.samples, res.samples);
    report.pass = report.pass && step.pass;
    report.steps.push_back(step);
  }
  return report;
}

ConvergenceReport prodscal_rate_check(const Mat& directions,
                                      const std::vector<int>& exponents,
                                      const SubspaceChain& chain, double p,
                                      double h, const McControls& mc) {
  Symbol f = poly_scalar_symbol(directions, exponents);
  int total = 0;
  double max_norm = 0.0;
  for (size_t i = 0; i < exponents.size(); ++i) {
    total += exponents[i];
    max_norm =
        std::max(max_norm, directions.col(static_cast<Eigen::Index>(i)).norm());
  }
  if (total < 1)
    throw std::invalid_argument("prodscal rate: total degree must be >= 1");
  double k_pow = std::pow(checked_k(p * total), total);

  ConvergenceReport report;
  report.exponent = p;
  report.h = h;
  report.seed = mc.seed;
  for (int n = 0; n < chain.size(); ++n) {
    const Subspace& e = chain.level(n);
    double defect_sum = 0.0;
    for (size_t i = 0; i < exponents.size(); ++i) {
      Vec a = directions.col(static_cast<Eigen::Index>(i));
      defect_sum += exponents[i] * (e.project(a) - a).norm();
    }
    RateStep step;
    step.n = e.dim();
    step.rhs = k_pow * std::pow(h, total / 2.0) *
               std::pow(max_norm, total - 1.0) * defect_sum;
    AdaptiveResult res = adaptive_mc(
        [&](const SampleBatch& batch) {
          return lq_distance(f, e, p, h, batch);
        },
        f.ambient_dim(), h, mc, step.rhs);
    step.lhs = res.est.value;
    step.stderr_ = res.est.stderr_;
    step.pass = step_pass(step);
    report.samples = std::max(report.samples, res.samples);
    report.pass = report.pass && step.pass;
    report.steps.push_back(step);
  }
  return report;
}

std::vector<NmEntry> nm_bound_check(const Mat& a_dirs,
                                    const std::vector<int>& a_exps,
                                    const Mat& b_dirs,
                                    const std::vector<int>& b_exps, double h,
                                    const std::vector<std::pair<Vec, Vec>>& y_grid,
                                    const McControls& mc) {
  int na = static_cast<int>(a_exps.size());
  int nb = static_cast<int>(b_exps.size());
  int abs_alpha = 0, abs_beta = 0;
  for (int e : a_exps) abs_alpha += e;
  for (int e : b_exps) abs_beta += e;
  if (abs_alpha + abs_beta < 1)
    throw std::invalid_argument("nm check: at least one factor required");
  int m = std::max(abs_alpha, abs_beta);

  // E-free part of the bound
  double bound = std::pow(std::max(1.0, std::sqrt(h / 2.0)),
                          abs_alpha + abs_beta);
  for (int i = 0; i < na; ++i)
    bound *= std::pow(a_dirs.col(i).norm(), a_exps[static_cast<size_t>(i)]);
  for (int i = 0; i < nb; ++i)
    bound *= std::pow(b_dirs.col(i).norm(), b_exps[static_cast<size_t>(i)]);
  auto weight_moment = [](int power) {
    return integrate_normal_kinked(
        [power](double v) { return std::pow(1.0 + std::abs(v), power); },
        {0.0});
  };
  for (int i = 0; i < na; ++i)
    bound *= std::pow(weight_moment(na * a_exps[static_cast<size_t>(i)]),
                      1.0 / na);
  for (int i = 0; i < nb; ++i)
    bound *= std::pow(weight_moment(nb * b_exps[static_cast<size_t>(i)]),
                      1.0 / nb);

  // translated L^1 norm of one factor group over mu_{h/2}
  auto group_l1 = [&](const Mat& dirs, const std::vector<int>& exps,
                      const Vec& shift, double rhs) {
    if (exps.empty()) return AdaptiveResult{{1.0, 0.0}, 0};
    Symbol f = poly_scalar_symbol(dirs, exps).translated(shift);
    return adaptive_mc(
        [&](const SampleBatch& batch) {
          Vec vals = f.eval_batch(batch.samples).cwiseAbs();
          return mc_mean(vals);
        },
        static_cast<int>(dirs.rows()), h / 2.0, mc, rhs);
  };

  std::vector<NmEntry> out;
  for (const auto& [y, eta] : y_grid) {
    NmEntry entry;
    entry.y_norm = std::hypot(y.norm(), eta.norm());
    double denom = std::pow(1.0 + entry.y_norm, m);
    entry.rhs = bound;
    AdaptiveResult ra = group_l1(a_dirs, a_exps, y, bound * denom);
    AdaptiveResult rb = group_l1(b_dirs, b_exps, eta, bound * denom);
    entry.lhs = ra.est.value * rb.est.value / denom;
    entry.stderr_ = std::hypot(ra.est.stderr_ * rb.est.value,
                               rb.est.stderr_ * ra.est.value) /
                    denom;
    entry.pass = entry.lhs <= entry.rhs + 3.0 * entry.stderr_;
    out.push_back(entry);
  }
  return out;
}

ExtendedTaylorReport extended_taylor_residual(const Symbol& f, const Vec& x,
                                              int k, const SubspaceChain& chain,
                                              double p, double h,
                                              const McControls& mc) {
  if (k < 0) throw std::invalid_argument("taylor residual: k must be >= 0");
  ExtendedTaylorReport report;

  // pointwise identity at sampled Y: the order-k sum plus the integral form
  // of the remainder reproduces F(x+Y)
  {
    std::vector<DkPolynomial> polys;
    for (int i = 0; i <= k; ++i) polys.push_back(dk_polynomial(f, x, i));
    NormalStream stream(mc.seed, 0x7e1);
    const QuadratureRule& rule = gauss_legendre_unit(40);
    double worst = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
      Vec y = stream.vector(f.ambient_dim());
      Mat z = (f.directions().transpose() * y).transpose();  // 1 x arity
      CScalar sum = 0.0;
      double fact = 1.0;
      for (int i = 0; i <= k; ++i) {
        if (i > 0) fact *= i;
        sum += dk_values(polys[static_cast<size_t>(i)], z)[0] / fact;
      }
      CScalar integral = 0.0;
      std::vector<Vec> dirs(static_cast<size_t>(k + 1), y);
      for (int node = 0; node < rule.nodes.size(); ++node) {
        double theta = rule.nodes[node];
        integral += rule.weights[node] *
                    std::pow(1.0 - theta, k) / fact *
                    f.directional_derivative(x + theta * y, dirs);
      }
      worst = std::max(worst, std::abs(f.eval(x + y) - sum - integral));
    }
    report.pointwise_residual = worst;
    if (worst > 1e-8) report.pass = false;
  }

  // per-term projection rates along the chain
  for (int i = 1; i <= k + 1; ++i) {
    TaylorTermReport term;
    term.term = i <= k ? i : k + 1;
    bool remainder = i > k;
    DkPolynomial poly = remainder ? DkPolynomial{} : dk_polynomial(f, x, i);
    double fact = 1.0;
    for (int j = 2; j <= std::min(i, k); ++j) fact *= j;

    double prev_lhs = 0.0;
    for (int n = 0; n < chain.size(); ++n) {
      const Subspace& e = chain.level(n);
      Mat projected_dirs(f.ambient_dim(), f.arity());
      for (int r = 0; r < f.arity(); ++r)
        projected_dirs.col(r) = e.project(f.directions().col(r));
      RateStep step;
      step.n = e.dim();
      if (!remainder) {
        // termwise polynomial bound
        double rhs = 0.0;
        for (const auto& [counts, coeff] : poly.terms) {
          double max_norm = 0.0, defect = 0.0;
          for (size_t r = 0; r < counts.size(); ++r) {
            if (counts[r] == 0) continue;
            Vec a = f.directions().col(static_cast<Eigen::Index>(r));
            max_norm = std::max(max_norm, a.norm());
            defect += counts[r] * (e.project(a) - a).norm();
          }
          rhs += std::abs(coeff) * std::pow(checked_k(p * i), i) *
                 std::pow(h, i / 2.0) * std::pow(max_norm, i - 1.0) * defect;
        }
        step.rhs = rhs / fact;
      }
      auto measure = [&](const SampleBatch& batch) {
        Eigen::VectorXcd diff;
        if (!remainder) {
          Eigen::VectorXcd amb =
              dk_values(poly, batch.samples * f.directions());
          Eigen::VectorXcd prj =
              dk_values(poly, batch.samples * projected_dirs);
          diff = (prj - amb) / fact;
        } else {
          // remainder by subtraction: F(x+Y) minus the order-k sum, with Y
          // projected and not
          auto rem = [&](const Mat& dirs) {
            Mat z = batch.samples * dirs;
            Eigen::VectorXcd vals(batch.count);
            Vec w = f.coordinates(x);
            ProfileDerivatives derivs(f.profile());
            for (int row = 0; row < batch.count; ++row) {
              Vec shifted = w + z.row(row).transpose();
              vals[row] = f.profile()->value(shifted);
            }
            CScalar base = f.eval(x);
            (void)base;
            Eigen::VectorXcd sum = Eigen::VectorXcd::Zero(batch.count);
            double ifact = 1.0;
            for (int j = 0; j <= k; ++j) {
              if (j > 0) ifact *= j;
              sum += dk_values(dk_polynomial(f, x, j), z) / ifact;
            }
            return Eigen::VectorXcd(vals - sum);
          };
          diff = rem(projected_dirs) - rem(f.directions());
        }
        Vec vals_p = diff.cwiseAbs().array().pow(p);
        return power_mean_jackknife(vals_p, p);
      };
      AdaptiveResult res = adaptive_mc(measure, f.ambient_dim(), h, mc,
                                       remainder ? 0.0 : step.rhs);
      step.lhs = res.est.value;
      step.stderr_ = res.est.stderr_;
      if (!remainder) {
        step.pass = step_pass(step);
      } else {
        // no closed bound: require monotone decay and vanishing at the top
        bool monotone = n == 0 || step.lhs <= prev_lhs + 3.0 * step.stderr_;
        bool at_top = !chain.level(n).is_full() ||
                      step.lhs <= std::max(3.0 * step.stderr_, 1e-12);
        step.rhs = prev_lhs;
        step.pass = monotone && at_top;
      }
      prev_lhs = step.lhs;
      term.pass = term.pass && step.pass;
      term.steps.push_back(step);
    }
    report.pass = report.pass && term.pass;
    report.terms.push_back(term);
  }
  return report;
}

}  // namespace gausslab
