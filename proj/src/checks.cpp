#include "gausslab/checks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gausslab {

void BoundWitness::record(double lhs, double rhs, double tol) {
  double ratio;
  if (rhs > 0.0)
    ratio = lhs / rhs;
  else
    ratio = lhs <= tol ? 0.0 : std::numeric_limits<double>::infinity();
  if (ratio > worst_ratio) {
    worst_ratio = ratio;
    worst_lhs = lhs;
    worst_rhs = rhs;
  }
  if (lhs > rhs + tol * (1.0 + rhs)) {
    ++violations;
    pass = false;
  }
}

std::vector<MultiIndex> depth_multi_indices(int dim, int max_entry,
                                            int max_support) {
  if (dim < 1 || max_entry < 0 || max_support < 1)
    throw std::invalid_argument("depth_multi_indices: invalid arguments");
  std::vector<MultiIndex> out;
  out.push_back({});  // the zero multi-index

  // support sets of size 1..min(max_support, 3, dim), nonzero entries
  std::vector<int> support;
  auto emit_orders = [&](auto&& self, size_t pos, MultiIndex& mi) -> void {
    if (pos == support.size()) {
      out.push_back(mi);
      return;
    }
    for (int order = 1; order <= max_entry; ++order) {
      mi.push_back({support[pos], order});
      self(self, pos + 1, mi);
      mi.pop_back();
    }
  };
  auto choose = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      if (!support.empty()) {
        MultiIndex mi;
        emit_orders(emit_orders, 0, mi);
      }
      return;
    }
    for (int j = start; j < dim; ++j) {
      support.push_back(j);
      self(self, j + 1, remaining - 1);
      support.pop_back();
    }
  };
  int top = std::min(max_support, dim);
  for (int size = 1; size <= top; ++size) choose(choose, 0, size);
  return out;
}

double smeps_norm_lower_bound(const Symbol& f, const EpsilonSequence& eps,
                              int m, const std::vector<Vec>& grid,
                              const std::vector<MultiIndex>& multi_indices) {
  if (eps.size() != f.ambient_dim())
    throw std::invalid_argument("smeps bound: eps/frame dimension mismatch");
  (void)m;
  double best = 0.0;
  for (const MultiIndex& mi : multi_indices) {
    double weight = 1.0;
    bool zero_eps = false;
    for (auto [j, order] : mi) {
      if (eps[j] == 0.0 && order > 0) {
        zero_eps = true;
        break;
      }
      weight *= std::pow(eps[j], order);
    }
    for (const Vec& x : grid) {
      double val = std::abs(f.partial_multi_value(mi, x));
      if (zero_eps) {
        if (val > 0.0) return std::numeric_limits<double>::infinity();
        continue;
      }
      best = std::max(best, val / weight);
    }
  }
  return best;
}

double smeps_norm_lower_bound(const Symbol& f, const EpsilonSequence& eps,
                              int m, const std::vector<Vec>& grid) {
  return smeps_norm_lower_bound(f, eps, m, grid,
                                depth_multi_indices(f.ambient_dim(), m));
}

BoundWitness qa_membership_check(const Symbol& f, const TraceClassOperator& a,
                                 double claimed_norm, int m_max, int trials,
                                 std::uint64_t seed, double tol) {
  if (a.ambient_dim() != f.ambient_dim())
    throw std::invalid_argument("qa check: dimension mismatch");
  NormalStream stream(seed, 0x9a);
  BoundWitness witness;
  int dim = f.ambient_dim();
  for (int m = 0; m <= m_max; ++m) {
    for (int trial = 0; trial < trials; ++trial) {
      Vec x = stream.vector(dim);
      std::vector<Vec> dirs;
      double rhs = claimed_norm;
      for (int j = 0; j < m; ++j) {
        dirs.push_back(stream.vector(dim));
        rhs *= a.a_norm(dirs.back());
      }
      double lhs = std::abs(f.directional_derivative(x, dirs));
      witness.record(lhs, rhs, tol);
    }
  }
  return witness;
}

BoundWitness taylor_form_bound_check(const Symbol& f,
                                     const OrthonormalFrame& frame, int k,
                                     int trials, std::uint64_t seed,
                                     double tol) {
  const ClassClaims& claims = f.claims();
  if (!claims.sm_norm || !claims.eps)
    throw std::invalid_argument("taylor bound check: no depth-class claim");
  if (k > claims.sm_order)
    throw std::invalid_argument("taylor bound check: k exceeds claimed depth");
  double eps_sq = claims.eps->gamma_sum_sq(frame);
  NormalStream stream(seed, 0x7a);
  BoundWitness witness;
  int dim = f.ambient_dim();
  for (int trial = 0; trial < trials; ++trial) {
    Vec x = stream.vector(dim);
    std::vector<Vec> ys;
    double prod_norms = 1.0;
    for (int s = 0; s < k; ++s) {
      ys.push_back(stream.vector(dim));
      prod_norms *= ys.back().norm();
    }
    double lhs = std::abs(f.directional_derivative(x, ys));
    double rhs = std::pow(2.0, k) * *claims.sm_norm * prod_norms *
                 std::pow(eps_sq, k / 2.0);
    witness.record(lhs, rhs, tol);
  }
  return witness;
}

BoundWitness lipschitz_residual_check(const Symbol& f,
                                      const OrthonormalFrame& frame,
                                      int trials, std::uint64_t seed,
                                      double tol) {
  const ClassClaims& claims = f.claims();
  if (!claims.sm_norm || !claims.eps || claims.sm_order < 1)
    throw std::invalid_argument("lipschitz check: needs a depth >= 1 claim");
  double factor =
      *claims.sm_norm * std::sqrt(2.0) * std::sqrt(claims.eps->gamma_sum_sq(frame));
  NormalStream stream(seed, 0x11b);
  BoundWitness witness;
  int dim = f.ambient_dim();
  for (int trial = 0; trial < trials; ++trial) {
    Vec x = stream.vector(dim);
    Vec v = stream.vector(dim);
    double lhs = std::abs(f.eval(x + v) - f.eval(x));
    witness.record(lhs, factor * v.norm(), tol);
  }
  return witness;
}

TranslationReport translation_identity_residual(const Symbol& g, const Vec& a,
                                                double h,
                                                const SampleBatch& batch) {
  if (a.size() != g.ambient_dim() || batch.spec.dim != g.ambient_dim())
    throw std::invalid_argument("translation residual: dimension mismatch");
  if (!(h > 0.0))
    throw std::invalid_argument("translation residual: h must be > 0");

  Eigen::VectorXcd plain = g.eval_batch(batch.samples);
  Eigen::VectorXcd shifted = g.translated(a).eval_batch(batch.samples);
  Vec log_density = -(batch.samples * a) / h;
  double prefactor = std::exp(-a.squaredNorm() / (2.0 * h));

  Eigen::VectorXcd diff(batch.count);
  for (int i = 0; i < batch.count; ++i) {
    std::complex<double> d =
        plain[i] - prefactor * shifted[i] * std::exp(log_density[i]);
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag()))
      throw std::overflow_error("translation residual: non-finite integrand");
    diff[i] = d;
  }
  McEstimate re = mc_mean(diff.real());
  McEstimate im = mc_mean(diff.imag());
  TranslationReport report;
  report.residual = std::hypot(re.value, im.value);
  report.stderr_ = std::hypot(re.stderr_, im.stderr_);
  report.pass = report.residual <= std::max(3.0 * report.stderr_, 1e-12);
  return report;
}

}  // namespace gausslab
