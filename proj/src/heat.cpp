#include "gausslab/heat.hpp"

#include "gausslab/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gausslab {

namespace {

// Covariance factor of the slot noise: L with L L^T = t * Gram(directions),
// columns pruned at relative eigenvalue 1e-12 (condition guard).
Mat noise_factor(const Mat& directions, double t) {
  Mat gram = directions.transpose() * directions;
  if (gram.rows() == 0 || t == 0.0) return Mat(gram.rows(), 0);
  Eigen::SelfAdjointEigenSolver<Mat> solver(gram);
  const Vec& d = solver.eigenvalues();
  double dmax = d.maxCoeff();
  std::vector<int> keep;
  for (int i = 0; i < d.size(); ++i)
    if (d[i] > dmax * 1e-12 && d[i] > 0.0) keep.push_back(i);
  Mat l(gram.rows(), static_cast<int>(keep.size()));
  for (size_t c = 0; c < keep.size(); ++c)
    l.col(static_cast<int>(c)) =
        solver.eigenvectors().col(keep[c]) * std::sqrt(t * d[keep[c]]);
  return l;
}

void check_grid_budget(int order, int dims) {
  double size = std::pow(static_cast<double>(order), dims);
  if (size > 1e7)
    throw std::runtime_error("heat quadrature: tensor grid exceeds budget");
}

// Mean of g(z) over z ~ N(0, I_r) on the tensor Gauss-Hermite grid.
template <typename G>
CScalar tensor_gh_mean(int r, int order, G&& g) {
  if (r == 0) {
    Vec empty(0);
    return g(empty);
  }
  check_grid_budget(order, r);
  const QuadratureRule& rule = gauss_hermite(order);
  std::vector<int> idx(static_cast<size_t>(r), 0);
  Vec z(r);
  CScalar sum = 0.0;
  bool done = false;
  while (!done) {
    double w = 1.0;
    for (int j = 0; j < r; ++j) {
      w *= rule.weights[idx[static_cast<size_t>(j)]];
      z[j] = rule.nodes[idx[static_cast<size_t>(j)]];
    }
    sum += w * g(z);
    done = true;
    for (int j = 0; j < r; ++j) {
      if (++idx[static_cast<size_t>(j)] < order) {
        done = false;
        break;
      }
      idx[static_cast<size_t>(j)] = 0;
    }
  }
  return sum;
}

CScalar heat_quadrature_value(const Symbol& f, const Vec& x, double t,
                              int order) {
  Vec w = f.coordinates(x);
  Mat l = noise_factor(f.directions(), t);
  const Profile& g = *f.profile();
  return tensor_gh_mean(static_cast<int>(l.cols()), order,
                        [&](const Vec& z) { return g.value(w + l * z); });
}

double richardson_step(const Vec& x) { return 1e-4 * (1.0 + x.norm()); }

}  // namespace

HeatResult heat_apply(const Symbol& f, const Vec& x, double t,
                      const HeatMethod& method) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat_apply: t must be >= 0");
  if (x.size() != f.ambient_dim())
    throw std::invalid_argument("heat_apply: dimension mismatch");

  HeatResult result;
  result.kind = method.kind;
  if (t == 0.0) {
    result.value = f.eval(x);
    result.error_estimate = 0.0;
    return result;
  }
  if (method.kind == HeatMethod::Kind::quadrature) {
    int order = std::max(2, method.quadrature_order);
    CScalar coarse = heat_quadrature_value(f, x, t, std::max(2, order / 2));
    CScalar fine = heat_quadrature_value(f, x, t, order);
    result.value = fine;
    result.error_estimate = std::abs(fine - coarse);
    if (!std::isfinite(result.value.real()) ||
        !std::isfinite(result.value.imag()))
      throw std::overflow_error("heat_apply: non-finite quadrature value");
    return result;
  }
  SampleBatch batch =
      gaussian_sample({f.ambient_dim(), t}, method.seed, method.mc_samples);
  Mat shifted = batch.samples;
  shifted.rowwise() += x.transpose();
  Eigen::VectorXcd vals = f.eval_batch(shifted);
  McEstimate re = mc_mean(vals.real());
  McEstimate im = mc_mean(vals.imag());
  result.value = CScalar(re.value, im.value);
  result.error_estimate = std::hypot(re.stderr_, im.stderr_);
  if (!std::isfinite(result.value.real()) ||
      !std::isfinite(result.value.imag()))
    throw std::overflow_error("heat_apply: non-finite Monte Carlo value");
  return result;
}

std::optional<Symbol> heat_closed_form(const Symbol& f, double t) {
  if (!(t >= 0.0))
    throw std::invalid_argument("heat_closed_form: t must be >= 0");
  if (t == 0.0) return f;
  Mat gram = f.directions().transpose() * f.directions();
  int k = static_cast<int>(gram.rows());
  for (int r = 0; r < k; ++r)
    for (int s = r + 1; s < k; ++s) {
      double scale = std::sqrt(gram(r, r) * gram(s, s));
      if (std::abs(gram(r, s)) > 1e-12 * std::max(scale, 1.0))
        return std::nullopt;  // slot noise not independent
    }
  Vec variances = t * gram.diagonal();
  auto image = f.profile()->heat_profile(variances);
  if (!image) return std::nullopt;
  return Symbol(f.directions(), f.offsets(),
                lincomb_profile({{image->first, image->second}}));
}

CScalar heat_nested(const Symbol& f, const Vec& x, double s, double t,
                    int order) {
  Vec w = f.coordinates(x);
  Mat ls = noise_factor(f.directions(), s);
  Mat lt = noise_factor(f.directions(), t);
  int rs = static_cast<int>(ls.cols());
  int rt = static_cast<int>(lt.cols());
  const Profile& g = *f.profile();
  return tensor_gh_mean(rs + rt, order, [&](const Vec& z) {
    return g.value(w + ls * z.head(rs) + lt * z.tail(rt));
  });
}

double semigroup_residual(const Symbol& f, const Vec& x, double s, double t,
                          const HeatMethod& method) {
  CScalar whole = heat_apply(f, x, s + t, method).value;
  std::optional<Symbol> inner = heat_closed_form(f, s);
  CScalar nested = inner ? heat_apply(*inner, x, t, method).value
                         : heat_nested(f, x, s, t,
                                       std::max(2, method.quadrature_order));
  return std::abs(nested - whole);
}

BoundWitness contraction_check(const Symbol& f, const std::vector<Vec>& grid,
                               double t, const HeatMethod& method,
                               double tol) {
  const ClassClaims& claims = f.claims();
  double norm;
  if (claims.qa_norm)
    norm = *claims.qa_norm;
  else if (claims.sm_norm)
    norm = *claims.sm_norm;
  else
    throw std::invalid_argument("contraction check: symbol carries no claim");
  BoundWitness witness;
  for (const Vec& x : grid) {
    HeatResult r = heat_apply(f, x, t, method);
    witness.record(std::abs(r.value), norm + r.error_estimate, tol);
  }
  return witness;
}

namespace {

// Finite-difference trace of the Hessian of a scalar field, one Richardson
// extrapolation level.
CScalar fd_laplacian(const std::function<CScalar(const Vec&)>& g, const Vec& x,
                     double step) {
  auto lap = [&](double h) {
    CScalar center = g(x);
    CScalar sum = 0.0;
    for (int j = 0; j < x.size(); ++j) {
      Vec e = Vec::Zero(x.size());
      e[j] = h;
      sum += (g(x + e) - 2.0 * center + g(x - e)) / (h * h);
    }
    return sum;
  };
  CScalar coarse = lap(step);
  CScalar fine = lap(step / 2.0);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double commutation_residual(const Symbol& f, const Vec& x, double t,
                            const HeatMethod& method,
                            bool force_finite_difference) {
  CScalar rhs = heat_apply(f.laplacian(), x, t, method).value;
  CScalar lhs;
  std::optional<Symbol> cf =
      force_finite_difference ? std::nullopt : heat_closed_form(f, t);
  if (cf) {
    lhs = cf->laplacian_value(x);
  } else {
    auto hv = [&](const Vec& y) { return heat_apply(f, y, t, method).value; };
    lhs = fd_laplacian(hv, x, richardson_step(x));
  }
  return std::abs(lhs - rhs);
}

double generator_residual(const Symbol& f, const Vec& x, double t,
                          double delta, const HeatMethod& method) {
  if (!(delta > 0.0))
    throw std::invalid_argument("generator residual: delta must be > 0");
  CScalar quotient = (heat_apply(f, x, t + delta, method).value -
                      heat_apply(f, x, t, method).value) /
                     delta;
  CScalar generator = 0.5 * heat_apply(f.laplacian(), x, t, method).value;
  return std::abs(quotient - generator);
}

ExpansionReport expansion_check(const Symbol& f, const Vec& x, double t, int n,
                                const HeatMethod& method,
                                std::optional<double> qa_top_norm,
                                const OrthonormalFrame* frame, double tol) {
  if (n < 0) throw std::invalid_argument("expansion check: n must be >= 0");
  ExpansionReport report;
  HeatResult heat = heat_apply(f, x, t, method);
  report.heat_value = heat.value;

  CScalar sum = 0.0;
  double factorial = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) factorial *= k;
    sum += std::pow(t / 2.0, k) / factorial *
           f.iterated_laplacian_value(x, k);
  }
  report.partial_sum = sum;
  report.residual = std::abs(heat.value - sum);

  double slack = heat.error_estimate + tol;
  if (qa_top_norm) {
    double fact = 1.0;
    for (int k = 2; k <= n + 1; ++k) fact *= k;
    report.qa_bound = std::pow(t, n + 1) * *qa_top_norm / fact;
    if (report.residual > *report.qa_bound + slack) report.pass = false;
  }
  const ClassClaims& claims = f.claims();
  if (claims.sm_norm && claims.eps && frame != nullptr) {
    int k = 2 * n + 1;
    double kfact = 1.0;
    for (int i = 2; i <= k; ++i) kfact *= i;
    double eps_sum = claims.eps->gamma_sum(*frame);
    report.sm_bound = (1.0 / (std::sqrt(std::numbers::pi) * kfact)) *
                      *claims.sm_norm * std::pow(2.0, 1.5 * k) *
                      std::pow(t, k / 2.0) * std::tgamma((k + 1) / 2.0) *
                      std::pow(eps_sum, k);
    if (report.residual > *report.sm_bound + slack) report.pass = false;
  }
  return report;
}

double multiplication_commutator_residual(const Symbol& f, const Vec& x,
                                          double t, const Vec& u,
                                          const HeatMethod& method) {
  if (!(t > 0.0))
    throw std::invalid_argument("commutator residual: t must be > 0");
  CScalar weighted = heat_apply(f.multiply_coordinate(u), x, t, method).value;
  CScalar plain = heat_apply(f, x, t, method).value;
  CScalar lhs = (weighted - u.dot(x) * plain) / t;
  CScalar rhs = heat_apply(f.partial(u), x, t, method).value;
  return std::abs(lhs - rhs);
}

double covariance_residual(const Symbol& f, const OrthogonalMap& phi,
                           const Vec& x, double t, const HeatMethod& method) {
  CScalar left = heat_apply(f, phi.apply(x), t, method).value;
  CScalar right = heat_apply(f.compose_orthogonal(phi), x, t, method).value;
  return std::abs(left - right);
}

namespace {

CScalar fd_multi_partial(const std::function<CScalar(const Vec&)>& g,
                         const Vec& x, MultiIndex mi, double step) {
  while (!mi.empty() && mi.back().second == 0) mi.pop_back();
  if (mi.empty()) return g(x);
  auto [j, order] = mi.back();
  mi.back().second -= 1;
  Vec e = Vec::Zero(x.size());
  e[j] = step;
  auto lower = [&](const Vec& y) { return fd_multi_partial(g, y, mi, step); };
  return (lower(x + e) - lower(x - e)) / (2.0 * step);
}

}  // namespace

double derivative_exchange_residual(const Symbol& f, const Vec& x, double t,
                                    const MultiIndex& multi_index,
                                    const HeatMethod& method) {
  CScalar rhs = heat_apply(f.partial_multi(multi_index), x, t, method).value;
  CScalar lhs;
  std::optional<Symbol> cf = heat_closed_form(f, t);
  if (cf) {
    lhs = cf->partial_multi_value(multi_index, x);
  } else {
    auto hv = [&](const Vec& y) { return heat_apply(f, y, t, method).value; };
    lhs = fd_multi_partial(hv, x, multi_index, richardson_step(x));
  }
  return std::abs(lhs - rhs);
}

double loglog_slope(const std::vector<double>& ts,
                    const std::vector<double>& residuals) {
  if (ts.size() != residuals.size() || ts.size() < 2)
    throw std::invalid_argument("loglog_slope: need matching lists, size >= 2");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int n = static_cast<int>(ts.size());
  for (int i = 0; i < n; ++i) {
    double lx = std::log(ts[static_cast<size_t>(i)]);
    double ly = std::log(residuals[static_cast<size_t>(i)]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace gausslab
