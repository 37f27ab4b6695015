#include "gausslab/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace gausslab {

namespace {

// Golub-Welsch from the Jacobi matrix of the orthogonal-polynomial family.
QuadratureRule golub_welsch(const Vec& offdiag, double total_mass) {
  int n = static_cast<int>(offdiag.size()) + 1;
  Mat jacobi = Mat::Zero(n, n);
  for (int k = 0; k < n - 1; ++k) {
    jacobi(k, k + 1) = offdiag[k];
    jacobi(k + 1, k) = offdiag[k];
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(jacobi);
  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = total_mass *
                 solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

QuadratureRule make_gauss_hermite(int order) {
  // Probabilists' Hermite He_n: off-diagonal sqrt(k), weight N(0,1), mass 1.
  Vec offdiag(order - 1);
  for (int k = 1; k < order; ++k) offdiag[k - 1] = std::sqrt(double(k));
  return golub_welsch(offdiag, 1.0);
}

QuadratureRule make_gauss_legendre_unit(int order) {
  // Legendre on [-1,1]: off-diagonal k / sqrt(4k^2 - 1), mass 2; mapped to [0,1].
  Vec offdiag(order - 1);
  for (int k = 1; k < order; ++k)
    offdiag[k - 1] = double(k) / std::sqrt(4.0 * k * k - 1.0);
  QuadratureRule rule = golub_welsch(offdiag, 2.0);
  rule.nodes = (rule.nodes.array() + 1.0) / 2.0;
  rule.weights /= 2.0;
  return rule;
}

template <typename Maker>
const QuadratureRule& cached_rule(int order, std::map<int, QuadratureRule>& cache,
                                  std::mutex& mutex, Maker make) {
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make(order)).first;
  return it->second;
}

}  // namespace

const QuadratureRule& gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mutex;
  return cached_rule(order, cache, mutex, make_gauss_hermite);
}

const QuadratureRule& gauss_legendre_unit(int order) {
  if (order < 1) throw std::invalid_argument("quadrature order must be >= 1");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mutex;
  return cached_rule(order, cache, mutex, make_gauss_legendre_unit);
}

double integrate_normal(const std::function<double(double)>& f, double rel_tol,
                        int max_order) {
  double prev = 0.0;
  bool have_prev = false;
  for (int order = 8; order <= max_order; order *= 2) {
    const QuadratureRule& rule = gauss_hermite(order);
    double est = 0.0;
    for (int i = 0; i < rule.nodes.size(); ++i)
      est += rule.weights[i] * f(rule.nodes[i]);
    if (have_prev) {
      double scale = std::max({std::abs(est), std::abs(prev), 1e-300});
      if (std::abs(est - prev) <= rel_tol * scale) return est;
    }
    prev = est;
    have_prev = true;
  }
  return prev;
}

double integrate_normal_kinked(const std::function<double(double)>& f,
                               const std::vector<double>& kinks,
                               double rel_tol, int max_order) {
  if (kinks.empty()) return integrate_normal(f, rel_tol, max_order);
  // Panel edges: +-12 standard deviations (mass beyond is ~1e-32) plus every
  // kink inside that window; piecewise Gauss-Legendre stays spectral on each
  // smooth panel.
  constexpr double kCutoff = 12.0;
  std::vector<double> edges = {-kCutoff, kCutoff};
  for (double c : kinks)
    if (c > -kCutoff && c < kCutoff) edges.push_back(c);
  std::sort(edges.begin(), edges.end());

  constexpr double kInvSqrt2Pi = 0.3989422804014326779;
  double prev = 0.0;
  bool have_prev = false;
  for (int order = 16; order <= max_order; order *= 2) {
    const QuadratureRule& rule = gauss_legendre_unit(order);
    double est = 0.0;
    for (size_t p = 0; p + 1 < edges.size(); ++p) {
      double lo = edges[p], len = edges[p + 1] - edges[p];
      for (int i = 0; i < rule.nodes.size(); ++i) {
        double v = lo + len * rule.nodes[i];
        est += len * rule.weights[i] * f(v) *
               (kInvSqrt2Pi * std::exp(-0.5 * v * v));
      }
    }
    if (have_prev) {
      double scale = std::max({std::abs(est), std::abs(prev), 1e-300});
      if (std::abs(est - prev) <= rel_tol * scale) return est;
    }
    prev = est;
    have_prev = true;
  }
  return prev;
}

}  // namespace gausslab
