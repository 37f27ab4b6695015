#include "gausslab/moments.hpp"

#include "gausslab/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gausslab {

double k_constant(double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("k_constant: p must be >= 1");
  return std::sqrt(2.0) * std::pow(std::numbers::pi, -1.0 / (2.0 * p)) *
         std::pow(std::tgamma((p + 1.0) / 2.0), 1.0 / p);
}

double abs_moment(double norm_a, double p, double h) {
  if (!(norm_a >= 0.0)) throw std::invalid_argument("abs_moment: |a| < 0");
  if (!(p >= 1.0)) throw std::invalid_argument("abs_moment: p must be >= 1");
  if (!(h > 0.0)) throw std::invalid_argument("abs_moment: h must be > 0");
  return std::pow(2.0 * h, p / 2.0) / std::sqrt(std::numbers::pi) *
         std::tgamma((p + 1.0) / 2.0) * std::pow(norm_a, p);
}

std::complex<double> exp_moment(const Vec& u, const Vec& v, double h) {
  if (u.size() != v.size())
    throw std::invalid_argument("exp_moment: dimension mismatch");
  if (!(h > 0.0)) throw std::invalid_argument("exp_moment: h must be > 0");
  std::complex<double> a_sq(u.squaredNorm() - v.squaredNorm(),
                            2.0 * u.dot(v));
  return std::exp(h * a_sq / 2.0);
}

double mixed_moment_rhs(double norm_a, double dot_ab, double norm_b, double p,
                        double h) {
  if (!(p >= 1.0) || !(h > 0.0) || !(norm_a >= 0.0) || !(norm_b >= 0.0))
    throw std::invalid_argument("mixed_moment_rhs: invalid ranges");
  if (std::abs(dot_ab) > norm_a * norm_b + 1e-12)
    throw std::invalid_argument("mixed_moment_rhs: Cauchy-Schwarz violated");
  double sa = std::sqrt(h) * norm_a;
  double shift = h * dot_ab;
  std::vector<double> kinks;
  if (sa > 0.0) kinks.push_back(-shift / sa);
  double integral = integrate_normal_kinked(
      [&](double v) { return std::pow(std::abs(sa * v + shift), p); }, kinks,
      1e-12);
  return std::exp(h * norm_b * norm_b / 2.0) * integral;
}

double central_moment_even(int p) {
  if (p < 0) throw std::invalid_argument("central_moment_even: p < 0");
  return std::pow(2.0, p) * std::tgamma(p + 0.5) / std::sqrt(std::numbers::pi);
}

double double_factorial_odd(int two_p) {
  double r = 1.0;
  for (int k = two_p - 1; k > 1; k -= 2) r *= k;
  return r;
}

namespace {

void enumerate_rec(std::vector<int>& free_idx, Pairing& current,
                   std::vector<Pairing>& out) {
  if (free_idx.empty()) {
    out.push_back(current);
    return;
  }
  // Pair the smallest free index with each larger free index; this yields
  // phi increasing and phi(j) < psi(j) by construction.
  int first = free_idx.front();
  for (size_t i = 1; i < free_idx.size(); ++i) {
    int partner = free_idx[i];
    std::vector<int> rest;
    rest.reserve(free_idx.size() - 2);
    for (size_t k = 1; k < free_idx.size(); ++k)
      if (k != i) rest.push_back(free_idx[k]);
    current.pairs.push_back({first, partner});
    enumerate_rec(rest, current, out);
    current.pairs.pop_back();
  }
}

}  // namespace

std::vector<Pairing> enumerate_pairings(int two_p) {
  if (two_p < 2 || two_p > 16 || two_p % 2 != 0)
    throw std::invalid_argument(
        "enumerate_pairings: need even count in [2, 16]");
  std::vector<int> idx(static_cast<size_t>(two_p));
  for (int i = 0; i < two_p; ++i) idx[static_cast<size_t>(i)] = i;
  std::vector<Pairing> out;
  Pairing current;
  enumerate_rec(idx, current, out);
  return out;
}

double wick_integral(const std::vector<Vec>& vectors, double h,
                     bool allow_odd) {
  if (!(h > 0.0)) throw std::invalid_argument("wick_integral: h must be > 0");
  int n = static_cast<int>(vectors.size());
  if (n % 2 != 0) {
    if (allow_odd) return 0.0;
    throw std::invalid_argument("wick_integral: odd vector count");
  }
  for (const auto& v : vectors)
    if (v.size() != vectors.front().size())
      throw std::invalid_argument("wick_integral: dimension mismatch");
  int p = n / 2;
  double sum = 0.0;
  for (const Pairing& pairing : enumerate_pairings(n)) {
    double prod = 1.0;
    for (auto [i, j] : pairing.pairs) prod *= vectors[i].dot(vectors[j]);
    sum += prod;
  }
  return std::pow(h, p) * sum;
}

McEstimate wick_mc(const std::vector<Vec>& vectors, const SampleBatch& batch) {
  int n = batch.count;
  Vec prod = Vec::Ones(n);
  for (const auto& v : vectors) {
    if (v.size() != batch.spec.dim)
      throw std::invalid_argument("wick_mc: dimension mismatch");
    prod.array() *= (batch.samples * v).array();
  }
  return mc_mean(prod);
}

namespace {

double lp_norm(const Vec& values, double p, const Vec& weights) {
  return std::pow((values.array().abs().pow(p) * weights.array()).sum(),
                  1.0 / p);
}

}  // namespace

HolderReport holder_telescoping_check(const std::vector<Vec>& f_list,
                                      const std::vector<Vec>& g_list, double p,
                                      const Vec& weights) {
  if (f_list.size() != g_list.size() || f_list.empty())
    throw std::invalid_argument("holder check: mismatched function lists");
  int big_n = static_cast<int>(f_list.size());
  Eigen::Index pts = weights.size();
  for (const auto& f : f_list)
    if (f.size() != pts) throw std::invalid_argument("holder check: array size");
  for (const auto& g : g_list)
    if (g.size() != pts) throw std::invalid_argument("holder check: array size");

  Vec prod_f = Vec::Ones(pts), prod_g = Vec::Ones(pts);
  for (int i = 0; i < big_n; ++i) {
    prod_f.array() *= f_list[static_cast<size_t>(i)].array();
    prod_g.array() *= g_list[static_cast<size_t>(i)].array();
  }
  double pn = p * big_n;
  HolderReport report;
  report.lhs = lp_norm(prod_f - prod_g, p, weights);
  report.rhs = 0.0;
  for (int k = 0; k < big_n; ++k) {
    double factor = 1.0;
    for (int i = 0; i < k; ++i)
      factor *= lp_norm(f_list[static_cast<size_t>(i)], pn, weights);
    for (int i = k + 1; i < big_n; ++i)
      factor *= lp_norm(g_list[static_cast<size_t>(i)], pn, weights);
    report.rhs += factor * lp_norm(f_list[static_cast<size_t>(k)] -
                                       g_list[static_cast<size_t>(k)],
                                   pn, weights);
  }
  report.slack = report.rhs - report.lhs;
  report.pass = report.lhs <= report.rhs + 1e-12;
  return report;
}

}  // namespace gausslab
