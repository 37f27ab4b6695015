#pragma once

#include "gausslab/checks.hpp"
#include "gausslab/moments.hpp"
#include "gausslab/symbols.hpp"

#include <cstdint>
#include <vector>

namespace gausslab {

// Increasing sequence E_1 c ... c E_K inside the ambient truncation; each
// level's basis extends the previous one's columns.
class SubspaceChain {
 public:
  SubspaceChain(std::vector<Subspace> levels, int ambient_dim);

  // E_n = span(e_0 .. e_{dims[n]-1})
  static SubspaceChain coordinate(int ambient_dim,
                                  const std::vector<int>& dims);
  // Same nesting along the columns of a Haar-random rotation.
  static SubspaceChain rotated(int ambient_dim, const std::vector<int>& dims,
                               std::uint64_t seed);

  int size() const { return static_cast<int>(levels_.size()); }
  int ambient_dim() const { return ambient_dim_; }
  const Subspace& level(int n) const { return levels_[static_cast<size_t>(n)]; }

 private:
  std::vector<Subspace> levels_;
  int ambient_dim_;
};

// One chain step of a rate experiment.
struct RateStep {
  int n = 0;           // subspace dimension
  double lhs = 0.0;    // measured distance
  double stderr_ = 0.0;
  double rhs = 0.0;    // bound
  bool pass = false;   // lhs <= rhs + 3 stderr
};

struct ConvergenceReport {
  std::vector<RateStep> steps;
  std::vector<RateStep> cauchy_steps;  // consecutive-level distances
  double exponent = 0.0;               // the p or q of the experiment
  double h = 0.0;
  std::uint64_t seed = 0;
  int samples = 0;  // largest sample count used
  bool pass = true;
};

// Monte Carlo controls shared by the rate checks: sample counts double from
// `initial` until the standard error drops below `target_fraction` of the
// bound (or the cap).
struct McControls {
  std::uint64_t seed = 1;
  int initial = 100000;
  int cap = 10000000;
  double target_fraction = 0.05;
};

// || F o pi_E - F ||_{L^q(mu_h)} over the ambient Gaussian, with block
// jackknife standard error.
McEstimate lq_distance(const Symbol& f, const Subspace& e, double q, double h,
                       const SampleBatch& batch);

// K(q) h^{1/2} |pi_E(a) - a|: the exact distance for the linear symbol.
double linear_extension_distance(const Vec& a, const Subspace& e, double q,
                                 double h);

// C(p) and alpha(p): 1 and 2 up to p = 2, then K(p) (sum lambda)^{1/2-1/p}
// and p.
double qa_rate_constant(double p, double lambda_sum);
double qa_rate_exponent(double p);

// Weighted-class rate bound along the chain, with the Cauchy variant between
// consecutive levels.  F must carry a depth-1 claim with its eps sequence.
ConvergenceReport sm_rate_check(const Symbol& f, const OrthonormalFrame& frame,
                                const SubspaceChain& chain, double q, double h,
                                const McControls& mc);

// Quadratic-class rate bound along the chain.  f must carry a Q_A claim.
ConvergenceReport qa_rate_check(const Symbol& f, const SubspaceChain& chain,
                                double p, double h, const McControls& mc);

// || Q_A^{1/2} o pi_E ||_{L^p} against its bound, plus the E-free variant.
struct ProjectionMomentReport {
  double lhs = 0.0;
  double stderr_ = 0.0;
  double rhs = 0.0;         // C(p) (sum lambda_j |pi_E u_j|^alpha)^{1/alpha} h^{1/2}
  double rhs_e_free = 0.0;  // C(p) (sum lambda_j)^{1/alpha} h^{1/2}
  bool pass = false;
};

ProjectionMomentReport qa_projection_moment_check(const TraceClassOperator& a,
                                                  const Subspace& e, double p,
                                                  double h,
                                                  const McControls& mc);

// || d^k f(x) pi_E(y)^k - d^k f(x) y^k ||_{L^p(y)} along the chain.
ConvergenceReport derivative_extension_rate(const Symbol& f, const Vec& x,
                                            int k, const SubspaceChain& chain,
                                            double p, double h,
                                            const McControls& mc);

// Scalar-product polynomial rates: F = prod <a_i, .>^{alpha_i}.
ConvergenceReport prodscal_rate_check(const Mat& directions,
                                      const std::vector<int>& exponents,
                                      const SubspaceChain& chain, double p,
                                      double h, const McControls& mc);

// Translation-average norm of the product of linear factors: for each Y on
// the grid, || F(.+Y) ||_{L^1(mu_{h/2})} / (1+|Y|)^m against the product
// bound.  Y splits as (y, eta) acting on the two factor groups.
struct NmEntry {
  double y_norm = 0.0;
  double lhs = 0.0;
  double stderr_ = 0.0;
  double rhs = 0.0;
  bool pass = false;
};

std::vector<NmEntry> nm_bound_check(const Mat& a_dirs,
                                    const std::vector<int>& a_exps,
                                    const Mat& b_dirs,
                                    const std::vector<int>& b_exps, double h,
                                    const std::vector<std::pair<Vec, Vec>>& y_grid,
                                    const McControls& mc);

// Taylor expansion of order k at x: exact pointwise identity check plus
// per-term projection rates along the chain (terms via the polynomial
// machinery, remainder by subtraction).
struct TaylorTermReport {
  int term = 0;  // 0..k polynomial terms, k+1 meaning the remainder
  std::vector<RateStep> steps;
  bool pass = true;
};

struct ExtendedTaylorReport {
  double pointwise_residual = 0.0;  // identity defect at sampled (x, Y)
  std::vector<TaylorTermReport> terms;
  bool pass = true;
};

ExtendedTaylorReport extended_taylor_residual(const Symbol& f, const Vec& x,
                                              int k, const SubspaceChain& chain,
                                              double p, double h,
                                              const McControls& mc);

}  // namespace gausslab
