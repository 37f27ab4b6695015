#pragma once

#include "gausslab/checks.hpp"
#include "gausslab/symbols.hpp"

#include <optional>

namespace gausslab {

// Evaluation strategy for the Gaussian smoothing operator.
struct HeatMethod {
  enum class Kind { quadrature, monte_carlo };

  Kind kind = Kind::quadrature;
  int quadrature_order = 40;  // per reduced profile dimension
  int mc_samples = 100000;
  std::uint64_t seed = 1;

  static HeatMethod quadrature(int order = 40) {
    return HeatMethod{Kind::quadrature, order, 0, 0};
  }
  static HeatMethod monte_carlo(int samples, std::uint64_t seed) {
    return HeatMethod{Kind::monte_carlo, 0, samples, seed};
  }
};

struct HeatResult {
  CScalar value{0.0, 0.0};
  double error_estimate = 0.0;  // quadrature refinement gap or MC stderr
  HeatMethod::Kind kind = HeatMethod::Kind::quadrature;
};

// (H_t f)(x) = Int f(x + y) dmu_t(y).  t = 0 is the identity.  The
// quadrature path integrates over span of the symbol directions only: the
// slot noise has covariance t G with G the direction Gram matrix, reduced by
// eigendecomposition (eigenvalues below 1e-12 of the largest are pruned) and
// evaluated on a tensor Gauss-Hermite grid.
HeatResult heat_apply(const Symbol& f, const Vec& x, double t,
                      const HeatMethod& method);

// Exact H_t f as a Symbol, when the profile family supports it and the
// direction Gram matrix is diagonal (independent slot noise).
std::optional<Symbol> heat_closed_form(const Symbol& f, double t);

// H_t(H_s f)(x) by joint quadrature over both noise layers (no closed forms
// involved, so it is an independent route for the semigroup identity).
CScalar heat_nested(const Symbol& f, const Vec& x, double s, double t,
                    int order);

// |H_t(H_s f)(x) - H_{t+s} f(x)|, inner factor by closed form when
// available, else by the joint quadrature.
double semigroup_residual(const Symbol& f, const Vec& x, double s, double t,
                          const HeatMethod& method);

// |H_t f(x)| <= claimed class norm on every grid point, within method error.
BoundWitness contraction_check(const Symbol& f, const std::vector<Vec>& grid,
                               double t, const HeatMethod& method,
                               double tol = 1e-9);

// |Delta(H_t f)(x) - H_t(Delta f)(x)|.  The left side uses the exact
// Laplacian of the closed-form H_t f when available; otherwise a central
// finite-difference Laplacian of y -> H_t f(y) with one Richardson level.
double commutation_residual(const Symbol& f, const Vec& x, double t,
                            const HeatMethod& method,
                            bool force_finite_difference = false);

// |(H_{t+delta} f(x) - H_t f(x)) / delta - (1/2) H_t(Delta f)(x)|
double generator_residual(const Symbol& f, const Vec& x, double t,
                          double delta, const HeatMethod& method);

// H_t f = sum_{k<=N} t^k/k! (Delta/2)^k f + remainder, with both remainder
// bounds where the corresponding class claim exists.
struct ExpansionReport {
  double residual = 0.0;       // |H_t f(x) - partial sum|
  CScalar heat_value{0.0, 0.0};
  CScalar partial_sum{0.0, 0.0};
  std::optional<double> qa_bound;  // t^{N+1} ||(Delta/2)^{N+1} f|| / (N+1)!
  std::optional<double> sm_bound;  // weighted-class bound with k = 2N+1
  bool pass = true;                // residual below every available bound
};

// qa_top_norm: class norm of (Delta/2)^{N+1} f, supplied by the caller
// (exact for the stock families); frame feeds the eps sums of the
// depth-class bound.
ExpansionReport expansion_check(const Symbol& f, const Vec& x, double t, int n,
                                const HeatMethod& method,
                                std::optional<double> qa_top_norm = {},
                                const OrthonormalFrame* frame = nullptr,
                                double tol = 1e-9);

// |(1/t)(H_t(M_u F)(x) - <u,x> H_t F(x)) - H_t(dF/du)(x)|
double multiplication_commutator_residual(const Symbol& f, const Vec& x,
                                          double t, const Vec& u,
                                          const HeatMethod& method);

// |(H_t f)(phi x) - H_t(f o phi)(x)|
double covariance_residual(const Symbol& f, const OrthogonalMap& phi,
                           const Vec& x, double t, const HeatMethod& method);

// |d^(alpha)(H_t F)(x) - H_t(d^(alpha) F)(x)|; the left side differentiates
// the closed-form H_t F when available, else central differences.
double derivative_exchange_residual(const Symbol& f, const Vec& x, double t,
                                    const MultiIndex& multi_index,
                                    const HeatMethod& method);

// Least-squares slope of log(residual) against log(t): observed order.
double loglog_slope(const std::vector<double>& ts,
                    const std::vector<double>& residuals);

}  // namespace gausslab
