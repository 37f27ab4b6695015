#pragma once

#include "gausslab/moments.hpp"
#include "gausslab/rng.hpp"
#include "gausslab/symbols.hpp"

#include <cstdint>
#include <vector>

namespace gausslab {

// One flattened multi-index: (frame index, derivative order) entries.
using MultiIndex = std::vector<std::pair<int, int>>;

// All multi-indices with entries in 1..max_entry supported on at most
// max_support frame indices (the zero multi-index included).  Violations of
// depth bounds for the stock families are always witnessed on few
// coordinates, so this set plus random sparse picks is the sampling basis.
std::vector<MultiIndex> depth_multi_indices(int dim, int max_entry,
                                            int max_support = 3);

// Worst-case witness for a claimed inequality lhs <= rhs over samples.
struct BoundWitness {
  double worst_ratio = 0.0;  // max lhs / rhs over samples (inf on rhs = 0)
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  int violations = 0;
  bool pass = true;  // worst_ratio <= 1 + tol

  void record(double lhs, double rhs, double tol);
};

// max over (x, multi-index) of |d^(alpha) F(x)| / prod eps_j^{order_j}: a
// certified lower bound for the weighted-derivative norm of depth m.
// Returns +inf if some eps_j = 0 meets a nonzero derivative.
double smeps_norm_lower_bound(const Symbol& f, const EpsilonSequence& eps,
                              int m, const std::vector<Vec>& grid,
                              const std::vector<MultiIndex>& multi_indices);
// Convenience overload generating the depth-m multi-index set itself.
double smeps_norm_lower_bound(const Symbol& f, const EpsilonSequence& eps,
                              int m, const std::vector<Vec>& grid);

// Samples random x and directions U_1..U_m, m <= m_max, and verifies
// |d^m f(x)(U_1..U_m)| <= claimed_norm * prod_j Q_A(U_j)^{1/2}.
BoundWitness qa_membership_check(const Symbol& f, const TraceClassOperator& a,
                                 double claimed_norm, int m_max, int trials,
                                 std::uint64_t seed, double tol = 1e-9);

// |Phi_k(x)(Y_1..Y_k)| <= 2^k * claimed norm * prod |Y_s| * (sum eps_j^2)^{k/2}
// on sampled inputs; the eps sum counts each phase pair once.
BoundWitness taylor_form_bound_check(const Symbol& f,
                                     const OrthonormalFrame& frame, int k,
                                     int trials, std::uint64_t seed,
                                     double tol = 1e-9);

// |F(X+V) - F(X)| <= claimed norm * |V| * sqrt(2) * (sum eps_j^2)^{1/2}
BoundWitness lipschitz_residual_check(const Symbol& f,
                                      const OrthonormalFrame& frame,
                                      int trials, std::uint64_t seed,
                                      double tol = 1e-9);

// Both sides of the Gaussian translation identity on a shared sample batch:
//   E[g(x)] = e^{-|a|^2/(2h)} E[g(x+a) e^{-<a,x>/h}],
// returned as the Monte Carlo residual with its standard error.
struct TranslationReport {
  double residual = 0.0;
  double stderr_ = 0.0;
  bool pass = false;  // residual <= 3 stderr (exact 0 for a = 0)
};

TranslationReport translation_identity_residual(const Symbol& g, const Vec& a,
                                                double h,
                                                const SampleBatch& batch);

}  // namespace gausslab
