#pragma once

#include "gausslab/linalg.hpp"
#include "gausslab/rng.hpp"

#include <complex>
#include <vector>

namespace gausslab {

// K(p) = 2^{1/2} pi^{-1/(2p)} Gamma((p+1)/2)^{1/p}; K(2) = 1.
double k_constant(double p);

// Integral of |l_a|^p against mu_h: (2h)^{p/2} pi^{-1/2} Gamma((p+1)/2) |a|^p.
double abs_moment(double norm_a, double p, double h);

// Integral of e^{l_a} with a = u + iv: e^{h a^2 / 2}, a^2 = |u|^2 - |v|^2 + 2i<u,v>.
std::complex<double> exp_moment(const Vec& u, const Vec& v, double h);

// RHS of the mixed exponential/absolute moment identity:
// e^{h|b|^2/2} * Int_R |sqrt(h)|a| v + h <a,b>|^p dmu_{R,1}(v), by quadrature.
double mixed_moment_rhs(double norm_a, double dot_ab, double norm_b, double p,
                        double h);

// Int_R y^{2p} dmu_{R,1} = pi^{-1/2} 2^p Gamma(p + 1/2).
double central_moment_even(int p);

// A pair partition of {0, ..., 2p-1}: phi(j) < psi(j) per pair, first
// elements strictly increasing.
struct Pairing {
  std::vector<std::pair<int, int>> pairs;
};

// All (2p-1)!! pair partitions of {0..two_p-1}; two_p even, 2 <= two_p <= 16.
std::vector<Pairing> enumerate_pairings(int two_p);

// (2p-1)!! for 2p = two_p.
double double_factorial_odd(int two_p);

// Wick/Isserlis: Int prod l_{u_i} dmu_h = h^p sum_pairings prod <u_phi, u_psi>.
// An odd vector count throws unless allow_odd, in which case the integral is 0.
double wick_integral(const std::vector<Vec>& vectors, double h,
                     bool allow_odd = false);

// Monte Carlo counterpart of wick_integral on a shared batch; the batch must
// have been drawn with the same h.
McEstimate wick_mc(const std::vector<Vec>& vectors, const SampleBatch& batch);

// Holder telescoping check on a finite discrete measure space.
struct HolderReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool pass = false;   // lhs <= rhs + 1e-12
};

// f_list/g_list: N functions as value arrays over the points of a discrete
// probability space with the given weights.  Checks
// ||prod f - prod g||_p <= sum_k (prod_{i<k} ||f_i||_{pN} prod_{i>k} ||g_i||_{pN}) ||f_k - g_k||_{pN}.
HolderReport holder_telescoping_check(const std::vector<Vec>& f_list,
                                      const std::vector<Vec>& g_list, double p,
                                      const Vec& weights);

}  // namespace gausslab
