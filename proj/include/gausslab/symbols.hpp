#pragma once

#include "gausslab/linalg.hpp"

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gausslab {

using CScalar = std::complex<double>;

// Profile of a cylindrical symbol: a smooth function g : R^k -> C with
// closed-form partial derivatives.  Profiles are immutable and closed under
// differentiation, which keeps every derivative of a stock symbol exact.
class Profile {
 public:
  using Ptr = std::shared_ptr<const Profile>;

  virtual ~Profile() = default;
  virtual int arity() const = 0;
  virtual CScalar value(const Vec& w) const = 0;
  virtual Ptr derivative(int slot) const = 0;
  virtual std::string describe() const = 0;

  // Image of the profile under adding independent N(0, variances_r) noise to
  // each slot, as (coefficient, new profile).  Valid only when the slot noise
  // really is independent (diagonal Gram); callers must check.  Returns
  // nullopt where no closed form is implemented.
  virtual std::optional<std::pair<CScalar, Ptr>> heat_profile(
      const Vec& slot_variances) const {
    (void)slot_variances;
    return std::nullopt;
  }
};

// g = c (any arity)
Profile::Ptr constant_profile(int arity, CScalar c);
// g(w) = prod_i w_i^{e_i}
Profile::Ptr monomial_profile(std::vector<int> exponents);
// g(w) = cos(w_0 + phase), arity 1
Profile::Ptr cos_profile(double phase = 0.0);
// g(w) = e^{i w_0}, arity 1
Profile::Ptr complex_exp_profile();
// g(w) = prod_i d^{n_i}/dw_i^{n_i} e^{-w_i^2/2}
Profile::Ptr gauss_bell_profile(int arity, std::vector<int> deriv_counts = {});
// g = sum_t coeff_t * term_t (same arity)
Profile::Ptr lincomb_profile(std::vector<std::pair<CScalar, Profile::Ptr>> terms);
// g(w_1..w_{ka+kb}) = ga(w_1..w_ka) * gb(w_{ka+1}..)
Profile::Ptr tensor_profile(Profile::Ptr a, Profile::Ptr b);

// Evaluator for mixed partials of a profile, memoized by derivative counts.
class ProfileDerivatives {
 public:
  explicit ProfileDerivatives(Profile::Ptr root);
  // d^{|counts|} g / prod dw_i^{counts_i} at w
  CScalar mixed_partial(const std::vector<int>& counts, const Vec& w) const;
  Profile::Ptr mixed_partial_profile(const std::vector<int>& counts) const;

 private:
  Profile::Ptr root_;
  mutable std::map<std::vector<int>, Profile::Ptr> cache_;
};

// Optional symbol-class metadata: a claimed S_m(B, eps) norm and/or a
// claimed S(Q_A) norm.  Claims are verified by sampling, never inferred.
struct ClassClaims {
  std::optional<double> sm_norm;
  int sm_order = 0;
  std::shared_ptr<const EpsilonSequence> eps;

  std::optional<double> qa_norm;
  std::shared_ptr<const TraceClassOperator> qa_op;
};

// Cylindrical symbol F(x) = g(<a_1, x> + c_1, ..., <a_k, x> + c_k) with
// analytic derivatives of every order through the profile chain rule.
class Symbol {
 public:
  Symbol(Mat directions, Profile::Ptr profile, ClassClaims claims = {});
  Symbol(Mat directions, Vec offsets, Profile::Ptr profile,
         ClassClaims claims = {});

  int ambient_dim() const { return static_cast<int>(directions_.rows()); }
  int arity() const { return static_cast<int>(directions_.cols()); }
  const Mat& directions() const { return directions_; }
  const Vec& offsets() const { return offsets_; }
  const Profile::Ptr& profile() const { return profile_; }
  const ClassClaims& claims() const { return claims_; }

  Symbol with_claims(ClassClaims claims) const;
  Symbol with_sm_claim(double norm, int order,
                       std::shared_ptr<const EpsilonSequence> eps) const;
  Symbol with_qa_claim(double norm,
                       std::shared_ptr<const TraceClassOperator> a) const;

  CScalar eval(const Vec& x) const;
  double eval_real(const Vec& x) const { return eval(x).real(); }
  // Profile coordinates w = directions^T x + offsets.
  Vec coordinates(const Vec& x) const;

  // Row-wise evaluation over a batch (rows are sample points).
  Eigen::VectorXcd eval_batch(const Mat& samples) const;
  Vec eval_batch_real(const Mat& samples) const;

  // First derivative in an arbitrary direction, as a Symbol (exact).
  Symbol partial(const Vec& direction) const;
  Symbol partial_coordinate(int frame_index) const;
  // Iterated coordinate partial: multi_index maps frame index -> order.
  Symbol partial_multi(const std::vector<std::pair<int, int>>& multi_index) const;

  // d^m F(x)(U_1, ..., U_m), m = directions.size(); symmetric multilinear.
  CScalar directional_derivative(const Vec& x,
                                 const std::vector<Vec>& dirs) const;
  // Mixed coordinate partial evaluated at x without materializing symbols.
  CScalar partial_multi_value(
      const std::vector<std::pair<int, int>>& multi_index, const Vec& x) const;

  // Trace of the Hessian: sum_{r,s} <a_r, a_s> d_r d_s g (frame-free).
  CScalar laplacian_value(const Vec& x) const;
  Symbol laplacian() const;
  Symbol iterated_laplacian(int order) const;
  CScalar iterated_laplacian_value(const Vec& x, int order) const;

  // f o phi: directions become phi^* a_r; a Q_A claim conjugates to
  // Q_{phi^* A phi} with equal norm.
  Symbol compose_orthogonal(const OrthogonalMap& phi) const;
  // F o pi_E: directions become pi_E(a_r).
  Symbol compose_projection(const Subspace& e) const;
  // x -> F(x + shift)
  Symbol translated(const Vec& shift) const;
  // x -> <z, x> F(x)
  Symbol multiply_coordinate(const Vec& z) const;

  Symbol scaled(CScalar c) const;

 private:
  Mat directions_;  // D x k
  Vec offsets_;     // k
  Profile::Ptr profile_;
  ClassClaims claims_;
  std::shared_ptr<ProfileDerivatives> derivs_;
};

Symbol operator+(const Symbol& a, const Symbol& b);
Symbol operator*(const Symbol& a, const Symbol& b);

// Stock families --------------------------------------------------------

Symbol constant_symbol(int ambient_dim, CScalar c);
// cos(<a, x> + phase)
Symbol trig_symbol(const Vec& a, double phase = 0.0);
// e^{i <a, x>}
Symbol complex_exp_symbol(const Vec& a);
// <a, x>
Symbol linear_symbol(const Vec& a);
// prod_i <a_i, x>^{alpha_i} (unbounded; carries no class claim)
Symbol poly_scalar_symbol(const Mat& directions, const std::vector<int>& exponents);
// e^{-Q_C(x)/2}
Symbol gaussian_bell_symbol(const TraceClassOperator& c);

}  // namespace gausslab
