#include "gausslab/symbols.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace gausslab {

namespace {

using Term = std::pair<CScalar, Profile::Ptr>;

bool is_zero_constant(const Profile& p);

class ConstantProfile final : public Profile {
 public:
  ConstantProfile(int arity, CScalar c) : arity_(arity), c_(c) {}
  int arity() const override { return arity_; }
  CScalar value(const Vec&) const override { return c_; }
  Ptr derivative(int) const override {
    return std::make_shared<ConstantProfile>(arity_, CScalar(0.0));
  }
  std::string describe() const override { return "const"; }
  CScalar constant() const { return c_; }

  std::optional<Term> heat_profile(const Vec&) const override {
    return Term{CScalar(1.0), std::make_shared<ConstantProfile>(arity_, c_)};
  }

 private:
  int arity_;
  CScalar c_;
};

class MonomialProfile final : public Profile {
 public:
  explicit MonomialProfile(std::vector<int> exponents)
      : exps_(std::move(exponents)) {
    for (int e : exps_)
      if (e < 0) throw std::invalid_argument("monomial exponent < 0");
  }
  int arity() const override { return static_cast<int>(exps_.size()); }
  CScalar value(const Vec& w) const override {
    double v = 1.0;
    for (size_t i = 0; i < exps_.size(); ++i)
      for (int r = 0; r < exps_[i]; ++r) v *= w[static_cast<Eigen::Index>(i)];
    return v;
  }
  Ptr derivative(int slot) const override {
    int e = exps_[static_cast<size_t>(slot)];
    if (e == 0)
      return std::make_shared<ConstantProfile>(arity(), CScalar(0.0));
    auto lowered = exps_;
    lowered[static_cast<size_t>(slot)] = e - 1;
    return lincomb_profile(
        {{CScalar(double(e)), std::make_shared<MonomialProfile>(lowered)}});
  }
  std::string describe() const override { return "monomial"; }
  const std::vector<int>& exponents() const { return exps_; }

  std::optional<Term> heat_profile(const Vec& variances) const override {
    // E[(w + sigma xi)^e] = sum_{2j<=e} C(e,2j) (2j-1)!! sigma^{2j} w^{e-2j},
    // independently per slot.
    std::vector<Term> terms{{CScalar(1.0),
                             std::make_shared<MonomialProfile>(
                                 std::vector<int>(exps_.size(), 0))}};
    auto binom = [](int n, int k) {
      double r = 1.0;
      for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
      return r;
    };
    for (size_t slot = 0; slot < exps_.size(); ++slot) {
      int e = exps_[slot];
      double var = variances[static_cast<Eigen::Index>(slot)];
      std::vector<std::pair<double, int>> expansion;  // (coeff, power of w)
      for (int j = 0; 2 * j <= e; ++j) {
        double odd_fact = 1.0;
        for (int i = 2 * j - 1; i > 1; i -= 2) odd_fact *= i;
        expansion.push_back({binom(e, 2 * j) * odd_fact * std::pow(var, j),
                             e - 2 * j});
      }
      std::vector<Term> next;
      for (const auto& [coef, prof] : terms) {
        const auto& base =
            static_cast<const MonomialProfile&>(*prof).exponents();
        for (const auto& [c2, power] : expansion) {
          auto exps = base;
          exps[slot] = power;
          next.push_back({coef * c2, std::make_shared<MonomialProfile>(exps)});
        }
      }
      terms = std::move(next);
    }
    return Term{CScalar(1.0), lincomb_profile(std::move(terms))};
  }

 private:
  std::vector<int> exps_;
};

class CosProfile final : public Profile {
 public:
  explicit CosProfile(double phase) : phase_(phase) {}
  int arity() const override { return 1; }
  CScalar value(const Vec& w) const override { return std::cos(w[0] + phase_); }
  Ptr derivative(int) const override {
    // d/dw cos(w + phase) = cos(w + phase + pi/2)
    return std::make_shared<CosProfile>(phase_ + std::numbers::pi / 2.0);
  }
  std::string describe() const override { return "cos"; }

  std::optional<Term> heat_profile(const Vec& variances) const override {
    return Term{std::exp(-variances[0] / 2.0),
                std::make_shared<CosProfile>(phase_)};
  }

 private:
  double phase_;
};

class ComplexExpProfile final : public Profile {
 public:
  int arity() const override { return 1; }
  CScalar value(const Vec& w) const override {
    return std::exp(CScalar(0.0, w[0]));
  }
  Ptr derivative(int) const override {
    return lincomb_profile(
        {{CScalar(0.0, 1.0), std::make_shared<ComplexExpProfile>()}});
  }
  std::string describe() const override { return "cexp"; }

  std::optional<Term> heat_profile(const Vec& variances) const override {
    return Term{std::exp(-variances[0] / 2.0),
                std::make_shared<ComplexExpProfile>()};
  }
};

// prod_i d^{n_i}/dw_i^{n_i} e^{-s_i w_i^2 / 2}
class GaussBellProfile final : public Profile {
 public:
  GaussBellProfile(Vec scales, std::vector<int> counts)
      : scales_(std::move(scales)), counts_(std::move(counts)) {
    if (static_cast<size_t>(scales_.size()) != counts_.size())
      throw std::invalid_argument("bell profile: size mismatch");
  }
  int arity() const override { return static_cast<int>(scales_.size()); }
  CScalar value(const Vec& w) const override {
    double v = 1.0;
    for (int i = 0; i < scales_.size(); ++i)
      v *= deriv_of_bell(scales_[i], counts_[static_cast<size_t>(i)], w[i]);
    return v;
  }
  Ptr derivative(int slot) const override {
    auto counts = counts_;
    counts[static_cast<size_t>(slot)] += 1;
    return std::make_shared<GaussBellProfile>(scales_, counts);
  }
  std::string describe() const override { return "bell"; }

  std::optional<Term> heat_profile(const Vec& variances) const override {
    // Only the underived bell has a one-line heat image.
    for (int n : counts_)
      if (n != 0) return std::nullopt;
    Vec scales(scales_.size());
    CScalar coeff = 1.0;
    for (int i = 0; i < scales_.size(); ++i) {
      double denom = 1.0 + scales_[i] * variances[i];
      scales[i] = scales_[i] / denom;
      coeff *= 1.0 / std::sqrt(denom);
    }
    return Term{coeff, std::make_shared<GaussBellProfile>(scales, counts_)};
  }

 private:
  // d^n/dw^n e^{-s w^2/2} via D_{n+1} = -s w D_n - s n D_{n-1}.
  static double deriv_of_bell(double s, int n, double w) {
    double d0 = std::exp(-s * w * w / 2.0);
    if (n == 0) return d0;
    double d1 = -s * w * d0;
    for (int k = 1; k < n; ++k) {
      double d2 = -s * w * d1 - s * k * d0;
      d0 = d1;
      d1 = d2;
    }
    return d1;
  }

  Vec scales_;
  std::vector<int> counts_;
};

class LinCombProfile final : public Profile {
 public:
  explicit LinCombProfile(std::vector<Term> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("empty linear combination");
    arity_ = terms_.front().second->arity();
    for (const auto& [c, p] : terms_)
      if (p->arity() != arity_)
        throw std::invalid_argument("lincomb arity mismatch");
  }
  int arity() const override { return arity_; }
  CScalar value(const Vec& w) const override {
    CScalar v = 0.0;
    for (const auto& [c, p] : terms_) v += c * p->value(w);
    return v;
  }
  Ptr derivative(int slot) const override {
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& [c, p] : terms_) terms.push_back({c, p->derivative(slot)});
    return lincomb_profile(std::move(terms));
  }
  std::string describe() const override {
    std::ostringstream os;
    os << "lincomb[" << terms_.size() << "]";
    return os.str();
  }
  const std::vector<Term>& terms() const { return terms_; }

  std::optional<Term> heat_profile(const Vec& variances) const override {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [c, p] : terms_) {
      auto h = p->heat_profile(variances);
      if (!h) return std::nullopt;
      out.push_back({c * h->first, h->second});
    }
    return Term{CScalar(1.0), lincomb_profile(std::move(out))};
  }

 private:
  std::vector<Term> terms_;
  int arity_;
};

class TensorProfile final : public Profile {
 public:
  TensorProfile(Ptr a, Ptr b) : a_(std::move(a)), b_(std::move(b)) {}
  int arity() const override { return a_->arity() + b_->arity(); }
  CScalar value(const Vec& w) const override {
    return a_->value(w.head(a_->arity())) * b_->value(w.tail(b_->arity()));
  }
  Ptr derivative(int slot) const override {
    if (slot < a_->arity())
      return std::make_shared<TensorProfile>(a_->derivative(slot), b_);
    return std::make_shared<TensorProfile>(a_,
                                           b_->derivative(slot - a_->arity()));
  }
  std::string describe() const override {
    return a_->describe() + "*" + b_->describe();
  }

  std::optional<Term> heat_profile(const Vec& variances) const override {
    auto ha = a_->heat_profile(variances.head(a_->arity()));
    auto hb = b_->heat_profile(variances.tail(b_->arity()));
    if (!ha || !hb) return std::nullopt;
    return Term{ha->first * hb->first,
                std::make_shared<TensorProfile>(ha->second, hb->second)};
  }

 private:
  Ptr a_, b_;
};

bool is_zero_constant(const Profile& p) {
  auto* c = dynamic_cast<const ConstantProfile*>(&p);
  return c != nullptr && c->constant() == CScalar(0.0);
}

}  // namespace

Profile::Ptr constant_profile(int arity, CScalar c) {
  return std::make_shared<ConstantProfile>(arity, c);
}

Profile::Ptr monomial_profile(std::vector<int> exponents) {
  return std::make_shared<MonomialProfile>(std::move(exponents));
}

Profile::Ptr cos_profile(double phase) {
  return std::make_shared<CosProfile>(phase);
}

Profile::Ptr complex_exp_profile() {
  return std::make_shared<ComplexExpProfile>();
}

Profile::Ptr gauss_bell_profile(int arity, std::vector<int> deriv_counts) {
  if (deriv_counts.empty()) deriv_counts.assign(static_cast<size_t>(arity), 0);
  return std::make_shared<GaussBellProfile>(Vec::Ones(arity),
                                            std::move(deriv_counts));
}

Profile::Ptr lincomb_profile(std::vector<Term> terms) {
  // Flatten nested linear combinations and drop exact-zero terms.
  std::vector<Term> flat;
  for (auto& [c, p] : terms) {
    if (c == CScalar(0.0) || is_zero_constant(*p)) continue;
    if (auto* lc = dynamic_cast<const LinCombProfile*>(p.get())) {
      for (const auto& [c2, p2] : lc->terms()) flat.push_back({c * c2, p2});
    } else {
      flat.push_back({c, p});
    }
  }
  if (flat.empty()) {
    int arity = terms.empty() ? 0 : terms.front().second->arity();
    return constant_profile(arity, CScalar(0.0));
  }
  if (flat.size() == 1 && flat.front().first == CScalar(1.0))
    return flat.front().second;
  return std::make_shared<LinCombProfile>(std::move(flat));
}

Profile::Ptr tensor_profile(Profile::Ptr a, Profile::Ptr b) {
  return std::make_shared<TensorProfile>(std::move(a), std::move(b));
}

// ProfileDerivatives ----------------------------------------------------

ProfileDerivatives::ProfileDerivatives(Profile::Ptr root)
    : root_(std::move(root)) {}

Profile::Ptr ProfileDerivatives::mixed_partial_profile(
    const std::vector<int>& counts) const {
  auto it = cache_.find(counts);
  if (it != cache_.end()) return it->second;
  // Walk down from the nearest cached ancestor along canonical slot order.
  std::vector<int> cur(counts.size(), 0);
  Profile::Ptr prof = root_;
  for (size_t slot = 0; slot < counts.size(); ++slot) {
    for (int n = 0; n < counts[slot]; ++n) {
      cur[slot] += 1;
      auto hit = cache_.find(cur);
      if (hit != cache_.end()) {
        prof = hit->second;
      } else {
        prof = prof->derivative(static_cast<int>(slot));
        cache_.emplace(cur, prof);
      }
    }
  }
  return prof;
}

CScalar ProfileDerivatives::mixed_partial(const std::vector<int>& counts,
                                          const Vec& w) const {
  return mixed_partial_profile(counts)->value(w);
}

// Symbol ----------------------------------------------------------------

Symbol::Symbol(Mat directions, Profile::Ptr profile, ClassClaims claims)
    : Symbol(std::move(directions), Vec(), std::move(profile),
             std::move(claims)) {}

Symbol::Symbol(Mat directions, Vec offsets, Profile::Ptr profile,
               ClassClaims claims)
    : directions_(std::move(directions)),
      offsets_(std::move(offsets)),
      profile_(std::move(profile)),
      claims_(std::move(claims)) {
  if (offsets_.size() == 0) offsets_ = Vec::Zero(directions_.cols());
  if (directions_.cols() != profile_->arity() ||
      offsets_.size() != profile_->arity())
    throw std::invalid_argument("symbol: direction count != profile arity");
  derivs_ = std::make_shared<ProfileDerivatives>(profile_);
}

Symbol Symbol::with_claims(ClassClaims claims) const {
  return Symbol(directions_, offsets_, profile_, std::move(claims));
}

Symbol Symbol::with_sm_claim(
    double norm, int order, std::shared_ptr<const EpsilonSequence> eps) const {
  ClassClaims claims = claims_;
  claims.sm_norm = norm;
  claims.sm_order = order;
  claims.eps = std::move(eps);
  return with_claims(std::move(claims));
}

Symbol Symbol::with_qa_claim(
    double norm, std::shared_ptr<const TraceClassOperator> a) const {
  ClassClaims claims = claims_;
  claims.qa_norm = norm;
  claims.qa_op = std::move(a);
  return with_claims(std::move(claims));
}

Vec Symbol::coordinates(const Vec& x) const {
  if (x.size() != directions_.rows())
    throw std::invalid_argument("symbol eval: dimension mismatch");
  return directions_.transpose() * x + offsets_;
}

CScalar Symbol::eval(const Vec& x) const { return profile_->value(coordinates(x)); }

Eigen::VectorXcd Symbol::eval_batch(const Mat& samples) const {
  if (samples.cols() != directions_.rows())
    throw std::invalid_argument("symbol eval_batch: dimension mismatch");
  Mat w = samples * directions_;
  w.rowwise() += offsets_.transpose();
  Eigen::VectorXcd out(samples.rows());
  for (Eigen::Index i = 0; i < samples.rows(); ++i)
    out[i] = profile_->value(w.row(i).transpose());
  return out;
}

Vec Symbol::eval_batch_real(const Mat& samples) const {
  return eval_batch(samples).real();
}

Symbol Symbol::partial(const Vec& direction) const {
  if (direction.size() != directions_.rows())
    throw std::invalid_argument("partial: dimension mismatch");
  std::vector<Term> terms;
  for (int r = 0; r < arity(); ++r) {
    double c = directions_.col(r).dot(direction);
    if (c != 0.0) terms.push_back({CScalar(c), profile_->derivative(r)});
  }
  if (terms.empty())
    return Symbol(directions_, offsets_,
                  constant_profile(arity(), CScalar(0.0)));
  return Symbol(directions_, offsets_, lincomb_profile(std::move(terms)));
}

Symbol Symbol::partial_coordinate(int frame_index) const {
  Vec e = Vec::Zero(directions_.rows());
  e[frame_index] = 1.0;
  return partial(e);
}

Symbol Symbol::partial_multi(
    const std::vector<std::pair<int, int>>& multi_index) const {
  Symbol out = *this;
  for (auto [index, order] : multi_index)
    for (int n = 0; n < order; ++n) out = out.partial_coordinate(index);
  return out;
}

namespace {

// Apply the operator prod_s (sum_r coeffs[s][r] d_r) to the profile and
// evaluate at w: expand into derivative-count multisets with coefficients.
CScalar apply_derivative_steps(const ProfileDerivatives& derivs,
                               const std::vector<Vec>& step_coeffs,
                               int arity, const Vec& w) {
  std::map<std::vector<int>, double> expansion;
  expansion[std::vector<int>(static_cast<size_t>(arity), 0)] = 1.0;
  for (const Vec& b : step_coeffs) {
    std::map<std::vector<int>, double> next;
    for (const auto& [counts, coef] : expansion) {
      for (int r = 0; r < arity; ++r) {
        if (b[r] == 0.0) continue;
        auto c = counts;
        c[static_cast<size_t>(r)] += 1;
        next[c] += coef * b[r];
      }
    }
    expansion = std::move(next);
  }
  CScalar sum = 0.0;
  for (const auto& [counts, coef] : expansion)
    sum += coef * derivs.mixed_partial(counts, w);
  return sum;
}

}  // namespace

CScalar Symbol::directional_derivative(const Vec& x,
                                       const std::vector<Vec>& dirs) const {
  Vec w = coordinates(x);
  if (dirs.empty()) return profile_->value(w);
  std::vector<Vec> steps;
  steps.reserve(dirs.size());
  for (const Vec& u : dirs) {
    if (u.size() != directions_.rows())
      throw std::invalid_argument("directional_derivative: dimension mismatch");
    steps.push_back(directions_.transpose() * u);
  }
  return apply_derivative_steps(*derivs_, steps, arity(), w);
}

CScalar Symbol::partial_multi_value(
    const std::vector<std::pair<int, int>>& multi_index, const Vec& x) const {
  std::vector<Vec> steps;
  for (auto [index, order] : multi_index)
    for (int n = 0; n < order; ++n)
      steps.push_back(directions_.row(index).transpose());
  if (steps.empty()) return eval(x);
  return apply_derivative_steps(*derivs_, steps, arity(), coordinates(x));
}

CScalar Symbol::laplacian_value(const Vec& x) const {
  Vec w = coordinates(x);
  Mat gram = directions_.transpose() * directions_;
  CScalar sum = 0.0;
  std::vector<int> counts(static_cast<size_t>(arity()), 0);
  for (int r = 0; r < arity(); ++r) {
    for (int s = r; s < arity(); ++s) {
      if (gram(r, s) == 0.0) continue;
      counts[static_cast<size_t>(r)] += 1;
      counts[static_cast<size_t>(s)] += 1;
      double factor = (r == s) ? 1.0 : 2.0;
      sum += factor * gram(r, s) * derivs_->mixed_partial(counts, w);
      counts[static_cast<size_t>(r)] -= 1;
      counts[static_cast<size_t>(s)] -= 1;
    }
  }
  return sum;
}

Symbol Symbol::laplacian() const {
  Mat gram = directions_.transpose() * directions_;
  std::vector<Term> terms;
  for (int r = 0; r < arity(); ++r)
    for (int s = r; s < arity(); ++s) {
      if (gram(r, s) == 0.0) continue;
      std::vector<int> counts(static_cast<size_t>(arity()), 0);
      counts[static_cast<size_t>(r)] += 1;
      counts[static_cast<size_t>(s)] += 1;
      double factor = (r == s) ? 1.0 : 2.0;
      terms.push_back({CScalar(factor * gram(r, s)),
                       derivs_->mixed_partial_profile(counts)});
    }
  if (terms.empty())
    return Symbol(directions_, offsets_,
                  constant_profile(arity(), CScalar(0.0)));
  return Symbol(directions_, offsets_, lincomb_profile(std::move(terms)));
}

Symbol Symbol::iterated_laplacian(int order) const {
  if (order < 0) throw std::invalid_argument("iterated_laplacian: order < 0");
  Symbol out = *this;
  for (int j = 0; j < order; ++j) out = out.laplacian();
  return out;
}

CScalar Symbol::iterated_laplacian_value(const Vec& x, int order) const {
  if (order == 0) return eval(x);
  return iterated_laplacian(order - 1).laplacian_value(x);
}

Symbol Symbol::compose_orthogonal(const OrthogonalMap& phi) const {
  if (phi.dim() != ambient_dim())
    throw std::invalid_argument("compose_orthogonal: dimension mismatch");
  ClassClaims claims;
  if (claims_.qa_norm && claims_.qa_op) {
    claims.qa_norm = claims_.qa_norm;
    claims.qa_op = std::make_shared<TraceClassOperator>(
        claims_.qa_op->conjugated(phi));
  }
  return Symbol(phi.matrix().transpose() * directions_, offsets_, profile_,
                std::move(claims));
}

Symbol Symbol::compose_projection(const Subspace& e) const {
  if (e.ambient_dim() != ambient_dim())
    throw std::invalid_argument("compose_projection: dimension mismatch");
  Mat projected(directions_.rows(), directions_.cols());
  for (int r = 0; r < arity(); ++r)
    projected.col(r) = e.project(directions_.col(r));
  return Symbol(std::move(projected), offsets_, profile_);
}

Symbol Symbol::translated(const Vec& shift) const {
  return Symbol(directions_, offsets_ + directions_.transpose() * shift,
                profile_, claims_);
}

Symbol Symbol::multiply_coordinate(const Vec& z) const {
  if (z.size() != directions_.rows())
    throw std::invalid_argument("multiply_coordinate: dimension mismatch");
  Mat dirs(directions_.rows(), arity() + 1);
  dirs.leftCols(arity()) = directions_;
  dirs.col(arity()) = z;
  Vec offsets(arity() + 1);
  offsets.head(arity()) = offsets_;
  offsets[arity()] = 0.0;
  return Symbol(std::move(dirs), std::move(offsets),
                tensor_profile(profile_, monomial_profile({1})));
}

Symbol Symbol::scaled(CScalar c) const {
  return Symbol(directions_, offsets_, lincomb_profile({{c, profile_}}));
}

Symbol operator+(const Symbol& a, const Symbol& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("symbol sum: dimension mismatch");
  Mat dirs(a.ambient_dim(), a.arity() + b.arity());
  dirs.leftCols(a.arity()) = a.directions();
  dirs.rightCols(b.arity()) = b.directions();
  Vec offsets(a.arity() + b.arity());
  offsets.head(a.arity()) = a.offsets();
  offsets.tail(b.arity()) = b.offsets();
  auto pa = tensor_profile(a.profile(), constant_profile(b.arity(), 1.0));
  auto pb = tensor_profile(constant_profile(a.arity(), 1.0), b.profile());
  return Symbol(std::move(dirs), std::move(offsets),
                lincomb_profile({{CScalar(1.0), pa}, {CScalar(1.0), pb}}));
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("symbol product: dimension mismatch");
  Mat dirs(a.ambient_dim(), a.arity() + b.arity());
  dirs.leftCols(a.arity()) = a.directions();
  dirs.rightCols(b.arity()) = b.directions();
  Vec offsets(a.arity() + b.arity());
  offsets.head(a.arity()) = a.offsets();
  offsets.tail(b.arity()) = b.offsets();
  return Symbol(std::move(dirs), std::move(offsets),
                tensor_profile(a.profile(), b.profile()));
}

// Stock families --------------------------------------------------------

Symbol constant_symbol(int ambient_dim, CScalar c) {
  return Symbol(Mat(ambient_dim, 0), constant_profile(0, c));
}

Symbol trig_symbol(const Vec& a, double phase) {
  Mat dirs(a.size(), 1);
  dirs.col(0) = a;
  return Symbol(std::move(dirs), cos_profile(phase));
}

Symbol complex_exp_symbol(const Vec& a) {
  Mat dirs(a.size(), 1);
  dirs.col(0) = a;
  return Symbol(std::move(dirs), complex_exp_profile());
}

Symbol linear_symbol(const Vec& a) {
  Mat dirs(a.size(), 1);
  dirs.col(0) = a;
  return Symbol(std::move(dirs), monomial_profile({1}));
}

Symbol poly_scalar_symbol(const Mat& directions,
                          const std::vector<int>& exponents) {
  if (static_cast<size_t>(directions.cols()) != exponents.size())
    throw std::invalid_argument("poly_scalar: direction/exponent mismatch");
  for (int e : exponents)
    if (e < 1) throw std::invalid_argument("poly_scalar: exponents must be >= 1");
  return Symbol(directions, monomial_profile(exponents));
}

Symbol gaussian_bell_symbol(const TraceClassOperator& c) {
  int r = c.rank();
  if (r == 0) return constant_symbol(c.ambient_dim(), 1.0);
  Mat dirs(c.ambient_dim(), r);
  for (int j = 0; j < r; ++j)
    dirs.col(j) = std::sqrt(c.eigenvalues()[j]) * c.eigenvector(j);
  return Symbol(std::move(dirs), gauss_bell_profile(r));
}

}  // namespace gausslab
