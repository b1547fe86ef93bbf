#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pqcurve/errors.hpp"
#include "pqcurve/exact.hpp"
#include "pqcurve/numeric.hpp"

namespace pqcurve {

/// A point of the Riemann sphere with an exact finite coordinate, or infinity.
struct ExactPoint {
  bool infinite = false;
  GaussQ value;

  static ExactPoint finite(GaussQ v) { return {false, std::move(v)}; }
  static ExactPoint infinity() { return {true, GaussQ(0)}; }
  friend bool operator==(const ExactPoint& a, const ExactPoint& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  std::string str() const { return infinite ? "inf" : value.str(); }
};

/// A point of the Riemann sphere with a floating coordinate, or infinity.
template <class R>
class SpherePoint {
 public:
  SpherePoint() = default;

  /// Finite coordinates are bounded; larger magnitudes indicate a lost pole.
  static SpherePoint finite(const Cx<R>& v) {
    using std::isfinite;
    R mag = abs_cx(v);
    if (!(mag < magnitude_bound())) {
      throw NumericError("finite sphere point exceeds magnitude bound");
    }
    SpherePoint p;
    p.value_ = v;
    return p;
  }
  static SpherePoint infinity() {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }
  static R magnitude_bound() { return R(1e150); }

  bool is_infinity() const { return infinite_; }
  const Cx<R>& value() const { return value_; }

  /// Infinity matches only infinity; finite points match relatively.
  bool close_to(const SpherePoint& o, const R& tol) const {
    if (infinite_ || o.infinite_) return infinite_ == o.infinite_;
    return close_relative(value_, o.value_, tol);
  }

  SpherePoint<double> to_double_point() const {
    if (infinite_) return SpherePoint<double>::infinity();
    return SpherePoint<double>::finite(pqcurve::to_double(value_));
  }

 private:
  bool infinite_ = false;
  Cx<R> value_{};
};

/// Deterministic total order: finite points by (re, im), infinity last.
template <class R>
bool sphere_less(const SpherePoint<R>& a, const SpherePoint<R>& b) {
  if (a.is_infinity() != b.is_infinity()) return b.is_infinity();
  if (a.is_infinity()) return false;
  if (a.value().real() != b.value().real()) return a.value().real() < b.value().real();
  return a.value().imag() < b.value().imag();
}

/// Multiset of local multiplicities over a point, sorted descending.
class CycleType {
 public:
  CycleType() = default;
  explicit CycleType(std::vector<int> parts);
  static CycleType trivial(int degree) { return CycleType(std::vector<int>(static_cast<std::size_t>(degree), 1)); }

  const std::vector<int>& parts() const { return parts_; }
  int degree() const;
  int count() const { return static_cast<int>(parts_.size()); }
  /// degree - count: the Riemann–Hurwitz contribution.
  int deficiency() const { return degree() - count(); }
  bool is_trivial() const { return deficiency() == 0; }
  bool is_simple() const { return deficiency() == 1; }
  /// Number of parts greater than one, i.e. distinct critical points.
  int ramified_points() const;
  /// GCD of all parts.
  int parts_gcd() const;

  friend bool operator==(const CycleType& a, const CycleType& b) { return a.parts_ == b.parts_; }
  std::string str() const;

 private:
  std::vector<int> parts_;
};

template <class R>
struct CriticalDatum {
  SpherePoint<R> value;
  CycleType cycle_type;
  bool is_simple = false;
};

/// Exact Möbius transformation z -> (a z + b) / (c z + d).
struct ExactMobius {
  GaussQ a{1}, b{0}, c{0}, d{1};

  static ExactMobius identity() { return {}; }
  bool is_identity() const;
  ExactPoint apply(const ExactPoint& z) const;
  ExactMobius compose(const ExactMobius& inner) const;  // this ∘ inner
  ExactMobius inverse() const;
  std::string str() const;
};

/// Floating Möbius transformation z -> (a z + b) / (c z + d).
template <class R>
struct Mobius {
  Cx<R> a{1}, b{0}, c{0}, d{1};

  static Mobius identity() { return {}; }
  static Mobius scaling(const Cx<R>& k) { return {k, Cx<R>(0), Cx<R>(0), Cx<R>(1)}; }
  /// z -> 1 / (z - pole)
  static Mobius invert_at(const Cx<R>& pole) { return {Cx<R>(0), Cx<R>(1), Cx<R>(1), -pole}; }
  static Mobius from_exact(const ExactMobius& m) {
    return {to_cx<R>(m.a), to_cx<R>(m.b), to_cx<R>(m.c), to_cx<R>(m.d)};
  }

  bool is_identity() const {
    return a == Cx<R>(1) && b == Cx<R>(0) && c == Cx<R>(0) && d == Cx<R>(1);
  }
  bool is_affine() const { return c == Cx<R>(0); }

  SpherePoint<R> apply(const SpherePoint<R>& z) const {
    if (z.is_infinity()) {
      if (c == Cx<R>(0)) return SpherePoint<R>::infinity();
      return SpherePoint<R>::finite(a / c);
    }
    Cx<R> den = c * z.value() + d;
    if (den == Cx<R>(0)) return SpherePoint<R>::infinity();
    return SpherePoint<R>::finite((a * z.value() + b) / den);
  }
  Cx<R> apply_finite(const Cx<R>& z) const { return (a * z + b) / (c * z + d); }

  Mobius compose(const Mobius& inner) const {
    return {a * inner.a + b * inner.c, a * inner.b + b * inner.d,
            c * inner.a + d * inner.c, c * inner.b + d * inner.d};
  }
  Mobius inverse() const { return {d, -b, -c, a}; }
};

/// P = num / den with coprime numerator and denominator and monic
/// denominator. Constructed only through normalize().
class RationalFunction {
 public:
  /// Degree-1 and higher only; constants raise DegreeZero.
  static RationalFunction normalize(const ExactPoly& num, const ExactPoly& den);
  static RationalFunction polynomial(const ExactPoly& p) {
    return normalize(p, ExactPoly::constant(GaussQ(1)));
  }

  const ExactPoly& num() const { return num_; }
  const ExactPoly& den() const { return den_; }
  int degree() const { return degree_; }
  bool is_polynomial() const { return den_.degree() == 0; }

  /// Value at an exact sphere point.
  ExactPoint eval(const ExactPoint& z) const;

  /// F ∘ nu.
  RationalFunction precompose(const ExactMobius& nu) const;
  /// mu ∘ F.
  RationalFunction postcompose(const ExactMobius& mu) const;
  /// c * F.
  RationalFunction scaled(const GaussQ& c) const;

  std::string str() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  RationalFunction(ExactPoly num, ExactPoly den);
  ExactPoly num_;
  ExactPoly den_;
  int degree_ = 0;
};

/// Cancellation of numerically common roots for floating inputs: roots of
/// num and den closer than tol (relative) are removed pairwise. The result
/// keeps the original leading coefficients' ratio; den is scaled monic.
/// Returns (num, den).
std::pair<NumPoly<double>, NumPoly<double>> normalize_numeric(
    const NumPoly<double>& num, const NumPoly<double>& den, double tol);

/// E = A'B - AB'; its roots are the finite critical points.
ExactPoly critical_numerator(const RationalFunction& f);

/// Local multiplicity profile of the fiber over an exact point.
CycleType fiber_cycle_type(const RationalFunction& f, const ExactPoint& s);

/// Same, for a floating point s: roots of A - sB are clustered; cluster size
/// is the multiplicity. cluster_radius <= 0 selects an automatic radius.
template <class R>
CycleType fiber_cycle_type_numeric(const RationalFunction& f, const SpherePoint<R>& s,
                                   R cluster_radius = R(0));

/// U(x) = Res_z(E(z), A(z) - x B(z)).
ExactPoly critical_value_resultant(const RationalFunction& f);

/// Local multiplicity of F at infinity.
int multiplicity_at_infinity(const RationalFunction& f);

struct CriticalOptions {
  double cluster_tolerance = 1e-9;
  /// Cross-check value multiplicities against the squarefree structure of U.
  bool resultant_check = true;
};

/// The critical values of F with their cycle types, sorted by sphere_less.
/// Throws NumericallyCoincidentValues when numeric clustering disagrees with
/// the exact multiplicity structure.
template <class R>
std::vector<CriticalDatum<R>> critical_values(const RationalFunction& f,
                                              const CriticalOptions& opts = {});

/// True iff distinct critical points have distinct images.
template <class R>
bool separation_condition(const std::vector<CriticalDatum<R>>& crit) {
  for (const auto& c : crit)
    if (c.cycle_type.ramified_points() > 1) return false;
  return true;
}
bool separation_condition(const RationalFunction& f);

template <class R>
bool all_values_simple(const std::vector<CriticalDatum<R>>& crit) {
  for (const auto& c : crit)
    if (!c.is_simple) return false;
  return true;
}

/// C_P minus {1}: ratios of distinct finite nonzero critical values.
template <class R>
struct ScalarRatioSet {
  std::vector<Cx<R>> ratios;
  /// 0 or infinity is a critical value, so every scalar shares it.
  bool always_shared = false;
};

template <class R>
ScalarRatioSet<R> scalar_ratio_set(const std::vector<CriticalDatum<R>>& crit, R tol);

/// Exact-mode cross-check: the roots of W(y) = L(y)/(y-1)^k with
/// L(y) = Res_x(U(x), y^d U(x/y)) coincide with the ratio set. Returns
/// nullopt when the construction does not apply (a critical value at 0 or
/// infinity, or a finite critical value not seen by U).
template <class R>
std::optional<bool> ratio_resultant_check(const RationalFunction& p,
                                          const ScalarRatioSet<R>& set, R tol);

/// W(y) itself; exposed for tests.
ExactPoly ratio_resultant(const RationalFunction& p);

struct PowerForm {
  ExactMobius mu;
  int d = 0;
  RationalFunction inner;
};

/// A witness P = mu ∘ z^d ∘ inner with mu(0) = w1, mu(inf) = w2. With d
/// unset the maximal d is returned; with d given only that exponent is tried.
std::optional<PowerForm> extract_power_form(const RationalFunction& p, const ExactPoint& w1,
                                            const ExactPoint& w2,
                                            std::optional<int> d = std::nullopt);

/// The exponent test alone: gcd of all multiplicities over w1 and w2 on the
/// cycle-type level (works for floating critical values).
int power_form_exponent(const CycleType& over_w1, const CycleType& over_w2);

/// Recomposition mu ∘ z^d ∘ inner.
RationalFunction recompose(const PowerForm& form);

/// A rational function post-composed with a floating Möbius map. All
/// floating-valued functions in the analysis arise this way (normalization of
/// infinity and scalar multiples c·P), so the base stays exact.
template <class R>
class MappedFunction {
 public:
  explicit MappedFunction(RationalFunction base, Mobius<R> post = Mobius<R>::identity())
      : base_(std::move(base)), post_(post) {}

  const RationalFunction& base() const { return base_; }
  const Mobius<R>& post() const { return post_; }
  int degree() const { return base_.degree(); }
  bool is_polynomial() const { return base_.is_polynomial() && post_.is_affine(); }

  MappedFunction then(const Mobius<R>& outer) const {
    return MappedFunction(base_, outer.compose(post_));
  }

  /// Numerator and denominator of post ∘ base as floating polynomials.
  NumPoly<R> numerator() const { return combine(post_.a, post_.b); }
  NumPoly<R> denominator() const { return combine(post_.c, post_.d); }

  std::vector<CriticalDatum<R>> map_critical(const std::vector<CriticalDatum<R>>& base_crit) const {
    std::vector<CriticalDatum<R>> out;
    out.reserve(base_crit.size());
    for (const auto& c : base_crit) out.push_back({post_.apply(c.value), c.cycle_type, c.is_simple});
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return sphere_less(x.value, y.value); });
    return out;
  }

 private:
  NumPoly<R> combine(const Cx<R>& ka, const Cx<R>& kb) const {
    NumPoly<R> a = to_num<R>(base_.num());
    NumPoly<R> b = to_num<R>(base_.den());
    std::size_t len = std::max(a.size(), b.size());
    a.resize(len);
    b.resize(len);
    NumPoly<R> out(len);
    for (std::size_t k = 0; k < len; ++k) out[k] = ka * a[k] + kb * b[k];
    return out;
  }

  RationalFunction base_;
  Mobius<R> post_;
};

}  // namespace pqcurve
