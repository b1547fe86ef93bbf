#include "pqcurve/ratfunc.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pqcurve {

CycleType::CycleType(std::vector<int> parts) : parts_(std::move(parts)) {
  std::sort(parts_.begin(), parts_.end(), std::greater<>());
}

int CycleType::degree() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int CycleType::ramified_points() const {
  return static_cast<int>(std::count_if(parts_.begin(), parts_.end(), [](int p) { return p > 1; }));
}

int CycleType::parts_gcd() const {
  int g = 0;
  for (int p : parts_) g = std::gcd(g, p);
  return g;
}

std::string CycleType::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t k = 0; k < parts_.size(); ++k) os << (k ? "," : "") << parts_[k];
  os << ")";
  return os.str();
}

bool ExactMobius::is_identity() const {
  // Projective identity: b = c = 0 and a = d.
  return b.is_zero() && c.is_zero() && a == d;
}

ExactPoint ExactMobius::apply(const ExactPoint& z) const {
  if (z.infinite) {
    if (c.is_zero()) return ExactPoint::infinity();
    return ExactPoint::finite(a / c);
  }
  GaussQ den = c * z.value + d;
  if (den.is_zero()) return ExactPoint::infinity();
  return ExactPoint::finite((a * z.value + b) / den);
}

ExactMobius ExactMobius::compose(const ExactMobius& in) const {
  return {a * in.a + b * in.c, a * in.b + b * in.d, c * in.a + d * in.c, c * in.b + d * in.d};
}

ExactMobius ExactMobius::inverse() const { return {d, -b, -c, a}; }

std::string ExactMobius::str() const {
  return "(" + a.str() + ")*z + (" + b.str() + ") / (" + c.str() + ")*z + (" + d.str() + ")";
}

RationalFunction::RationalFunction(ExactPoly num, ExactPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  degree_ = std::max(num_.degree(), den_.degree());
}

RationalFunction RationalFunction::normalize(const ExactPoly& num, const ExactPoly& den) {
  if (den.is_zero()) throw ZeroDenominator();
  if (num.is_zero()) throw DegreeZero();
  ExactPoly g = gcd(num, den);
  ExactPoly a = exact_div(num, g);
  ExactPoly b = exact_div(den, g);
  GaussQ inv = GaussQ(1) / b.lead();
  a *= inv;
  b *= inv;
  if (std::max(a.degree(), b.degree()) < 1) throw DegreeZero();
  return RationalFunction(std::move(a), std::move(b));
}

ExactPoint RationalFunction::eval(const ExactPoint& z) const {
  if (z.infinite) {
    if (num_.degree() > den_.degree()) return ExactPoint::infinity();
    if (num_.degree() < den_.degree()) return ExactPoint::finite(GaussQ(0));
    return ExactPoint::finite(num_.lead() / den_.lead());
  }
  GaussQ b = den_.eval(z.value);
  if (b.is_zero()) return ExactPoint::infinity();
  return ExactPoint::finite(num_.eval(z.value) / b);
}

namespace {

// sum_k p_k (a z + b)^k (c z + d)^(n-k)
ExactPoly homogeneous_substitute(const ExactPoly& p, const ExactMobius& nu, int n) {
  ExactPoly top({nu.b, nu.a});
  ExactPoly bottom({nu.d, nu.c});
  ExactPoly out;
  for (int k = 0; k <= p.degree(); ++k) {
    if (p.coeff(k).is_zero()) continue;
    out += pow(top, k) * pow(bottom, n - k) * p.coeff(k);
  }
  return out;
}

}  // namespace

RationalFunction RationalFunction::precompose(const ExactMobius& nu) const {
  return normalize(homogeneous_substitute(num_, nu, degree_),
                   homogeneous_substitute(den_, nu, degree_));
}

RationalFunction RationalFunction::postcompose(const ExactMobius& mu) const {
  return normalize(num_ * mu.a + den_ * mu.b, num_ * mu.c + den_ * mu.d);
}

RationalFunction RationalFunction::scaled(const GaussQ& c) const {
  return normalize(num_ * c, den_);
}

std::string RationalFunction::str() const {
  if (is_polynomial() && den_.lead() == GaussQ(1)) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

std::pair<NumPoly<double>, NumPoly<double>> normalize_numeric(const NumPoly<double>& num,
                                                              const NumPoly<double>& den,
                                                              double tol) {
  const int dd = numeric_degree(den);
  if (dd < 0) throw ZeroDenominator();
  const int dn = numeric_degree(num);
  if (dn < 0) throw DegreeZero();
  auto rn = polynomial_roots(num);
  auto rd = polynomial_roots(den);
  std::vector<bool> used(rd.size(), false);
  std::vector<std::complex<double>> keep_n;
  for (const auto& r : rn) {
    bool cancelled = false;
    for (std::size_t k = 0; k < rd.size(); ++k) {
      if (!used[k] && close_relative(r, rd[k], tol)) {
        used[k] = true;
        cancelled = true;
        break;
      }
    }
    if (!cancelled) keep_n.push_back(r);
  }
  std::vector<std::complex<double>> keep_d;
  for (std::size_t k = 0; k < rd.size(); ++k)
    if (!used[k]) keep_d.push_back(rd[k]);
  auto build = [](std::complex<double> lead, const std::vector<std::complex<double>>& roots) {
    NumPoly<double> p{lead};
    for (const auto& r : roots) {
      NumPoly<double> q(p.size() + 1);
      for (std::size_t k = 0; k < p.size(); ++k) {
        q[k + 1] += p[k];
        q[k] -= r * p[k];
      }
      p = std::move(q);
    }
    return p;
  };
  std::complex<double> ln = num[static_cast<std::size_t>(dn)];
  std::complex<double> ld = den[static_cast<std::size_t>(dd)];
  NumPoly<double> a = build(ln / ld, keep_n);
  NumPoly<double> b = build(1.0, keep_d);
  if (std::max(numeric_degree(a), numeric_degree(b)) < 1) throw DegreeZero();
  return {a, b};
}

ExactPoly critical_numerator(const RationalFunction& f) {
  return f.num().derivative() * f.den() - f.num() * f.den().derivative();
}

CycleType fiber_cycle_type(const RationalFunction& f, const ExactPoint& s) {
  ExactPoly g = s.infinite ? f.den() : f.num() - f.den() * s.value;
  std::vector<int> parts;
  auto factors = squarefree_decomposition(g);
  for (std::size_t k = 0; k < factors.size(); ++k)
    for (int j = 0; j < factors[k].degree(); ++j) parts.push_back(static_cast<int>(k) + 1);
  int at_inf = f.degree() - g.degree();
  if (at_inf > 0) parts.push_back(at_inf);
  return CycleType(std::move(parts));
}

int multiplicity_at_infinity(const RationalFunction& f) {
  return 2 * f.degree() - 1 - critical_numerator(f).degree();
}

ExactPoly critical_value_resultant(const RationalFunction& f) {
  ExactPoly e = critical_numerator(f);
  std::vector<ExactPoly> g;
  for (int k = 0; k <= f.degree(); ++k) g.push_back(ExactPoly({f.num().coeff(k), -f.den().coeff(k)}));
  return parametric_resultant(e, g, std::max(e.degree(), 0));
}

template <class R>
CycleType fiber_cycle_type_numeric(const RationalFunction& f, const SpherePoint<R>& s,
                                   R cluster_radius) {
  using std::pow;
  const int n = f.degree();
  NumPoly<R> a = to_num<R>(f.num());
  NumPoly<R> b = to_num<R>(f.den());
  a.resize(static_cast<std::size_t>(n) + 1);
  b.resize(static_cast<std::size_t>(n) + 1);
  NumPoly<R> g(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    auto ku = static_cast<std::size_t>(k);
    g[ku] = s.is_infinity() ? b[ku] : a[ku] - s.value() * b[ku];
  }
  R top(0);
  for (const auto& c : g) top = std::max(top, abs_cx(c));
  const R drop = pow(machine_epsilon<R>(), R(0.5)) * top;
  int deg = n;
  while (deg >= 0 && abs_cx(g[static_cast<std::size_t>(deg)]) <= drop) --deg;
  g.resize(static_cast<std::size_t>(deg + 1));
  auto roots = polynomial_roots(g);
  R scale(1);
  for (const auto& r : roots) scale = std::max(scale, R(1) + abs_cx(r));
  if (cluster_radius <= R(0))
    cluster_radius = R(10) * pow(machine_epsilon<R>(), R(1) / R(std::max(n, 2))) * scale;
  std::vector<int> parts;
  for (const auto& c : cluster_points(roots, cluster_radius)) parts.push_back(static_cast<int>(c.size()));
  if (n - deg > 0) parts.push_back(n - deg);
  return CycleType(std::move(parts));
}

namespace {

template <class R>
struct CriticalPoint {
  Cx<R> value;
  int multiplicity = 0;
  bool seen_by_resultant = true;  // false for the point at infinity
};

}  // namespace

template <class R>
std::vector<CriticalDatum<R>> critical_values(const RationalFunction& f,
                                              const CriticalOptions& opts) {
  const int n = f.degree();
  const R tol = R(opts.cluster_tolerance);
  const R refine_target = machine_epsilon<R>() * 16;
  std::vector<CriticalDatum<R>> out;
  if (n < 2) return out;

  ExactPoly e = critical_numerator(f);
  NumPoly<R> a = to_num<R>(f.num());
  NumPoly<R> b = to_num<R>(f.den());

  std::vector<CriticalPoint<R>> points;
  auto factors = squarefree_decomposition(e);
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const int mult = static_cast<int>(k) + 2;
    ExactPoly poles = gcd(factors[k], f.den());
    ExactPoly finite_part = exact_div(factors[k], poles);
    if (finite_part.degree() < 1) continue;
    NumPoly<R> h = to_num<R>(finite_part);
    for (auto w : polynomial_roots(h)) {
      w = refine_root(h, w, refine_target);
      Cx<R> value = horner(a, w) / horner(b, w);
      points.push_back({value, mult, true});
    }
  }
  const int e_inf = multiplicity_at_infinity(f);
  if (e_inf >= 2) {
    ExactPoint v = f.eval(ExactPoint::infinity());
    if (!v.infinite) points.push_back({to_cx<R>(v.value), e_inf, false});
  }

  auto clusters = cluster_by(static_cast<int>(points.size()), [&](int x, int y) {
    return close_relative(points[static_cast<std::size_t>(x)].value,
                          points[static_cast<std::size_t>(y)].value, tol);
  });

  std::vector<int> expected_u_mult;
  for (const auto& cl : clusters) {
    std::vector<int> parts;
    Cx<R> centre(0);
    int total = 0;
    int u_mult = 0;
    for (int idx : cl) {
      const auto& pt = points[static_cast<std::size_t>(idx)];
      parts.push_back(pt.multiplicity);
      centre += pt.value;
      total += pt.multiplicity;
      if (pt.seen_by_resultant) u_mult += pt.multiplicity - 1;
    }
    if (total > n)
      throw NumericallyCoincidentValues("critical points over one value exceed the degree");
    centre /= R(static_cast<int>(cl.size()));
    for (int k = total; k < n; ++k) parts.push_back(1);
    CycleType ct(std::move(parts));
    out.push_back({SpherePoint<R>::finite(centre), ct, ct.is_simple()});
    expected_u_mult.push_back(u_mult);
  }

  if (opts.resultant_check) {
    // Each finite value s is a root of U of multiplicity sum(e_w - 1) over
    // finite critical points above s.
    ExactPoly u = critical_value_resultant(f);
    auto ufactors = squarefree_decomposition(u);
    std::vector<std::vector<Cx<R>>> uroots(ufactors.size());
    std::size_t total_roots = 0;
    for (std::size_t k = 0; k < ufactors.size(); ++k) {
      if (ufactors[k].degree() < 1) continue;
      NumPoly<R> h = to_num<R>(ufactors[k]);
      for (auto r : polynomial_roots(h)) uroots[k].push_back(refine_root(h, r, refine_target));
      total_roots += uroots[k].size();
    }
    std::vector<std::vector<bool>> used(uroots.size());
    for (std::size_t k = 0; k < uroots.size(); ++k) used[k].assign(uroots[k].size(), false);
    std::size_t matched = 0;
    for (std::size_t c = 0; c < out.size(); ++c) {
      int m = expected_u_mult[c];
      if (m == 0) continue;
      auto slot = static_cast<std::size_t>(m - 1);
      bool found = false;
      if (slot < uroots.size()) {
        for (std::size_t j = 0; j < uroots[slot].size(); ++j) {
          if (!used[slot][j] && close_relative(uroots[slot][j], out[c].value.value(), tol * 100)) {
            used[slot][j] = true;
            found = true;
            break;
          }
        }
      }
      if (!found)
        throw NumericallyCoincidentValues(
            "critical value multiplicity disagrees with the critical-value resultant");
      ++matched;
    }
    if (matched != total_roots)
      throw NumericallyCoincidentValues("critical value count disagrees with the critical-value resultant");
  }

  CycleType at_inf = fiber_cycle_type(f, ExactPoint::infinity());
  if (!at_inf.is_trivial()) out.push_back({SpherePoint<R>::infinity(), at_inf, at_inf.is_simple()});

  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return sphere_less(x.value, y.value); });

  int rh = 0;
  for (const auto& c : out) rh += c.cycle_type.deficiency();
  if (rh != 2 * n - 2) throw NumericallyCoincidentValues("Riemann–Hurwitz sum failed for critical data");
  return out;
}

bool separation_condition(const RationalFunction& f) {
  return separation_condition(critical_values<double>(f));
}

template <class R>
ScalarRatioSet<R> scalar_ratio_set(const std::vector<CriticalDatum<R>>& crit, R tol) {
  ScalarRatioSet<R> out;
  std::vector<Cx<R>> vals;
  for (const auto& c : crit) {
    if (c.value.is_infinity() || abs_cx(c.value.value()) <= tol) {
      out.always_shared = true;
      continue;
    }
    vals.push_back(c.value.value());
  }
  std::vector<Cx<R>> raw;
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = 0; j < vals.size(); ++j)
      if (i != j) raw.push_back(vals[i] / vals[j]);
  for (const auto& cl : cluster_by(static_cast<int>(raw.size()), [&](int x, int y) {
         return close_relative(raw[static_cast<std::size_t>(x)], raw[static_cast<std::size_t>(y)], tol);
       }))
    out.ratios.push_back(raw[static_cast<std::size_t>(cl.front())]);
  std::sort(out.ratios.begin(), out.ratios.end(), [](const Cx<R>& x, const Cx<R>& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

ExactPoly ratio_resultant(const RationalFunction& p) {
  ExactPoly u = critical_value_resultant(p);
  const int d = u.degree();
  std::vector<ExactPoly> g;
  for (int k = 0; k <= d; ++k) g.push_back(ExactPoly::monomial(u.coeff(k), d - k));
  ExactPoly l = parametric_resultant(u, g, d * d);
  ExactPoly y_minus_one({GaussQ(-1), GaussQ(1)});
  while (!l.is_zero() && l.eval(GaussQ(1)).is_zero()) l = exact_div(l, y_minus_one);
  return l;
}

template <class R>
std::optional<bool> ratio_resultant_check(const RationalFunction& p, const ScalarRatioSet<R>& set,
                                          R tol) {
  if (set.always_shared || multiplicity_at_infinity(p) != 1) return std::nullopt;
  ExactPoly w = ratio_resultant(p);
  NumPoly<R> wn = to_num<R>(w);
  std::vector<Cx<R>> roots;
  for (auto r : polynomial_roots(wn)) roots.push_back(refine_root(wn, r, machine_epsilon<R>() * 16));
  // Coincident ratios are multiple roots of W; compare as sets.
  const R loose = std::max(tol * 1000, R(1e-6));
  for (const auto& r : roots) {
    bool hit = false;
    for (const auto& q : set.ratios) hit = hit || close_relative(r, q, loose);
    if (!hit) return false;
  }
  for (const auto& q : set.ratios) {
    bool hit = false;
    for (const auto& r : roots) hit = hit || close_relative(r, q, loose);
    if (!hit) return false;
  }
  return true;
}

int power_form_exponent(const CycleType& over_w1, const CycleType& over_w2) {
  return std::gcd(over_w1.parts_gcd(), over_w2.parts_gcd());
}

namespace {

// Multiplicities of the squarefree factors (index k -> exponent k+1).
int factor_gcd(const std::vector<ExactPoly>& factors) {
  int g = 0;
  for (std::size_t k = 0; k < factors.size(); ++k)
    if (factors[k].degree() >= 1) g = std::gcd(g, static_cast<int>(k) + 1);
  return g;
}

ExactPoly root_of_power(const std::vector<ExactPoly>& factors, int d) {
  ExactPoly out = ExactPoly::constant(GaussQ(1));
  for (std::size_t k = 0; k < factors.size(); ++k)
    if (factors[k].degree() >= 1) out *= pow(factors[k], (static_cast<int>(k) + 1) / d);
  return out;
}

}  // namespace

std::optional<PowerForm> extract_power_form(const RationalFunction& p, const ExactPoint& w1,
                                            const ExactPoint& w2, std::optional<int> d) {
  if (w1 == w2) throw std::invalid_argument("extract_power_form: w1 == w2");
  const ExactPoly& a = p.num();
  const ExactPoly& b = p.den();
  ExactPoly num = w1.infinite ? b : a - b * w1.value;
  ExactPoly den = w2.infinite ? b : a - b * w2.value;
  auto fn = squarefree_decomposition(num);
  auto fd = squarefree_decomposition(den);
  int g = std::gcd(factor_gcd(fn), factor_gcd(fd));
  int inf_order = den.degree() - num.degree();
  if (inf_order != 0) g = std::gcd(g, std::abs(inf_order));
  int exponent = g;
  if (d) {
    if (*d < 2 || g % *d != 0) return std::nullopt;
    exponent = *d;
  }
  if (exponent < 2) return std::nullopt;

  ExactPoly n1 = root_of_power(fn, exponent);
  ExactPoly d1 = root_of_power(fd, exponent);
  GaussQ kappa = num.lead() / den.lead();
  ExactMobius mu0;
  if (w2.infinite) {
    mu0 = {GaussQ(1), w1.value, GaussQ(0), GaussQ(1)};
  } else if (w1.infinite) {
    mu0 = {w2.value, GaussQ(1), GaussQ(1), GaussQ(0)};
  } else {
    mu0 = {w2.value, -w1.value, GaussQ(1), GaussQ(-1)};
  }
  ExactMobius scale{kappa, GaussQ(0), GaussQ(0), GaussQ(1)};
  PowerForm form{mu0.compose(scale), exponent, RationalFunction::normalize(n1, d1)};
  if (!(recompose(form) == p)) throw ConsistencyFailure("power form does not recompose to its source");
  return form;
}

RationalFunction recompose(const PowerForm& form) {
  ExactPoly n = pow(form.inner.num(), form.d);
  ExactPoly d = pow(form.inner.den(), form.d);
  return RationalFunction::normalize(n * form.mu.a + d * form.mu.b, n * form.mu.c + d * form.mu.d);
}

#define PQCURVE_INSTANTIATE(R)                                                                     \
  template CycleType fiber_cycle_type_numeric<R>(const RationalFunction&, const SpherePoint<R>&, R); \
  template std::vector<CriticalDatum<R>> critical_values<R>(const RationalFunction&,                 \
                                                            const CriticalOptions&);                 \
  template ScalarRatioSet<R> scalar_ratio_set<R>(const std::vector<CriticalDatum<R>>&, R);          \
  template std::optional<bool> ratio_resultant_check<R>(const RationalFunction&,                    \
                                                        const ScalarRatioSet<R>&, R);

PQCURVE_INSTANTIATE(Real53)
PQCURVE_INSTANTIATE(Real113)
PQCURVE_INSTANTIATE(Real237)

}  // namespace pqcurve
