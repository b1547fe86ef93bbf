#include "pqcurve/exact.hpp"

#include <stdexcept>
#include <string>

namespace pqcurve {

GaussQ& GaussQ::operator+=(const GaussQ& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussQ& GaussQ::operator-=(const GaussQ& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussQ& GaussQ::operator*=(const GaussQ& o) {
  mpq_class r = re * o.re - im * o.im;
  mpq_class i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussQ& GaussQ::operator/=(const GaussQ& o) {
  mpq_class n = o.norm();
  if (sgn(n) == 0) throw std::domain_error("GaussQ division by zero");
  mpq_class r = (re * o.re + im * o.im) / n;
  mpq_class i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string GaussQ::str() const {
  if (sgn(im) == 0) return re.get_str();
  if (sgn(re) == 0) return im.get_str() + "i";
  std::string s = re.get_str();
  if (sgn(im) > 0) s += "+";
  return s + im.get_str() + "i";
}

ExactPoly::ExactPoly(std::vector<GaussQ> coeffs) : coeffs_(std::move(coeffs)) {
  trim();
}

ExactPoly::ExactPoly(std::initializer_list<GaussQ> coeffs) : coeffs_(coeffs) {
  trim();
}

ExactPoly ExactPoly::constant(const GaussQ& c) { return ExactPoly({c}); }

ExactPoly ExactPoly::monomial(const GaussQ& c, int degree) {
  std::vector<GaussQ> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return ExactPoly(std::move(v));
}

void ExactPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

GaussQ ExactPoly::coeff(int k) const {
  if (k < 0 || k > degree()) return GaussQ(0);
  return coeffs_[static_cast<std::size_t>(k)];
}

GaussQ ExactPoly::eval(const GaussQ& z) const {
  GaussQ acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc *= z;
    acc += *it;
  }
  return acc;
}

ExactPoly ExactPoly::derivative() const {
  if (degree() < 1) return {};
  std::vector<GaussQ> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * GaussQ(static_cast<long>(k));
  return ExactPoly(std::move(d));
}

ExactPoly ExactPoly::monic() const {
  if (is_zero()) return {};
  GaussQ inv = GaussQ(1) / lead();
  return *this * inv;
}

ExactPoly& ExactPoly::operator+=(const ExactPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

ExactPoly& ExactPoly::operator-=(const ExactPoly& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

ExactPoly& ExactPoly::operator*=(const ExactPoly& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<GaussQ> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t a = 0; a < coeffs_.size(); ++a) {
    if (coeffs_[a].is_zero()) continue;
    for (std::size_t b = 0; b < o.coeffs_.size(); ++b)
      r[a + b] += coeffs_[a] * o.coeffs_[b];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

ExactPoly& ExactPoly::operator*=(const GaussQ& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

std::string ExactPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const GaussQ& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string cs = c.str();
    bool compound = !c.is_real() && sgn(c.re) != 0;
    if (compound) cs = "(" + cs + ")";
    std::string term;
    if (k == 0) {
      term = cs;
    } else {
      if (cs == "1") {
        term.clear();
      } else if (cs == "-1") {
        term = "-";
      } else {
        term = cs + "*";
      }
      term += var;
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (!out.empty()) {
      if (term[0] == '-') {
        out += " - " + term.substr(1);
      } else {
        out += " + " + term;
      }
    } else {
      out = term;
    }
  }
  return out;
}

ExactPoly pow(const ExactPoly& p, int e) {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  ExactPoly result = ExactPoly::constant(GaussQ(1));
  ExactPoly base = p;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<GaussQ> r = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {ExactPoly(), a};
  std::vector<GaussQ> q(static_cast<std::size_t>(da - db) + 1);
  GaussQ inv = GaussQ(1) / b.lead();
  for (int k = da; k >= db; --k) {
    GaussQ c = r[static_cast<std::size_t>(k)] * inv;
    q[static_cast<std::size_t>(k - db)] = c;
    if (c.is_zero()) continue;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {ExactPoly(std::move(q)), ExactPoly(std::move(r))};
}

ExactPoly exact_div(const ExactPoly& a, const ExactPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("exact_div: nonzero remainder");
  return q;
}

ExactPoly gcd(const ExactPoly& a, const ExactPoly& b) {
  ExactPoly x = a;
  ExactPoly y = b;
  while (!y.is_zero()) {
    ExactPoly r = divmod(x, y).second;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

std::vector<ExactPoly> squarefree_decomposition(const ExactPoly& p) {
  std::vector<ExactPoly> factors;
  if (p.degree() < 1) return factors;
  ExactPoly f = p.monic();
  ExactPoly fp = f.derivative();
  ExactPoly a = gcd(f, fp);
  ExactPoly b = exact_div(f, a);
  ExactPoly c = exact_div(fp, a);
  ExactPoly d = c - b.derivative();
  while (b.degree() >= 1) {
    ExactPoly g = gcd(b, d);
    factors.push_back(g);
    b = exact_div(b, g);
    c = exact_div(d, g);
    d = c - b.derivative();
  }
  while (!factors.empty() && factors.back().degree() < 1) factors.pop_back();
  return factors;
}

bool is_squarefree(const ExactPoly& p) {
  if (p.degree() < 1) return true;
  return gcd(p, p.derivative()).degree() == 0;
}

GaussQ determinant(std::vector<std::vector<GaussQ>> m) {
  const std::size_t n = m.size();
  GaussQ det(1);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) return GaussQ(0);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    GaussQ inv = GaussQ(1) / m[col][col];
    for (std::size_t row = col + 1; row < n; ++row) {
      if (m[row][col].is_zero()) continue;
      GaussQ factor = m[row][col] * inv;
      for (std::size_t k = col; k < n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  return det;
}

GaussQ resultant(const ExactPoly& f, const ExactPoly& g, int formal_deg_f,
                 int formal_deg_g) {
  const int a = formal_deg_f;
  const int b = formal_deg_g;
  if (a < f.degree() || b < g.degree())
    throw std::invalid_argument("resultant: formal degree below actual degree");
  if (a == 0 && b == 0) return GaussQ(1);
  const std::size_t size = static_cast<std::size_t>(a + b);
  std::vector<std::vector<GaussQ>> s(size, std::vector<GaussQ>(size));
  // Rows hold coefficients from the highest power down.
  for (int r = 0; r < b; ++r)
    for (int k = 0; k <= a; ++k)
      s[static_cast<std::size_t>(r)][static_cast<std::size_t>(r + k)] = f.coeff(a - k);
  for (int r = 0; r < a; ++r)
    for (int k = 0; k <= b; ++k)
      s[static_cast<std::size_t>(b + r)][static_cast<std::size_t>(r + k)] = g.coeff(b - k);
  return determinant(std::move(s));
}

GaussQ resultant(const ExactPoly& f, const ExactPoly& g) {
  return resultant(f, g, f.degree(), g.degree());
}

ExactPoly interpolate(const std::vector<GaussQ>& xs,
                      const std::vector<GaussQ>& ys) {
  const std::size_t n = xs.size();
  std::vector<GaussQ> dd = ys;
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k)
      dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
  ExactPoly result;
  for (std::size_t k = n; k-- > 0;) {
    result *= ExactPoly({-xs[k], GaussQ(1)});
    result += ExactPoly::constant(dd[k]);
  }
  return result;
}

ExactPoly parametric_resultant(const ExactPoly& f,
                               const std::vector<ExactPoly>& g_coeffs,
                               int degree_bound) {
  const int formal_g = static_cast<int>(g_coeffs.size()) - 1;
  std::vector<GaussQ> xs;
  std::vector<GaussQ> ys;
  for (int k = 0; k <= degree_bound; ++k) {
    GaussQ x(static_cast<long>(k));
    std::vector<GaussQ> gc;
    gc.reserve(g_coeffs.size());
    for (const auto& c : g_coeffs) gc.push_back(c.eval(x));
    ExactPoly g(std::move(gc));
    xs.push_back(x);
    ys.push_back(resultant(f, g, f.degree(), formal_g));
  }
  return interpolate(xs, ys);
}

}  // namespace pqcurve
