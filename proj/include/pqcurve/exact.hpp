#pragma once

// Exact arithmetic over the Gaussian rationals Q(i): scalars, univariate
// polynomials, GCDs, squarefree decomposition and resultants.

#include <gmpxx.h>

#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace pqcurve {

struct GaussQ {
  mpq_class re;
  mpq_class im;

  GaussQ() = default;
  GaussQ(long r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  GaussQ(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  static GaussQ i_unit() { return GaussQ(mpq_class(0), mpq_class(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  GaussQ conj() const { return GaussQ(re, -im); }
  mpq_class norm() const { return re * re + im * im; }

  GaussQ& operator+=(const GaussQ& o);
  GaussQ& operator-=(const GaussQ& o);
  GaussQ& operator*=(const GaussQ& o);
  GaussQ& operator/=(const GaussQ& o);  // throws std::domain_error on zero

  friend GaussQ operator+(GaussQ a, const GaussQ& b) { return a += b; }
  friend GaussQ operator-(GaussQ a, const GaussQ& b) { return a -= b; }
  friend GaussQ operator*(GaussQ a, const GaussQ& b) { return a *= b; }
  friend GaussQ operator/(GaussQ a, const GaussQ& b) { return a /= b; }
  friend GaussQ operator-(const GaussQ& a) { return GaussQ(-a.re, -a.im); }
  friend bool operator==(const GaussQ& a, const GaussQ& b) {
    return a.re == b.re && a.im == b.im;
  }

  std::string str() const;
};

/// Polynomial with Gaussian-rational coefficients in ascending degree order.
/// Trailing zero coefficients are never stored; the zero polynomial has no
/// coefficients and degree -1.
class ExactPoly {
 public:
  ExactPoly() = default;
  explicit ExactPoly(std::vector<GaussQ> coeffs);
  ExactPoly(std::initializer_list<GaussQ> coeffs);

  static ExactPoly constant(const GaussQ& c);
  static ExactPoly monomial(const GaussQ& c, int degree);
  static ExactPoly x() { return monomial(GaussQ(1), 1); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  const std::vector<GaussQ>& coeffs() const { return coeffs_; }
  /// Coefficient of z^k (zero beyond the degree).
  GaussQ coeff(int k) const;
  const GaussQ& lead() const { return coeffs_.back(); }

  GaussQ eval(const GaussQ& z) const;
  ExactPoly derivative() const;
  ExactPoly monic() const;

  ExactPoly& operator+=(const ExactPoly& o);
  ExactPoly& operator-=(const ExactPoly& o);
  ExactPoly& operator*=(const ExactPoly& o);
  ExactPoly& operator*=(const GaussQ& c);

  friend ExactPoly operator+(ExactPoly a, const ExactPoly& b) { return a += b; }
  friend ExactPoly operator-(ExactPoly a, const ExactPoly& b) { return a -= b; }
  friend ExactPoly operator*(ExactPoly a, const ExactPoly& b) { return a *= b; }
  friend ExactPoly operator*(ExactPoly a, const GaussQ& c) { return a *= c; }
  friend ExactPoly operator*(const GaussQ& c, ExactPoly a) { return a *= c; }
  friend ExactPoly operator-(const ExactPoly& a) { return a * GaussQ(-1); }
  friend bool operator==(const ExactPoly& a, const ExactPoly& b) {
    return a.coeffs_ == b.coeffs_;
  }

  std::string str(const std::string& var = "z") const;

 private:
  void trim();
  std::vector<GaussQ> coeffs_;
};

ExactPoly pow(const ExactPoly& p, int e);

/// Euclidean division: a = q*b + r with deg r < deg b.
std::pair<ExactPoly, ExactPoly> divmod(const ExactPoly& a, const ExactPoly& b);

/// Exact quotient; throws std::logic_error when b does not divide a.
ExactPoly exact_div(const ExactPoly& a, const ExactPoly& b);

/// Monic greatest common divisor (zero when both inputs are zero).
ExactPoly gcd(const ExactPoly& a, const ExactPoly& b);

/// Yun decomposition: p = lead(p) * prod_k factors[k-1]^k with each factor
/// monic, squarefree and pairwise coprime. Trailing unit factors are dropped.
std::vector<ExactPoly> squarefree_decomposition(const ExactPoly& p);

bool is_squarefree(const ExactPoly& p);

/// Determinant by Gaussian elimination over Q(i).
GaussQ determinant(std::vector<std::vector<GaussQ>> m);

/// Sylvester resultant with prescribed formal degrees (coefficients above the
/// actual degree are treated as zero).
GaussQ resultant(const ExactPoly& f, const ExactPoly& g, int formal_deg_f,
                 int formal_deg_g);
GaussQ resultant(const ExactPoly& f, const ExactPoly& g);

/// Newton interpolation through (xs[k], ys[k]).
ExactPoly interpolate(const std::vector<GaussQ>& xs,
                      const std::vector<GaussQ>& ys);

/// Res_z(f(z), g(z, x)) as a polynomial in x, where g is given by its
/// z-coefficients (each a polynomial in x) and has formal z-degree
/// g_coeffs.size()-1. Computed by evaluation at degree_bound+1 integer points
/// and interpolation.
ExactPoly parametric_resultant(const ExactPoly& f,
                               const std::vector<ExactPoly>& g_coeffs,
                               int degree_bound);

}  // namespace pqcurve
