#pragma once

// Floating-point scalars at the three supported working precisions, and the
// simultaneous-iteration root finder used for every numeric root extraction.

#include <algorithm>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "pqcurve/exact.hpp"

namespace pqcurve {

namespace mp = boost::multiprecision;

using Real53 = double;
using Real113 = mp::number<mp::cpp_bin_float<113, mp::digit_base_2>, mp::et_off>;
using Real237 = mp::number<mp::cpp_bin_float<237, mp::digit_base_2>, mp::et_off>;

template <class R>
using Cx = std::complex<R>;

/// Numeric polynomial, ascending coefficients.
template <class R>
using NumPoly = std::vector<Cx<R>>;

template <class R>
constexpr int precision_bits() {
  return std::numeric_limits<R>::digits;
}

template <class R>
R machine_epsilon() {
  return std::numeric_limits<R>::epsilon();
}

template <class R>
R pi() {
  if constexpr (std::is_same_v<R, double>) {
    return 3.141592653589793238462643383279502884;
  } else {
    return boost::math::constants::pi<R>();
  }
}

template <class R>
double to_double(const R& x) {
  return static_cast<double>(x);
}

template <class R>
std::complex<double> to_double(const Cx<R>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class R>
R to_real(const mpq_class& q) {
  if constexpr (std::is_same_v<R, double>) {
    return q.get_d();
  } else {
    return R(q.get_num().get_str()) / R(q.get_den().get_str());
  }
}

template <class R>
Cx<R> to_cx(const GaussQ& g) {
  return {to_real<R>(g.re), to_real<R>(g.im)};
}

template <class R>
NumPoly<R> to_num(const ExactPoly& p) {
  NumPoly<R> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) out.push_back(to_cx<R>(c));
  return out;
}

template <class R>
R abs_cx(const Cx<R>& z) {
  using std::abs;
  return abs(z);
}

template <class R>
Cx<R> horner(const NumPoly<R>& p, const Cx<R>& z) {
  Cx<R> acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

/// Value and first derivative.
template <class R>
std::pair<Cx<R>, Cx<R>> horner_d(const NumPoly<R>& p, const Cx<R>& z) {
  Cx<R> v(0);
  Cx<R> d(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    d = d * z + v;
    v = v * z + *it;
  }
  return {v, d};
}

/// p(z) with coefficient magnitudes accumulated alongside, for relative
/// residual tests: returns (|p(z)|, sum |a_k||z|^k).
template <class R>
std::pair<R, R> residual_with_scale(const NumPoly<R>& p, const Cx<R>& z) {
  Cx<R> v(0);
  R s(0);
  R az = abs_cx(z);
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    v = v * z + *it;
    s = s * az + abs_cx(*it);
  }
  return {abs_cx(v), s};
}

template <class R>
int numeric_degree(const NumPoly<R>& p) {
  int d = static_cast<int>(p.size()) - 1;
  while (d >= 0 && p[static_cast<std::size_t>(d)] == Cx<R>(0)) --d;
  return d;
}

/// All complex roots of p (with multiplicity) by Aberth–Ehrlich iteration
/// followed by Newton polishing. Roots are returned in a deterministic order.
template <class R>
std::vector<Cx<R>> polynomial_roots(NumPoly<R> p, int max_sweeps = 600) {
  using std::abs;
  using std::pow;
  const int d = numeric_degree(p);
  if (d < 1) return {};
  p.resize(static_cast<std::size_t>(d) + 1);
  const Cx<R> lead = p.back();
  for (auto& c : p) c /= lead;

  // Initial guesses on a circle whose radius is the Fujiwara-style bound
  // geometric mean, rotated off the axes.
  R radius(0);
  for (int k = 0; k < d; ++k) {
    R a = abs_cx(p[static_cast<std::size_t>(k)]);
    if (a == R(0)) continue;
    R cand = pow(a, R(1) / R(d - k));
    if (cand > radius) radius = cand;
  }
  if (radius == R(0)) radius = R(1);
  const R two_pi = 2 * pi<R>();
  std::vector<Cx<R>> z(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    R angle = two_pi * R(k) / R(d) + R(0.4);
    z[static_cast<std::size_t>(k)] = std::polar(radius, angle);
  }
  if (d == 1) {
    z[0] = -p[0];
    return z;
  }

  const R tol = machine_epsilon<R>() * 8;
  std::vector<bool> done(static_cast<std::size_t>(d), false);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool all_done = true;
    for (int k = 0; k < d; ++k) {
      auto ku = static_cast<std::size_t>(k);
      if (done[ku]) continue;
      auto [v, dv] = horner_d(p, z[ku]);
      if (v == Cx<R>(0)) {
        done[ku] = true;
        continue;
      }
      Cx<R> ratio = dv == Cx<R>(0) ? Cx<R>(1) : v / dv;
      Cx<R> sum(0);
      for (int j = 0; j < d; ++j) {
        if (j == k) continue;
        Cx<R> diff = z[ku] - z[static_cast<std::size_t>(j)];
        if (diff != Cx<R>(0)) sum += Cx<R>(1) / diff;
      }
      Cx<R> denom = Cx<R>(1) - ratio * sum;
      Cx<R> w = denom == Cx<R>(0) ? ratio : ratio / denom;
      z[ku] -= w;
      if (abs_cx(w) <= tol * (R(1) + abs_cx(z[ku]))) {
        done[ku] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }

  // Newton polishing; a step is kept only when it lowers the residual.
  for (auto& root : z) {
    for (int it = 0; it < 4; ++it) {
      auto [v, dv] = horner_d(p, root);
      if (dv == Cx<R>(0) || v == Cx<R>(0)) break;
      Cx<R> next = root - v / dv;
      if (abs_cx(horner(p, next)) < abs_cx(v)) {
        root = next;
      } else {
        break;
      }
    }
  }
  return z;
}

/// Newton refinement of a single root until the relative residual drops
/// below target or no further progress is made.
template <class R>
Cx<R> refine_root(const NumPoly<R>& p, Cx<R> root, const R& target,
                  int max_iter = 50) {
  for (int it = 0; it < max_iter; ++it) {
    auto [res, scale] = residual_with_scale(p, root);
    if (scale == R(0) || res <= target * scale) break;
    auto [v, dv] = horner_d(p, root);
    if (dv == Cx<R>(0)) break;
    Cx<R> next = root - v / dv;
    if (abs_cx(horner(p, next)) >= abs_cx(v)) break;
    root = next;
  }
  return root;
}

template <class R>
R min_pairwise_distance(const std::vector<Cx<R>>& pts) {
  R best = std::numeric_limits<R>::max();
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      R dist = abs_cx(pts[a] - pts[b]);
      if (dist < best) best = dist;
    }
  return best;
}

/// Single-linkage clusters of {0..n-1} under the symmetric predicate
/// linked(a, b); clusters are listed by their smallest member, members
/// ascending.
template <class Linked>
std::vector<std::vector<int>> cluster_by(int n, Linked linked) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (linked(a, b)) {
        int ra = find(a);
        int rb = find(b);
        if (ra != rb) parent[static_cast<std::size_t>(std::max(ra, rb))] = std::min(ra, rb);
      }
  std::vector<std::vector<int>> out;
  std::vector<int> slot(static_cast<std::size_t>(n), -1);
  for (int k = 0; k < n; ++k) {
    int r = find(k);
    if (slot[static_cast<std::size_t>(r)] < 0) {
      slot[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].push_back(k);
  }
  return out;
}

/// Clusters of points closer than an absolute radius.
template <class R>
std::vector<std::vector<int>> cluster_points(const std::vector<Cx<R>>& pts,
                                             const R& radius) {
  return cluster_by(static_cast<int>(pts.size()), [&](int a, int b) {
    return abs_cx(pts[static_cast<std::size_t>(a)] - pts[static_cast<std::size_t>(b)]) <= radius;
  });
}

/// Relative closeness used for critical-value coincidence: |a-b| <= tol *
/// max(1, |a|, |b|).
template <class R>
bool close_relative(const Cx<R>& a, const Cx<R>& b, const R& tol) {
  R scale = std::max({R(1), abs_cx(a), abs_cx(b)});
  return abs_cx(a - b) <= tol * scale;
}

}  // namespace pqcurve
