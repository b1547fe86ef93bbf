#pragma once

#include <random>
#include <string>

#include "pqcurve/decide.hpp"
#include "pqcurve/expression.hpp"

namespace testing {

inline pqcurve::RationalFunction f(const std::string& text) { return pqcurve::parse_function(text); }

inline pqcurve::ExactPoint pt(long re, long im = 0) {
  return pqcurve::ExactPoint::finite(pqcurve::GaussQ(mpq_class(re), mpq_class(im)));
}

inline pqcurve::ExactPoint inf() { return pqcurve::ExactPoint::infinity(); }

/// A function passing the generic guards: finite simple critical values.
inline pqcurve::RationalFunction generic_function(std::mt19937_64& rng, int n) {
  for (;;) {
    auto g = pqcurve::random_function(rng, n);
    if (pqcurve::generic_guards(g)) return g;
  }
}

template <class R = pqcurve::Real53>
std::vector<pqcurve::CriticalDatum<R>> crit(const pqcurve::RationalFunction& g) {
  return pqcurve::critical_values<R>(g);
}

inline pqcurve::Options verify_opts(std::uint64_t seed = 0) {
  pqcurve::Options o;
  o.verify = true;
  o.seed = seed;
  return o;
}

}  // namespace testing
