#include "pqcurve/monodromy.hpp"

#include <algorithm>
#include <exception>
#include <iomanip>
#include <ostream>
#include <random>

#include "pqcurve/gridgroup.hpp"

namespace pqcurve {

namespace {

template <class R>
NumPoly<R> derivative_num(const NumPoly<R>& p) {
  NumPoly<R> out;
  for (std::size_t k = 1; k < p.size(); ++k) out.push_back(p[k] * R(static_cast<int>(k)));
  if (out.empty()) out.push_back(Cx<R>(0));
  return out;
}

template <class R>
R segment_distance(const Cx<R>& p, const Cx<R>& a, const Cx<R>& b) {
  Cx<R> ab = b - a;
  R len2 = std::norm(ab);
  if (len2 == R(0)) return abs_cx(p - a);
  R t = ((p - a) * std::conj(ab)).real() / len2;
  t = std::clamp(t, R(0), R(1));
  return abs_cx(p - (a + ab * t));
}

template <class R>
R nearest_distance(const Cx<R>& z, const std::vector<Cx<R>>& pts) {
  R best = std::numeric_limits<R>::max();
  for (const auto& p : pts) best = std::min(best, abs_cx(z - p));
  return best;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

template <class R>
Cx<R> LoopPath<R>::at(const R& s) const {
  const R seg = segment_length();
  const R circ = circle_length();
  if (s <= seg) {
    if (seg == R(0)) return entry;
    return basepoint + (entry - basepoint) * (s / seg);
  }
  if (s <= seg + circ) {
    return centre + std::polar(radius, entry_angle + (s - seg) / radius);
  }
  R u = std::min(R(1), (s - seg - circ) / seg);
  return entry + (basepoint - entry) * u;
}

template <class R>
LoopSystem<R> build_loops(const std::vector<Cx<R>>& points, const std::vector<Cx<R>>& avoid,
                          std::uint64_t seed, int attempt) {
  if (points.empty()) throw EmptyCriticalSet();
  R maxabs(0);
  for (const auto& p : points) maxabs = std::max(maxabs, abs_cx(p));
  for (const auto& p : avoid) maxabs = std::max(maxabs, abs_cx(p));
  const R rho = 2 * (1 + maxabs);

  R small(1);
  if (points.size() > 1) small = min_pairwise_distance(points) / 2;
  for (const auto& p : points)
    for (const auto& a : avoid) small = std::min(small, abs_cx(p - a) / 2);

  // Seeded candidate angles, scored by the clearance of every other point
  // (and every avoided point) from each approach segment.
  constexpr int kCandidates = 64;
  std::mt19937_64 rng(mix_seed(seed, 17));
  std::uniform_real_distribution<double> angle(0.0, 2 * 3.141592653589793);
  std::vector<std::pair<R, int>> scored;
  std::vector<R> angles;
  for (int c = 0; c < kCandidates; ++c) {
    R theta = R(angle(rng));
    angles.push_back(theta);
    Cx<R> z0 = std::polar(rho, theta);
    R score = std::numeric_limits<R>::max();
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = 0; j < points.size(); ++j)
        if (j != i) score = std::min(score, segment_distance(points[j], z0, points[i]));
      for (const auto& a : avoid) score = std::min(score, segment_distance(a, z0, points[i]));
    }
    scored.emplace_back(score, c);
  }
  std::stable_sort(scored.begin(), scored.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  const int pick = scored[static_cast<std::size_t>(attempt % kCandidates)].second;

  LoopSystem<R> sys;
  sys.basepoint = std::polar(rho, angles[static_cast<std::size_t>(pick)]);
  const Cx<R> z0 = sys.basepoint;

  // Seen from z0 every point lies within a half-plane around the direction
  // of the origin; increasing angle in that window gives the product order.
  std::vector<std::pair<R, int>> by_angle;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Cx<R> rel = (points[i] - z0) / (-z0);
    by_angle.emplace_back(std::arg(rel), static_cast<int>(i));
  }
  std::stable_sort(by_angle.begin(), by_angle.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [ang, i] : by_angle) {
    (void)ang;
    LoopPath<R> loop;
    loop.basepoint = z0;
    loop.centre = points[static_cast<std::size_t>(i)];
    loop.radius = small;
    Cx<R> dir = (z0 - loop.centre) / abs_cx(z0 - loop.centre);
    loop.entry = loop.centre + dir * small;
    loop.entry_angle = std::arg(dir);
    sys.loops.push_back(loop);
    sys.order.push_back(i);
  }
  return sys;
}

void write_path_dump(std::ostream& os, const std::vector<PathSample>& samples) {
  os << std::setprecision(17);
  for (const auto& s : samples) os << s.loop << ' ' << s.t << ' ' << s.point << ' ' << s.re << ' ' << s.im << '\n';
}

template <class R>
std::vector<Cx<R>> compute_fiber(const NumPoly<R>& num, const NumPoly<R>& den, const Cx<R>& z0) {
  std::size_t len = std::max(num.size(), den.size());
  NumPoly<R> g(len);
  for (std::size_t k = 0; k < len; ++k) {
    Cx<R> a = k < num.size() ? num[k] : Cx<R>(0);
    Cx<R> b = k < den.size() ? den[k] : Cx<R>(0);
    g[k] = a - z0 * b;
  }
  R scale(0);
  for (const auto& c : g) scale = std::max(scale, abs_cx(c));
  if (scale == R(0) || abs_cx(g.back()) <= R(1e-10) * scale)
    throw NumericError("basepoint fiber has deficient degree");
  auto roots = polynomial_roots(g);
  using std::pow;
  const R eps = machine_epsilon<R>();
  R target = std::is_same_v<R, double> ? R(1e-13) : R(pow(eps, R(0.8)));
  R maxabs(0);
  for (auto& x : roots) {
    x = refine_root(g, x, target);
    auto [res, sc] = residual_with_scale(g, x);
    if (res > target * sc) throw NoConvergence("basepoint fiber refinement did not reach the residual target");
    maxabs = std::max(maxabs, abs_cx(x));
  }
  using std::sqrt;
  if (roots.size() > 1 && min_pairwise_distance(roots) <= sqrt(eps) * (1 + maxabs))
    throw NumericError("basepoint fiber has clustered points");
  return roots;
}

namespace {

template <class R>
struct Tracker {
  const NumPoly<R>& num;
  const NumPoly<R>& den;
  NumPoly<R> dnum;
  NumPoly<R> dden;

  Tracker(const NumPoly<R>& n, const NumPoly<R>& d) : num(n), den(d), dnum(derivative_num(n)), dden(derivative_num(d)) {}

  // G(x) = N(x) - z D(x) and dG/dx.
  std::pair<Cx<R>, Cx<R>> g(const Cx<R>& x, const Cx<R>& z) const {
    auto nv = horner(num, x);
    auto dv = horner(den, x);
    auto nd = horner(dnum, x);
    auto dd = horner(dden, x);
    return {nv - z * dv, nd - z * dd};
  }

  // Tangent predictor from z to z_new followed by Newton at z_new.
  bool step(const Cx<R>& x, const Cx<R>& z, const Cx<R>& z_new, Cx<R>& out) const {
    using std::pow;
    static const R tol = pow(machine_epsilon<R>(), R(0.75));
    auto [gv, gd] = g(x, z);
    (void)gv;
    Cx<R> xp = x;
    if (gd != Cx<R>(0)) xp = x + horner(den, x) / gd * (z_new - z);
    for (int it = 0; it < 8; ++it) {
      auto [v, d] = g(xp, z_new);
      if (d == Cx<R>(0)) return false;
      Cx<R> dx = v / d;
      xp -= dx;
      if (abs_cx(dx) <= tol * (1 + abs_cx(xp))) {
        out = xp;
        return true;
      }
    }
    return false;
  }
};

template <class R>
std::vector<Cx<R>> track_once(const Tracker<R>& tr, const std::vector<Cx<R>>& fiber, const LoopPath<R>& loop,
                              const std::vector<Cx<R>>& obstacles, double step_scale,
                              std::vector<PathSample>* samples, int loop_index) {
  using std::sqrt;
  const std::size_t n = fiber.size();
  const R L = loop.length();
  const R h0 = loop.circle_length() / 64 * R(step_scale);
  const R hmin = h0 / R(1 << 20);
  const R eps = machine_epsilon<R>();
  R h = h0;
  R s(0);
  int accepts = 0;
  std::vector<Cx<R>> x = fiber;
  std::vector<Cx<R>> xn(n);
  auto record = [&](const R& sv) {
    if (!samples) return;
    for (std::size_t j = 0; j < n; ++j)
      samples->push_back({loop_index, to_double(sv / L), static_cast<int>(j), to_double(x[j].real()),
                          to_double(x[j].imag())});
  };
  record(s);
  while (s < L) {
    const Cx<R> z = loop.at(s);
    // Never step further than a quarter of the clearance to the obstacles.
    R cap = nearest_distance(z, obstacles) / 4 * R(step_scale);
    R hh = std::min(h, cap);
    bool last = false;
    if (hh >= L - s) {
      hh = L - s;
      last = true;
    }
    const R s_new = last ? L : s + hh;
    const Cx<R> z_new = loop.at(s_new);
    const R dmin = n > 1 ? min_pairwise_distance(x) : std::numeric_limits<R>::max();
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      if (!tr.step(x[j], z, z_new, xn[j]) || !(abs_cx(xn[j] - x[j]) < dmin / 3)) ok = false;
    }
    if (ok) {
      if (n > 1) {
        R maxabs(0);
        for (const auto& p : xn) maxabs = std::max(maxabs, abs_cx(p));
        if (min_pairwise_distance(xn) <= sqrt(eps) * (1 + maxabs))
          throw PathJumpSuspected("two tracked fiber points collided");
      }
      x.swap(xn);
      s = s_new;
      record(s);
      if (++accepts >= 8) {
        h *= 2;
        accepts = 0;
      }
    } else {
      h = hh / 2;
      accepts = 0;
      if (h < hmin) throw NoConvergence("continuation step fell below the floor");
    }
  }
  return x;
}

}  // namespace

template <class R>
Permutation track_loop(const NumPoly<R>& num, const NumPoly<R>& den, const std::vector<Cx<R>>& fiber,
                       const LoopPath<R>& loop, const std::vector<Cx<R>>& obstacles, const TrackOptions& opts,
                       std::vector<PathSample>* samples, int loop_index) {
  Tracker<R> tr(num, den);
  const std::size_t n = fiber.size();
  const R dmin = n > 1 ? min_pairwise_distance(fiber) : std::numeric_limits<R>::max();
  double scale = opts.step_scale;
  for (int attempt = 0;; ++attempt, scale /= 4) {
    try {
      std::vector<PathSample> local;
      auto end = track_once(tr, fiber, loop, obstacles, scale, samples ? &local : nullptr, loop_index);
      std::vector<int> images(n, -1);
      std::vector<bool> used(n, false);
      for (std::size_t j = 0; j < n; ++j) {
        std::size_t best = 0;
        R bd = std::numeric_limits<R>::max();
        for (std::size_t k = 0; k < n; ++k) {
          R d = abs_cx(end[j] - fiber[k]);
          if (d < bd) {
            bd = d;
            best = k;
          }
        }
        if (!(bd < dmin / 2) || used[best]) throw PathJumpSuspected("end fiber does not match the start fiber");
        used[best] = true;
        images[j] = static_cast<int>(best);
      }
      if (samples) samples->insert(samples->end(), local.begin(), local.end());
      return Permutation(std::move(images));
    } catch (const PathJumpSuspected&) {
      if (attempt >= opts.max_retries) throw;
    } catch (const NoConvergence&) {
      if (attempt >= opts.max_retries) throw;
    }
  }
}

template <class R>
std::vector<std::vector<Permutation>> track_loops_serial(const std::vector<TrackTarget<R>>& targets,
                                                         const LoopSystem<R>& system,
                                                         const std::vector<Cx<R>>& obstacles,
                                                         const TrackOptions& opts,
                                                         std::vector<PathSample>* samples) {
  std::vector<std::vector<Permutation>> out(targets.size());
  for (std::size_t t = 0; t < targets.size(); ++t)
    for (std::size_t k = 0; k < system.loops.size(); ++k)
      out[t].push_back(track_loop(targets[t].num, targets[t].den, targets[t].fiber, system.loops[k], obstacles,
                                  opts, t == 0 ? samples : nullptr, static_cast<int>(k)));
  return out;
}

template <class R>
std::vector<std::vector<Permutation>> track_loops_parallel(const std::vector<TrackTarget<R>>& targets,
                                                           const LoopSystem<R>& system,
                                                           const std::vector<Cx<R>>& obstacles,
                                                           const TrackOptions& opts,
                                                           std::vector<PathSample>* samples) {
  const int loops = static_cast<int>(system.loops.size());
  const int jobs = static_cast<int>(targets.size()) * loops;
  std::vector<Permutation> perms(static_cast<std::size_t>(jobs));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(jobs));
  std::vector<std::vector<PathSample>> local(static_cast<std::size_t>(loops));
#pragma omp parallel for schedule(dynamic)
  for (int job = 0; job < jobs; ++job) {
    const auto t = static_cast<std::size_t>(job / loops);
    const int k = job % loops;
    try {
      perms[static_cast<std::size_t>(job)] =
          track_loop(targets[t].num, targets[t].den, targets[t].fiber, system.loops[static_cast<std::size_t>(k)],
                     obstacles, opts, (t == 0 && samples) ? &local[static_cast<std::size_t>(k)] : nullptr, k);
    } catch (...) {
      errors[static_cast<std::size_t>(job)] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  if (samples)
    for (const auto& l : local) samples->insert(samples->end(), l.begin(), l.end());
  std::vector<std::vector<Permutation>> out(targets.size());
  for (int job = 0; job < jobs; ++job) out[static_cast<std::size_t>(job / loops)].push_back(perms[static_cast<std::size_t>(job)]);
  return out;
}

template <class R>
MergedValues<R> merge_branch_values(const std::vector<CriticalDatum<R>>& crit_p, int n,
                                    const std::vector<CriticalDatum<R>>& crit_q, int m, R tol) {
  struct Entry {
    SpherePoint<R> value;
    CycleType cp, cq;
    bool is_p, is_q;
  };
  std::vector<Entry> entries;
  for (const auto& c : crit_p) entries.push_back({c.value, c.cycle_type, CycleType::trivial(m), true, false});
  for (const auto& c : crit_q) {
    int hit = -1;
    for (std::size_t k = 0; k < crit_p.size(); ++k) {
      if (!c.value.close_to(entries[k].value, tol)) continue;
      if (hit >= 0) throw NumericallyCoincidentValues("a critical value of Q matches several of P");
      hit = static_cast<int>(k);
    }
    if (hit >= 0) {
      entries[static_cast<std::size_t>(hit)].cq = c.cycle_type;
      entries[static_cast<std::size_t>(hit)].is_q = true;
    } else {
      entries.push_back({c.value, CycleType::trivial(n), c.cycle_type, false, true});
    }
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const Entry& a, const Entry& b) { return sphere_less(a.value, b.value); });
  MergedValues<R> out;
  for (auto& e : entries) {
    out.values.push_back(e.value);
    out.cycle_p.push_back(e.cp);
    out.cycle_q.push_back(e.cq);
    out.critical_p.push_back(e.is_p);
    out.critical_q.push_back(e.is_q);
  }
  return out;
}

namespace {

template <class R>
Mobius<R> choose_normalization(const std::vector<SpherePoint<R>>& values, const std::vector<Cx<R>>& avoid,
                               std::uint64_t seed) {
  bool has_inf = std::any_of(values.begin(), values.end(), [](const auto& v) { return v.is_infinity(); });
  if (!has_inf) return Mobius<R>::identity();
  double bound = 1;
  for (const auto& a : avoid) bound = std::max(bound, 1 + to_double(abs_cx(a)));
  const long span = static_cast<long>(16 * bound);
  std::mt19937_64 rng(mix_seed(seed, 29));
  std::uniform_int_distribution<long> pick(-span, span);
  Cx<R> best(0);
  R best_score(-1);
  for (int c = 0; c < 32; ++c) {
    Cx<R> a(R(pick(rng)) / R(16), R(pick(rng)) / R(16));
    R score = avoid.empty() ? R(1) : nearest_distance(a, avoid);
    if (score > best_score) {
      best_score = score;
      best = a;
    }
  }
  return Mobius<R>::invert_at(best);
}

template <class R>
SpherePoint<R> value_at_infinity(const MappedFunction<R>& f) {
  ExactPoint e = f.base().eval(ExactPoint::infinity());
  SpherePoint<R> v = e.infinite ? SpherePoint<R>::infinity() : SpherePoint<R>::finite(to_cx<R>(e.value));
  return f.post().apply(v);
}

}  // namespace

template <class R>
Mobius<R> normalize_infinity(const std::vector<SpherePoint<R>>& values, std::uint64_t seed) {
  std::vector<Cx<R>> avoid;
  for (const auto& v : values)
    if (!v.is_infinity()) avoid.push_back(v.value());
  return choose_normalization(values, avoid, seed);
}

template <class R>
NormalizedPair<R> normalize_infinity(const MappedFunction<R>& p, const MappedFunction<R>& q,
                                     const CriticalOptions& copts, std::uint64_t seed) {
  auto cp = p.map_critical(critical_values<R>(p.base(), copts));
  auto cq = q.map_critical(critical_values<R>(q.base(), copts));
  auto merged = merge_branch_values(cp, p.degree(), cq, q.degree(), R(copts.cluster_tolerance));
  std::vector<Cx<R>> avoid;
  for (const auto& v : merged.values)
    if (!v.is_infinity()) avoid.push_back(v.value());
  for (const auto* f : {&p, &q}) {
    auto v = value_at_infinity(*f);
    if (!v.is_infinity()) avoid.push_back(v.value());
  }
  Mobius<R> mu = choose_normalization(merged.values, avoid, seed);
  return {mu, p.then(mu), q.then(mu)};
}

int BranchSummary::common_count() const {
  int c = 0;
  for (const auto& v : values)
    if (v.critical_p && v.critical_q) ++c;
  return c;
}

template <class R>
BranchSummary BranchData<R>::summary() const {
  BranchSummary s;
  s.n = n;
  s.m = m;
  s.p_polynomial = p_polynomial;
  s.q_polynomial = q_polynomial;
  for (std::size_t i = 0; i < values.size(); ++i)
    s.values.push_back({values[i].to_double_point(), cycle_p[i], cycle_q[i], critical_p[i], critical_q[i]});
  return s;
}

template <class R>
void validate_branch_data(const BranchData<R>& bd) {
  auto check = [&](const std::vector<Permutation>& perms, const std::vector<CycleType>& types, int k,
                   const char* name) {
    if (!product(perms, k).is_identity())
      throw ConsistencyFailure(std::string(name) + ": product of the monodromy tuple is not the identity");
    if (!is_transitive(perms, k))
      throw ConsistencyFailure(std::string(name) + ": monodromy group is not transitive");
    int rh = 0;
    for (std::size_t i = 0; i < perms.size(); ++i) {
      rh += k - perms[i].cycle_count();
      if (!(perms[i].cycle_type() == types[i]))
        throw ConsistencyFailure(std::string(name) + ": tracked cycle type " + perms[i].cycle_type().str() +
                                 " differs from the fiber cycle type " + types[i].str());
    }
    if (rh != 2 * k - 2) throw ConsistencyFailure(std::string(name) + ": Riemann-Hurwitz cycle sum is wrong");
  };
  check(bd.alphas, bd.cycle_p, bd.n, "P");
  check(bd.betas, bd.cycle_q, bd.m, "Q");
}

namespace {

template <class R>
BranchData<R> branch_impl(const MappedFunction<R>& p, const std::vector<CriticalDatum<R>>& crit_p,
                          const MappedFunction<R>* q, const std::vector<CriticalDatum<R>>* crit_q,
                          const MonodromyOptions& opts) {
  const int n = p.degree();
  const int m = q ? q->degree() : n;
  const R tol(opts.tolerance);
  MergedValues<R> merged = q ? merge_branch_values(crit_p, n, *crit_q, m, tol)
                             : merge_branch_values(crit_p, n, crit_p, n, tol);
  if (merged.values.empty()) throw EmptyCriticalSet();

  std::vector<Cx<R>> avoid;
  for (const auto& v : merged.values)
    if (!v.is_infinity()) avoid.push_back(v.value());
  std::vector<const MappedFunction<R>*> funcs{&p};
  if (q) funcs.push_back(q);
  for (const auto* f : funcs) {
    auto v = value_at_infinity(*f);
    if (!v.is_infinity()) avoid.push_back(v.value());
  }
  const Mobius<R> mu = choose_normalization(merged.values, avoid, opts.seed);

  std::vector<Cx<R>> w;
  for (const auto& v : merged.values) {
    auto img = mu.apply(v);
    if (img.is_infinity()) throw ConsistencyFailure("normalization sent a critical value to infinity");
    w.push_back(img.value());
  }
  std::vector<MappedFunction<R>> normalized;
  for (const auto* f : funcs) normalized.push_back(f->then(mu));

  // Regular values with a point of the fiber at infinity: the fiber
  // polynomial loses degree there, so paths keep clear of them.
  std::vector<Cx<R>> soft;
  for (const auto& f : normalized) {
    auto v = value_at_infinity(f);
    if (v.is_infinity()) continue;
    bool known = std::any_of(w.begin(), w.end(), [&](const Cx<R>& x) { return close_relative(x, v.value(), tol); });
    if (!known) soft.push_back(v.value());
  }
  std::vector<Cx<R>> obstacles = w;
  obstacles.insert(obstacles.end(), soft.begin(), soft.end());

  std::exception_ptr last;
  for (int attempt = 0; attempt < std::max(1, opts.attempts); ++attempt) {
    try {
      LoopSystem<R> sys = build_loops(w, soft, opts.seed, attempt);
      std::vector<TrackTarget<R>> targets;
      for (const auto& f : normalized) {
        TrackTarget<R> t{f.numerator(), f.denominator(), {}};
        t.fiber = compute_fiber(t.num, t.den, sys.basepoint);
        targets.push_back(std::move(t));
      }
      std::vector<PathSample> samples;
      std::vector<PathSample>* sp = opts.dump ? &samples : nullptr;
      auto perms = opts.parallel ? track_loops_parallel(targets, sys, obstacles, opts.track, sp)
                                 : track_loops_serial(targets, sys, obstacles, opts.track, sp);

      BranchData<R> bd;
      bd.n = n;
      bd.m = m;
      bd.mu = mu;
      bd.basepoint = sys.basepoint;
      bd.p_polynomial = p.is_polynomial();
      bd.q_polynomial = q ? q->is_polynomial() : bd.p_polynomial;
      for (std::size_t k = 0; k < sys.order.size(); ++k) {
        auto i = static_cast<std::size_t>(sys.order[k]);
        bd.values.push_back(merged.values[i]);
        bd.normalized.push_back(w[i]);
        bd.cycle_p.push_back(merged.cycle_p[i]);
        bd.cycle_q.push_back(merged.cycle_q[i]);
        bd.critical_p.push_back(merged.critical_p[i]);
        bd.critical_q.push_back(merged.critical_q[i]);
      }
      bd.alphas = perms[0];
      bd.betas = q ? perms[1] : perms[0];
      bd.fiber_p = targets[0].fiber;
      bd.fiber_q = q ? targets[1].fiber : targets[0].fiber;
      validate_branch_data(bd);
      if (opts.dump) *opts.dump = std::move(samples);
      return bd;
    } catch (const NumericError&) {
      last = std::current_exception();
    }
  }
  std::rethrow_exception(last);
}

}  // namespace

template <class R>
BranchData<R> branch_data(const MappedFunction<R>& p, const std::vector<CriticalDatum<R>>& crit_p,
                          const MappedFunction<R>& q, const std::vector<CriticalDatum<R>>& crit_q,
                          const MonodromyOptions& opts) {
  return branch_impl(p, crit_p, &q, &crit_q, opts);
}

template <class R>
BranchData<R> branch_data(const MappedFunction<R>& p, const MappedFunction<R>& q, const MonodromyOptions& opts) {
  CriticalOptions copts;
  copts.cluster_tolerance = opts.tolerance;
  auto cp = p.map_critical(critical_values<R>(p.base(), copts));
  auto cq = q.map_critical(critical_values<R>(q.base(), copts));
  return branch_impl(p, cp, &q, &cq, opts);
}

template <class R>
BranchData<R> branch_data_self(const MappedFunction<R>& p, const std::vector<CriticalDatum<R>>& crit_p,
                               const MonodromyOptions& opts) {
  return branch_impl<R>(p, crit_p, nullptr, nullptr, opts);
}

#define PQCURVE_INSTANTIATE_MONODROMY(R)                                                                        \
  template struct LoopPath<R>;                                                                                 \
  template LoopSystem<R> build_loops<R>(const std::vector<Cx<R>>&, const std::vector<Cx<R>>&, std::uint64_t,  \
                                        int);                                                                   \
  template std::vector<Cx<R>> compute_fiber<R>(const NumPoly<R>&, const NumPoly<R>&, const Cx<R>&);            \
  template Permutation track_loop<R>(const NumPoly<R>&, const NumPoly<R>&, const std::vector<Cx<R>>&,          \
                                     const LoopPath<R>&, const std::vector<Cx<R>>&, const TrackOptions&,       \
                                     std::vector<PathSample>*, int);                                           \
  template std::vector<std::vector<Permutation>> track_loops_serial<R>(                                        \
      const std::vector<TrackTarget<R>>&, const LoopSystem<R>&, const std::vector<Cx<R>>&, const TrackOptions&, \
      std::vector<PathSample>*);                                                                               \
  template std::vector<std::vector<Permutation>> track_loops_parallel<R>(                                      \
      const std::vector<TrackTarget<R>>&, const LoopSystem<R>&, const std::vector<Cx<R>>&, const TrackOptions&, \
      std::vector<PathSample>*);                                                                               \
  template MergedValues<R> merge_branch_values<R>(const std::vector<CriticalDatum<R>>&, int,                   \
                                                  const std::vector<CriticalDatum<R>>&, int, R);               \
  template Mobius<R> normalize_infinity<R>(const std::vector<SpherePoint<R>>&, std::uint64_t);                 \
  template NormalizedPair<R> normalize_infinity<R>(const MappedFunction<R>&, const MappedFunction<R>&,         \
                                                   const CriticalOptions&, std::uint64_t);                     \
  template struct BranchData<R>;                                                                               \
  template void validate_branch_data<R>(const BranchData<R>&);                                                 \
  template BranchData<R> branch_data<R>(const MappedFunction<R>&, const std::vector<CriticalDatum<R>>&,        \
                                        const MappedFunction<R>&, const std::vector<CriticalDatum<R>>&,        \
                                        const MonodromyOptions&);                                              \
  template BranchData<R> branch_data<R>(const MappedFunction<R>&, const MappedFunction<R>&,                    \
                                        const MonodromyOptions&);                                              \
  template BranchData<R> branch_data_self<R>(const MappedFunction<R>&, const std::vector<CriticalDatum<R>>&,   \
                                             const MonodromyOptions&);

PQCURVE_INSTANTIATE_MONODROMY(Real53)
PQCURVE_INSTANTIATE_MONODROMY(Real113)
PQCURVE_INSTANTIATE_MONODROMY(Real237)

}  // namespace pqcurve
