#include "tdsweep/ttf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tdsweep {

namespace {

// Breakpoints closer than this are merged.
constexpr double kTimeTolerance = 1e-9;
// A breakpoint within this distance of the chord through its neighbours is
// redundant.
constexpr double kCollinearTolerance = 1e-9;

double interpolate(const TtfPoint& a, const TtfPoint& b, double t) noexcept {
  if (b.time == a.time) return a.value;
  return a.value + (b.value - a.value) * ((t - a.time) / (b.time - a.time));
}

void require_same_period(const Ttf& f, const Ttf& g) {
  if (f.period() != g.period()) {
    throw std::invalid_argument("TTF period mismatch: " + std::to_string(f.period()) +
                                " vs " + std::to_string(g.period()));
  }
}

double reduce(double t, double period) noexcept {
  double r = std::fmod(t, period);
  if (r < 0) r += period;
  if (r >= period) r = 0;
  return r;
}

// Removes points that lie on the chord between the surrounding kept points.
// Every removed point is checked against the final chord that replaces it.
std::vector<TtfPoint> drop_collinear(const std::vector<TtfPoint>& p, double period) {
  const std::size_t n = p.size();
  if (n <= 1) return p;
  auto at = [&](std::size_t i) -> TtfPoint {
    return i < n ? p[i] : TtfPoint{p[i - n].time + period, p[i - n].value};
  };
  auto run_fits = [&](std::size_t from, std::size_t to, const TtfPoint& a,
                      const TtfPoint& b) {
    for (std::size_t r = from; r < to; ++r) {
      const TtfPoint q = at(r);
      if (std::abs(q.value - interpolate(a, b, q.time)) > kCollinearTolerance) return false;
    }
    return true;
  };

  std::vector<std::size_t> kept{0};
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t a = kept.back();
    if (!run_fits(a + 1, i, at(a), at(i))) kept.push_back(i - 1);
  }

  // Point 0 was used as the anchor; check whether it is redundant as well.
  if (kept.size() >= 2) {
    const std::size_t last = kept.back();
    const std::size_t next = kept[1];
    const TtfPoint prev{at(last).time - period, at(last).value};
    const TtfPoint succ = at(next);
    bool redundant = std::abs(p[0].value - interpolate(prev, succ, p[0].time)) <=
                     kCollinearTolerance;
    if (redundant) {
      for (std::size_t r = last + 1; r < n && redundant; ++r) {
        redundant = std::abs(p[r].value - interpolate(prev, succ, p[r].time - period)) <=
                    kCollinearTolerance;
      }
      redundant = redundant && run_fits(1, next, prev, succ);
    }
    if (redundant) kept.erase(kept.begin());
  }

  std::vector<TtfPoint> out;
  out.reserve(kept.size());
  for (std::size_t k : kept) out.push_back(p[k]);
  return out;
}

}  // namespace

Epsilon::Epsilon(double value) : value_(value) {
  if (!(value >= 0.0 && value < 1.0)) {
    throw std::invalid_argument("epsilon must lie in [0, 1), got " + std::to_string(value));
  }
}

Ttf::Ttf(std::vector<TtfPoint> points, Seconds period)
    : points_(std::move(points)), period_(period) {
  if (!(period_ > 0) || !std::isfinite(period_)) {
    throw std::invalid_argument("TTF period must be positive and finite");
  }
  if (points_.empty()) throw std::invalid_argument("TTF needs at least one point");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& q = points_[i];
    if (!std::isfinite(q.time) || q.time < 0 || q.time >= period_) {
      throw std::invalid_argument("TTF breakpoint time outside [0, period)");
    }
    if (!std::isfinite(q.value) || q.value < 0) {
      throw std::invalid_argument("TTF value must be finite and non-negative");
    }
    if (i > 0 && !(q.time > points_[i - 1].time)) {
      throw std::invalid_argument("TTF breakpoint times must be strictly increasing");
    }
  }
  if (points_.size() == 1) points_[0].time = 0;
  build_index();
}

Ttf::Ttf(Unchecked, std::vector<TtfPoint> points, Seconds period)
    : points_(std::move(points)), period_(period) {
  if (points_.size() == 1) points_[0].time = 0;
  build_index();
}

Ttf Ttf::constant(Seconds value, Seconds period) { return Ttf({{0.0, value}}, period); }

void Ttf::build_index() {
  min_ = std::numeric_limits<double>::infinity();
  max_ = -min_;
  for (const auto& q : points_) {
    min_ = std::min(min_, q.value);
    max_ = std::max(max_, q.value);
  }
  buckets_.clear();
  const std::size_t n = points_.size();
  if (n <= 1) return;
  buckets_.resize(n);
  std::int32_t i = -1;
  for (std::size_t b = 0; b < n; ++b) {
    const double start = period_ * static_cast<double>(b) / static_cast<double>(n);
    while (i + 1 < static_cast<std::int32_t>(n) && points_[i + 1].time <= start) ++i;
    buckets_[b] = i;
  }
}

Seconds Ttf::evaluate(Seconds departure) const noexcept {
  const std::size_t n = points_.size();
  if (n == 1) return points_[0].value;
  const double t = reduce(departure, period_);
  auto b = static_cast<std::size_t>(t * static_cast<double>(n) / period_);
  if (b >= n) b = n - 1;
  std::int32_t i = buckets_[b];
  const auto last = static_cast<std::int32_t>(n) - 1;
  while (i >= 0 && points_[i].time > t) --i;
  while (i < last && points_[i + 1].time <= t) ++i;
  if (i < 0) {
    const TtfPoint prev{points_[last].time - period_, points_[last].value};
    return interpolate(prev, points_[0], t);
  }
  if (i == last) {
    const TtfPoint next{points_[0].time + period_, points_[0].value};
    return interpolate(points_[last], next, t);
  }
  return interpolate(points_[i], points_[i + 1], t);
}

Ttf make_canonical_ttf(std::vector<TtfPoint> points, Seconds period) {
  if (points.empty()) throw std::invalid_argument("TTF needs at least one point");
  for (auto& q : points) {
    if (q.time >= period || q.time < 0) q.time = reduce(q.time, period);
    if (q.value < 0) q.value = 0;
  }
  if (!std::is_sorted(points.begin(), points.end(),
                      [](const TtfPoint& a, const TtfPoint& b) { return a.time < b.time; })) {
    std::stable_sort(points.begin(), points.end(),
                     [](const TtfPoint& a, const TtfPoint& b) { return a.time < b.time; });
  }
  std::vector<TtfPoint> dedup;
  dedup.reserve(points.size());
  for (const auto& q : points) {
    if (!dedup.empty() && q.time - dedup.back().time <= kTimeTolerance) {
      dedup.back() = q;
    } else {
      dedup.push_back(q);
    }
  }
  if (dedup.size() > 1 &&
      dedup.front().time + period - dedup.back().time <= kTimeTolerance) {
    dedup.pop_back();
  }
  return Ttf(Ttf::Unchecked{}, drop_collinear(dedup, period), period);
}

Ttf link(const Ttf& first, const Ttf& second) {
  require_same_period(first, second);
  const double period = first.period();
  const auto f = first.points();
  const auto g = second.points();
  const std::size_t nf = f.size();
  const std::size_t ng = g.size();

  auto f_at = [&](std::size_t i) -> TtfPoint {
    return i < nf ? f[i] : TtfPoint{f[i - nf].time + period, f[i - nf].value};
  };

  // Cursor over the breakpoints of `second`, unrolled over successive periods.
  const bool g_has_breaks = ng > 1;
  std::size_t gj = 0;
  double g_shift = 0;
  auto g_break = [&] { return g[gj].time + g_shift; };
  auto g_advance = [&] {
    if (++gj == ng) {
      gj = 0;
      g_shift += period;
    }
  };
  if (g_has_breaks) {
    const double arrival0 = f[0].time + f[0].value;
    g_shift = std::floor(arrival0 / period) * period;
    auto it = std::upper_bound(g.begin(), g.end(), arrival0 - g_shift,
                               [](double t, const TtfPoint& q) { return t < q.time; });
    gj = static_cast<std::size_t>(it - g.begin());
    if (gj == ng) {
      gj = 0;
      g_shift += period;
    }
  }

  std::vector<TtfPoint> out;
  out.reserve(nf + ng + 2);
  for (std::size_t i = 0; i < nf; ++i) {
    const TtfPoint a = f_at(i);
    const TtfPoint c = f_at(i + 1);
    const double arr_a = a.time + a.value;
    const double arr_c = c.time + c.value;
    out.push_back({a.time, second.evaluate(arr_a) + a.value});
    if (!g_has_breaks) continue;
    while (g_break() <= arr_a) g_advance();
    while (g_break() < arr_c) {
      const double w = (g_break() - arr_a) / (arr_c - arr_a);
      const double tau = a.time + w * (c.time - a.time);
      const double first_value = a.value + w * (c.value - a.value);
      out.push_back({tau, g[gj].value + first_value});
      g_advance();
    }
  }

  // Departure times run over [f[0].time, f[0].time + period); fold back.
  auto wrap_at = std::find_if(out.begin(), out.end(),
                              [&](const TtfPoint& q) { return q.time >= period; });
  for (auto it = wrap_at; it != out.end(); ++it) it->time -= period;
  std::rotate(out.begin(), wrap_at, out.end());
  return make_canonical_ttf(std::move(out), period);
}

namespace {

// One input of the envelope sweep, unrolled over [0, period] with synthetic
// end points at 0 and period where the function has no breakpoint there.
struct Track {
  std::vector<TtfPoint> pts;
  std::size_t seg = 0;

  const TtfPoint& a() const { return pts[seg]; }
  const TtfPoint& b() const { return pts[seg + 1]; }
  double line(double t) const { return interpolate(a(), b(), t); }
  double slope() const { return (b().value - a().value) / (b().time - a().time); }
  double value_at(double t) const { return a().time == t ? a().value : line(t); }
};

Track make_track(const Ttf& f) {
  Track tr;
  const auto p = f.points();
  tr.pts.reserve(p.size() + 2);
  const double at_zero = f.evaluate(0);
  if (p.front().time > 0) tr.pts.push_back({0, at_zero});
  tr.pts.insert(tr.pts.end(), p.begin(), p.end());
  tr.pts.push_back({f.period(), at_zero});
  return tr;
}

// Time at which `j` drops below `w`, computed from the two current segments
// only (never from the sweep position), or nullopt if it does not within
// their common span.
std::optional<double> crossing_below(const Track& w, const Track& j) {
  const double ts = std::max(w.a().time, j.a().time);
  const double te = std::min(w.b().time, j.b().time);
  const double d0 = j.line(ts) - w.line(ts);
  const double d1 = j.line(te) - w.line(te);
  if (!(d1 < 0) || !(d1 < d0)) return std::nullopt;
  if (d0 <= 0) return ts;
  return ts + (te - ts) * (d0 / (d0 - d1));
}

}  // namespace

Ttf lower_envelope(std::span<const Ttf* const> functions) {
  if (functions.empty()) throw std::invalid_argument("lower_envelope needs an input");
  if (functions.size() == 1) return *functions[0];
  const double period = functions[0]->period();
  for (const Ttf* f : functions) require_same_period(*functions[0], *f);

  std::vector<Track> tracks;
  tracks.reserve(functions.size());
  for (const Ttf* f : functions) tracks.push_back(make_track(*f));
  const std::size_t k = tracks.size();

  std::vector<TtfPoint> out;
  std::size_t total = 0;
  for (const Ttf* f : functions) total += f->size();
  out.reserve(2 * total + 2);

  // Picks the minimum at `t`; ties go to the smaller outgoing slope, then to
  // `prefer`, then to the lower index.
  std::vector<double> values(k);
  auto pick = [&](double t, std::size_t prefer) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < k; ++i) {
      values[i] = tracks[i].value_at(t);
      if (i == 0) continue;
      if (values[i] < values[best]) {
        best = i;
      } else if (values[i] == values[best]) {
        const double si = tracks[i].slope();
        const double sb = tracks[best].slope();
        if (si < sb || (si == sb && i == prefer && best != prefer)) best = i;
      }
    }
    return best;
  };

  std::size_t w = pick(0.0, 0);
  out.push_back({0.0, values[w]});
  double cur = 0;
  for (;;) {
    double next = period;
    for (const auto& tr : tracks) next = std::min(next, tr.b().time);

    // Winner changes strictly inside [cur, next].
    for (;;) {
      std::size_t best = k;
      double best_x = 0;
      double best_slope = 0;
      for (std::size_t j = 0; j < k; ++j) {
        if (j == w) continue;
        auto x = crossing_below(tracks[w], tracks[j]);
        if (!x || *x > next) continue;
        const double xc = std::max(*x, cur);
        const double sj = tracks[j].slope();
        if (best == k || xc < best_x || (xc == best_x && sj < best_slope)) {
          best = j;
          best_x = xc;
          best_slope = sj;
        }
      }
      if (best == k) break;
      out.push_back({best_x, tracks[w].line(best_x)});
      w = best;
      cur = best_x;
    }

    if (next >= period) break;
    bool winner_bends = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (tracks[i].b().time == next) {
        ++tracks[i].seg;
        if (i == w) winner_bends = true;
      }
    }
    cur = next;
    if (winner_bends) {
      w = pick(next, w);
      out.push_back({next, values[w]});
    }
  }
  return make_canonical_ttf(std::move(out), period);
}

Ttf merge_min(const Ttf& f, const Ttf& g) {
  require_same_period(f, g);
  const Ttf* both[] = {&f, &g};
  return lower_envelope(both);
}

Ttf approximate(const Ttf& f, Epsilon eps, ApproxMode mode) {
  const double e = eps.value();
  if (f.size() == 1 || e == 0) return f;
  const auto p = f.points();
  const std::size_t n = p.size();
  const double period = f.period();

  struct Corridor {
    double time, lo, hi;
  };
  auto corridor = [&](std::size_t i) -> Corridor {
    if (i == n) return {p[0].time + period, p[0].value, p[0].value};
    const double v = p[i].value;
    switch (mode) {
      case ApproxMode::lower: return {p[i].time, (1 - e) * v, v};
      case ApproxMode::upper: return {p[i].time, v, (1 + e) * v};
      case ApproxMode::two_sided: break;
    }
    return {p[i].time, (1 - e) * v, (1 + e) * v};
  };

  // Greedy slope-cone walk from a start value v0 at p[0].time, closing the
  // period at the same value: extend the current segment while some slope
  // >= -1 keeps it inside the corridor at every breakpoint passed.
  auto walk = [&](double v0) -> std::optional<std::vector<TtfPoint>> {
    auto at = [&](std::size_t i) {
      Corridor c = corridor(i);
      if (i == n) c.lo = c.hi = v0;
      return c;
    };
    std::vector<TtfPoint> out{{p[0].time, v0}};
    std::size_t anchor = 0;
    TtfPoint a = out.front();
    double smin = -1.0;
    double smax = std::numeric_limits<double>::infinity();
    std::size_t i = 1;
    while (i <= n) {
      const Corridor c = at(i);
      const double dt = c.time - a.time;
      const double lo = std::max(smin, (c.lo - a.value) / dt);
      const double hi = std::min(smax, (c.hi - a.value) / dt);
      if (lo <= hi) {
        smin = lo;
        smax = hi;
        ++i;
        continue;
      }
      if (i == anchor + 1) return std::nullopt;
      const Corridor prev = at(i - 1);
      const double s = 0.5 * (smin + smax);
      const double v = std::clamp(a.value + s * (prev.time - a.time), prev.lo, prev.hi);
      a = {prev.time, v};
      out.push_back(a);
      anchor = i - 1;
      smin = -1.0;
      smax = std::numeric_limits<double>::infinity();
    }
    if (out.size() > 1 && !validate_fifo(out, period)) return std::nullopt;
    return out;
  };

  const Corridor first = corridor(0);
  std::optional<std::vector<TtfPoint>> best;
  for (double v0 : {p[0].value, first.lo, first.hi, 0.5 * (first.lo + first.hi)}) {
    auto out = walk(v0);
    if (out && (!best || out->size() < best->size())) best = std::move(out);
  }
  if (!best || best->size() >= n) return f;
  if (best->size() == 1) return Ttf::constant(best->front().value, period);
  return Ttf(std::move(*best), period);
}

Extrema extrema(const Ttf& f) noexcept { return {f.min(), f.max()}; }

namespace {

// Calls `visit(t)` for every breakpoint time of f and g in increasing order;
// stops early when visit returns false.
template <class Visit>
void for_each_joint_breakpoint(const Ttf& f, const Ttf& g, Visit&& visit) {
  const auto a = f.points();
  const auto b = g.points();
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    double t;
    if (j == b.size() || (i < a.size() && a[i].time < b[j].time)) {
      t = a[i++].time;
    } else if (i == a.size() || b[j].time < a[i].time) {
      t = b[j++].time;
    } else {
      t = a[i].time;
      ++i;
      ++j;
    }
    if (!visit(t)) return;
  }
}

}  // namespace

std::optional<Seconds> dominance_counterexample(const Ttf& f, const Ttf& g,
                                                Dominance mode, Seconds margin) {
  require_same_period(f, g);
  std::optional<Seconds> witness;
  const bool strict = mode == Dominance::strict;
  for_each_joint_breakpoint(f, g, [&](double t) {
    const double fv = f.evaluate(t);
    const double gv = g.evaluate(t) + margin;
    if (strict ? !(fv > gv) : !(fv >= gv)) {
      witness = t;
      return false;
    }
    return true;
  });
  return witness;
}

bool dominates(const Ttf& f, const Ttf& g, Dominance mode, Seconds margin) {
  return !dominance_counterexample(f, g, mode, margin).has_value();
}

bool improves(const Ttf& candidate, const Ttf& current, Seconds tolerance) {
  require_same_period(candidate, current);
  if (candidate.min() >= current.max() - tolerance) return false;
  bool better = false;
  for_each_joint_breakpoint(candidate, current, [&](double t) {
    better = candidate.evaluate(t) < current.evaluate(t) - tolerance;
    return !better;
  });
  return better;
}

bool validate_fifo(std::span<const TtfPoint> points, Seconds period) noexcept {
  const std::size_t n = points.size();
  if (n <= 1) return true;
  for (std::size_t i = 0; i < n; ++i) {
    const TtfPoint& a = points[i];
    const TtfPoint b = i + 1 < n ? points[i + 1]
                                 : TtfPoint{points[0].time + period, points[0].value};
    const double dt = b.time - a.time;
    if (b.value - a.value < -(1.0 + kFifoSlack) * dt) return false;
  }
  return true;
}

bool validate_fifo(const Ttf& f) noexcept { return validate_fifo(f.points(), f.period()); }

Ttf shifted(const Ttf& f, Seconds delta) {
  std::vector<TtfPoint> pts(f.points().begin(), f.points().end());
  for (auto& q : pts) q.value = std::max(0.0, q.value + delta);
  return Ttf(std::move(pts), f.period());
}

}  // namespace tdsweep
