#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace tdsweep {

using Seconds = double;

inline constexpr Seconds kDefaultPeriod = 86400.0;

// Slack allowed on the FIFO slope bound (slope >= -1 - kFifoSlack).
inline constexpr double kFifoSlack = 1e-9;

struct TtfPoint {
  Seconds time;
  Seconds value;

  friend bool operator==(const TtfPoint&, const TtfPoint&) = default;
};

// Relative error bound in [0, 1).
class Epsilon {
 public:
  explicit Epsilon(double value);
  double value() const noexcept { return value_; }

 private:
  double value_;
};

enum class ApproxMode { two_sided, lower, upper };

enum class Dominance { strict, non_strict };

/// Periodic piecewise-linear travel-time function.
///
/// Breakpoints are strictly increasing in [0, period); the function
/// interpolates linearly between them and closes periodically from the last
/// breakpoint back to the first one shifted by one period. A constant
/// function is stored as the single point (0, value).
///
/// The constructor checks structure only (ordering, range, finiteness,
/// non-negativity); FIFO is checked separately by validate_fifo() so that
/// parsers can report it as a distinct error.
class Ttf {
 public:
  explicit Ttf(std::vector<TtfPoint> points, Seconds period = kDefaultPeriod);

  static Ttf constant(Seconds value, Seconds period = kDefaultPeriod);

  Seconds evaluate(Seconds departure) const noexcept;
  Seconds operator()(Seconds departure) const noexcept { return evaluate(departure); }

  std::span<const TtfPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  Seconds period() const noexcept { return period_; }
  Seconds min() const noexcept { return min_; }
  Seconds max() const noexcept { return max_; }
  bool is_constant() const noexcept { return points_.size() == 1; }

  // Bitwise comparison of breakpoints and period.
  friend bool operator==(const Ttf& a, const Ttf& b) noexcept {
    return a.period_ == b.period_ && a.points_ == b.points_;
  }

 private:
  struct Unchecked {};
  Ttf(Unchecked, std::vector<TtfPoint> points, Seconds period);
  void build_index();

  std::vector<TtfPoint> points_;
  Seconds period_;
  Seconds min_ = 0;
  Seconds max_ = 0;
  // buckets_[b] = index of the last breakpoint at or before the start of
  // bucket b, or -1 if the bucket starts before the first breakpoint.
  std::vector<std::int32_t> buckets_;

  friend Ttf make_canonical_ttf(std::vector<TtfPoint>, Seconds);
};

// Builds a TTF from sorted points after dropping near-duplicate times and
// breakpoints that are collinear with their neighbours.
Ttf make_canonical_ttf(std::vector<TtfPoint> points, Seconds period);

/// Travel time of traversing `first` and then `second`:
/// r(t) = second(t + first(t)) + first(t).
Ttf link(const Ttf& first, const Ttf& second);

/// Pointwise minimum. On exact ties the earlier argument is kept, so
/// merge_min(old, candidate) leaves `old` untouched wherever it is not
/// strictly beaten.
Ttf merge_min(const Ttf& f, const Ttf& g);

/// Pointwise minimum of several functions in one sweep. The output depends
/// only on the functions that attain the minimum somewhere, so adding an
/// input that lies strictly above the result does not change a single bit.
Ttf lower_envelope(std::span<const Ttf* const> functions);

/// Breakpoint-reducing approximation inside the relative corridor selected
/// by `mode`: two_sided [(1-e)f, (1+e)f], lower [(1-e)f, f], upper
/// [f, (1+e)f]. Output breakpoints are a subset of f's breakpoint times, so
/// the result never has more points than f. Falls back to f itself when no
/// FIFO-conforming approximation can be found greedily.
Ttf approximate(const Ttf& f, Epsilon eps, ApproxMode mode);

struct Extrema {
  Seconds min;
  Seconds max;
};

Extrema extrema(const Ttf& f) noexcept;

// Departure time at which `f > g + margin` (strict) or `f >= g + margin`
// (non-strict) fails, or nullopt if it holds everywhere.
std::optional<Seconds> dominance_counterexample(const Ttf& f, const Ttf& g,
                                                Dominance mode, Seconds margin = 0);

bool dominates(const Ttf& f, const Ttf& g, Dominance mode, Seconds margin = 0);

// True if `candidate` is below `current` by more than `tolerance` somewhere.
bool improves(const Ttf& candidate, const Ttf& current, Seconds tolerance);

bool validate_fifo(std::span<const TtfPoint> points, Seconds period) noexcept;
bool validate_fifo(const Ttf& f) noexcept;

// f + delta, clamped at zero.
Ttf shifted(const Ttf& f, Seconds delta);

}  // namespace tdsweep
