#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lacuna {

/// Half-open interval [lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi > lo ? hi - lo : 0.0; }
  bool empty() const { return !(hi > lo); }
  bool contains(double x) const { return lo <= x && x < hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

namespace detail {

inline std::vector<Interval> sort_and_merge(std::vector<Interval> in) {
  std::erase_if(in, [](const Interval& i) { return i.empty(); });
  std::sort(in.begin(), in.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  std::vector<Interval> out;
  for (const auto& i : in) {
    if (!out.empty() && i.lo <= out.back().hi)
      out.back().hi = std::max(out.back().hi, i.hi);
    else
      out.push_back(i);
  }
  return out;
}

}  // namespace detail

/// A measurable subset of the line stored as a finite union of disjoint
/// half-open intervals, optionally repeated with a period.
///
/// For periodic sets the stored intervals lie in the fundamental domain
/// [0, period) and the set is their union over all translates by the period.
class IntervalSet {
 public:
  IntervalSet() = default;

  static IntervalSet finite(std::vector<Interval> intervals) {
    for (const auto& i : intervals)
      if (!std::isfinite(i.lo) || !std::isfinite(i.hi))
        throw std::invalid_argument("IntervalSet: endpoints must be finite");
    IntervalSet s;
    s.intervals_ = detail::sort_and_merge(std::move(intervals));
    return s;
  }

  /// Reduces every interval modulo `period`, splitting those that wrap.
  static IntervalSet periodic(std::vector<Interval> intervals, double period = 1.0) {
    if (!(period > 0.0) || !std::isfinite(period))
      throw std::invalid_argument("IntervalSet: period must be positive");
    std::vector<Interval> reduced;
    for (auto i : intervals) {
      if (!std::isfinite(i.lo) || !std::isfinite(i.hi))
        throw std::invalid_argument("IntervalSet: endpoints must be finite");
      if (i.empty()) continue;
      if (i.length() >= period) {
        reduced = {{0.0, period}};
        break;
      }
      const double k = std::floor(i.lo / period);
      i.lo -= k * period;
      i.hi -= k * period;
      if (i.lo >= period) i.lo -= period, i.hi -= period;
      if (i.hi <= period) {
        reduced.push_back(i);
      } else {
        reduced.push_back({i.lo, period});
        reduced.push_back({0.0, i.hi - period});
      }
    }
    IntervalSet s;
    s.intervals_ = detail::sort_and_merge(std::move(reduced));
    for (auto& i : s.intervals_) i.hi = std::min(i.hi, period);
    s.period_ = period;
    return s;
  }

  /// Period-1 set with k equal holes of total measure eps: the holes are
  /// [j/k, j/k + eps/k) for j = 0..k-1.
  static IntervalSet holes(double eps, int k) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("holes: eps must lie in [0, 1]");
    if (k < 1) throw std::invalid_argument("holes: need at least one hole");
    std::vector<Interval> v;
    for (int j = 0; j < k; ++j) v.push_back({(j + eps) / k, (j + 1.0) / k});
    return periodic(std::move(v), 1.0);
  }

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  bool is_periodic() const noexcept { return period_.has_value(); }
  double period() const {
    if (!period_) throw std::logic_error("IntervalSet: set is not periodic");
    return *period_;
  }

  /// Measure inside the fundamental domain (periodic) or in total (finite).
  double base_measure() const {
    double m = 0.0;
    for (const auto& i : intervals_) m += i.length();
    return m;
  }

  bool contains(double x) const {
    if (period_) x -= std::floor(x / *period_) * *period_;
    const auto it = std::upper_bound(intervals_.begin(), intervals_.end(), x,
                                     [](double v, const Interval& i) { return v < i.lo; });
    return it != intervals_.begin() && std::prev(it)->contains(x);
  }

  /// |E ∩ [0, x)| for x >= 0 and -|E ∩ [x, 0)| for x < 0.
  double cumulative(double x) const {
    if (!period_) {
      double m = 0.0;
      for (const auto& i : intervals_) m += clipped(i, 0.0, x);
      return m;
    }
    const double p = *period_;
    const double k = std::floor(x / p);
    const double y = x - k * p;
    double partial = 0.0;
    for (const auto& i : intervals_) partial += std::max(0.0, std::min(i.hi, y) - i.lo);
    return k * base_measure() + partial;
  }

  /// Translate by s (reduced modulo the period for periodic sets).
  IntervalSet translated(double s) const {
    std::vector<Interval> v;
    for (const auto& i : intervals_) v.push_back({i.lo + s, i.hi + s});
    return period_ ? periodic(std::move(v), *period_) : finite(std::move(v));
  }

  /// The pieces of the set that meet [lo, hi), in increasing order.
  std::vector<Interval> pieces_in(Interval window) const {
    std::vector<Interval> out;
    if (window.empty()) return out;
    if (!period_) {
      for (const auto& i : intervals_) {
        Interval c{std::max(i.lo, window.lo), std::min(i.hi, window.hi)};
        if (!c.empty()) out.push_back(c);
      }
      return out;
    }
    const double p = *period_;
    for (double k = std::floor(window.lo / p); k * p < window.hi; k += 1.0) {
      for (const auto& i : intervals_) {
        Interval c{std::max(i.lo + k * p, window.lo), std::min(i.hi + k * p, window.hi)};
        if (!c.empty()) out.push_back(c);
      }
    }
    return out;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

 private:
  // Signed measure of [lo, hi) ∩ [from, to) with orientation of [from, to).
  static double clipped(const Interval& i, double from, double to) {
    if (to >= from) return std::max(0.0, std::min(i.hi, to) - std::max(i.lo, from));
    return -std::max(0.0, std::min(i.hi, from) - std::max(i.lo, to));
  }

  std::vector<Interval> intervals_;
  std::optional<double> period_;
};

/// Lebesgue measure of set ∩ window, in closed form.
inline double measure_on(const IntervalSet& set, Interval window) {
  if (window.empty()) return 0.0;
  return set.cumulative(window.hi) - set.cumulative(window.lo);
}

/// Relative complement: the fundamental-domain complement for periodic sets
/// (window ignored), otherwise window \ set.
inline IntervalSet complement_within(const IntervalSet& set, Interval window = {0.0, 1.0}) {
  if (set.is_periodic()) {
    const double p = set.period();
    std::vector<Interval> gaps;
    double cursor = 0.0;
    for (const auto& i : set.intervals()) {
      gaps.push_back({cursor, i.lo});
      cursor = i.hi;
    }
    gaps.push_back({cursor, p});
    return IntervalSet::periodic(std::move(gaps), p);
  }
  std::vector<Interval> gaps;
  double cursor = window.lo;
  for (const auto& i : set.intervals()) {
    if (i.hi <= window.lo || i.lo >= window.hi) continue;
    gaps.push_back({cursor, std::max(cursor, i.lo)});
    cursor = std::max(cursor, i.hi);
  }
  gaps.push_back({cursor, window.hi});
  return IntervalSet::finite(std::move(gaps));
}

inline IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
  auto v = a.intervals();
  v.insert(v.end(), b.intervals().begin(), b.intervals().end());
  if (a.is_periodic() != b.is_periodic())
    throw std::invalid_argument("unite: cannot mix periodic and finite sets");
  if (!a.is_periodic()) return IntervalSet::finite(std::move(v));
  if (a.period() != b.period()) throw std::invalid_argument("unite: periods differ");
  return IntervalSet::periodic(std::move(v), a.period());
}

/// Exact extremum over t of |set ∩ [t, t + len)|.
///
/// t -> |set ∩ [t, t + len)| is piecewise linear with breakpoints where t or
/// t + len crosses an endpoint, so the extremum is attained at one of them.
/// Periodic sets scan one period; finite sets need a scan window containing
/// every admissible [t, t + len).
inline double window_measure_extremum(const IntervalSet& set, double len, bool minimum,
                                      std::optional<Interval> scan = std::nullopt) {
  if (!(len > 0.0)) throw std::invalid_argument("window length must be positive");
  std::vector<double> candidates;
  double t_lo = 0.0, t_hi = 0.0;
  if (set.is_periodic()) {
    const double p = set.period();
    t_hi = p;
    candidates.push_back(0.0);
    for (const auto& i : set.intervals())
      for (double e : {i.lo, i.hi}) {
        for (double c : {e, e - len}) candidates.push_back(c - std::floor(c / p) * p);
      }
  } else {
    if (!scan) throw std::invalid_argument("finite sets need an explicit scan window");
    if (scan->length() < len) throw std::invalid_argument("scan window shorter than the window length");
    t_lo = scan->lo;
    t_hi = scan->hi - len;
    candidates.push_back(t_lo);
    candidates.push_back(t_hi);
    for (const auto& i : set.intervals())
      for (double e : {i.lo, i.hi})
        for (double c : {e, e - len})
          if (c >= t_lo && c <= t_hi) candidates.push_back(c);
  }
  double best = minimum ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  for (double t : candidates) {
    const double m = measure_on(set, {t, t + len});
    best = minimum ? std::min(best, m) : std::max(best, m);
  }
  return std::clamp(best, 0.0, len);
}

/// inf over intervals I of length a of |E ∩ I| / a.
inline double relative_density(const IntervalSet& set, double a, std::optional<Interval> scan = std::nullopt) {
  if (!(a > 0.0)) throw std::invalid_argument("relative_density: a must be positive");
  return window_measure_extremum(set, a, true, scan) / a;
}

/// sup over intervals I of length 1/b of |E^c ∩ I| / |I|.
inline double complement_sparsity(const IntervalSet& set, double b, std::optional<Interval> scan = std::nullopt) {
  if (!(b > 0.0)) throw std::invalid_argument("complement_sparsity: b must be positive");
  const double len = 1.0 / b;
  const IntervalSet comp = scan ? complement_within(set, *scan) : complement_within(set);
  return window_measure_extremum(comp, len, false, scan) / len;
}

/// ∫_{E ∩ [0,1)} e^{i 2π n x} dx, in closed form per interval.
///
/// Periodic sets must have period 1; finite sets are clipped to [0, 1).
inline std::complex<double> exponential_integral(const IntervalSet& set, std::int64_t n) {
  if (set.is_periodic() && set.period() != 1.0)
    throw std::invalid_argument("exponential_integral: periodic sets must have period 1");
  std::complex<double> acc{};
  const double nd = static_cast<double>(n);
  for (const auto& raw : set.intervals()) {
    const Interval i{std::max(raw.lo, 0.0), std::min(raw.hi, 1.0)};
    if (i.empty()) continue;
    if (n == 0) {
      acc += i.length();
      continue;
    }
    // e^{iπn(l+r)} sin(πn(r-l)) / (πn) avoids cancellation in the difference
    const double mid = 0.5 * (i.lo + i.hi);
    const double phase = 2.0 * std::numbers::pi * (nd * mid - std::round(nd * mid));
    const double half = std::numbers::pi * nd * i.length();
    acc += (std::sin(half) / (std::numbers::pi * nd)) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return acc;
}

}  // namespace lacuna
