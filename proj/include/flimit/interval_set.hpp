#pragma once

#include <string>
#include <vector>

#include "flimit/dyadic.hpp"

namespace flimit {

/// One interval inside [0,1] with independently open/closed ends.
struct Interval {
  Rational lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Rational& q) const {
    if (q < lo || q > hi) return false;
    if (q == lo && !lo_closed) return false;
    if (q == hi && !hi_closed) return false;
    return true;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline Interval open_iv(const Rational& a, const Rational& b) { return {a, b, false, false}; }
inline Interval closed_iv(const Rational& a, const Rational& b) { return {a, b, true, true}; }

/// Finite union of pairwise disjoint, non-adjacent intervals in [0,1],
/// kept sorted by lower endpoint.
class IntervalSet {
public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> parts);

  static IntervalSet empty_set() { return IntervalSet(); }
  static IntervalSet of(const Interval& iv) { return IntervalSet({iv}); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool contains(const Rational& q) const;

  IntervalSet unite(const IntervalSet& other) const;
  IntervalSet intersect(const IntervalSet& other) const;
  /// [0,1] minus this set.
  IntervalSet complement() const;
  bool subset_of(const IntervalSet& other) const { return intersect(other.complement()).empty(); }
  bool intersects(const IntervalSet& other) const { return !intersect(other).empty(); }

  /// Closure of every component (may merge touching components).
  IntervalSet closure() const;

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

  std::string str() const;

private:
  void normalize();
  std::vector<Interval> parts_;
};

}  // namespace flimit
