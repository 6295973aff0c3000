#include "flimit/interval_set.hpp"

#include <algorithm>

namespace flimit {

IntervalSet::IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

void IntervalSet::normalize() {
  std::erase_if(parts_, [](const Interval& iv) { return iv.empty(); });
  std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> merged;
  for (const Interval& iv : parts_) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      // overlap, or touching with at least one closed end
      bool joins = iv.lo < last.hi || (iv.lo == last.hi && (last.hi_closed || iv.lo_closed));
      if (joins) {
        if (iv.hi > last.hi) {
          last.hi = iv.hi;
          last.hi_closed = iv.hi_closed;
        } else if (iv.hi == last.hi) {
          last.hi_closed = last.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    merged.push_back(iv);
  }
  parts_ = std::move(merged);
}

bool IntervalSet::contains(const Rational& q) const {
  for (const Interval& iv : parts_)
    if (iv.contains(q)) return true;
  return false;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return IntervalSet(std::move(all));
}

namespace {

// Intersection of two single intervals; may be empty.
Interval meet(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo > b.lo) {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    r.lo = b.lo;
    r.lo_closed = b.lo_closed;
  } else {
    r.lo = a.lo;
    r.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    r.hi = b.hi;
    r.hi_closed = b.hi_closed;
  } else {
    r.hi = a.hi;
    r.hi_closed = a.hi_closed && b.hi_closed;
  }
  return r;
}

}  // namespace

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  std::vector<Interval> out;
  for (const Interval& a : parts_)
    for (const Interval& b : other.parts_) {
      Interval m = meet(a, b);
      if (!m.empty()) out.push_back(m);
    }
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::complement() const {
  std::vector<Interval> out;
  Rational cur(0);
  bool cur_closed = true;
  for (const Interval& iv : parts_) {
    Interval gap{cur, iv.lo, cur_closed, !iv.lo_closed};
    if (!gap.empty()) out.push_back(gap);
    cur = iv.hi;
    cur_closed = !iv.hi_closed;
  }
  Interval tail{cur, Rational(1), cur_closed, true};
  if (!tail.empty()) out.push_back(tail);
  return IntervalSet(std::move(out));
}

IntervalSet IntervalSet::closure() const {
  std::vector<Interval> out;
  out.reserve(parts_.size());
  for (const Interval& iv : parts_) out.push_back(closed_iv(iv.lo, iv.hi));
  return IntervalSet(std::move(out));
}

std::string IntervalSet::str() const {
  if (parts_.empty()) return "empty";
  std::string s;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += " ";
    const Interval& iv = parts_[i];
    s += iv.lo_closed ? '[' : '(';
    s += iv.lo.str() + "," + iv.hi.str();
    s += iv.hi_closed ? ']' : ')';
  }
  return s;
}

}  // namespace flimit
