#include "flimit/plhomeo.hpp"

#include <algorithm>

#include "flimit/error.hpp"

namespace flimit {

namespace {

// Exponent k with (p2 - p1).second / (p2 - p1).first == 2^k, if any.
std::optional<long> slope_exp(const PLHomeo::Point& p1, const PLHomeo::Point& p2) {
  Dyadic dx = p2.first - p1.first;
  Dyadic dy = p2.second - p1.second;
  if (dx.num() <= 0 || dy.num() <= 0) return std::nullopt;
  // dy/dx = (ny/nx) * 2^(ex-ey); power of two iff odd parts coincide.
  unsigned long sy = mpz_scan1(dy.num().get_mpz_t(), 0);
  unsigned long sx = mpz_scan1(dx.num().get_mpz_t(), 0);
  Int oy, ox;
  mpz_fdiv_q_2exp(oy.get_mpz_t(), dy.num().get_mpz_t(), sy);
  mpz_fdiv_q_2exp(ox.get_mpz_t(), dx.num().get_mpz_t(), sx);
  if (oy != ox) return std::nullopt;
  return static_cast<long>(dx.exp()) - static_cast<long>(dy.exp()) + static_cast<long>(sy) -
         static_cast<long>(sx);
}

long slope_exp_checked(const PLHomeo::Point& p1, const PLHomeo::Point& p2) {
  auto k = slope_exp(p1, p2);
  if (!k)
    fail(Errc::BadSlope, "segment (" + p1.first.str() + "," + p1.second.str() + ")-(" +
                             p2.first.str() + "," + p2.second.str() +
                             ") has slope that is not a power of two");
  return *k;
}

}  // namespace

PLHomeo::PLHomeo() : pts_{{Dyadic(0), Dyadic(0)}, {Dyadic(1), Dyadic(1)}} {}

void PLHomeo::canonicalize() {
  std::vector<Point> out;
  out.reserve(pts_.size());
  for (const Point& p : pts_) {
    while (out.size() >= 2 &&
           slope_exp(out[out.size() - 2], out.back()) == slope_exp(out.back(), p))
      out.pop_back();
    out.push_back(p);
  }
  pts_ = std::move(out);
}

PLHomeo PLHomeo::from_breakpoints(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(),
            [](const Point& a, const Point& b) { return a.first < b.first; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2 || pts.front() != Point{Dyadic(0), Dyadic(0)} ||
      pts.back() != Point{Dyadic(1), Dyadic(1)})
    fail(Errc::NotMonotone, "breakpoint list must run from (0,0) to (1,1)");
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    if (!(pts[i].first < pts[i + 1].first && pts[i].second < pts[i + 1].second))
      fail(Errc::NotMonotone, "coordinates must be strictly increasing");
    slope_exp_checked(pts[i], pts[i + 1]);
  }
  return PLHomeo(std::move(pts), raw_tag{});
}

size_t PLHomeo::segment_index(const Rational& x) const {
  // Largest i with pts_[i].x <= x, capped so that [i, i+1] is a segment.
  size_t lo = 0, hi = pts_.size() - 1;
  while (lo + 1 < hi) {
    size_t mid = (lo + hi) / 2;
    if (pts_[mid].first.to_rational() <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

Rational PLHomeo::operator()(const Rational& x) const {
  if (x < Rational(0) || x > Rational(1)) fail(Errc::OutOfRange, "point " + x.str());
  size_t i = segment_index(x);
  long k = slope_exp_checked(pts_[i], pts_[i + 1]);
  Rational dx = x - pts_[i].first.to_rational();
  return pts_[i].second.to_rational() + dx.times_pow2(k);
}

Dyadic PLHomeo::operator()(const Dyadic& x) const {
  Rational y = (*this)(x.to_rational());
  auto d = to_dyadic(y);
  // slopes are powers of two and breakpoints dyadic, so images of dyadics are dyadic
  if (!d) fail(Errc::BadInput, "non-dyadic image of dyadic point");
  return *d;
}

long PLHomeo::right_slope_exp(const Rational& x) const {
  if (x >= Rational(1)) fail(Errc::OutOfRange, "no segment right of " + x.str());
  size_t i = segment_index(x);
  return slope_exp_checked(pts_[i], pts_[i + 1]);
}

PLHomeo PLHomeo::inverse() const {
  std::vector<Point> pts;
  pts.reserve(pts_.size());
  for (const Point& p : pts_) pts.emplace_back(p.second, p.first);
  return PLHomeo(std::move(pts), raw_tag{});
}

PLHomeo operator*(const PLHomeo& f, const PLHomeo& g) {
  // Breakpoints of f*g lie among g's breakpoints and g-preimages of f's.
  PLHomeo ginv = g.inverse();
  std::vector<Dyadic> xs;
  xs.reserve(f.pts_.size() + g.pts_.size());
  for (const PLHomeo::Point& p : g.pts_) xs.push_back(p.first);
  for (const PLHomeo::Point& p : f.pts_) xs.push_back(ginv(p.first));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<PLHomeo::Point> pts;
  pts.reserve(xs.size());
  for (const Dyadic& x : xs) pts.emplace_back(x, f(g(x)));
  return PLHomeo(std::move(pts), PLHomeo::raw_tag{});
}

std::strong_ordering PLHomeo::operator<=>(const PLHomeo& other) const {
  size_t n = std::min(pts_.size(), other.pts_.size());
  for (size_t i = 0; i < n; ++i) {
    if (auto c = pts_[i].first <=> other.pts_[i].first; c != 0) return c;
    if (auto c = pts_[i].second <=> other.pts_[i].second; c != 0) return c;
  }
  return pts_.size() <=> other.pts_.size();
}

std::string PLHomeo::str() const {
  std::string s;
  for (const Point& p : pts_) {
    if (!s.empty()) s += " ";
    s += "(" + p.first.str() + "," + p.second.str() + ")";
  }
  return s;
}

PLHomeo pow(const PLHomeo& f, long k) {
  PLHomeo base = k < 0 ? f.inverse() : f;
  unsigned long e = k < 0 ? static_cast<unsigned long>(-(k + 1)) + 1 : static_cast<unsigned long>(k);
  PLHomeo acc;
  PLHomeo sq = base;
  while (e > 0) {
    if (e & 1) acc = acc * sq;
    e >>= 1;
    if (e) sq = sq * sq;
  }
  return acc;
}

PLHomeo generator_x(unsigned n) {
  // Four pieces: identity up to (2^n-1)/2^n, slopes 1/2, 1, 2 after it.
  Dyadic a(Int((Int(1) << n) - 1), n);
  Dyadic b(Int((Int(1) << (n + 1)) - 1), n + 1);
  Dyadic c(Int((Int(1) << (n + 2)) - 1), n + 2);
  Dyadic b_img = b.times_pow2(-1) + a.times_pow2(-1);
  Dyadic c_img = c - Dyadic(Int(1), n + 2);
  std::vector<PLHomeo::Point> pts{{Dyadic(0), Dyadic(0)},
                                  {a, a},
                                  {b, b_img},
                                  {c, c_img},
                                  {Dyadic(1), Dyadic(1)}};
  return PLHomeo::from_breakpoints(std::move(pts));
}

PLHomeo iota(const Dyadic& a, const Dyadic& b, const PLHomeo& f) {
  if (!(Dyadic(0) <= a && a < b && b <= Dyadic(1)))
    fail(Errc::BadInterval, "[" + a.str() + "," + b.str() + "]");
  Dyadic w = b - a;
  std::vector<PLHomeo::Point> pts;
  pts.emplace_back(Dyadic(0), Dyadic(0));
  for (const PLHomeo::Point& p : f.breakpoints())
    pts.emplace_back(a + w * p.first, a + w * p.second);
  pts.emplace_back(Dyadic(1), Dyadic(1));
  std::sort(pts.begin(), pts.end(), [](const auto& u, const auto& v) { return u.first < v.first; });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return PLHomeo::from_breakpoints(std::move(pts));
}

IntervalSet support(const PLHomeo& f) {
  // Fixed set = union of on-diagonal segments and isolated diagonal
  // crossings; the support is its complement in [0,1].
  std::vector<Interval> fixed;
  const auto& pts = f.breakpoints();
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    Rational x0 = pts[i].first.to_rational();
    Rational x1 = pts[i + 1].first.to_rational();
    Rational y0 = pts[i].second.to_rational();
    long k = f.right_slope_exp(x0);
    if (k == 0) {
      if (y0 == x0) fixed.push_back(closed_iv(x0, x1));
    } else {
      // solve y0 + 2^k (t - x0) = t
      Rational t = (y0 - x0.times_pow2(k)) / (Rational(1) - Rational(1).times_pow2(k));
      if (x0 <= t && t <= x1) fixed.push_back(closed_iv(t, t));
    }
  }
  return IntervalSet(std::move(fixed)).complement();
}

IntervalSet support_closure(const PLHomeo& f) { return support(f).closure(); }

std::vector<Dyadic> dividing_points(const PLHomeo& f) {
  std::vector<Dyadic> out{Dyadic(0), Dyadic(1)};
  IntervalSet supp = support(f);
  for (const Interval& iv : supp.parts()) {
    if (auto d = to_dyadic(iv.lo)) out.push_back(*d);
    if (auto d = to_dyadic(iv.hi)) out.push_back(*d);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<PLHomeo> defragmentation(const PLHomeo& f) {
  std::vector<Dyadic> cuts = dividing_points(f);
  std::vector<PLHomeo> out;
  for (size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Dyadic& lo = cuts[i];
    const Dyadic& hi = cuts[i + 1];
    // dividing points are fixed, so f maps [lo,hi] onto itself
    std::vector<PLHomeo::Point> pts;
    pts.emplace_back(Dyadic(0), Dyadic(0));
    if (lo > Dyadic(0)) pts.emplace_back(lo, lo);
    for (const PLHomeo::Point& p : f.breakpoints())
      if (lo < p.first && p.first < hi) pts.push_back(p);
    if (hi < Dyadic(1)) pts.emplace_back(hi, hi);
    pts.emplace_back(Dyadic(1), Dyadic(1));
    PLHomeo frag = PLHomeo::from_breakpoints(std::move(pts));
    if (!frag.is_identity()) out.push_back(frag);
  }
  return out;
}

PLHomeo partition_map(const std::vector<Dyadic>& s, const std::vector<Dyadic>& t) {
  auto check = [](const std::vector<Dyadic>& v) {
    if (v.size() < 2 || v.front() != Dyadic(0) || v.back() != Dyadic(1))
      fail(Errc::BadPartition, "partition must run from 0 to 1");
    for (size_t i = 0; i + 1 < v.size(); ++i)
      if (!(v[i] < v[i + 1])) fail(Errc::BadPartition, "partition is not strictly increasing");
  };
  check(s);
  check(t);
  if (s.size() != t.size()) fail(Errc::BadPartition, "partitions differ in length");

  std::vector<PLHomeo::Point> pts;
  pts.emplace_back(Dyadic(0), Dyadic(0));
  for (size_t i = 1; i < s.size(); ++i) {
    Dyadic ds = s[i] - s[i - 1];
    Dyadic dt = t[i] - t[i - 1];
    auto ratio_exp = slope_exp({s[i - 1], t[i - 1]}, {s[i], t[i]});
    if (!ratio_exp) {
      // Two segments with slopes 2^(v+1) then 2^v, v = floor(log2(dt/ds));
      // the elbow dt/2^v - ds is dyadic and interior to the cell.
      long v = 0;
      while (ds.times_pow2(v + 1) <= dt) ++v;
      while (ds.times_pow2(v) > dt) --v;
      Dyadic m = dt.times_pow2(-v) - ds;
      pts.emplace_back(s[i - 1] + m, t[i - 1] + m.times_pow2(v + 1));
    }
    pts.emplace_back(s[i], t[i]);
  }
  return PLHomeo::from_breakpoints(std::move(pts));
}

std::optional<long> is_power(const PLHomeo& f, const PLHomeo& h) {
  if (h.is_identity()) fail(Errc::IdentityInput, "power base must be nontrivial");
  if (f.is_identity()) return 0;
  // At the left endpoint p of h's first support component the right slope
  // of h is 2^m with m != 0, forcing the unique exponent candidate.
  IntervalSet supp_h = support(h);
  Rational p = supp_h.parts().front().lo;
  long m = h.right_slope_exp(p);
  if (f(p) != p) return std::nullopt;
  long j = f.right_slope_exp(p);
  if (m == 0 || j % m != 0) return std::nullopt;
  long k = j / m;
  if (k == 0) return std::nullopt;  // f nontrivial but flat at p
  if (pow(h, k) == f) return k;
  return std::nullopt;
}

bool in_h_lt1(const PLHomeo& f) {
  // Identity near 1 iff the last segment lies on the diagonal.
  const auto& pts = f.breakpoints();
  const PLHomeo::Point& p = pts[pts.size() - 2];
  return p.first == p.second;
}

IntervalSet apply(const PLHomeo& f, const IntervalSet& s) {
  std::vector<Interval> out;
  out.reserve(s.parts().size());
  for (const Interval& iv : s.parts())
    out.push_back({f(iv.lo), f(iv.hi), iv.lo_closed, iv.hi_closed});
  return IntervalSet(std::move(out));
}

}  // namespace flimit
