#pragma once

#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "flimit/dyadic.hpp"
#include "flimit/interval_set.hpp"

namespace flimit {

/// An orientation-preserving PL self-homeomorphism of [0,1] with dyadic
/// breakpoints and slopes that are integer powers of two, stored as the
/// canonical breakpoint list: strictly increasing in both coordinates,
/// containing (0,0) and (1,1), with no breakpoint between segments of
/// equal slope. Canonical form makes operator== decide group equality.
class PLHomeo {
public:
  using Point = std::pair<Dyadic, Dyadic>;

  PLHomeo();  // identity

  /// Validates monotonicity and slopes; removes redundant breakpoints.
  static PLHomeo from_breakpoints(std::vector<Point> pts);
  static PLHomeo identity() { return PLHomeo(); }

  const std::vector<Point>& breakpoints() const { return pts_; }
  bool is_identity() const { return pts_.size() == 2; }

  Dyadic operator()(const Dyadic& x) const;
  Rational operator()(const Rational& x) const;

  /// Group product, applying the right factor first: (f*g)(x) = f(g(x)).
  friend PLHomeo operator*(const PLHomeo& f, const PLHomeo& g);
  PLHomeo inverse() const;

  /// Slope exponent of the segment to the right of x (for x < 1).
  long right_slope_exp(const Rational& x) const;

  friend bool operator==(const PLHomeo&, const PLHomeo&) = default;
  std::strong_ordering operator<=>(const PLHomeo& other) const;

  std::string str() const;

private:
  struct raw_tag {};
  PLHomeo(std::vector<Point> pts, raw_tag) : pts_(std::move(pts)) { canonicalize(); }
  void canonicalize();  // assumes valid, strips collinear points
  size_t segment_index(const Rational& x) const;

  std::vector<Point> pts_;
};

PLHomeo pow(const PLHomeo& f, long k);
inline PLHomeo conjugate(const PLHomeo& f, const PLHomeo& g) { return g.inverse() * f * g; }
inline PLHomeo commutator(const PLHomeo& f, const PLHomeo& g) {
  return f.inverse() * g.inverse() * f * g;
}

/// The n-th standard generator x_n.
PLHomeo generator_x(unsigned n);

/// Conjugate of f by the affine map t -> a + (b-a)t: acts as a rescaled
/// copy of f on [a,b] and as the identity outside.
PLHomeo iota(const Dyadic& a, const Dyadic& b, const PLHomeo& f);

/// Open set {x : f(x) != x}; endpoints can be non-dyadic rationals.
IntervalSet support(const PLHomeo& f);
IntervalSet support_closure(const PLHomeo& f);

/// Dyadic points of closure(supp f) \ supp f, together with 0 and 1,
/// sorted increasingly.
std::vector<Dyadic> dividing_points(const PLHomeo& f);

/// Splits f at its dividing points into commuting fragments with disjoint
/// supports; identity fragments are dropped. The product of the fragments
/// (in any order) is f.
std::vector<PLHomeo> defragmentation(const PLHomeo& f);

/// Element mapping the dyadic partition s onto t; identity on every cell
/// where both partitions agree.
PLHomeo partition_map(const std::vector<Dyadic>& s, const std::vector<Dyadic>& t);

/// k with f = h^k if one exists (h != identity).
std::optional<long> is_power(const PLHomeo& f, const PLHomeo& h);

/// True iff f is the identity on a neighbourhood of 1.
bool in_h_lt1(const PLHomeo& f);

/// Image of a set under f (exact; f is an increasing bijection).
IntervalSet apply(const PLHomeo& f, const IntervalSet& s);

}  // namespace flimit
