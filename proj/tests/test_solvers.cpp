#include <doctest.h>

#include "flimit/solvers.hpp"
#include "oracles.hpp"

using namespace flimit;

namespace {

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

FWord W(const std::string& s) { return parse_word(s, table()); }

}  // namespace

TEST_CASE("moved_point") {
  CHECK(moved_point(generator_x(0)) == Dyadic(Int(1), 1));
  PLHomeo x1 = generator_x(1);
  Dyadic p = moved_point(x1);
  CHECK(x1(p) != p);
  CHECK(parse_rational("1/2") < p.to_rational());
  CHECK(p.to_rational() < Rational(1));
  CHECK_THROWS_AS(moved_point(PLHomeo::identity()), Error);

  for (std::uint64_t s = 0; s < 40; ++s) {
    PLHomeo f = random_element(split_seed(1500, s), 10);
    if (f.is_identity()) continue;
    Dyadic q = moved_point(f);
    CHECK(f(q) != q);
  }
}

TEST_CASE("nontrivial-constant-product solver") {
  std::vector<PLHomeo> h{generator_x(1)};
  IvaSolution sol = solve_nontrivial_product({W("y1 * x0")}, h);
  REQUIRE(sol.tuple.size() == 1);
  // the tuple is the rescaled copy of h inside U
  CHECK(sol.tuple[0] == iota(sol.u_lo, sol.u_hi, generator_x(1)));
  // the inequality is witnessed at the moved point
  PLHomeo value = evaluate_word(W("y1 * x0"), {sol.tuple[0]});
  Dyadic p(Int(1), 1);
  CHECK(value(p) == generator_x(0)(p));
  // U avoids both 1/2 and its image 1/4
  IntervalSet u = IntervalSet::of(closed_iv(sol.u_lo.to_rational(), sol.u_hi.to_rational()));
  CHECK_FALSE(u.contains(parse_rational("1/2")));
  CHECK_FALSE(u.contains(parse_rational("1/4")));
  // support containment in U
  CHECK(support(sol.tuple[0]).subset_of(u));

  // empty system: whole interval, tuple = h itself
  IvaSolution triv = solve_nontrivial_product({}, h);
  CHECK(triv.tuple[0] == generator_x(1));

  CHECK_THROWS_AS(solve_nontrivial_product({W("y1 * x1 * y1^-1 * x1^-1")}, h), Error);
  CHECK_THROWS_AS(solve_nontrivial_product({W("y2 * x0")}, h), Error);  // arity 2 > 1 generator
}

TEST_CASE("nontrivial-constant-product solver builds isomorphic copies") {
  // relations of the rescaled tuple mirror relations of (x1, x2)
  std::vector<PLHomeo> h{generator_x(1), generator_x(2)};
  std::vector<FWord> words{W("y1 * x0 * y2 * x0"), W("[y1, x1] * x1")};
  IvaSolution sol = solve_nontrivial_product(words, h);
  REQUIRE(sol.tuple.size() == 2);
  for (size_t i = 0; i < 2; ++i) CHECK(sol.tuple[i] == iota(sol.u_lo, sol.u_hi, h[i]));
  for (const FWord& w : words) {
    std::vector<PLHomeo> args(sol.tuple.begin(), sol.tuple.begin() + w.arity);
    CHECK_FALSE(evaluate_word(w, args).is_identity());
  }
  // iota is an isomorphism onto its image: check a sample relation transfer
  PLHomeo lhs = commutator(sol.tuple[0], sol.tuple[1]);
  CHECK(lhs == iota(sol.u_lo, sol.u_hi, commutator(h[0], h[1])));
}

TEST_CASE("h1 word classification") {
  CHECK(classify_h1_word(W("y1")) == H1WordClass::PureVariable);
  CHECK(classify_h1_word(W("y1^3")) == H1WordClass::PureVariable);
  CHECK(classify_h1_word(W("y1 * x0")) == H1WordClass::MainRoute);
  CHECK(classify_h1_word(W("y1 * x1 * y1^-1 * x1^-1")) == H1WordClass::MainRoute);
  // x0 * x1^-1 is trivial near 1, so y1 * x0 * x1^-1 is the exceptional form
  CHECK(in_h_lt1(generator_x(0) * generator_x(1).inverse()));
  CHECK(classify_h1_word(W("y1 * x0 * x1^-1")) == H1WordClass::Exceptional);
  // the conjugate-of-a-constant word is main-route via rotation
  CHECK(classify_h1_word(W("y1^-1 * x0 * y1")) == H1WordClass::MainRoute);
  // commutator with a trivial-near-1 constant collapses inside the extension
  CHECK(classify_h1_word(W("y1 * (x0 * x1^-1) * y1^-1 * (x0 * x1^-1)^-1")) ==
        H1WordClass::TrivialInExtension);
  CHECK(classify_h1_word(W("x0")) == H1WordClass::Inadmissible);
  CHECK(classify_h1_word(W("y1 * y1^-1")) == H1WordClass::TrivialInExtension);
}

TEST_CASE("h1 solver: commutations and inequalities near 1") {
  PLHomeo e1 = iota(Dyadic(0), Dyadic(Int(1), 1), generator_x(0));

  SUBCASE("commutation only") {
    H1Solution sol = solve_h1({e1}, {W("y1")});
    CHECK_FALSE(sol.g.is_identity());
    CHECK(commutator(sol.g, e1).is_identity());
    Dyadic lo = Dyadic(1) - Dyadic(Int(1), sol.k);
    CHECK(support(sol.g).subset_of(
        IntervalSet::of(Interval{lo.to_rational(), Rational(1), true, false})));
    CHECK_FALSE(support(sol.g).intersects(support(e1)));
  }

  SUBCASE("inequality without commutations") {
    H1Solution sol = solve_h1({}, {W("y1 * x0")});
    CHECK_FALSE(sol.g.is_identity());
    CHECK_FALSE(evaluate_word(W("y1 * x0"), {sol.g}).is_identity());
  }

  SUBCASE("exceptional form against its own constant") {
    PLHomeo v = generator_x(0) * generator_x(1).inverse();  // trivial near 1
    FWord w;
    w.arity = 1;
    w.letters.emplace_back(VarLetter{1, +1});
    w.letters.emplace_back(v);
    H1Solution sol = solve_h1({v}, {w});
    CHECK_FALSE(sol.g.is_identity());
    CHECK(commutator(sol.g, v).is_identity());
    CHECK_FALSE(support(sol.g).intersects(support(v)));
    PLHomeo value = evaluate_word(w, {sol.g});
    CHECK_FALSE(value.is_identity());
    CHECK(support(sol.g).subset_of(support(value)));
  }

  SUBCASE("several words and commutations at once") {
    std::vector<PLHomeo> E{e1, iota(Dyadic(0), Dyadic(Int(3), 2), generator_x(1))};
    std::vector<FWord> words{W("y1"), W("y1 * x0"), W("y1 * x1 * y1^-1 * x1^-1"),
                             W("y1^2 * x0 * x1")};
    H1Solution sol = solve_h1(E, words);
    for (const PLHomeo& e : E) CHECK(commutator(sol.g, e).is_identity());
    for (const FWord& w : words) CHECK_FALSE(evaluate_word(w, {sol.g}).is_identity());
  }

  SUBCASE("preconditions") {
    CHECK_THROWS_AS(solve_h1({generator_x(0)}, {}), Error);  // e not trivial near 1
    CHECK_THROWS_AS(solve_h1({}, {W("x0")}), Error);         // constant word
  }
}

TEST_CASE("explicitly oscillating systems") {
  SUBCASE("pure variable") {
    InequalitySystem sys;
    sys.words = {W("y1")};
    std::vector<IntervalSet> regions{IntervalSet::of(open_iv(Rational(0), Rational(1)))};
    auto sol = solve_explicit_oscillating(sys, regions, 3, 50);
    REQUIRE(sol.has_value());
    CHECK_FALSE((*sol)[0].is_identity());
  }

  SUBCASE("commutator word in its region") {
    InequalitySystem sys;
    sys.words = {W("y1 * x1 * y1^-1 * x1^-1")};
    std::vector<IntervalSet> regions{
        IntervalSet::of(open_iv(parse_rational("1/2"), Rational(1)))};
    auto sol = solve_explicit_oscillating(sys, regions, 3, 200);
    REQUIRE(sol.has_value());
    PLHomeo g = (*sol)[0];
    CHECK_FALSE(commutator(g, generator_x(1)).is_identity());
    CHECK(support(g).subset_of(IntervalSet::of(open_iv(parse_rational("1/2"), Rational(1)))));
  }

  SUBCASE("region outside the oscillation set is rejected") {
    InequalitySystem sys;
    sys.words = {W("y1 * x1 * y1^-1 * x1^-1")};
    std::vector<IntervalSet> regions{
        IntervalSet::of(open_iv(Rational(0), parse_rational("1/4")))};
    CHECK_THROWS_AS(solve_explicit_oscillating(sys, regions, 3, 10), Error);
  }
}

TEST_CASE("free pair witness") {
  PLHomeo g = free_pair_witness(generator_x(0), 4, 9);
  CHECK_FALSE(g.is_identity());

  // oracle: exhaustive re-check of all freely reduced words of length <= 4
  PLHomeo letters[4] = {generator_x(0), generator_x(0).inverse(), g, g.inverse()};
  struct Node {
    std::vector<int> w;
    PLHomeo v;
  };
  std::vector<Node> frontier;
  for (int a = 0; a < 4; ++a) frontier.push_back({{a}, letters[a]});
  for (int len = 1; len <= 4; ++len) {
    std::vector<Node> next;
    for (auto& nd : frontier) {
      CHECK_FALSE(nd.v.is_identity());
      if (len < 4)
        for (int a = 0; a < 4; ++a) {
          if (a == (nd.w.back() ^ 1)) continue;
          next.push_back({nd.w, nd.v * letters[a]});
          next.back().w.push_back(a);
        }
    }
    frontier = std::move(next);
  }

  // trivial bound: any nontrivial partner works at length 1
  CHECK_FALSE(free_pair_witness(generator_x(0), 1, 1).is_identity());
  CHECK_THROWS_AS(free_pair_witness(PLHomeo::identity(), 3, 1), Error);
}
