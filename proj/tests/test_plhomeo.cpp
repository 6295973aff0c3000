#include <doctest.h>

#include "flimit/plhomeo.hpp"
#include "flimit/words_f.hpp"
#include "oracles.hpp"

using namespace flimit;

namespace {

PLHomeo bp(std::initializer_list<std::pair<const char*, const char*>> pts) {
  std::vector<PLHomeo::Point> v;
  for (const auto& [x, y] : pts) v.emplace_back(parse_dyadic(x), parse_dyadic(y));
  return PLHomeo::from_breakpoints(std::move(v));
}

}  // namespace

TEST_CASE("construction, identity and errors") {
  CHECK(bp({{"0", "0"}, {"1", "1"}}).is_identity());
  CHECK(bp({{"0", "0"}, {"1/2", "1/2"}, {"1", "1"}}).is_identity());  // collinear point dropped

  PLHomeo x0 = bp({{"0", "0"}, {"1/2", "1/4"}, {"3/4", "1/2"}, {"1", "1"}});
  CHECK(generator_x(0) == x0);
  CHECK_FALSE(x0.is_identity());

  CHECK_THROWS_AS(bp({{"0", "0"}, {"1/2", "3/8"}, {"1", "1"}}), Error);  // slope 3/4
  CHECK_THROWS_AS(bp({{"0", "0"}, {"1/2", "1/4"}, {"1/2", "1/2"}, {"1", "1"}}), Error);
  CHECK_THROWS_AS(bp({{"0", "0"}}), Error);
  try {
    bp({{"0", "0"}, {"1/2", "3/8"}, {"1", "1"}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadSlope);
  }
  // non-dyadic coordinates are rejected at the literal level
  CHECK_THROWS_AS(parse_dyadic("1/3"), Error);
}

TEST_CASE("generator formulas") {
  // frozen from the four-piece definition
  CHECK(generator_x(1) ==
        bp({{"0", "0"}, {"1/2", "1/2"}, {"3/4", "5/8"}, {"7/8", "3/4"}, {"1", "1"}}));
  CHECK(generator_x(2) ==
        bp({{"0", "0"}, {"3/4", "3/4"}, {"7/8", "13/16"}, {"15/16", "7/8"}, {"1", "1"}}));

  CHECK(generator_x(0)(parse_rational("1/2")) == parse_rational("1/4"));
  CHECK(generator_x(1)(parse_rational("7/8")) == parse_rational("3/4"));
  CHECK(PLHomeo::identity()(parse_rational("3/7")) == parse_rational("3/7"));
  CHECK_THROWS_AS(generator_x(0)(parse_rational("9/8")), Error);

  for (unsigned n = 0; n <= 6; ++n) {
    Dyadic fix = Dyadic(1) - Dyadic(Int(1), n);  // first segment boundary is fixed
    CHECK(generator_x(n)(fix) == fix);
  }
}

TEST_CASE("compose applies the right factor first") {
  PLHomeo x0 = generator_x(0), x1 = generator_x(1);
  CHECK(x0 * PLHomeo::identity() == x0);
  CHECK(x0 * x0.inverse() == PLHomeo::identity());
  CHECK(x0.inverse().inverse() == x0);
  CHECK(x0.inverse()(parse_rational("1/4")) == parse_rational("1/2"));

  // x0^-1 * x1 * x0 must equal x2 of the displayed formula
  PLHomeo conj = x0.inverse() * (x1 * x0);
  CHECK(conj == generator_x(2));
  CHECK(support(conj) == IntervalSet::of(open_iv(parse_rational("3/4"), Rational(1))));

  // pointwise agreement with an evaluation-only oracle on random rationals
  for (long k = 1; k < 40; ++k) {
    Rational x(Int(k), Int(41));
    CHECK(conj(x) == testing::eval_chain({x0.inverse(), x1, x0}, x));
  }
}

TEST_CASE("group axioms on random triples") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    PLHomeo f = random_element(split_seed(100, s), 8);
    PLHomeo g = random_element(split_seed(200, s), 8);
    PLHomeo h = random_element(split_seed(300, s), 8);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * PLHomeo::identity() == f);
    CHECK(PLHomeo::identity() * f == f);
    CHECK(f * f.inverse() == PLHomeo::identity());
    CHECK(f.inverse() * f == PLHomeo::identity());
  }
}

TEST_CASE("finite presentation relators") {
  PLHomeo x0 = generator_x(0), x1 = generator_x(1);
  PLHomeo a = x0 * x1.inverse();
  for (int i = 1; i <= 5; ++i) {
    PLHomeo b = pow(x0, -i) * x1 * pow(x0, i);
    CHECK(commutator(a, b).is_identity());
  }
  // and the conjugation convention reproduces the generator family
  for (int i = 1; i <= 5; ++i)
    CHECK(pow(x0, -i) * x1 * pow(x0, i) == generator_x(static_cast<unsigned>(i) + 1));
}

TEST_CASE("dyadics map to dyadics") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    PLHomeo f = random_element(split_seed(400, s), 10);
    Dyadic d(Int(static_cast<long>(s % 31)), 5);
    Dyadic img = f(d);  // throws if the image were not dyadic
    CHECK(f(d.to_rational()) == img.to_rational());
  }
}

TEST_CASE("support basics") {
  CHECK(support(PLHomeo::identity()).empty());
  CHECK(support(generator_x(1)) == IntervalSet::of(open_iv(parse_rational("1/2"), Rational(1))));
  CHECK(support_closure(generator_x(1)) ==
        IntervalSet::of(closed_iv(parse_rational("1/2"), Rational(1))));
  CHECK(testing::support_consistent(generator_x(0), support(generator_x(0))));
  CHECK(testing::support_consistent(generator_x(1), support(generator_x(1))));

  for (std::uint64_t s = 0; s < 40; ++s) {
    PLHomeo f = random_element(split_seed(500, s), 10);
    CHECK(testing::support_consistent(f, support(f)));
  }
}

TEST_CASE("support can have non-dyadic endpoints") {
  // the slope-1/4 piece crosses the diagonal at 7/12
  PLHomeo f = bp({{"0", "0"}, {"1/4", "1/2"}, {"3/4", "5/8"}, {"7/8", "3/4"}, {"1", "1"}});
  IntervalSet s = support(f);
  CHECK(testing::support_consistent(f, s));
  bool any_non_dyadic = false;
  for (const Interval& iv : s.parts()) {
    if (!to_dyadic(iv.lo) || !to_dyadic(iv.hi)) any_non_dyadic = true;
  }
  CHECK(any_non_dyadic);
}

TEST_CASE("support conjugation formula on random pairs") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    PLHomeo f = random_element(split_seed(600, s), 8);
    PLHomeo c = random_element(split_seed(700, s), 8);
    CHECK(support(conjugate(f, c)) == apply(c.inverse(), support(f)));
  }
}

TEST_CASE("disjoint supports commute") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    PLHomeo f = iota(Dyadic(0), Dyadic(Int(1), 1), random_element(split_seed(800, s), 8));
    PLHomeo g =
        iota(Dyadic(Int(1), 1), Dyadic(1), random_element(split_seed(900, s), 8));
    CHECK(commutator(f, g).is_identity());
  }
}

TEST_CASE("iota is a structure-preserving rescaling") {
  PLHomeo x0 = generator_x(0);
  CHECK(iota(Dyadic(0), Dyadic(1), x0) == x0);
  CHECK(support(iota(Dyadic(0), Dyadic(Int(1), 1), x0)) ==
        IntervalSet::of(open_iv(Rational(0), parse_rational("1/2"))));
  CHECK_THROWS_AS(iota(Dyadic(Int(1), 1), Dyadic(Int(1), 2), x0), Error);

  for (std::uint64_t s = 0; s < 30; ++s) {
    PLHomeo f = random_element(split_seed(1000, s), 8);
    PLHomeo g = random_element(split_seed(1100, s), 8);
    Dyadic a(Int(1), 3), b(Int(7), 3);
    CHECK(iota(a, b, f * g) == iota(a, b, f) * iota(a, b, g));
    if (!(f == g)) CHECK(iota(a, b, f) != iota(a, b, g));
  }
}

TEST_CASE("iota agrees with the rescaled generator formula away from branch 2") {
  // the displayed rescaled family: identity up to a + (2^n-1)(b-a)/2^n,
  // then slope 1/2, then t - (b-a)/2^(n+2), then 2t - b, identity after b
  Dyadic a(Int(1), 2), b(Int(7), 3);  // [1/4, 7/8]
  Dyadic w = b - a;
  for (unsigned n = 0; n <= 2; ++n) {
    PLHomeo f = iota(a, b, generator_x(n));
    Dyadic c1 = a + (w - w.times_pow2(-static_cast<long>(n)));      // a + (2^n-1)(b-a)/2^n
    Dyadic c2 = a + (w - w.times_pow2(-static_cast<long>(n) - 1));  // next subdivision point
    Dyadic c3 = a + (w - w.times_pow2(-static_cast<long>(n) - 2));
    // branch 1: fixed below c1
    CHECK(f(c1.times_pow2(-1)) == c1.times_pow2(-1));
    CHECK(f(c1) == c1);
    // branch 3: translation by (b-a)/2^(n+2) on [c2, c3]
    Dyadic mid23 = (c2 + c3).times_pow2(-1);
    CHECK(f(mid23) == mid23 - w.times_pow2(-static_cast<long>(n) - 2));
    // branch 4: 2t - b on [c3, b]
    Dyadic mid4 = (c3 + b).times_pow2(-1);
    CHECK(f(mid4) == mid4.times_pow2(1) - b);
    // branch 5: identity above b
    Dyadic above = (b + Dyadic(1)).times_pow2(-1);
    CHECK(f(above) == above);
  }
}

TEST_CASE("dividing points") {
  PLHomeo x0 = generator_x(0);
  CHECK(dividing_points(x0) == std::vector<Dyadic>{Dyadic(0), Dyadic(1)});
  CHECK(dividing_points(PLHomeo::identity()) == std::vector<Dyadic>{Dyadic(0), Dyadic(1)});
  PLHomeo two = iota(Dyadic(0), Dyadic(Int(1), 1), x0) * iota(Dyadic(Int(1), 1), Dyadic(1), x0);
  CHECK(dividing_points(two) == std::vector<Dyadic>{Dyadic(0), Dyadic(Int(1), 1), Dyadic(1)});
}

TEST_CASE("defragmentation") {
  PLHomeo x0 = generator_x(0), x1 = generator_x(1);
  CHECK(defragmentation(PLHomeo::identity()).empty());
  CHECK(defragmentation(x0) == std::vector<PLHomeo>{x0});

  PLHomeo left = iota(Dyadic(0), Dyadic(Int(1), 1), x0);
  PLHomeo right = iota(Dyadic(Int(1), 1), Dyadic(1), x1);
  auto frags = defragmentation(left * right);
  REQUIRE(frags.size() == 2);
  CHECK(frags[0] == left);
  CHECK(frags[1] == right);

  for (std::uint64_t s = 0; s < 30; ++s) {
    PLHomeo f = random_element(split_seed(1200, s), 10);
    auto fr = defragmentation(f);
    PLHomeo forward = PLHomeo::identity(), backward = PLHomeo::identity();
    for (const PLHomeo& g : fr) forward = forward * g;
    for (auto it = fr.rbegin(); it != fr.rend(); ++it) backward = backward * *it;
    CHECK(forward == f);
    CHECK(backward == f);
    for (size_t i = 0; i + 1 < fr.size(); ++i)
      CHECK_FALSE(support(fr[i]).intersects(support(fr[i + 1])));
  }
}

TEST_CASE("partition map") {
  auto dl = [](std::initializer_list<const char*> xs) {
    std::vector<Dyadic> v;
    for (const char* x : xs) v.push_back(parse_dyadic(x));
    return v;
  };
  PLHomeo same = partition_map(dl({"0", "1/2", "1"}), dl({"0", "1/2", "1"}));
  CHECK(same(parse_dyadic("1/2")) == parse_dyadic("1/2"));
  CHECK(same.is_identity());

  PLHomeo down = partition_map(dl({"0", "1/2", "1"}), dl({"0", "1/4", "1"}));
  CHECK(down(parse_dyadic("1/2")) == parse_dyadic("1/4"));

  PLHomeo tri = partition_map(dl({"0", "1/4", "1/2", "1"}), dl({"0", "1/4", "3/4", "1"}));
  CHECK(tri(parse_dyadic("1/8")) == parse_dyadic("1/8"));  // trivial on matching cell
  CHECK(tri(parse_dyadic("1/4")) == parse_dyadic("1/4"));
  CHECK(tri(parse_dyadic("1/2")) == parse_dyadic("3/4"));

  CHECK_THROWS_AS(partition_map(dl({"0", "1"}), dl({"0", "1/2", "1"})), Error);
  CHECK_THROWS_AS(partition_map(dl({"0", "3/4", "1/2", "1"}), dl({"0", "1/4", "1/2", "1"})),
                  Error);

  // awkward width ratios exercise the two-segment interpolation
  PLHomeo odd = partition_map(dl({"0", "3/8", "1"}), dl({"0", "7/8", "1"}));
  CHECK(odd(parse_dyadic("3/8")) == parse_dyadic("7/8"));
  PLHomeo odd2 = partition_map(dl({"0", "1/8", "5/8", "3/4", "1"}),
                               dl({"0", "1/2", "9/16", "5/8", "1"}));
  CHECK(odd2(parse_dyadic("1/8")) == parse_dyadic("1/2"));
  CHECK(odd2(parse_dyadic("5/8")) == parse_dyadic("9/16"));
  CHECK(odd2(parse_dyadic("3/4")) == parse_dyadic("5/8"));
}

TEST_CASE("is_power") {
  PLHomeo x0 = generator_x(0), x1 = generator_x(1);
  PLHomeo h = x0 * x1;  // any nontrivial element
  CHECK(is_power(h * h * h, h) == 3);
  CHECK(is_power(PLHomeo::identity(), h) == 0);
  CHECK(is_power(pow(h, -2), h) == -2);
  CHECK(is_power(x1, x0) == std::nullopt);
  CHECK(is_power(x0 * x1, x0) == std::nullopt);
  CHECK_THROWS_AS(is_power(x0, PLHomeo::identity()), Error);
}

TEST_CASE("trivial-near-1 membership") {
  PLHomeo x0 = generator_x(0);
  CHECK(in_h_lt1(iota(Dyadic(0), Dyadic(Int(1), 1), x0)));
  CHECK_FALSE(in_h_lt1(x0));
  CHECK(in_h_lt1(PLHomeo::identity()));
  CHECK(in_h_lt1(x0 * generator_x(1).inverse()));  // agrees with the identity near 1
}

TEST_CASE("ordering and text form") {
  PLHomeo x0 = generator_x(0);
  CHECK((x0 <=> x0) == std::strong_ordering::equal);
  CHECK(((PLHomeo::identity() < x0) != (x0 < PLHomeo::identity())));
  CHECK(x0.str() == "(0,0) (1/2^1,1/2^2) (3/2^2,1/2^1) (1,1)");
}
