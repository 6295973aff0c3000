#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flimit/interval_set.hpp"
#include "flimit/plhomeo.hpp"
#include "flimit/words_f.hpp"

namespace flimit {

/// A system of inequalities w(y) != 1 with optional side constraints: a set
/// of elements the solution must commute with, and a region the solution's
/// support must stay inside.
struct InequalitySystem {
  std::vector<FWord> words;  // shared arity, all nontrivial after reduction
  std::vector<PLHomeo> commute_with;
  std::optional<IntervalSet> support_region;
};

/// A dyadic point moved by f. Candidates are breakpoints and cell
/// midpoints; ties broken by smallest denominator, then smallest numerator.
Dyadic moved_point(const PLHomeo& f);

struct IvaSolution {
  std::vector<PLHomeo> tuple;  // g_i = iota(U, h_i)
  Dyadic u_lo, u_hi;           // the closed dyadic interval U
  std::vector<Rational> forbidden;  // partial-product images avoided by U
};

/// For words with nontrivial product of constants, returns a tuple that
/// violates none of them and generates an isomorphic rescaled copy of
/// <h_1, ..., h_l> inside a closed dyadic interval U disjoint from every
/// partial-product image of the chosen moved points. Fully re-verified.
IvaSolution solve_nontrivial_product(const std::vector<FWord>& words,
                                     const std::vector<PLHomeo>& h);

struct H1Solution {
  PLHomeo g;
  unsigned k = 0;  // supp(g) lies in [1 - 2^-k, 1)
  std::vector<std::string> verified;  // one line per checked constraint
};

/// Finds a nontrivial g commuting with every element of E (all trivial near
/// 1) and with w(g) != 1 for every admissible one-variable word in W.
/// Admissible words either keep all constants with support reaching 1 after
/// absorbing a tail constant trivial near 1, or are of the exceptional form
/// y^a * v with v trivial near 1. The witness is verified against the
/// original words by exact evaluation.
H1Solution solve_h1(const std::vector<PLHomeo>& E, const std::vector<FWord>& W,
                    std::uint64_t budget = 20000);

/// Classification used by solve_h1 and by the default word enumeration.
enum class H1WordClass {
  PureVariable,       // y^a
  Exceptional,        // y^a * v, v trivial near 1
  MainRoute,          // all constants reach 1 after absorption
  TrivialInExtension, // absorption collapses the word; excluded
  Inadmissible,
};
H1WordClass classify_h1_word(const FWord& w);

/// Verified randomized search for a tuple solving an explicitly oscillating
/// system; generators are supported inside the prescribed regions. Returns
/// nullopt when the budget runs out.
std::optional<std::vector<PLHomeo>> solve_explicit_oscillating(
    const InequalitySystem& system, const std::vector<IntervalSet>& regions,
    std::uint64_t seed, std::uint64_t budget);

/// A g such that every nonempty freely reduced word in h, g of letter
/// length <= max_len evaluates to a nontrivial element: a bounded
/// certificate that {h, g} freely generates.
PLHomeo free_pair_witness(const PLHomeo& h, unsigned max_len, std::uint64_t seed,
                          std::uint64_t budget = 200);

}  // namespace flimit
