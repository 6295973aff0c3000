#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flimit/interval_set.hpp"
#include "flimit/plhomeo.hpp"
#include "flimit/word.hpp"

namespace flimit {

using FWord = BasicWord<PLHomeo>;
using FReducedForm = ReducedForm<PLHomeo>;

/// Named constants usable inside word expressions. x0, x1, ... and id are
/// built in; lookups never rebind an existing name.
class SymbolTable {
public:
  SymbolTable();
  void bind(const std::string& name, const PLHomeo& value);
  /// Resolves a name; generator names x<k> are materialized on demand.
  PLHomeo resolve(const std::string& name) const;
  bool knows(const std::string& name) const;
  const std::map<std::string, PLHomeo>& entries() const { return table_; }

private:
  mutable std::map<std::string, PLHomeo> table_;
};

/// Parses the word grammar
///   word := term {"*" term}
///   term := atom ["^" int]
///   atom := variable | constant | "[" word "," word "]" | "(" word ")"
///   variable := "y" int
/// against a symbol table; the result is freely reduced.
FWord parse_word(const std::string& text, const SymbolTable& symbols);

std::string word_str(const FWord& w);

/// The oscillation region O_w: intersection over i of
/// (v_i ... v_1)^-1 (supp v_{i+1}); for pure-variable words, (0,1).
IntervalSet omega_set(const FReducedForm& w);

/// Nontrivial and with V meeting O_w.
bool is_explicitly_oscillating(const FReducedForm& w, const IntervalSet& V);

/// The family { v_j^(e_j) ... v_1^(e_1) (A) : e in {0,1}^j, 1 <= j <= n },
/// duplicates merged.
std::vector<IntervalSet> v_family(const FReducedForm& w, const IntervalSet& A);

/// The commutator law [w-(y), w+(y)] built from disjoint dyadic intervals
/// I1 = (p1,q1), I2 = (p2,q2) with p1 < p2 and nontrivial h1, h2 supported
/// in their closures:
///   w-(y) = y^-1 h1^-1 y h2^-1 y^-1 h1 y h2
///   w+(y) = y h1^-1 y^-1 h2^-1 y h1 y^-1 h2
FWord law_lwc2m(const Dyadic& p1, const Dyadic& q1, const Dyadic& p2, const Dyadic& q2,
                const PLHomeo& h1, const PLHomeo& h2);

/// Deterministic pseudorandom element: a product of k letters drawn
/// uniformly from {x0, x0^-1, x1, x1^-1}, where k itself is uniform on
/// {0, ..., max_letters}. Same seed, same element.
PLHomeo random_element(std::uint64_t seed, unsigned max_letters);

/// Per-index derived seed, independent of evaluation order.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

struct LawCheck {
  bool holds = false;
  std::vector<PLHomeo> counterexample;  // argument tuple, empty when holds
  std::uint64_t counterexample_index = 0;
};

enum class Exec { Serial, Parallel };

/// Evaluates w on n seeded random tuples (letters <= max_letters per entry)
/// and reports the first tuple with a nonidentity value. A refutation
/// procedure only: holds == true is evidence, not proof.
LawCheck is_law_sampled(const FWord& w, std::uint64_t seed, unsigned max_letters, std::uint64_t n,
                        Exec exec = Exec::Serial);

}  // namespace flimit
