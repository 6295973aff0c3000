#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flimit/plhomeo.hpp"
#include "flimit/words_f.hpp"

namespace flimit {

/// Word over an HNN extension of F with stable letter t, stored as
/// f0 t^e1 f1 t^e2 ... t^ek fk with e_i in {-1, +1}.
struct HnnWord {
  PLHomeo head;
  std::vector<std::pair<int, PLHomeo>> tail;  // (exponent, following element)

  size_t stable_letters() const { return tail.size(); }
  friend bool operator==(const HnnWord&, const HnnWord&) = default;
  std::string str() const;
};

/// Membership data for the associated subgroup H and its alpha-image.
/// alpha / alpha_inverse are partial: returning nullopt on a contained
/// element is an oracle inconsistency.
struct MembershipOracle {
  std::string name;
  std::function<bool(const PLHomeo&)> contains;        // h in H
  std::function<bool(const PLHomeo&)> contains_image;  // h in alpha(H)
  std::function<std::optional<PLHomeo>(const PLHomeo&)> alpha;
  std::function<std::optional<PLHomeo>(const PLHomeo&)> alpha_inverse;
  bool complete = false;  // membership answers are decision procedures
};

/// The subgroup of elements trivial near 1, with identity alpha.
MembershipOracle oracle_h_lt1();
/// The cyclic subgroup generated by h (h nontrivial), with identity alpha.
MembershipOracle oracle_cyclic(const PLHomeo& h);

/// Britton reduction: leftmost pinch first, t^-1 h t -> alpha(h) for h in H
/// and t h t^-1 -> alpha_inverse(h) for h in alpha(H), until no pinch
/// remains. Preserves the image in the extension; idempotent.
HnnWord britton_reduce(const HnnWord& w, const MembershipOracle& oracle);

enum class Triviality { Yes, No, Unknown };
const char* triviality_str(Triviality t);

/// Reduce; remaining stable letters certify nontriviality; otherwise decide
/// in F. Unknown only for incomplete oracles.
Triviality is_trivial_in_hnn(const HnnWord& w, const MembershipOracle& oracle);

/// Parses the word grammar extended with the reserved stable letter "t";
/// variables are not allowed.
HnnWord parse_hnn(const std::string& text, const SymbolTable& symbols);

}  // namespace flimit
