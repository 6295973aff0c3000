#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flimit/error.hpp"

namespace flimit {

/// Element of the group generated by the involutions a, b, c, d subject to
/// bc = cb = d, bd = db = c, cd = dc = b, kept in the alternating normal
/// form (no doubled letter, no adjacent pair from {b,c,d}). The letters act
/// on the binary rooted tree by the self-similar rules
///   a = swap, b = (a, c), c = (a, d), d = (1, b),
/// with products applying the right factor first.
class GrigWord {
public:
  GrigWord() = default;
  /// Reduces an arbitrary letter string over {a,b,c,d}.
  explicit GrigWord(std::string_view letters);

  static GrigWord identity() { return GrigWord(); }
  const std::string& letters() const { return w_; }
  bool empty_word() const { return w_.empty(); }

  GrigWord operator*(const GrigWord& other) const { return GrigWord(w_ + other.w_); }
  /// All generators are involutions, so inversion reverses the word.
  GrigWord inverse() const { return GrigWord(std::string(w_.rbegin(), w_.rend())); }

  /// Decides the word problem by the section recursion.
  bool is_identity() const;

  friend bool operator==(const GrigWord&, const GrigWord&) = default;
  friend bool operator<(const GrigWord& x, const GrigWord& y) { return x.w_ < y.w_; }

private:
  std::string w_;  // reduced
};

/// Wreath decomposition: whether the root children are swapped, and the
/// sections at child 0 and child 1.
struct Sections {
  bool root_swap = false;
  GrigWord left, right;
};
Sections sections(const GrigWord& w);

/// Vertices are binary strings; the empty string is the root.
using Vertex = std::string;

/// Exact action on a vertex.
Vertex act(const GrigWord& w, const Vertex& v);

/// Swap bits for every vertex up to the given depth, breadth-first order
/// (root, 0, 1, 00, 01, ...).
struct Portrait {
  unsigned depth = 0;
  std::vector<bool> swaps;  // 2^(depth+1) - 1 entries
  friend bool operator==(const Portrait&, const Portrait&) = default;
};
Portrait portrait(const GrigWord& w, unsigned depth);

/// Smallest power of two <= 2^max_exp annihilating w, by repeated squaring.
std::optional<std::uint64_t> order(const GrigWord& w, unsigned max_exp);

/// The substitution a -> aca, b -> d, c -> b, d -> c, then reduction.
GrigWord sigma_substitute(const GrigWord& w);

/// Section of w at a vertex (iterated wreath decomposition along the path).
GrigWord section_at(const GrigWord& w, const Vertex& v);

/// True iff w fixes every vertex outside the subtree below v and every
/// section off that subtree is trivial; decided exactly via is_identity.
bool in_rigid_stabilizer(const GrigWord& w, const Vertex& v);

/// Shortest nontrivial element of the rigid stabilizer of v, by verified
/// breadth-first search over reduced words; results are cached.
GrigWord rist_element(const Vertex& v, std::uint64_t budget = 100000);

/// Deterministic pseudorandom reduced word of length about max_letters.
GrigWord random_grig_word(std::uint64_t seed, unsigned max_letters);

/// Parses letter expressions: juxtaposed letters from {a,b,c,d} with
/// parentheses and integer exponents, e.g. "(ad)^4" or "ab(cd)^-2".
GrigWord parse_grig(const std::string& text);

struct BranchCheck {
  bool holds = false;
  std::optional<GrigWord> counterexample;
};

/// Samples y and evaluates [[y h1 y^-1, h2], [y h1 y^-1, h3]]; the h_i must
/// be nontrivial rigid-stabilizer elements of three distinct vertices at a
/// common level (verified, up to depth_check levels).
BranchCheck branch_mixed_identity_check(const GrigWord& h1, const GrigWord& h2,
                                        const GrigWord& h3, std::uint64_t samples,
                                        unsigned depth_check, std::uint64_t seed = 1,
                                        unsigned sample_letters = 30);

}  // namespace flimit
