#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flimit/word.hpp"
#include "flimit/words_f.hpp"

namespace flimit {

/// Abstract freely reduced word over markers: letters +i / -i stand for the
/// i-th marker (1-based) and its inverse.
using AbstractWord = std::vector<int>;

std::string abstract_word_str(const AbstractWord& w);

/// Length-lexicographic order with letter order y1 < y1^-1 < y2 < ...
bool lenlex_less(const AbstractWord& a, const AbstractWord& b);

/// A group given by a marker tuple inside a computable backend.
template <GroupElement E>
struct MarkedTuple {
  std::vector<E> markers;
};

namespace detail {

template <GroupElement E>
void relations_dfs(const std::vector<E>& markers, const std::vector<E>& inverses,
                   AbstractWord& word, const E& value, unsigned remaining,
                   std::vector<AbstractWord>& out) {
  if (!word.empty() && value.is_identity()) out.push_back(word);
  if (remaining == 0) return;
  int m = static_cast<int>(markers.size());
  for (int i = 1; i <= m; ++i) {
    for (int s : {+1, -1}) {
      int letter = s * i;
      if (!word.empty() && word.back() == -letter) continue;  // stay reduced
      word.push_back(letter);
      const E& gen = s > 0 ? markers[static_cast<size_t>(i - 1)]
                           : inverses[static_cast<size_t>(i - 1)];
      relations_dfs(markers, inverses, word, E(value * gen), remaining - 1, out);
      word.pop_back();
    }
  }
}

}  // namespace detail

/// All freely reduced words of length <= r over the markers that evaluate to
/// the identity, sorted length-lexicographically. Serial reference kernel.
template <GroupElement E>
std::vector<AbstractWord> relations_up_to_serial(const MarkedTuple<E>& M, unsigned r) {
  std::vector<E> inverses;
  for (const E& g : M.markers) inverses.push_back(g.inverse());
  std::vector<AbstractWord> out;
  AbstractWord word;
  detail::relations_dfs(M.markers, inverses, word, E::identity(), r, out);
  std::sort(out.begin(), out.end(), lenlex_less);
  return out;
}

/// Same result as the serial kernel; work is split over reduced prefixes of
/// bounded depth and run with OpenMP when available.
template <GroupElement E>
std::vector<AbstractWord> relations_up_to(const MarkedTuple<E>& M, unsigned r,
                                          Exec exec = Exec::Serial);

/// Largest radius res <= r_max with identical relation balls.
template <GroupElement E>
unsigned agreement_radius(const MarkedTuple<E>& a, const MarkedTuple<E>& b, unsigned r_max,
                          Exec exec = Exec::Serial) {
  if (a.markers.size() != b.markers.size())
    fail(Errc::ArityMismatch, "marked tuples have different arities");
  auto ra = relations_up_to(a, r_max, exec);
  auto rb = relations_up_to(b, r_max, exec);
  for (unsigned r = r_max;; --r) {
    auto cut = [&](const std::vector<AbstractWord>& v) {
      std::vector<AbstractWord> c;
      for (const auto& w : v)
        if (w.size() <= r) c.push_back(w);
      return c;
    };
    if (cut(ra) == cut(rb)) return r;
    if (r == 0) return 0;
  }
}

/// The marked-groups distance, reported symbolically: exactly e^-r, or the
/// bound "<= e^-r_max" when the balls agree all the way out.
struct MarkedDistance {
  unsigned radius = 0;
  bool saturated = false;  // true: only the bound <= e^-radius is known
  std::string str() const {
    return (saturated ? std::string("<= e^-") : std::string("e^-")) + std::to_string(radius);
  }
  friend bool operator==(const MarkedDistance&, const MarkedDistance&) = default;
};

template <GroupElement E>
MarkedDistance distance(const MarkedTuple<E>& a, const MarkedTuple<E>& b, unsigned r_max,
                        Exec exec = Exec::Serial) {
  unsigned r = agreement_radius(a, b, r_max, exec);
  return MarkedDistance{r, r == r_max};
}

enum class Sign { Equal, Unequal };

/// A finite consistent set of equations and inequations over words.
template <GroupElement E>
class AtomicType {
public:
  void add(const BasicWord<E>& w, Sign sign) {
    BasicWord<E> r = reduce(w);
    for (const auto& [word, s] : items_)
      if (word == r && s != sign) fail(Errc::BadInput, "inconsistent atomic type");
    items_.emplace_back(std::move(r), sign);
  }
  const std::vector<std::pair<BasicWord<E>, Sign>>& items() const { return items_; }

private:
  std::vector<std::pair<BasicWord<E>, Sign>> items_;
};

template <GroupElement E>
bool check_atomic_type(const AtomicType<E>& p, const std::vector<E>& args) {
  for (const auto& [word, sign] : p.items()) {
    if (static_cast<int>(args.size()) < word.arity)
      fail(Errc::ArityMismatch, "tuple too short for atomic type");
    std::vector<E> prefix(args.begin(), args.begin() + word.arity);
    bool id = evaluate_word(word, prefix).is_identity();
    if ((sign == Sign::Equal) != id) return false;
  }
  return true;
}

/// One step of the convergent-sequence construction: markers (g_n, x0, x1)
/// where g_n commutes with the first n enumerated elements trivial near 1
/// and violates the first n enumerated admissible words.
struct H1Step {
  MarkedTuple<PLHomeo> tuple;
  PLHomeo g;
  unsigned k = 0;
  AtomicType<PLHomeo> constraints;
};

/// Default enumeration of elements trivial near 1: rescaled generators
/// iota([0, 1-2^-j], x_i) in diagonal order over (j, i).
std::vector<PLHomeo> default_enum_E(unsigned n);
/// Default enumeration of admissible one-variable words, length-lex over
/// letters y, y^-1, x0, x0^-1, x1, x1^-1, duplicates skipped.
std::vector<FWord> default_enum_W(unsigned n);

H1Step h1_sequence(unsigned n);
H1Step h1_sequence(unsigned n, const std::vector<PLHomeo>& enumE, const std::vector<FWord>& enumW);

struct ConvergeEntry {
  size_t i = 0, j = 0;
  unsigned radius = 0;
};

/// Pairwise agreement radii; entries with j == i+1 form the diagonal.
template <GroupElement E>
std::vector<ConvergeEntry> converge_report(const std::vector<MarkedTuple<E>>& seq, unsigned r_max,
                                           Exec exec = Exec::Serial) {
  std::vector<std::vector<AbstractWord>> balls;
  for (const auto& M : seq) balls.push_back(relations_up_to(M, r_max, exec));
  std::vector<ConvergeEntry> out;
  for (size_t i = 0; i < seq.size(); ++i)
    for (size_t j = i + 1; j < seq.size(); ++j) {
      unsigned r = r_max;
      while (r > 0) {
        auto cut = [&](const std::vector<AbstractWord>& v) {
          std::vector<AbstractWord> c;
          for (const auto& w : v)
            if (w.size() <= r) c.push_back(w);
          return c;
        };
        if (cut(balls[i]) == cut(balls[j])) break;
        --r;
      }
      out.push_back({i, j, r});
    }
  return out;
}

}  // namespace flimit

#include "flimit/marked_impl.hpp"
