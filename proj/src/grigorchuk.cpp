#include "flimit/grigorchuk.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <random>
#include <unordered_map>

namespace flimit {

namespace {

bool is_bcd(char c) { return c == 'b' || c == 'c' || c == 'd'; }

// bc=d, bd=c, cd=b in either order
char bcd_product(char x, char y) {
  int mask = (1 << (x - 'b')) | (1 << (y - 'b'));
  switch (mask) {
    case 0b011: return 'd';  // b,c
    case 0b101: return 'c';  // b,d
    case 0b110: return 'b';  // c,d
  }
  return 0;
}

}  // namespace

GrigWord::GrigWord(std::string_view letters) {
  for (char c : letters) {
    if (c == ' ') continue;
    if (c != 'a' && !is_bcd(c)) fail(Errc::SyntaxError, std::string("bad letter '") + c + "'");
    while (true) {
      if (w_.empty()) {
        w_ += c;
        break;
      }
      char top = w_.back();
      if (top == c) {  // involutions
        w_.pop_back();
        break;
      }
      if (is_bcd(top) && is_bcd(c)) {  // merge within the Klein group
        w_.pop_back();
        c = bcd_product(top, c);
        continue;  // the merged letter may cancel further
      }
      w_ += c;
      break;
    }
  }
}

Sections sections(const GrigWord& w) {
  // fold letters right-to-left: w = l1 * (l2 * (... * lk)), each step
  // (u * v): swap_uv = swap_u xor swap_v, (uv)_x = u_{v-image of x} * v_x
  Sections acc;  // identity
  const std::string& s = w.letters();
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    Sections l;
    switch (*it) {
      case 'a': l.root_swap = true; break;
      case 'b': l.left = GrigWord("a"); l.right = GrigWord("c"); break;
      case 'c': l.left = GrigWord("a"); l.right = GrigWord("d"); break;
      case 'd': l.right = GrigWord("b"); break;
    }
    Sections next;
    next.root_swap = l.root_swap != acc.root_swap;
    if (!acc.root_swap) {
      next.left = l.left * acc.left;
      next.right = l.right * acc.right;
    } else {
      next.left = l.right * acc.left;
      next.right = l.left * acc.right;
    }
    acc = next;
  }
  return acc;
}

namespace {

std::unordered_map<std::string, bool> g_wp_cache;
std::mutex g_wp_mutex;

bool is_identity_impl(const GrigWord& w) {
  if (w.empty_word()) return true;
  if (w.letters().size() == 1) return false;
  {
    std::lock_guard<std::mutex> lock(g_wp_mutex);
    auto it = g_wp_cache.find(w.letters());
    if (it != g_wp_cache.end()) return it->second;
  }
  Sections s = sections(w);
  bool result = !s.root_swap && is_identity_impl(s.left) && is_identity_impl(s.right);
  {
    std::lock_guard<std::mutex> lock(g_wp_mutex);
    g_wp_cache.emplace(w.letters(), result);
  }
  return result;
}

}  // namespace

bool GrigWord::is_identity() const { return is_identity_impl(*this); }

Vertex act(const GrigWord& w, const Vertex& v) {
  if (v.empty() || w.empty_word()) return v;
  for (char c : v)
    if (c != '0' && c != '1') fail(Errc::SyntaxError, "vertices are binary strings");
  Sections s = sections(w);
  char first = v[0];
  char image = s.root_swap ? (first == '0' ? '1' : '0') : first;
  const GrigWord& sec = first == '0' ? s.left : s.right;
  return image + act(sec, v.substr(1));
}

Portrait portrait(const GrigWord& w, unsigned depth) {
  Portrait p;
  p.depth = depth;
  // breadth-first over (vertex -> section) pairs
  std::vector<GrigWord> level{w};
  for (unsigned d = 0; d <= depth; ++d) {
    std::vector<GrigWord> next;
    next.reserve(level.size() * 2);
    for (const GrigWord& g : level) {
      Sections s = sections(g);
      p.swaps.push_back(s.root_swap);
      if (d < depth) {
        next.push_back(s.left);
        next.push_back(s.right);
      }
    }
    level = std::move(next);
  }
  return p;
}

std::optional<std::uint64_t> order(const GrigWord& w, unsigned max_exp) {
  if (max_exp < 1) fail(Errc::BadInput, "max_exp must be at least 1");
  GrigWord p = w;
  std::uint64_t e = 1;
  if (p.is_identity()) return 1;
  for (unsigned i = 0; i < max_exp; ++i) {
    p = p * p;
    e *= 2;
    if (p.is_identity()) return e;
  }
  return std::nullopt;
}

GrigWord sigma_substitute(const GrigWord& w) {
  std::string out;
  for (char c : w.letters()) {
    switch (c) {
      case 'a': out += "aca"; break;
      case 'b': out += 'd'; break;
      case 'c': out += 'b'; break;
      case 'd': out += 'c'; break;
    }
  }
  return GrigWord(out);
}

GrigWord section_at(const GrigWord& w, const Vertex& v) {
  GrigWord cur = w;
  for (char c : v) {
    Sections s = sections(cur);
    cur = c == '0' ? s.left : s.right;
  }
  return cur;
}

bool in_rigid_stabilizer(const GrigWord& w, const Vertex& v) {
  if (v.empty()) fail(Errc::PreconditionFailed, "the root has no proper subtree");
  // every vertex at the level of v fixed, all sections off v trivial
  unsigned level = static_cast<unsigned>(v.size());
  for (std::uint64_t bits = 0; bits < (1ull << level); ++bits) {
    Vertex u;
    for (unsigned i = 0; i < level; ++i) u += ((bits >> (level - 1 - i)) & 1) ? '1' : '0';
    if (act(w, u) != u) return false;
    if (u != v && !section_at(w, u).is_identity()) return false;
  }
  return true;
}

namespace {

std::map<Vertex, GrigWord> g_rist_cache;
std::mutex g_rist_mutex;

}  // namespace

GrigWord rist_element(const Vertex& v, std::uint64_t budget) {
  if (v.empty()) fail(Errc::PreconditionFailed, "the root has no proper subtree");
  {
    std::lock_guard<std::mutex> lock(g_rist_mutex);
    auto it = g_rist_cache.find(v);
    if (it != g_rist_cache.end()) return it->second;
  }
  // BFS over reduced words by length
  static const char letters[4] = {'a', 'b', 'c', 'd'};
  std::vector<GrigWord> frontier{GrigWord()};
  std::uint64_t spent = 0;
  for (unsigned len = 1; len <= 40; ++len) {
    std::vector<GrigWord> next;
    std::vector<GrigWord> seen;
    for (const GrigWord& g : frontier) {
      for (char c : letters) {
        GrigWord cand = GrigWord(g.letters() + c);
        if (cand.letters().size() != g.letters().size() + 1) continue;  // reduced extensions only
        if (++spent > budget) fail(Errc::BudgetExceeded, "rigid stabilizer search budget");
        if (in_rigid_stabilizer(cand, v) && !section_at(cand, v).is_identity()) {
          std::lock_guard<std::mutex> lock(g_rist_mutex);
          g_rist_cache.emplace(v, cand);
          return cand;
        }
        next.push_back(cand);
      }
    }
    frontier = std::move(next);
  }
  fail(Errc::BudgetExceeded, "no rigid stabilizer element found");
}

GrigWord random_grig_word(std::uint64_t seed, unsigned max_letters) {
  std::mt19937_64 rng(seed);
  unsigned len = max_letters == 0 ? 0 : static_cast<unsigned>(rng() % (max_letters + 1));
  std::string s;
  for (unsigned i = 0; i < len; ++i) s += "abcd"[rng() % 4];
  return GrigWord(s);
}

namespace {

class GrigParser {
public:
  explicit GrigParser(const std::string& text) : text_(text) {}

  GrigWord parse() {
    GrigWord w = parse_seq();
    if (pos_ != text_.size())
      fail(Errc::SyntaxError, "unexpected '" + text_.substr(pos_) + "'");
    return w;
  }

private:
  GrigWord parse_seq() {
    GrigWord acc;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ' ' || c == '*') {
        ++pos_;
        continue;
      }
      if (c == ')') break;
      GrigWord factor;
      if (c == '(') {
        ++pos_;
        factor = parse_seq();
        if (pos_ >= text_.size() || text_[pos_] != ')') fail(Errc::SyntaxError, "expected ')'");
        ++pos_;
      } else if (c == 'a' || c == 'b' || c == 'c' || c == 'd') {
        factor = GrigWord(std::string(1, c));
        ++pos_;
      } else {
        fail(Errc::SyntaxError, std::string("unexpected '") + c + "'");
      }
      if (pos_ < text_.size() && text_[pos_] == '^') {
        ++pos_;
        size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) fail(Errc::SyntaxError, "expected exponent");
        long e = std::stol(text_.substr(start, pos_ - start));
        GrigWord base = e < 0 ? factor.inverse() : factor;
        long reps = e < 0 ? -e : e;
        GrigWord p;
        for (long i = 0; i < reps; ++i) p = p * base;
        factor = p;
      }
      acc = acc * factor;
    }
    return acc;
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

GrigWord parse_grig(const std::string& text) { return GrigParser(text).parse(); }

BranchCheck branch_mixed_identity_check(const GrigWord& h1, const GrigWord& h2,
                                        const GrigWord& h3, std::uint64_t samples,
                                        unsigned depth_check, std::uint64_t seed,
                                        unsigned sample_letters) {
  // locate, for each h_i, a vertex whose rigid stabilizer contains it
  const GrigWord* hs[3] = {&h1, &h2, &h3};
  for (int i = 0; i < 3; ++i)
    if (hs[i]->is_identity()) fail(Errc::PreconditionFailed, "h elements must be nontrivial");
  std::vector<Vertex> homes(3);
  bool found = false;
  bool level_hit = false;  // some level hosted all three, but not distinctly
  for (unsigned level = 1; level <= depth_check && !found; ++level) {
    bool all = true;
    for (int i = 0; i < 3 && all; ++i) {
      all = false;
      for (std::uint64_t bits = 0; bits < (1ull << level); ++bits) {
        Vertex u;
        for (unsigned b = 0; b < level; ++b) u += ((bits >> (level - 1 - b)) & 1) ? '1' : '0';
        if (in_rigid_stabilizer(*hs[i], u) && !section_at(*hs[i], u).is_identity()) {
          homes[static_cast<size_t>(i)] = u;
          all = true;
          break;
        }
      }
    }
    if (all) {
      level_hit = true;
      found = homes[0] != homes[1] && homes[0] != homes[2] && homes[1] != homes[2];
    }
  }
  if (!found)
    fail(Errc::PreconditionFailed,
         level_hit ? "rigid stabilizer vertices must be distinct"
                   : "elements are not rigid-stabilizer members of a common level");

  auto comm = [](const GrigWord& x, const GrigWord& y) {
    return x.inverse() * y.inverse() * x * y;
  };
  BranchCheck result;
  for (std::uint64_t i = 0; i < samples; ++i) {
    GrigWord y = random_grig_word(seed + i, sample_letters);
    GrigWord conj = y * h1 * y.inverse();
    GrigWord value = comm(comm(conj, h2), comm(conj, h3));
    if (!value.is_identity()) {
      result.holds = false;
      result.counterexample = y;
      return result;
    }
  }
  result.holds = true;
  return result;
}

}  // namespace flimit
