#include "flimit/words_f.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <random>

namespace flimit {

SymbolTable::SymbolTable() { table_.emplace("id", PLHomeo::identity()); }

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// x<k> names for the standard generators
std::optional<unsigned> generator_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'x') return std::nullopt;
  for (size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  unsigned long v = std::stoul(name.substr(1));
  if (v > 64) fail(Errc::BadInput, "generator index too large: " + name);
  return static_cast<unsigned>(v);
}

std::optional<int> variable_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'y') return std::nullopt;
  for (size_t i = 1; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
  int v = std::stoi(name.substr(1));
  if (v < 1) return std::nullopt;
  return v;
}

}  // namespace

void SymbolTable::bind(const std::string& name, const PLHomeo& value) {
  if (name.empty() || !is_ident_start(name[0]) ||
      !std::all_of(name.begin(), name.end(), is_ident_char))
    fail(Errc::BadInput, "invalid symbol name '" + name + "'");
  if (variable_index(name)) fail(Errc::BadInput, "'" + name + "' is reserved for variables");
  if (table_.count(name)) fail(Errc::BadInput, "symbol '" + name + "' already bound");
  table_.emplace(name, value);
}

bool SymbolTable::knows(const std::string& name) const {
  return table_.count(name) || generator_index(name).has_value();
}

PLHomeo SymbolTable::resolve(const std::string& name) const {
  auto it = table_.find(name);
  if (it != table_.end()) return it->second;
  if (auto g = generator_index(name)) {
    PLHomeo e = generator_x(*g);
    table_.emplace(name, e);
    return e;
  }
  fail(Errc::UnknownSymbol, "'" + name + "'");
}

namespace {

class WordParser {
public:
  WordParser(const std::string& text, const SymbolTable& symbols)
      : text_(text), symbols_(symbols) {}

  FWord parse() {
    FWord w = parse_product();
    skip_ws();
    if (pos_ != text_.size()) fail(Errc::SyntaxError, "unexpected '" + rest() + "'");
    return reduce(w);
  }

private:
  FWord parse_product() {
    FWord w = parse_term();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        w = concat(w, parse_term());
      } else {
        break;
      }
    }
    return w;
  }

  FWord parse_term() {
    FWord a = parse_atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      long e = parse_int();
      FWord base = e < 0 ? inverse(a) : a;
      long reps = e < 0 ? -e : e;
      FWord out;
      out.arity = a.arity;
      for (long i = 0; i < reps; ++i) out = concat(out, base);
      return out;
    }
    return a;
  }

  FWord parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail(Errc::SyntaxError, "unexpected end of word");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FWord w = parse_product();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      FWord a = parse_product();
      expect(',');
      FWord b = parse_product();
      expect(']');
      return concat(concat(inverse(a), inverse(b)), concat(a, b));
    }
    if (!is_ident_start(c)) fail(Errc::SyntaxError, "unexpected '" + rest() + "'");
    std::string name;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) name += text_[pos_++];
    FWord w;
    if (auto vi = variable_index(name)) {
      w.arity = *vi;
      w.letters.emplace_back(VarLetter{*vi, +1});
      return w;
    }
    if (name == "y0") fail(Errc::ArityError, "variable indices start at 1");
    w.letters.emplace_back(symbols_.resolve(name));
    return w;
  }

  long parse_int() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(text_[start]))))
      fail(Errc::SyntaxError, "expected integer at '" + rest() + "'");
    return std::stol(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(Errc::SyntaxError, std::string("expected '") + c + "' at '" + rest() + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string rest() const { return text_.substr(pos_, 12); }

  const std::string& text_;
  const SymbolTable& symbols_;
  size_t pos_ = 0;
};

}  // namespace

FWord parse_word(const std::string& text, const SymbolTable& symbols) {
  return WordParser(text, symbols).parse();
}

std::string word_str(const FWord& w) {
  if (w.letters.empty()) return "1";
  std::string s;
  for (const auto& l : w.letters) {
    if (!s.empty()) s += "*";
    if (const VarLetter* v = std::get_if<VarLetter>(&l)) {
      s += "y" + std::to_string(v->index);
      if (v->sign < 0) s += "^-1";
    } else {
      s += "<" + std::get<PLHomeo>(l).str() + ">";
    }
  }
  return s;
}

IntervalSet omega_set(const FReducedForm& w) {
  if (w.is_pure_variable())
    return IntervalSet::of(open_iv(Rational(0), Rational(1)));  // [0,1] minus Fix(F) = {0,1}
  IntervalSet acc = support(w.blocks[0].v);
  PLHomeo partial = w.blocks[0].v;  // v_i * ... * v_1
  for (size_t i = 1; i < w.blocks.size(); ++i) {
    acc = acc.intersect(apply(partial.inverse(), support(w.blocks[i].v)));
    partial = w.blocks[i].v * partial;
  }
  return acc;
}

bool is_explicitly_oscillating(const FReducedForm& w, const IntervalSet& V) {
  if (w.is_pure_variable() && w.pure_variable.empty()) return false;
  return V.intersects(omega_set(w));
}

std::vector<IntervalSet> v_family(const FReducedForm& w, const IntervalSet& A) {
  std::vector<IntervalSet> out;
  std::vector<IntervalSet> level{A};
  for (const auto& block : w.blocks) {
    std::vector<IntervalSet> next;
    next.reserve(level.size() * 2);
    for (const IntervalSet& s : level) {
      next.push_back(s);                       // epsilon = 0
      next.push_back(apply(block.v, s));       // epsilon = 1
    }
    for (const IntervalSet& s : next)
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    level = std::move(next);
  }
  return out;
}

FWord law_lwc2m(const Dyadic& p1, const Dyadic& q1, const Dyadic& p2, const Dyadic& q2,
                const PLHomeo& h1, const PLHomeo& h2) {
  if (!(Dyadic(0) <= p1 && p1 < q1 && q1 <= p2 && p2 < q2 && q2 <= Dyadic(1)))
    fail(Errc::BadIntervals, "need disjoint dyadic intervals with p1 < p2");
  IntervalSet i1 = IntervalSet::of(closed_iv(p1.to_rational(), q1.to_rational()));
  IntervalSet i2 = IntervalSet::of(closed_iv(p2.to_rational(), q2.to_rational()));
  if (h1.is_identity() || !support(h1).subset_of(i1))
    fail(Errc::BadConstants, "h1 must be nontrivial with support in the first interval");
  if (h2.is_identity() || !support(h2).subset_of(i2))
    fail(Errc::BadConstants, "h2 must be nontrivial with support in the second interval");

  auto var = [](int sign) {
    FWord w;
    w.arity = 1;
    w.letters.emplace_back(VarLetter{1, sign});
    return w;
  };
  auto cst = [](const PLHomeo& e) {
    FWord w;
    w.arity = 1;
    w.letters.emplace_back(e);
    return w;
  };
  FWord y = var(+1), yi = var(-1);
  FWord minus = concat(
      concat(concat(yi, cst(h1.inverse())), concat(y, cst(h2.inverse()))),
      concat(concat(yi, cst(h1)), concat(y, cst(h2))));
  FWord plus = concat(
      concat(concat(y, cst(h1.inverse())), concat(yi, cst(h2.inverse()))),
      concat(concat(y, cst(h1)), concat(yi, cst(h2))));
  return concat(concat(inverse(minus), inverse(plus)), concat(minus, plus));
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 step over seed + golden-ratio stride
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

PLHomeo random_element(std::uint64_t seed, unsigned max_letters) {
  std::mt19937_64 rng(seed);
  unsigned len = max_letters == 0 ? 0 : static_cast<unsigned>(rng() % (max_letters + 1));
  static const PLHomeo g0 = generator_x(0);
  static const PLHomeo g1 = generator_x(1);
  static const PLHomeo g0i = g0.inverse();
  static const PLHomeo g1i = g1.inverse();
  PLHomeo acc;
  for (unsigned i = 0; i < len; ++i) {
    switch (rng() % 4) {
      case 0: acc = acc * g0; break;
      case 1: acc = acc * g0i; break;
      case 2: acc = acc * g1; break;
      default: acc = acc * g1i; break;
    }
  }
  return acc;
}

namespace {

std::vector<PLHomeo> sample_tuple(std::uint64_t seed, std::uint64_t index, int arity,
                                  unsigned max_letters) {
  std::vector<PLHomeo> args;
  args.reserve(static_cast<size_t>(arity));
  for (int i = 0; i < arity; ++i)
    args.push_back(random_element(split_seed(seed, index * 64 + static_cast<std::uint64_t>(i)),
                                  max_letters));
  return args;
}

}  // namespace

LawCheck is_law_sampled(const FWord& w, std::uint64_t seed, unsigned max_letters, std::uint64_t n,
                        Exec exec) {
  LawCheck result;
  result.holds = true;
  if (w.empty()) return result;  // vacuously a law

  if (exec == Exec::Serial) {
    for (std::uint64_t i = 0; i < n; ++i) {
      auto args = sample_tuple(seed, i, w.arity, max_letters);
      if (!evaluate_word(w, args).is_identity()) {
        result.holds = false;
        result.counterexample = std::move(args);
        result.counterexample_index = i;
        return result;
      }
    }
    return result;
  }

  // Parallel: per-index seeds make the outcome identical to the serial
  // kernel; the smallest failing index wins.
  std::atomic<std::int64_t> first_fail{-1};
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
    std::int64_t seen = first_fail.load(std::memory_order_relaxed);
    if (seen >= 0 && seen < i) continue;
    auto args = sample_tuple(seed, static_cast<std::uint64_t>(i), w.arity, max_letters);
    if (!evaluate_word(w, args).is_identity()) {
      std::int64_t cur = first_fail.load();
      while ((cur < 0 || i < cur) && !first_fail.compare_exchange_weak(cur, i)) {
      }
    }
  }
  if (first_fail.load() >= 0) {
    result.holds = false;
    result.counterexample_index = static_cast<std::uint64_t>(first_fail.load());
    result.counterexample =
        sample_tuple(seed, result.counterexample_index, w.arity, max_letters);
  }
  return result;
}

}  // namespace flimit
