#include "flimit/hnn.hpp"

#include <cctype>

#include "flimit/error.hpp"

namespace flimit {

std::string HnnWord::str() const {
  std::string s = head.is_identity() && !tail.empty() ? "" : "<" + head.str() + ">";
  for (const auto& [e, f] : tail) {
    s += e > 0 ? " t" : " t^-1";
    if (!f.is_identity()) s += " <" + f.str() + ">";
  }
  return s.empty() ? "1" : s;
}

MembershipOracle oracle_h_lt1() {
  MembershipOracle o;
  o.name = "h_lt1";
  o.contains = [](const PLHomeo& f) { return in_h_lt1(f); };
  o.contains_image = o.contains;
  o.alpha = [](const PLHomeo& f) { return std::optional<PLHomeo>(f); };
  o.alpha_inverse = o.alpha;
  o.complete = true;
  return o;
}

MembershipOracle oracle_cyclic(const PLHomeo& h) {
  if (h.is_identity()) fail(Errc::IdentityInput, "cyclic oracle needs a nontrivial generator");
  MembershipOracle o;
  o.name = "cyclic";
  o.contains = [h](const PLHomeo& f) { return is_power(f, h).has_value(); };
  o.contains_image = o.contains;
  o.alpha = [](const PLHomeo& f) { return std::optional<PLHomeo>(f); };
  o.alpha_inverse = o.alpha;
  o.complete = true;
  return o;
}

HnnWord britton_reduce(const HnnWord& input, const MembershipOracle& oracle) {
  HnnWord w = input;
  size_t i = 0;
  while (w.tail.size() >= 2 && i + 1 < w.tail.size()) {
    int e1 = w.tail[i].first;
    int e2 = w.tail[i + 1].first;
    const PLHomeo& mid = w.tail[i].second;
    std::optional<PLHomeo> replacement;
    if (e1 == -1 && e2 == +1 && oracle.contains(mid)) {
      replacement = oracle.alpha(mid);
      if (!replacement) fail(Errc::OracleInconsistent, "alpha undefined on a contained element");
    } else if (e1 == +1 && e2 == -1 && oracle.contains_image(mid)) {
      replacement = oracle.alpha_inverse(mid);
      if (!replacement)
        fail(Errc::OracleInconsistent, "alpha_inverse undefined on a contained element");
    }
    if (!replacement) {
      ++i;
      continue;
    }
    // ... f_prev t^e1 mid t^e2 f_next ... -> ... f_prev*phi(mid)*f_next ...
    PLHomeo merged = *replacement * w.tail[i + 1].second;
    if (i == 0)
      w.head = w.head * merged;
    else
      w.tail[i - 1].second = w.tail[i - 1].second * merged;
    w.tail.erase(w.tail.begin() + static_cast<long>(i),
                 w.tail.begin() + static_cast<long>(i) + 2);
    i = i > 0 ? i - 1 : 0;  // a new pinch may form one step earlier
  }
  return w;
}

Triviality is_trivial_in_hnn(const HnnWord& w, const MembershipOracle& oracle) {
  HnnWord r = britton_reduce(w, oracle);
  if (r.stable_letters() > 0) return oracle.complete ? Triviality::No : Triviality::Unknown;
  return r.head.is_identity() ? Triviality::Yes : Triviality::No;
}

const char* triviality_str(Triviality t) {
  switch (t) {
    case Triviality::Yes: return "yes";
    case Triviality::No: return "no";
    case Triviality::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Tokenizer/parser for the extended grammar: like the word grammar, with a
// reserved atom "t" and no variables.
class HnnParser {
public:
  HnnParser(const std::string& text, const SymbolTable& symbols)
      : text_(text), symbols_(symbols) {}

  HnnWord parse() {
    HnnWord w = parse_product();
    skip_ws();
    if (pos_ != text_.size()) fail(Errc::SyntaxError, "unexpected '" + text_.substr(pos_) + "'");
    return w;
  }

private:
  static HnnWord mul(const HnnWord& a, const HnnWord& b) {
    HnnWord out = a;
    if (out.tail.empty()) {
      out.head = out.head * b.head;
    } else {
      out.tail.back().second = out.tail.back().second * b.head;
    }
    out.tail.insert(out.tail.end(), b.tail.begin(), b.tail.end());
    return out;
  }

  static HnnWord inverse(const HnnWord& w) {
    HnnWord out;
    if (w.tail.empty()) {
      out.head = w.head.inverse();
      return out;
    }
    out.head = w.tail.back().second.inverse();
    for (size_t i = w.tail.size(); i-- > 0;) {
      PLHomeo next = i == 0 ? w.head.inverse() : w.tail[i - 1].second.inverse();
      out.tail.emplace_back(-w.tail[i].first, next);
    }
    return out;
  }

  HnnWord parse_product() {
    HnnWord w = parse_term();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        ++pos_;
        w = mul(w, parse_term());
      } else {
        break;
      }
    }
    return w;
  }

  HnnWord parse_term() {
    HnnWord a = parse_atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      long e = parse_int();
      HnnWord base = e < 0 ? inverse(a) : a;
      long reps = e < 0 ? -e : e;
      HnnWord out;
      for (long i = 0; i < reps; ++i) out = mul(out, base);
      return out;
    }
    return a;
  }

  HnnWord parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail(Errc::SyntaxError, "unexpected end of word");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      HnnWord w = parse_product();
      expect(')');
      return w;
    }
    if (c == '[') {
      ++pos_;
      HnnWord a = parse_product();
      expect(',');
      HnnWord b = parse_product();
      expect(']');
      return mul(mul(inverse(a), inverse(b)), mul(a, b));
    }
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_')
      fail(Errc::SyntaxError, "unexpected '" + text_.substr(pos_, 8) + "'");
    std::string name;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      name += text_[pos_++];
    HnnWord w;
    if (name == "t") {
      w.tail.emplace_back(+1, PLHomeo::identity());
      return w;
    }
    if (name.size() >= 2 && name[0] == 'y' &&
        std::isdigit(static_cast<unsigned char>(name[1])))
      fail(Errc::SyntaxError, "variables are not allowed in stable-letter words");
    w.head = symbols_.resolve(name);
    return w;
  }

  long parse_int() {
    skip_ws();
    size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail(Errc::SyntaxError, "expected integer");
    return std::stol(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(Errc::SyntaxError, std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  const std::string& text_;
  const SymbolTable& symbols_;
  size_t pos_ = 0;
};

}  // namespace

HnnWord parse_hnn(const std::string& text, const SymbolTable& symbols) {
  return HnnParser(text, symbols).parse();
}

}  // namespace flimit
