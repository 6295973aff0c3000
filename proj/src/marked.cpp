#include "flimit/marked.hpp"

#include "flimit/solvers.hpp"

namespace flimit {

std::vector<PLHomeo> default_enum_E(unsigned n) {
  std::vector<PLHomeo> out;
  for (unsigned d = 1; out.size() < n; ++d) {
    for (unsigned j = 1; j <= d && out.size() < n; ++j) {
      unsigned i = d - j;
      Dyadic hi = Dyadic(1) - Dyadic(Int(1), j);
      out.push_back(iota(Dyadic(0), hi, generator_x(i)));
    }
  }
  return out;
}

namespace {

// letters of the default word alphabet, in enumeration order
struct AlphabetLetter {
  bool variable;
  int sign;      // for the variable
  unsigned gen;  // generator index
  bool inv;
};

const std::vector<AlphabetLetter>& alphabet() {
  static const std::vector<AlphabetLetter> a = {
      {true, +1, 0, false}, {true, -1, 0, false}, {false, 0, 0, false},
      {false, 0, 0, true},  {false, 0, 1, false}, {false, 0, 1, true},
  };
  return a;
}

FWord word_from_digits(const std::vector<size_t>& digits) {
  FWord w;
  w.arity = 1;
  for (size_t d : digits) {
    const AlphabetLetter& l = alphabet()[d];
    if (l.variable)
      w.letters.emplace_back(VarLetter{1, l.sign});
    else {
      PLHomeo g = generator_x(l.gen);
      w.letters.emplace_back(l.inv ? g.inverse() : g);
    }
  }
  return w;
}

}  // namespace

std::vector<FWord> default_enum_W(unsigned n) {
  std::vector<FWord> out;
  std::vector<FWord> seen;
  for (unsigned len = 1; out.size() < n && len < 12; ++len) {
    std::vector<size_t> digits(len, 0);
    while (true) {
      FWord w = reduce(word_from_digits(digits));
      if (w.has_variable()) {
        H1WordClass cls = classify_h1_word(w);
        bool admissible = cls == H1WordClass::PureVariable || cls == H1WordClass::Exceptional ||
                          cls == H1WordClass::MainRoute;
        if (admissible && std::find(seen.begin(), seen.end(), w) == seen.end()) {
          seen.push_back(w);
          out.push_back(w);
          if (out.size() >= n) break;
        }
      }
      // odometer over the alphabet
      size_t pos = len;
      while (pos > 0 && ++digits[pos - 1] == alphabet().size()) digits[--pos] = 0;
      if (pos == 0) break;
    }
  }
  return out;
}

H1Step h1_sequence(unsigned n) { return h1_sequence(n, default_enum_E(n), default_enum_W(n)); }

H1Step h1_sequence(unsigned n, const std::vector<PLHomeo>& enumE, const std::vector<FWord>& enumW) {
  std::vector<PLHomeo> E(enumE.begin(), enumE.begin() + std::min<size_t>(n, enumE.size()));
  std::vector<FWord> W(enumW.begin(), enumW.begin() + std::min<size_t>(n, enumW.size()));
  H1Solution sol = solve_h1(E, W);

  H1Step step;
  step.g = sol.g;
  step.k = sol.k;
  step.tuple.markers = {sol.g, generator_x(0), generator_x(1)};
  for (const PLHomeo& e : E) {
    FWord w;
    w.arity = 1;
    w.letters.emplace_back(VarLetter{1, -1});
    w.letters.emplace_back(e.inverse());
    w.letters.emplace_back(VarLetter{1, +1});
    w.letters.emplace_back(e);
    step.constraints.add(w, Sign::Equal);
  }
  for (const FWord& w : W) step.constraints.add(w, Sign::Unequal);
  return step;
}

}  // namespace flimit
