#include "flimit/solvers.hpp"

#include <algorithm>

namespace flimit {

Dyadic moved_point(const PLHomeo& f) {
  if (f.is_identity()) fail(Errc::IdentityInput, "identity moves no point");
  std::vector<Dyadic> candidates;
  const auto& pts = f.breakpoints();
  for (const auto& p : pts) candidates.push_back(p.first);
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    candidates.push_back((pts[i].first + pts[i + 1].first).times_pow2(-1));
  std::optional<Dyadic> best;
  for (const Dyadic& c : candidates) {
    if (f(c) == c) continue;
    if (!best || c.exp() < best->exp() || (c.exp() == best->exp() && c.num() < best->num()))
      best = c;
  }
  // a map fixing every breakpoint and every midpoint is the identity
  return *best;
}

namespace {

// Smallest closed dyadic interval with at least two grid points strictly
// inside the widest gap left by the forbidden points.
std::pair<Dyadic, Dyadic> pick_free_interval(std::vector<Rational> forbidden) {
  forbidden.push_back(Rational(0));
  forbidden.push_back(Rational(1));
  std::sort(forbidden.begin(), forbidden.end());
  forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());
  Rational best_lo(0), best_hi(0), best_w(0);
  for (size_t i = 0; i + 1 < forbidden.size(); ++i) {
    Rational w = forbidden[i + 1] - forbidden[i];
    if (w > best_w) {
      best_w = w;
      best_lo = forbidden[i];
      best_hi = forbidden[i + 1];
    }
  }
  if (best_w == Rational(0)) fail(Errc::BadInput, "no free interval available");
  for (unsigned long k = 1;; ++k) {
    // dyadic grid points j/2^k in the open gap
    // smallest j with j/2^k > best_lo, largest j with j/2^k < best_hi
    Int two_k = Int(1) << k;
    Int j_lo, j_hi;
    // j_lo = floor(best_lo * 2^k) + 1
    mpz_fdiv_q(j_lo.get_mpz_t(), Int(best_lo.num() * two_k).get_mpz_t(),
               best_lo.den().get_mpz_t());
    j_lo += 1;
    // j_hi = ceil(best_hi * 2^k) - 1
    mpz_cdiv_q(j_hi.get_mpz_t(), Int(best_hi.num() * two_k).get_mpz_t(),
               best_hi.den().get_mpz_t());
    j_hi -= 1;
    if (j_hi - j_lo >= 1) {
      if (!j_lo.fits_slong_p()) fail(Errc::BadInput, "free interval grid overflow");
      return {Dyadic(j_lo, k), Dyadic(j_hi, k)};
    }
  }
}

}  // namespace

IvaSolution solve_nontrivial_product(const std::vector<FWord>& words,
                                     const std::vector<PLHomeo>& h) {
  std::vector<FReducedForm> forms;
  forms.reserve(words.size());
  for (const FWord& w : words) {
    FReducedForm rf = to_reduced_form(w);
    if (!rf.has_nontrivial_constant_product())
      fail(Errc::BadInput, "word has trivial product of constants: " + word_str(w));
    if (w.arity > static_cast<int>(h.size()))
      fail(Errc::ArityError, "word arity exceeds the generating tuple");
    forms.push_back(std::move(rf));
  }

  IvaSolution sol;
  for (const FReducedForm& rf : forms) {
    Dyadic p = moved_point(rf.constants_product());
    // images of p under every final segment v_i ... v_1 (including the
    // empty one and the full product)
    Rational q = p.to_rational();
    sol.forbidden.push_back(q);
    for (const auto& block : rf.blocks) {
      q = block.v(q);
      sol.forbidden.push_back(q);
    }
  }
  auto [lo, hi] = sol.forbidden.empty() ? std::pair<Dyadic, Dyadic>{Dyadic(0), Dyadic(1)}
                                        : pick_free_interval(sol.forbidden);
  sol.u_lo = lo;
  sol.u_hi = hi;
  for (const PLHomeo& hi_gen : h) sol.tuple.push_back(iota(lo, hi, hi_gen));

  // Re-verify everything the construction promises.
  for (size_t j = 0; j < words.size(); ++j) {
    std::vector<PLHomeo> args(sol.tuple.begin(),
                              sol.tuple.begin() + words[j].arity);
    PLHomeo value = evaluate_word(words[j], args);
    Dyadic p = moved_point(forms[j].constants_product());
    if (value(p) != forms[j].constants_product()(p) || value.is_identity())
      fail(Errc::BadInput, "verification failed for word " + std::to_string(j));
  }
  IntervalSet u_set = IntervalSet::of(closed_iv(lo.to_rational(), hi.to_rational()));
  for (const Rational& q : sol.forbidden)
    if (u_set.contains(q)) fail(Errc::BadInput, "chosen interval meets a forbidden point");
  return sol;
}

H1WordClass classify_h1_word(const FWord& input) {
  FWord w = reduce(input);
  if (w.empty()) return H1WordClass::TrivialInExtension;
  if (!w.has_variable()) return H1WordClass::Inadmissible;
  if (w.arity != 1) return H1WordClass::Inadmissible;

  FReducedForm rf = to_reduced_form(w);
  if (rf.is_pure_variable()) return H1WordClass::PureVariable;

  // Absorb a tail constant that is trivial near 1 into the head exponent
  // while one is present; inside the centralized extension this is a
  // conjugation plus one defining relation.
  auto blocks = rf.blocks;
  while (blocks.size() >= 2 && in_h_lt1(blocks[0].v)) {
    // y^a1 absorbed: v_2 v_1 becomes the new tail constant
    PLHomeo merged = blocks[1].v * blocks[0].v;
    std::vector<VarLetter> u1 = blocks[0].u;
    blocks.erase(blocks.begin());
    blocks[0].v = merged;
    // head exponent gains a1; represented by appending u1 to the head run
    blocks.back().u.insert(blocks.back().u.end(), u1.begin(), u1.end());
    if (blocks[0].v.is_identity()) {
      // tail constant vanished; if nothing else remains the word dies
      bool any_const = blocks.size() > 1;
      if (!any_const) {
        // only variable letters left; net exponent decides
        long net = 0;
        for (const auto& b : blocks)
          for (const VarLetter& v : b.u) net += v.sign;
        return net == 0 ? H1WordClass::TrivialInExtension : H1WordClass::PureVariable;
      }
      blocks.erase(blocks.begin());
    }
  }
  if (blocks.size() == 1 && in_h_lt1(blocks[0].v)) {
    bool has_var = !blocks[0].u.empty();
    long net = 0;
    for (const VarLetter& v : blocks[0].u) net += v.sign;
    if (!has_var || net == 0) return H1WordClass::Inadmissible;
    return H1WordClass::Exceptional;
  }
  for (const auto& b : blocks)
    if (in_h_lt1(b.v)) return H1WordClass::Inadmissible;
  return H1WordClass::MainRoute;
}

namespace {

// Upper end of the support closure, or 0 for the identity.
Rational supp_sup(const PLHomeo& f) {
  IntervalSet s = support(f);
  if (s.empty()) return Rational(0);
  return s.parts().back().hi;
}

std::vector<PLHomeo> h1_candidates(const Dyadic& lo, unsigned k, std::uint64_t seed,
                                   std::uint64_t count) {
  // elements supported strictly inside [lo, 1): rescaled generators over a
  // shrinking interval lattice, then short seeded products
  std::vector<PLHomeo> out;
  std::vector<std::pair<Dyadic, Dyadic>> windows;
  for (unsigned j = 1; j <= 3 && out.size() < count; ++j) {
    Dyadic hi = Dyadic(1) - Dyadic(Int(1), k + j);
    windows.emplace_back(lo, hi);
  }
  for (const auto& [a, b] : windows) {
    for (const PLHomeo& base :
         {generator_x(0), generator_x(1), generator_x(0).inverse(),
          generator_x(0) * generator_x(1), pow(generator_x(0), 2)}) {
      if (out.size() >= count) break;
      out.push_back(iota(a, b, base));
    }
  }
  std::uint64_t i = 0;
  while (out.size() < count) {
    PLHomeo r = random_element(split_seed(seed, i++), 8);
    if (r.is_identity()) continue;
    out.push_back(iota(windows.front().first, windows.front().second, r));
  }
  return out;
}

}  // namespace

H1Solution solve_h1(const std::vector<PLHomeo>& E, const std::vector<FWord>& W,
                    std::uint64_t budget) {
  struct Prepared {
    FWord original;
    H1WordClass cls;
    FReducedForm rf;
  };
  std::vector<Prepared> words;
  Rational lo_bound(0);  // supports of E and exceptional constants end here
  for (const PLHomeo& e : E) {
    if (!in_h_lt1(e)) fail(Errc::PreconditionFailed, "commutation target not trivial near 1");
    lo_bound = std::max(lo_bound, supp_sup(e));
  }
  for (const FWord& w : W) {
    H1WordClass cls = classify_h1_word(w);
    if (cls == H1WordClass::Inadmissible || cls == H1WordClass::TrivialInExtension)
      fail(Errc::PreconditionFailed, "word not admissible: " + word_str(w));
    Prepared p{reduce(w), cls, {}};
    if (cls != H1WordClass::PureVariable) p.rf = to_reduced_form(w);
    if (cls == H1WordClass::Exceptional)
      lo_bound = std::max(lo_bound, supp_sup(p.rf.blocks[0].v));
    words.push_back(std::move(p));
  }

  std::uint64_t spent = 0;
  for (unsigned k = 1; k < 64; ++k) {
    Dyadic lo = Dyadic(1) - Dyadic(Int(1), k);
    if (lo.to_rational() < lo_bound) continue;
    IntervalSet window = IntervalSet::of(Interval{lo.to_rational(), Rational(1), true, false});

    // main-route words must oscillate across the window, and every image of
    // the window under their partial constant products must clear E
    bool k_ok = true;
    for (const Prepared& p : words) {
      if (p.cls != H1WordClass::MainRoute) continue;
      if (!window.subset_of(omega_set(p.rf))) {
        k_ok = false;
        break;
      }
      for (const IntervalSet& img : v_family(p.rf, window)) {
        for (const PLHomeo& e : E)
          if (img.intersects(support(e))) {
            k_ok = false;
            break;
          }
        if (!k_ok) break;
      }
      if (!k_ok) break;
    }
    if (!k_ok) continue;

    for (const PLHomeo& g : h1_candidates(lo, k, 0x68316b ^ k, 24)) {
      if (++spent > budget) fail(Errc::BudgetExceeded, "candidate budget exhausted");
      if (g.is_identity()) continue;
      bool ok = support(g).subset_of(window);
      for (const PLHomeo& e : E)
        if (!ok || !commutator(g, e).is_identity()) {
          ok = false;
          break;
        }
      for (const Prepared& p : words) {
        if (!ok) break;
        if (evaluate_word(p.original, {g}).is_identity()) ok = false;
      }
      if (!ok) continue;

      H1Solution sol;
      sol.g = g;
      sol.k = k;
      for (const PLHomeo& e : E) sol.verified.push_back("[g, e] = 1 with supp(e) ends " +
                                                        supp_sup(e).str());
      for (const Prepared& p : words) sol.verified.push_back("w(g) != 1 for " +
                                                             word_str(p.original));
      return sol;
    }
  }
  fail(Errc::BudgetExceeded, "no admissible localization level found");
}

std::optional<std::vector<PLHomeo>> solve_explicit_oscillating(
    const InequalitySystem& system, const std::vector<IntervalSet>& regions,
    std::uint64_t seed, std::uint64_t budget) {
  if (regions.size() != system.words.size())
    fail(Errc::PreconditionFailed, "need one region per word");
  int arity = 0;
  std::vector<FReducedForm> forms;
  IntervalSet allowed;  // union of V_w(O_j): candidate supports must stay inside
  for (size_t j = 0; j < system.words.size(); ++j) {
    FWord w = reduce(system.words[j]);
    if (w.empty()) fail(Errc::PreconditionFailed, "trivial word in system");
    arity = std::max(arity, w.arity);
    FReducedForm rf = to_reduced_form(w);
    if (regions[j].empty() || !regions[j].subset_of(omega_set(rf)))
      fail(Errc::PreconditionFailed,
           "word " + std::to_string(j) + " is not explicitly oscillating in its region");
    for (const IntervalSet& img : v_family(rf, regions[j])) allowed = allowed.unite(img);
    if (rf.is_pure_variable()) allowed = allowed.unite(regions[j]);
    forms.push_back(std::move(rf));
  }
  if (system.support_region) allowed = allowed.intersect(*system.support_region);

  // Small dyadic windows inside each region to host candidate supports.
  std::vector<std::pair<Dyadic, Dyadic>> windows;
  for (const IntervalSet& region : regions) {
    IntervalSet usable = system.support_region ? region.intersect(*system.support_region) : region;
    for (const Interval& iv : usable.parts()) {
      for (unsigned long k = 1; k < 48; ++k) {
        Int two_k = Int(1) << k;
        Int j_lo, j_hi;
        mpz_fdiv_q(j_lo.get_mpz_t(), Int(iv.lo.num() * two_k).get_mpz_t(), iv.lo.den().get_mpz_t());
        j_lo += 1;
        mpz_cdiv_q(j_hi.get_mpz_t(), Int(iv.hi.num() * two_k).get_mpz_t(), iv.hi.den().get_mpz_t());
        j_hi -= 1;
        if (j_hi - j_lo >= 1) {
          windows.emplace_back(Dyadic(j_lo, k), Dyadic(j_hi, k));
          break;
        }
      }
    }
  }
  if (windows.empty()) return std::nullopt;

  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    std::uint64_t s = split_seed(seed, attempt);
    std::vector<PLHomeo> tuple;
    for (int i = 0; i < arity; ++i) {
      PLHomeo g;
      for (size_t wdx = 0; wdx < windows.size(); ++wdx) {
        std::uint64_t s2 = split_seed(s, static_cast<std::uint64_t>(i) * 97 + wdx);
        PLHomeo base = attempt == 0 ? (i % 2 == 0 ? generator_x(0) : generator_x(1))
                                    : random_element(s2, 6);
        if (base.is_identity()) base = generator_x(0);
        g = g * iota(windows[wdx].first, windows[wdx].second, base);
      }
      tuple.push_back(g);
    }

    bool ok = true;
    for (const PLHomeo& g : tuple)
      if (!support(g).subset_of(allowed)) ok = false;
    for (const PLHomeo& e : system.commute_with)
      for (const PLHomeo& g : tuple)
        if (!ok || !commutator(g, e).is_identity()) ok = false;
    for (const FWord& w : system.words) {
      if (!ok) break;
      std::vector<PLHomeo> args(tuple.begin(), tuple.begin() + reduce(w).arity);
      if (evaluate_word(reduce(w), args).is_identity()) ok = false;
    }
    if (ok) return tuple;
  }
  return std::nullopt;
}

PLHomeo free_pair_witness(const PLHomeo& h, unsigned max_len, std::uint64_t seed,
                          std::uint64_t budget) {
  if (h.is_identity()) fail(Errc::IdentityInput, "base of a free pair must be nontrivial");

  // check every freely reduced word over {h, g}^{\pm1} of length <= max_len
  auto certifies = [&](const PLHomeo& g) {
    if (g.is_identity()) return false;
    PLHomeo letters[4] = {h, h.inverse(), g, g.inverse()};
    auto inverse_of = [](int a) { return a ^ 1; };
    struct Node {
      std::vector<int> word;
      PLHomeo value;
    };
    std::vector<Node> frontier;
    for (int a = 0; a < 4; ++a) {
      if (letters[a].is_identity()) return false;
      frontier.push_back({{a}, letters[a]});
    }
    for (unsigned len = 1; len <= max_len; ++len) {
      std::vector<Node> next;
      for (const Node& nd : frontier) {
        if (nd.value.is_identity()) return false;
        if (len == max_len) continue;
        for (int a = 0; a < 4; ++a) {
          if (a == inverse_of(nd.word.back())) continue;
          next.push_back({nd.word, nd.value * letters[a]});
          next.back().word.push_back(a);
        }
      }
      frontier = std::move(next);
    }
    return true;
  };

  for (std::uint64_t attempt = 0; attempt < budget; ++attempt) {
    PLHomeo c = random_element(split_seed(seed, attempt), 10);
    PLHomeo g = attempt == 0 ? generator_x(1) : conjugate(generator_x(1 + attempt % 2), c);
    if (certifies(g)) return g;
  }
  fail(Errc::BudgetExceeded, "no certified partner found within budget");
}

}  // namespace flimit
