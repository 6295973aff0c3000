#pragma once

#include <concepts>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "flimit/error.hpp"

namespace flimit {

template <class E>
concept GroupElement = requires(const E& a, const E& b) {
  { a * b } -> std::convertible_to<E>;
  { a.inverse() } -> std::convertible_to<E>;
  { a.is_identity() } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { E::identity() } -> std::convertible_to<E>;
};

/// One occurrence of a variable, y_index^sign with sign in {+1,-1}.
struct VarLetter {
  int index;  // 1-based
  int sign;
  friend bool operator==(const VarLetter&, const VarLetter&) = default;
};

/// A word with constants: letters are variables or group elements, with a
/// declared arity. Kept freely reduced by reduce(): no cancelling variable
/// pair, no adjacent constants, no identity constants.
template <GroupElement E>
struct BasicWord {
  using Letter = std::variant<VarLetter, E>;
  std::vector<Letter> letters;
  int arity = 0;

  bool empty() const { return letters.empty(); }
  bool has_variable() const {
    for (const auto& l : letters)
      if (std::holds_alternative<VarLetter>(l)) return true;
    return false;
  }
  bool has_constant() const {
    for (const auto& l : letters)
      if (std::holds_alternative<E>(l)) return true;
    return false;
  }
  friend bool operator==(const BasicWord&, const BasicWord&) = default;
};

template <GroupElement E>
BasicWord<E> reduce(const BasicWord<E>& w) {
  BasicWord<E> out;
  out.arity = w.arity;
  auto& ls = out.letters;
  auto push = [&](const typename BasicWord<E>::Letter& l) {
    if (const E* c = std::get_if<E>(&l)) {
      if (c->is_identity()) return;
      if (!ls.empty()) {
        if (E* prev = std::get_if<E>(&ls.back())) {
          E merged = *prev * *c;
          ls.pop_back();
          if (!merged.is_identity()) ls.emplace_back(std::move(merged));
          return;
        }
      }
      ls.push_back(l);
      return;
    }
    const VarLetter v = std::get<VarLetter>(l);
    if (!ls.empty()) {
      if (const VarLetter* prev = std::get_if<VarLetter>(&ls.back())) {
        if (prev->index == v.index && prev->sign == -v.sign) {
          ls.pop_back();
          return;
        }
      }
    }
    ls.push_back(l);
  };
  // single left-to-right pass; each push re-examines the new tail, which
  // is enough because the prefix stays reduced
  std::vector<typename BasicWord<E>::Letter> pending(w.letters.begin(), w.letters.end());
  for (size_t i = 0; i < pending.size(); ++i) {
    push(pending[i]);
    // a dropped identity constant can expose a cancelling variable pair
    while (ls.size() >= 2) {
      const VarLetter* a = std::get_if<VarLetter>(&ls[ls.size() - 2]);
      const VarLetter* b = std::get_if<VarLetter>(&ls.back());
      if (a && b && a->index == b->index && a->sign == -b->sign) {
        ls.pop_back();
        ls.pop_back();
      } else {
        break;
      }
    }
  }
  return out;
}

template <GroupElement E>
BasicWord<E> concat(const BasicWord<E>& a, const BasicWord<E>& b) {
  BasicWord<E> out;
  out.arity = std::max(a.arity, b.arity);
  out.letters = a.letters;
  out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
  return reduce(out);
}

template <GroupElement E>
BasicWord<E> inverse(const BasicWord<E>& w) {
  BasicWord<E> out;
  out.arity = w.arity;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (const E* c = std::get_if<E>(&*it))
      out.letters.emplace_back(c->inverse());
    else {
      VarLetter v = std::get<VarLetter>(*it);
      out.letters.emplace_back(VarLetter{v.index, -v.sign});
    }
  }
  return out;
}

template <GroupElement E>
E evaluate_word(const BasicWord<E>& w, const std::vector<E>& args) {
  if (static_cast<int>(args.size()) != w.arity)
    fail(Errc::ArityError, "word needs " + std::to_string(w.arity) + " arguments, got " +
                               std::to_string(args.size()));
  E acc = E::identity();
  for (const auto& l : w.letters) {
    if (const E* c = std::get_if<E>(&l))
      acc = acc * *c;
    else {
      const VarLetter v = std::get<VarLetter>(l);
      const E& g = args[static_cast<size_t>(v.index - 1)];
      acc = acc * (v.sign > 0 ? g : g.inverse());
    }
  }
  return acc;
}

/// Substitutes one-variable words for the variables of w, then reduces.
template <GroupElement E>
BasicWord<E> substitute_variables(const BasicWord<E>& w, const std::vector<BasicWord<E>>& images) {
  if (static_cast<int>(images.size()) != w.arity)
    fail(Errc::ArityError, "substitution needs " + std::to_string(w.arity) + " images");
  for (const auto& im : images)
    for (const auto& l : im.letters)
      if (const VarLetter* v = std::get_if<VarLetter>(&l); v && v->index != 1)
        fail(Errc::ArityError, "images must use only y1");
  BasicWord<E> out;
  out.arity = 1;
  for (const auto& l : w.letters) {
    if (std::holds_alternative<E>(l)) {
      out.letters.push_back(l);
      continue;
    }
    const VarLetter v = std::get<VarLetter>(l);
    const BasicWord<E>& im = images[static_cast<size_t>(v.index - 1)];
    BasicWord<E> piece = v.sign > 0 ? im : inverse(im);
    out.letters.insert(out.letters.end(), piece.letters.begin(), piece.letters.end());
  }
  return reduce(out);
}

/// The form u_n v_n ... u_1 v_1 (all v_i nontrivial), reached from the
/// input by the recorded cyclic conjugation: blocks_word = conj * w * conj^-1.
/// Pure-variable inputs have no blocks and live in pure_variable.
template <GroupElement E>
struct ReducedForm {
  struct Block {
    std::vector<VarLetter> u;  // may be empty only where reducedness allows
    E v;
  };
  std::vector<Block> blocks;  // application order: blocks[0] = (u_1, v_1)
  std::vector<VarLetter> pure_variable;
  BasicWord<E> conjugator;

  bool is_pure_variable() const { return blocks.empty(); }
  size_t block_count() const { return blocks.size(); }

  BasicWord<E> to_word(int arity) const {
    BasicWord<E> w;
    w.arity = arity;
    if (is_pure_variable()) {
      for (const VarLetter& v : pure_variable) w.letters.emplace_back(v);
      return w;
    }
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) {
      for (const VarLetter& v : it->u) w.letters.emplace_back(v);
      w.letters.emplace_back(it->v);
    }
    return w;
  }

  /// v_n * ... * v_1.
  E constants_product() const {
    E acc = E::identity();
    for (auto it = blocks.rbegin(); it != blocks.rend(); ++it) acc = acc * it->v;
    return acc;
  }
  bool has_nontrivial_constant_product() const { return !constants_product().is_identity(); }
};

/// Rewrites w into the block form above. Requires a nontrivial word that is
/// not a bare constant; cyclic rotations (recorded in the conjugator) merge
/// constants across the wrap-around, so the block count is minimal.
template <GroupElement E>
ReducedForm<E> to_reduced_form(const BasicWord<E>& input) {
  BasicWord<E> w = reduce(input);
  if (w.empty()) fail(Errc::TrivialWord, "cannot normalize the empty word");
  if (!w.has_variable()) fail(Errc::PureConstant, "word has no variables");

  ReducedForm<E> rf;
  rf.conjugator.arity = w.arity;

  auto rotate_by_last = [&]() {
    // w -> a * w * a^-1 for the last letter a
    BasicWord<E> a;
    a.arity = w.arity;
    a.letters.push_back(w.letters.back());
    rf.conjugator = concat(a, rf.conjugator);
    w = concat(concat(a, w), inverse(a));
  };

  // Merge wrap-around constants, then move trailing variables to the front.
  while (true) {
    if (!w.has_constant() || !w.has_variable()) break;
    bool first_const = std::holds_alternative<E>(w.letters.front());
    bool last_const = std::holds_alternative<E>(w.letters.back());
    if (first_const && last_const) {
      rotate_by_last();
      continue;
    }
    if (last_const) break;
    rotate_by_last();
  }

  if (!w.has_constant()) {
    for (const auto& l : w.letters) rf.pure_variable.push_back(std::get<VarLetter>(l));
    return rf;
  }

  // w now ends with a constant; split into (variable run, constant) blocks.
  std::vector<typename ReducedForm<E>::Block> display;  // left to right
  typename ReducedForm<E>::Block cur{{}, E::identity()};
  for (const auto& l : w.letters) {
    if (const VarLetter* v = std::get_if<VarLetter>(&l)) {
      cur.u.push_back(*v);
    } else {
      cur.v = std::get<E>(l);
      display.push_back(std::move(cur));
      cur = {{}, E::identity()};
    }
  }
  rf.blocks.assign(display.rbegin(), display.rend());
  return rf;
}

}  // namespace flimit
