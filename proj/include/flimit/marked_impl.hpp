#pragma once

#include <algorithm>

#include "flimit/marked.hpp"

namespace flimit {

inline bool lenlex_less(const AbstractWord& a, const AbstractWord& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  auto key = [](int letter) { return letter > 0 ? 2 * letter : -2 * letter + 1; };
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return key(a[i]) < key(b[i]);
  return false;
}

inline std::string abstract_word_str(const AbstractWord& w) {
  if (w.empty()) return "1";
  std::string s;
  for (int l : w) {
    if (!s.empty()) s += "*";
    s += "y" + std::to_string(l > 0 ? l : -l);
    if (l < 0) s += "^-1";
  }
  return s;
}

template <GroupElement E>
std::vector<AbstractWord> relations_up_to(const MarkedTuple<E>& M, unsigned r, Exec exec) {
  if (exec == Exec::Serial || r <= 2) return relations_up_to_serial(M, r);

  std::vector<E> inverses;
  for (const E& g : M.markers) inverses.push_back(g.inverse());
  const int m = static_cast<int>(M.markers.size());
  auto letter_value = [&](int letter) -> const E& {
    return letter > 0 ? M.markers[static_cast<size_t>(letter - 1)]
                      : inverses[static_cast<size_t>(-letter - 1)];
  };

  // Reduced prefixes of depth 2 become independent work items.
  struct Item {
    AbstractWord prefix;
    E value;
  };
  std::vector<Item> items;
  std::vector<AbstractWord> head;  // relations shorter than the prefix depth
  for (int i1 = 1; i1 <= m; ++i1)
    for (int s1 : {+1, -1}) {
      int l1 = s1 * i1;
      E v1 = E(E::identity() * letter_value(l1));
      if (v1.is_identity()) head.push_back({l1});
      for (int i2 = 1; i2 <= m; ++i2)
        for (int s2 : {+1, -1}) {
          int l2 = s2 * i2;
          if (l2 == -l1) continue;
          items.push_back({{l1, l2}, E(v1 * letter_value(l2))});
        }
    }

  std::vector<std::vector<AbstractWord>> partial(items.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(items.size()); ++idx) {
    Item& it = items[static_cast<size_t>(idx)];
    AbstractWord word = it.prefix;
    detail::relations_dfs(M.markers, inverses, word, it.value, r - 2,
                          partial[static_cast<size_t>(idx)]);
    // the DFS records the prefix itself when it is a relation
  }

  std::vector<AbstractWord> out = std::move(head);
  for (auto& p : partial) {
    // drop duplicates of the bare prefix: relations_dfs records `word`
    // whenever value is the identity, including at depth 0
    out.insert(out.end(), p.begin(), p.end());
  }
  std::sort(out.begin(), out.end(), lenlex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace flimit
