#include "spectrum/word.hpp"

#include <algorithm>
#include <map>

namespace spectrum {

Word prefixed(Letter l, const Word& w) {
  Word out;
  out.reserve(w.size() + 1);
  out.push_back(l);
  out.insert(out.end(), w.begin(), w.end());
  return out;
}

Word plain_word(std::initializer_list<ActionId> acts) {
  Word w;
  for (auto a : acts) w.push_back({a, {}});
  return w;
}

bool word_order_less(const Word& a, const Word& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Letter& x, const Letter& y) {
    if (x.act != y.act) return x.act < y.act;
    return decoration_less(x.deco, y.deco);
  });
}

bool word_dominated(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].act != b[i].act || !a[i].deco.subset_of(b[i].deco)) return false;
  return true;
}

WordSet maximal_words(const WordSet& words) {
  std::map<std::vector<ActionId>, std::vector<const Word*>> groups;
  for (const auto& w : words) {
    std::vector<ActionId> key;
    key.reserve(w.size());
    for (const auto& l : w) key.push_back(l.act);
    groups[std::move(key)].push_back(&w);
  }
  WordSet out;
  for (const auto& [key, ws] : groups) {
    for (const Word* w : ws) {
      bool dominated = false;
      for (const Word* v : ws)
        if (v != w && word_dominated(*w, *v)) {
          dominated = true;
          break;
        }
      if (!dominated) out.insert(*w);
    }
  }
  return out;
}

bool set_dominated(ActionSet s, const SetAntichain& chain) {
  for (auto c : chain)
    if (s.subset_of(c)) return true;
  return false;
}

void insert_maximal(SetAntichain& chain, ActionSet s) {
  if (set_dominated(s, chain)) return;
  std::erase_if(chain, [&](ActionSet c) { return c.subset_of(s); });
  chain.insert(std::lower_bound(chain.begin(), chain.end(), s), s);
}

std::string render_word(const Word& w, const Alphabet& alphabet, bool decorated) {
  if (w.empty()) return "ε";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    if (decorated) out += render_set(w[i].deco, alphabet);
    out += alphabet.label(w[i].act);
  }
  return out;
}

}  // namespace spectrum
