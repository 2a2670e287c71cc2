#pragma once

#include <set>
#include <string>
#include <vector>

#include "spectrum/model.hpp"

namespace spectrum {

/// An action, decorated with a ready or failure set for the decorated semantics (empty otherwise).
struct Letter {
  ActionId act = 0;
  ActionSet deco;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;
using WordSet = std::set<Word>;

Word prefixed(Letter l, const Word& w);
Word plain_word(std::initializer_list<ActionId> acts);

/// Tie-break order: lexicographic, letters by action then decoration_less.
bool word_order_less(const Word& a, const Word& b);

/// Same length and actions, decorations included positionwise.
bool word_dominated(const Word& a, const Word& b);

/// Maximal elements under word_dominated.
WordSet maximal_words(const WordSet& words);

/// Antichain of sets under inclusion, sorted.
using SetAntichain = std::vector<ActionSet>;

bool set_dominated(ActionSet s, const SetAntichain& chain);
/// Adds s unless dominated; drops elements s dominates.
void insert_maximal(SetAntichain& chain, ActionSet s);

/// Labels joined by '.', "ε" for the empty word; decorated letters as {a,b}σ.
std::string render_word(const Word& w, const Alphabet& alphabet, bool decorated);

}  // namespace spectrum
