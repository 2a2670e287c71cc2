#include "spectrum/separators.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "spectrum/error.hpp"

namespace spectrum {

namespace {

struct Item {
  Word word;
  int side;  // 0: holds at the first value
  int kind;  // 0 true, 1 *, 2 set constant
  ActionSet set;
};

bool item_less(const Item& a, const Item& b) {
  if (a.word != b.word) return word_order_less(a.word, b.word);
  if (a.side != b.side) return a.side < b.side;
  if (a.kind != b.kind) return a.kind < b.kind;
  return decoration_less(a.set, b.set);
}

bool allowed(const Vocabulary& vocab, const Word& w) {
  if (!vocab.modal_actions) return true;
  return std::all_of(w.begin(), w.end(), [&](const Letter& l) { return vocab.modal_actions->contains(l.act); });
}

Formula along(const Word& w, Formula tail, bool decorated_letters) {
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    tail = decorated_letters ? decorated(it->act, it->deco, std::move(tail)) : diamond(it->act, std::move(tail));
  return tail;
}

void differing_words(const WordSet& a, const WordSet& b, int kind, std::vector<Item>& out) {
  for (const auto& w : a)
    if (!b.contains(w)) out.push_back({w, 0, kind, {}});
  for (const auto& w : b)
    if (!a.contains(w)) out.push_back({w, 1, kind, {}});
}

ActionSet minimal_outside(ActionSet a, const SetAntichain& other) {
  for (auto m : a.members())
    if (!set_dominated(a.without(m), other)) a = a.without(m);
  return a;
}

bool word_in(const Word& w, const WordSet& maxima) {
  return std::any_of(maxima.begin(), maxima.end(), [&](const Word& m) { return word_dominated(w, m); });
}

Word minimal_word_outside(Word w, const WordSet& other) {
  for (auto& l : w)
    for (auto m : l.deco.members()) {
      Letter keep = l;
      l.deco = l.deco.without(m);
      if (word_in(w, other)) l = keep;
    }
  return w;
}

void differing_downsets(const WordSet& a, const WordSet& b, int kind, std::vector<Item>& out) {
  for (const auto& w : a)
    if (!word_in(w, b)) out.push_back({minimal_word_outside(w, b), 0, kind, {}});
  for (const auto& w : b)
    if (!word_in(w, a)) out.push_back({minimal_word_outside(w, a), 1, kind, {}});
}

std::optional<Formula> from_items(const Vocabulary& vocab, std::vector<Item> items, SemanticsId sem) {
  std::erase_if(items, [&](const Item& i) { return !allowed(vocab, i.word); });
  if (items.empty()) return std::nullopt;
  const Item& best = *std::min_element(items.begin(), items.end(), item_less);
  Formula tail;
  switch (best.kind) {
    case 0: tail = is_probabilistic(sem) ? constant(1) : truth(); break;
    case 1: tail = star(); break;
    default: tail = sem == SemanticsId::Readiness ? ready_const(best.set) : fail_const(best.set); break;
  }
  return along(best.word, std::move(tail), is_decorated(sem));
}

// ⊤ at v and ⊥ at w, depth v->depth.
class BisimSeparator {
public:
  explicit BisimSeparator(const Vocabulary& vocab) : vocab_(vocab) {}

  std::optional<Formula> sep(const TreeNode* v, const TreeNode* w) {
    auto key = std::make_pair(v, w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto r = compute(v, w);
    memo_.emplace(key, r);
    return r;
  }

private:
  bool ok(ActionId a) const { return !vocab_.modal_actions || vocab_.modal_actions->contains(a); }

  std::optional<Formula> tautology(int depth) {
    if (depth == 0) return truth();
    std::optional<ActionId> a;
    for (ActionId b = 0; b < vocab_.alphabet.size() && !a; ++b)
      if (ok(b)) a = b;
    if (!a) return std::nullopt;
    auto inner = tautology(depth - 1);
    if (!inner) return std::nullopt;
    Formula d = diamond(*a, *inner);
    return disj({d, neg(d)});
  }

  // Conjunction separating `from` from each a-child of `others`.
  std::optional<Formula> cover(const TreeNode* from, ActionId a, const TreeNode* others) {
    std::vector<Formula> parts;
    for (const auto& c : others->children) {
      if (c.letter.act != a) continue;
      if (c.node == from) return std::nullopt;
      auto s = sep(from, c.node);
      if (!s) return std::nullopt;
      parts.push_back(std::move(*s));
    }
    if (parts.empty()) return tautology(from->depth);
    if (parts.size() == 1) return std::move(parts.front());
    return conj(std::move(parts));
  }

  std::optional<Formula> compute(const TreeNode* v, const TreeNode* w) {
    if (v == w) return std::nullopt;
    for (const auto& c : v->children)
      if (ok(c.letter.act))
        if (auto inner = cover(c.node, c.letter.act, w)) return diamond(c.letter.act, std::move(*inner));
    for (const auto& c : w->children)
      if (ok(c.letter.act))
        if (auto inner = cover(c.node, c.letter.act, v)) return neg(diamond(c.letter.act, std::move(*inner)));
    return std::nullopt;
  }

  const Vocabulary& vocab_;
  std::map<std::pair<const TreeNode*, const TreeNode*>, std::optional<Formula>> memo_;
};

}  // namespace

std::optional<Formula> separating_formula(const Vocabulary& vocab, const SemanticValue& v, const SemanticValue& w) {
  if (v.index() != w.index() || depth_of(v) != depth_of(w))
    throw SemanticsMismatch("separating values of different semantics or depth");
  if (semantics_of(v) != vocab.semantics) throw SemanticsMismatch("vocabulary of another semantics");
  if (v == w) return std::nullopt;
  const SemanticsId sem = vocab.semantics;
  std::vector<Item> items;
  switch (sem) {
    case SemanticsId::Bisimilarity: {
      BisimSeparator s(vocab);
      return s.sep(std::get<BisimulationValue>(v).node, std::get<BisimulationValue>(w).node);
    }
    case SemanticsId::Trace:
      differing_words(std::get<TraceValue>(v).words, std::get<TraceValue>(w).words, 0, items);
      break;
    case SemanticsId::CompletedTrace: {
      const auto &a = std::get<CompletedTraceValue>(v), &b = std::get<CompletedTraceValue>(w);
      differing_words(a.live, b.live, 0, items);
      differing_words(a.dead, b.dead, 1, items);
      break;
    }
    case SemanticsId::Readiness: {
      const auto &a = std::get<ReadinessValue>(v), &b = std::get<ReadinessValue>(w);
      differing_words(a.live, b.live, 0, items);
      for (const auto& [word, s] : a.pairs)
        if (!b.pairs.contains({word, s})) items.push_back({word, 0, 2, s});
      for (const auto& [word, s] : b.pairs)
        if (!a.pairs.contains({word, s})) items.push_back({word, 1, 2, s});
      break;
    }
    case SemanticsId::Failures: {
      const auto &a = std::get<FailuresValue>(v), &b = std::get<FailuresValue>(w);
      differing_words(a.live, b.live, 0, items);
      static const SetAntichain none;
      auto chain = [](const FailuresValue& f, const Word& word) -> const SetAntichain& {
        auto it = f.pairs.find(word);
        return it == f.pairs.end() ? none : it->second;
      };
      for (const auto& [word, ca] : a.pairs)
        for (auto s : ca)
          if (!set_dominated(s, chain(b, word))) items.push_back({word, 0, 2, minimal_outside(s, chain(b, word))});
      for (const auto& [word, cb] : b.pairs)
        for (auto s : cb)
          if (!set_dominated(s, chain(a, word))) items.push_back({word, 1, 2, minimal_outside(s, chain(a, word))});
      break;
    }
    case SemanticsId::ReadyTrace: {
      const auto &a = std::get<ReadyTraceValue>(v), &b = std::get<ReadyTraceValue>(w);
      differing_words(a.live, b.live, 0, items);
      differing_words(a.dead, b.dead, 1, items);
      break;
    }
    case SemanticsId::FailureTrace: {
      const auto &a = std::get<FailureTraceValue>(v), &b = std::get<FailureTraceValue>(w);
      differing_downsets(a.live, b.live, 0, items);
      differing_downsets(a.dead, b.dead, 1, items);
      break;
    }
    case SemanticsId::ProbabilisticTrace: {
      const auto &a = std::get<ProbTraceValue>(v).mass, &b = std::get<ProbTraceValue>(w).mass;
      auto at = [](const std::map<Word, Rational>& m, const Word& word) {
        auto it = m.find(word);
        return it == m.end() ? Rational(0) : it->second;
      };
      for (const auto& [word, p] : a)
        if (at(b, word) != p) items.push_back({word, p > at(b, word) ? 0 : 1, 0, {}});
      for (const auto& [word, p] : b)
        if (!a.contains(word)) items.push_back({word, 1, 0, {}});
      break;
    }
    default: throw UnsupportedSemantics(std::string(name(sem)) + " has no graded logic");
  }
  return from_items(vocab, std::move(items), sem);
}

std::optional<SeparationWitness> distinguish(const Model& model, SemanticsId sem, StateId x, StateId y,
                                             int max_depth) {
  if (!has_logic(sem)) throw UnsupportedSemantics(std::string(name(sem)) + " has no graded logic");
  require_compatible(model, sem);
  const Alphabet& al = std::visit([](const auto& m) -> const Alphabet& { return m.alphabet(); }, model);
  auto n = std::visit([](const auto& m) { return m.num_states(); }, model);
  if (x >= n || y >= n) throw ModelError("state index out of range");
  auto table = beta_sequence(model, sem, max_depth);
  auto k = first_difference(table, x, y);
  if (!k) return std::nullopt;
  Vocabulary vocab = vocabulary(sem, al);
  auto f = separating_formula(vocab, table[*k][x], table[*k][y]);
  if (!f) throw Error("no separating formula found at depth " + std::to_string(*k));
  auto values = eval_states(*f, vocab, model);
  return SeparationWitness{std::move(*f), *k, values[x], values[y]};
}

SeparationCheck check_depth0_separation(SemanticsId sem) {
  if (!has_logic(sem)) throw UnsupportedSemantics(std::string(name(sem)) + " has no graded logic");
  SeparationCheck r;
  std::vector<SemanticValue> carrier{unit_value(sem)};
  if (sem != SemanticsId::Bisimilarity && !is_probabilistic(sem)) carrier.push_back(empty_value(sem, 0));
  Vocabulary vocab = vocabulary(sem, Alphabet{});
  std::vector<Formula> constants{is_probabilistic(sem) ? constant(1) : truth()};
  for (std::size_t i = 0; i < carrier.size(); ++i)
    for (std::size_t j = i + 1; j < carrier.size(); ++j) {
      bool separated = false;
      for (const auto& c : constants)
        if (eval_value(c, vocab, carrier[i]) != eval_value(c, vocab, carrier[j])) {
          separated = true;
          r.family.push_back(print(c, vocab.alphabet));
        }
      if (!separated) {
        r.ok = false;
        r.witness = render(carrier[i], vocab.alphabet) + " vs " + render(carrier[j], vocab.alphabet);
        return r;
      }
    }
  return r;
}

namespace {

bool dead_now(const SemanticValue& v) {
  Word eps;
  if (auto c = std::get_if<CompletedTraceValue>(&v)) return c->dead.contains(eps);
  if (auto r = std::get_if<ReadyTraceValue>(&v)) return r->dead.contains(eps);
  if (auto f = std::get_if<FailureTraceValue>(&v)) return f->dead.contains(eps);
  return false;
}

// 0-ary modalities applicable to the pair.
std::vector<Formula> nullary_candidates(SemanticsId sem, const SemanticValue& v, const SemanticValue& w) {
  std::vector<Formula> out;
  switch (sem) {
    case SemanticsId::CompletedTrace:
    case SemanticsId::ReadyTrace:
    case SemanticsId::FailureTrace:
      if (dead_now(v) != dead_now(w)) out.push_back(star());
      break;
    case SemanticsId::Readiness:
      for (const auto* val : {&v, &w})
        for (const auto& [word, s] : std::get<ReadinessValue>(*val).pairs)
          if (word.empty()) out.push_back(ready_const(s));
      break;
    case SemanticsId::Failures: {
      static const SetAntichain none;
      auto at_root = [](const SemanticValue& x) -> const SetAntichain& {
        const auto& p = std::get<FailuresValue>(x).pairs;
        auto it = p.find(Word{});
        return it == p.end() ? none : it->second;
      };
      const auto &a = at_root(v), &b = at_root(w);
      for (auto s : a)
        if (!set_dominated(s, b)) out.push_back(fail_const(minimal_outside(s, b)));
      for (auto s : b)
        if (!set_dominated(s, a)) out.push_back(fail_const(minimal_outside(s, a)));
      break;
    }
    default: break;
  }
  return out;
}

std::vector<ActionSet> decorations(const Vocabulary& vocab, ActionId a, const SemanticValue& v,
                                   const SemanticValue& w) {
  if (!is_decorated(vocab.semantics)) return {ActionSet{}};
  std::set<ActionSet> out;
  if (vocab.semantics == SemanticsId::FailureTrace && vocab.alphabet.size() <= 8) {
    for (std::uint64_t bits = 0; bits <= vocab.alphabet.full().bits(); ++bits) out.insert(ActionSet(bits));
  } else {
    auto scan = [&](const WordSet& ws) {
      for (const auto& word : ws)
        if (!word.empty() && word.front().act == a) out.insert(word.front().deco);
    };
    for (const auto* x : {&v, &w}) {
      if (auto r = std::get_if<ReadyTraceValue>(x)) scan(r->live), scan(r->dead);
      if (auto f = std::get_if<FailureTraceValue>(x)) scan(f->live), scan(f->dead);
    }
  }
  return {out.begin(), out.end()};
}

std::optional<Formula> one_modality(const Vocabulary& vocab, const SemanticValue& v, const SemanticValue& w) {
  const SemanticsId sem = vocab.semantics;
  if (sem == SemanticsId::Bisimilarity) return separating_formula(vocab, v, w);
  for (auto& f : nullary_candidates(sem, v, w))
    if (eval_value(f, vocab, v) != eval_value(f, vocab, w)) return f;
  for (ActionId a = 0; a < vocab.alphabet.size(); ++a) {
    if (vocab.modal_actions && !vocab.modal_actions->contains(a)) continue;
    for (auto deco : decorations(vocab, a, v, w)) {
      auto rv = residual(v, Letter{a, deco}), rw = residual(w, Letter{a, deco});
      if (rv == rw) continue;
      auto inner = separating_formula(vocab, rv, rw);
      if (!inner) continue;
      Formula f = is_decorated(sem) ? decorated(a, deco, std::move(*inner)) : diamond(a, std::move(*inner));
      if (eval_value(f, vocab, v) != eval_value(f, vocab, w)) return f;
    }
  }
  return std::nullopt;
}

}  // namespace

SeparationCheck check_depth1_separation(SemanticsId sem, const std::vector<Model>& sample, int depth,
                                        std::uint64_t seed, const std::set<std::string>& withheld,
                                        std::size_t max_pairs) {
  if (!has_logic(sem)) throw UnsupportedSemantics(std::string(name(sem)) + " has no graded logic");
  SeparationCheck r;
  std::set<std::string> family;
  std::mt19937_64 rng(seed);
  for (const auto& model : sample) {
    require_compatible(model, sem);
    const Alphabet& al = std::visit([](const auto& m) -> const Alphabet& { return m.alphabet(); }, model);
    Vocabulary vocab = vocabulary(sem, al);
    if (!withheld.empty()) {
      ActionSet keep = al.full();
      for (const auto& label : withheld)
        if (auto a = al.find(label)) keep = keep.without(*a);
      vocab.modal_actions = keep;
    }
    auto table = beta_sequence(model, sem, depth);
    for (int n = 0; n < depth; ++n) {
      std::vector<SemanticValue> distinct;
      for (const auto& v : table[n + 1])
        if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      for (std::size_t i = 0; i < distinct.size(); ++i)
        for (std::size_t j = i + 1; j < distinct.size(); ++j) pairs.emplace_back(i, j);
      if (pairs.size() > max_pairs) {
        std::shuffle(pairs.begin(), pairs.end(), rng);
        pairs.resize(max_pairs);
      }
      for (auto [i, j] : pairs) {
        auto f = one_modality(vocab, distinct[i], distinct[j]);
        if (!f) {
          r.ok = false;
          r.witness = "depth " + std::to_string(n + 1) + ": " + render(distinct[i], al) + " vs " +
                      render(distinct[j], al);
          r.family.assign(family.begin(), family.end());
          return r;
        }
        family.insert(print(*f, al));
      }
    }
  }
  r.family.assign(family.begin(), family.end());
  return r;
}

}  // namespace spectrum
