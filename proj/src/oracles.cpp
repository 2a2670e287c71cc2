#include "spectrum/oracles.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <tuple>

#include "spectrum/error.hpp"

namespace spectrum {

namespace {

constexpr std::size_t path_cap = 1'000'000;
constexpr int depth_cap = 8;

void check_depth(int depth) {
  if (depth < 0 || depth > depth_cap) throw Error("oracle depth must lie in 0..8");
}

ActionSet refusals(const Lts& lts, StateId z) { return lts.alphabet().full().minus(lts.ready_set(z)); }

std::vector<ActionSet> subsets(ActionSet s) {
  if (s.size() > 16) throw Error("explicit failure sets need at most 16 refused actions");
  std::vector<ActionSet> out;
  for (std::uint64_t b = s.bits();; b = (b - 1) & s.bits()) {
    out.push_back(ActionSet(b));
    if (b == 0) break;
  }
  return out;
}

bool positionwise_leq(const Word& a, const Word& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].act != b[i].act || (a[i].deco.bits() & ~b[i].deco.bits())) return false;
  return true;
}

// Naive maximal elements, bucketed by action sequence to keep the quadratic scan small.
WordSet naive_maxima(const WordSet& ws) {
  std::map<std::vector<ActionId>, std::vector<Word>> buckets;
  for (const auto& w : ws) {
    std::vector<ActionId> acts;
    for (auto l : w) acts.push_back(l.act);
    buckets[acts].push_back(w);
  }
  WordSet out;
  for (auto& [acts, bucket] : buckets)
    for (const auto& w : bucket) {
      bool below = false;
      for (const auto& v : bucket)
        if (v != w && positionwise_leq(w, v)) below = true;
      if (!below) out.insert(w);
    }
  return out;
}

SetAntichain naive_set_maxima(const std::set<ActionSet>& sets) {
  SetAntichain out;
  for (auto a : sets) {
    bool below = false;
    for (auto b : sets)
      if (a != b && (a.bits() & ~b.bits()) == 0) below = true;
    if (!below) out.push_back(a);
  }
  return out;
}

using Level = std::set<std::pair<Word, StateId>>;

// levels[k] = all (w, z) with x –w→ z, |w| = k; letters decorated at their source state.
std::vector<Level> explore(const Lts& lts, StateId x, int max_depth, SemanticsId sem) {
  std::vector<Level> levels(1);
  levels[0].insert({Word{}, x});
  std::size_t total = 1;
  for (int k = 0; k < max_depth; ++k) {
    Level next;
    for (const auto& [w, z] : levels[k]) {
      ActionSet deco;
      if (sem == SemanticsId::ReadyTrace) deco = lts.ready_set(z);
      if (sem == SemanticsId::FailureTrace) deco = refusals(lts, z);
      for (const auto& t : lts.transitions())
        if (t.src == z) {
          Word v = w;
          v.push_back({t.act, deco});
          next.insert({v, t.dst});
        }
    }
    total += next.size();
    if (total > path_cap) throw Error("oracle path enumeration exceeded 10^6 paths");
    levels.push_back(std::move(next));
  }
  return levels;
}

WordSet words_at(const Level& level) {
  WordSet out;
  for (const auto& [w, z] : level) out.insert(w);
  return out;
}

WordSet dead_below(const Lts& lts, const std::vector<Level>& levels, int n) {
  WordSet out;
  for (int k = 0; k < n; ++k)
    for (const auto& [w, z] : levels[k])
      if (lts.successors(z).empty()) out.insert(w);
  return out;
}

SemanticValue trace_like_value(const Lts& lts, SemanticsId sem, const std::vector<Level>& levels, int n) {
  switch (sem) {
    case SemanticsId::Trace: return TraceValue{n, words_at(levels[n])};
    case SemanticsId::CompletedTrace: return CompletedTraceValue{n, words_at(levels[n]), dead_below(lts, levels, n)};
    case SemanticsId::Readiness: {
      ReadinessValue v{n, words_at(levels[n]), {}};
      for (int k = 0; k < n; ++k)
        for (const auto& [w, z] : levels[k]) v.pairs.insert({w, lts.ready_set(z)});
      return v;
    }
    case SemanticsId::Failures: {
      std::map<Word, std::set<ActionSet>> explicit_sets;
      for (int k = 0; k < n; ++k)
        for (const auto& [w, z] : levels[k])
          for (auto a : subsets(refusals(lts, z))) explicit_sets[w].insert(a);
      FailuresValue v{n, words_at(levels[n]), {}};
      for (const auto& [w, sets] : explicit_sets) v.pairs[w] = naive_set_maxima(sets);
      return v;
    }
    case SemanticsId::ReadyTrace: return ReadyTraceValue{n, words_at(levels[n]), dead_below(lts, levels, n)};
    case SemanticsId::FailureTrace:
      return FailureTraceValue{n, naive_maxima(words_at(levels[n])), naive_maxima(dead_below(lts, levels, n))};
    default: throw SemanticsMismatch("not a trace-like LTS semantics");
  }
}

// Naive unfolding of the tree-valued semantics, shared per (state, depth).
struct NaiveTree {
  bool star = false;
  std::vector<std::pair<Letter, std::shared_ptr<const NaiveTree>>> kids;
};
using TreePtr = std::shared_ptr<const NaiveTree>;

class TreeUnfolder {
public:
  TreeUnfolder(const Lts& lts, SemanticsId sem) : lts_(lts), sem_(sem) {}

  TreePtr tree(StateId x, int n) {
    auto key = std::make_pair(x, n);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    auto t = std::make_shared<NaiveTree>();
    if (n > 0) {
      std::vector<std::pair<Letter, TreePtr>> cand;
      ActionSet deco = sem_ == SemanticsId::ReadySimulation ? lts_.ready_set(x) : ActionSet{};
      for (const auto& tr : lts_.transitions())
        if (tr.src == x) cand.push_back({Letter{tr.act, deco}, tree(tr.dst, n - 1)});
      t->star = sem_ == SemanticsId::ReadySimulation && cand.empty();
      for (std::size_t i = 0; i < cand.size(); ++i) {
        bool drop = false;
        for (std::size_t j = 0; j < cand.size() && !drop; ++j) {
          if (i == j || cand[i].first != cand[j].first) continue;
          bool same = equal(cand[i].second, cand[j].second);
          if (same) drop = j < i;
          else if (sem_ != SemanticsId::Bisimilarity) drop = leq(cand[i].second, cand[j].second);
        }
        if (!drop) t->kids.push_back(cand[i]);
      }
    }
    memo_[key] = t;
    return t;
  }

  bool leq(const TreePtr& a, const TreePtr& b) {
    if (a == b) return true;
    auto key = std::make_pair(a.get(), b.get());
    if (auto it = leq_memo_.find(key); it != leq_memo_.end()) return it->second;
    bool r = !(a->star && !b->star);
    for (const auto& [la, ta] : a->kids) {
      if (!r) break;
      bool found = false;
      for (const auto& [lb, tb] : b->kids)
        if (la == lb && leq(ta, tb)) {
          found = true;
          break;
        }
      r = found;
    }
    leq_memo_[key] = r;
    return r;
  }

  bool equal(const TreePtr& a, const TreePtr& b) {
    if (sem_ != SemanticsId::Bisimilarity) return leq(a, b) && leq(b, a);
    if (a == b) return true;
    auto key = std::make_pair(a.get(), b.get());
    if (auto it = eq_memo_.find(key); it != eq_memo_.end()) return it->second;
    auto covered = [&](const NaiveTree& p, const NaiveTree& q) {
      for (const auto& [lp, tp] : p.kids) {
        bool found = false;
        for (const auto& [lq, tq] : q.kids)
          if (lp == lq && equal(tp, tq)) found = true;
        if (!found) return false;
      }
      return true;
    };
    bool r = a->star == b->star && covered(*a, *b) && covered(*b, *a);
    eq_memo_[key] = r;
    return r;
  }

  const TreeNode* intern(const TreePtr& t, int depth, TreeStore& store) {
    TreeFamily f = tree_family(sem_);
    if (depth == 0) return store.top(f);
    if (auto it = interned_.find(t.get()); it != interned_.end()) return it->second;
    std::vector<TreeChild> children;
    for (const auto& [l, k] : t->kids) children.push_back({l, intern(k, depth - 1, store)});
    auto node = store.make(f, depth, t->star, std::move(children));
    interned_[t.get()] = node;
    return node;
  }

private:
  const Lts& lts_;
  SemanticsId sem_;
  std::map<std::pair<StateId, int>, TreePtr> memo_;
  std::map<std::pair<const NaiveTree*, const NaiveTree*>, bool> leq_memo_, eq_memo_;
  std::map<const NaiveTree*, const TreeNode*> interned_;
};

SemanticValue wrap_tree(SemanticsId sem, const TreeNode* node) {
  switch (sem) {
    case SemanticsId::Bisimilarity: return BisimulationValue{node};
    case SemanticsId::Simulation: return SimulationValue{node};
    default: return ReadySimulationValue{node};
  }
}

}  // namespace

std::vector<SemanticValue> oracle_values(const Lts& lts, SemanticsId sem, StateId x, int max_depth) {
  check_depth(max_depth);
  if (x >= lts.num_states()) throw ModelError("state index out of range");
  if (is_probabilistic(sem)) throw SemanticsMismatch("probabilistic-trace applies to GPS models only");
  std::vector<SemanticValue> out;
  if (is_coinductive(sem)) {
    TreeUnfolder unfold(lts, sem);
    for (int n = 0; n <= max_depth; ++n) out.push_back(wrap_tree(sem, unfold.intern(unfold.tree(x, n), n, tree_store())));
    return out;
  }
  auto levels = explore(lts, x, max_depth, sem);
  for (int n = 0; n <= max_depth; ++n) out.push_back(trace_like_value(lts, sem, levels, n));
  return out;
}

std::vector<SemanticValue> oracle_values(const Gps& gps, SemanticsId sem, StateId x, int max_depth) {
  check_depth(max_depth);
  if (x >= gps.num_states()) throw ModelError("state index out of range");
  if (!is_probabilistic(sem)) throw SemanticsMismatch(std::string(name(sem)) + " applies to LTS models only");
  // p(x, w, z): probability of emitting w from x and ending in z.
  std::map<std::pair<Word, StateId>, Rational> level{{{Word{}, x}, Rational(1)}};
  std::vector<SemanticValue> out;
  for (int n = 0;; ++n) {
    ProbTraceValue v{n, {}};
    for (const auto& [key, p] : level) v.mass[key.first] += p;
    out.push_back(v);
    if (n == max_depth) break;
    std::map<std::pair<Word, StateId>, Rational> next;
    for (const auto& [key, p] : level)
      for (const auto& e : gps.row(key.second)) {
        Word w = key.first;
        w.push_back({e.act, {}});
        next[{w, e.dst}] += p * e.prob;
      }
    if (next.size() > path_cap) throw Error("oracle path enumeration exceeded 10^6 paths");
    level = std::move(next);
  }
  return out;
}

SemanticValue oracle_value(const Lts& lts, SemanticsId sem, StateId x, int depth) {
  return oracle_values(lts, sem, x, depth).back();
}

SemanticValue oracle_value(const Gps& gps, SemanticsId sem, StateId x, int depth) {
  return oracle_values(gps, sem, x, depth).back();
}

Partition bisim_partition(const Lts& lts) {
  const std::size_t n = lts.num_states();
  std::vector<std::size_t> block(n, 0);
  std::size_t count = 1;
  int rounds = 0;
  while (true) {
    std::map<std::pair<std::size_t, std::set<std::pair<ActionId, std::size_t>>>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (StateId x = 0; x < n; ++x) {
      std::set<std::pair<ActionId, std::size_t>> sig;
      for (const auto& t : lts.transitions())
        if (t.src == x) sig.insert({t.act, block[t.dst]});
      auto [it, fresh] = ids.emplace(std::make_pair(block[x], sig), ids.size());
      next[x] = it->second;
    }
    if (ids.size() == count) break;
    count = ids.size();
    block = std::move(next);
    ++rounds;
  }
  Partition p{rounds, std::vector<std::vector<StateId>>(count), SemanticsId::Bisimilarity};
  std::vector<std::vector<StateId>> by_id(count);
  for (StateId x = 0; x < n; ++x) by_id[block[x]].push_back(x);
  std::sort(by_id.begin(), by_id.end());
  p.blocks = std::move(by_id);
  return p;
}

std::vector<std::vector<bool>> sim_preorder(const Lts& lts, bool ready) {
  const std::size_t n = lts.num_states();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
  if (ready)
    for (StateId x = 0; x < n; ++x)
      for (StateId y = 0; y < n; ++y) rel[x][y] = lts.ready_set(x) == lts.ready_set(y);
  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId x = 0; x < n; ++x)
      for (StateId y = 0; y < n; ++y) {
        if (!rel[x][y]) continue;
        for (const auto& tx : lts.transitions()) {
          if (tx.src != x) continue;
          bool matched = false;
          for (const auto& ty : lts.transitions())
            if (ty.src == y && ty.act == tx.act && rel[tx.dst][ty.dst]) matched = true;
          if (!matched) {
            rel[x][y] = false;
            changed = true;
            break;
          }
        }
      }
  }
  return rel;
}

namespace {

struct Nfa {
  std::size_t size = 0;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> edges;  // (letter, target)
  std::vector<bool> accepting;
  std::map<std::tuple<int, ActionId, std::uint64_t>, std::uint32_t> letters;

  explicit Nfa(std::size_t n) : size(n), edges(n), accepting(n, false) {}
  std::uint32_t letter(int kind, ActionId a, ActionSet s) {
    auto [it, fresh] = letters.emplace(std::make_tuple(kind, a, s.bits()), static_cast<std::uint32_t>(letters.size()));
    return it->second;
  }
  void add(std::uint32_t from, std::uint32_t l, std::uint32_t to) { edges[from].push_back({l, to}); }
};

enum LetterKind { kStep, kStar, kTag, kEnd };

bool language_equivalent(const Nfa& nfa, std::uint32_t a, std::uint32_t b) {
  using Subset = std::vector<std::uint32_t>;
  std::map<Subset, std::size_t> ids;
  std::vector<std::size_t> parent;
  auto id_of = [&](const Subset& s) {
    auto [it, fresh] = ids.emplace(s, parent.size());
    if (fresh) parent.push_back(parent.size());
    return it->second;
  };
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  auto accepts = [&](const Subset& s) {
    return std::any_of(s.begin(), s.end(), [&](std::uint32_t q) { return nfa.accepting[q]; });
  };
  std::vector<std::pair<Subset, Subset>> work{{{a}, {b}}};
  parent.clear();
  auto ia = id_of({a}), ib = id_of({b});
  if (ia != ib) parent[find(ia)] = find(ib);
  while (!work.empty()) {
    auto [s, t] = work.back();
    work.pop_back();
    if (accepts(s) != accepts(t)) return false;
    std::map<std::uint32_t, std::pair<std::set<std::uint32_t>, std::set<std::uint32_t>>> succ;
    for (auto q : s)
      for (auto [l, r] : nfa.edges[q]) succ[l].first.insert(r);
    for (auto q : t)
      for (auto [l, r] : nfa.edges[q]) succ[l].second.insert(r);
    for (auto& [l, st] : succ) {
      Subset s2(st.first.begin(), st.first.end()), t2(st.second.begin(), st.second.end());
      auto i = find(id_of(s2)), j = find(id_of(t2));
      if (i != j) {
        parent[i] = j;
        work.push_back({s2, t2});
      }
    }
  }
  return true;
}

Nfa trace_like_automaton(const Lts& lts, SemanticsId sem) {
  const auto n = static_cast<std::uint32_t>(lts.num_states());
  Nfa nfa(n + 1);
  const std::uint32_t sink = n;
  std::fill(nfa.accepting.begin(), nfa.accepting.end(), true);
  for (StateId z = 0; z < n; ++z) {
    ActionSet ready = lts.ready_set(z), refused = refusals(lts, z);
    for (const auto& t : lts.transitions()) {
      if (t.src != z) continue;
      switch (sem) {
        case SemanticsId::ReadyTrace: nfa.add(z, nfa.letter(kStep, t.act, ready), t.dst); break;
        case SemanticsId::FailureTrace:
          for (auto a : subsets(refused)) nfa.add(z, nfa.letter(kStep, t.act, a), t.dst);
          break;
        default: nfa.add(z, nfa.letter(kStep, t.act, {}), t.dst);
      }
    }
    bool dead = lts.successors(z).empty();
    switch (sem) {
      case SemanticsId::CompletedTrace:
      case SemanticsId::ReadyTrace:
      case SemanticsId::FailureTrace:
        if (dead) nfa.add(z, nfa.letter(kStar, 0, {}), sink);
        break;
      case SemanticsId::Readiness: nfa.add(z, nfa.letter(kTag, 0, ready), sink); break;
      case SemanticsId::Failures:
        for (auto a : subsets(refused)) nfa.add(z, nfa.letter(kTag, 0, a), sink);
        break;
      default: break;
    }
  }
  return nfa;
}

Nfa sequence_automaton(const Lts& lts, bool failures) {
  const auto n = static_cast<std::uint32_t>(lts.num_states());
  Nfa nfa(n + 1);
  const std::uint32_t sink = n;
  nfa.accepting[sink] = true;
  for (StateId z = 0; z < n; ++z) {
    std::vector<ActionSet> decos = failures ? subsets(refusals(lts, z)) : std::vector<ActionSet>{lts.ready_set(z)};
    for (auto a : decos) {
      nfa.add(z, nfa.letter(kEnd, 0, a), sink);
      for (const auto& t : lts.transitions())
        if (t.src == z) nfa.add(z, nfa.letter(kStep, t.act, a), t.dst);
    }
  }
  return nfa;
}

}  // namespace

bool full_trace_like_equivalent(const Lts& lts, SemanticsId sem, StateId x, StateId y) {
  if (is_coinductive(sem) || is_probabilistic(sem))
    throw UnsupportedSemantics(std::string(name(sem)) + " is not a trace-like LTS semantics");
  if (x >= lts.num_states() || y >= lts.num_states()) throw ModelError("state index out of range");
  return language_equivalent(trace_like_automaton(lts, sem), x, y);
}

std::set<std::pair<Word, ActionSet>> ready_trace_sequences(const Lts& lts, StateId x, int k) {
  std::set<std::pair<Word, ActionSet>> out;
  auto layers = explore(lts, x, k, SemanticsId::ReadyTrace);
  for (const auto& [w, z] : layers[k]) out.insert({w, lts.ready_set(z)});
  return out;
}

std::set<std::pair<Word, ActionSet>> failure_trace_sequences(const Lts& lts, StateId x, int k) {
  // The final set rides along as one more decorated letter so the positionwise maxima cover it.
  WordSet gens;
  constexpr ActionId end_marker = max_alphabet_size;
  auto layers = explore(lts, x, k, SemanticsId::FailureTrace);
  for (const auto& [w, z] : layers[k]) {
    Word v = w;
    v.push_back({end_marker, refusals(lts, z)});
    gens.insert(v);
  }
  std::set<std::pair<Word, ActionSet>> out;
  for (auto v : naive_maxima(gens)) {
    ActionSet last = v.back().deco;
    v.pop_back();
    out.insert({v, last});
  }
  return out;
}

bool ready_trace_sequences_equivalent(const Lts& lts, StateId x, StateId y) {
  return language_equivalent(sequence_automaton(lts, false), x, y);
}

bool failure_trace_sequences_equivalent(const Lts& lts, StateId x, StateId y) {
  return language_equivalent(sequence_automaton(lts, true), x, y);
}

}  // namespace spectrum
