#include "spectrum/engine.hpp"

#include <omp.h>

#include "spectrum/error.hpp"

namespace spectrum {

Layer alpha(const Lts& lts, SemanticsId sem, StateId x) {
  if (is_probabilistic(sem)) throw SemanticsMismatch("probabilistic-trace applies to GPS models only");
  Layer layer{sem, {}, false, {}};
  ActionSet ready = lts.ready_set(x);
  ActionSet refusal = lts.alphabet().full().minus(ready);
  ActionSet deco;
  switch (sem) {
    case SemanticsId::ReadyTrace:
    case SemanticsId::ReadySimulation: deco = ready; break;
    case SemanticsId::FailureTrace: deco = refusal; break;
    default: break;
  }
  for (const auto& s : lts.successors(x)) layer.steps.push_back({Letter{s.act, deco}, {s.dst}, Rational(1)});
  switch (sem) {
    case SemanticsId::CompletedTrace:
    case SemanticsId::ReadyTrace:
    case SemanticsId::FailureTrace:
    case SemanticsId::ReadySimulation: layer.star = lts.deadlocked(x); break;
    case SemanticsId::Readiness: layer.sets.push_back(ready); break;
    case SemanticsId::Failures: layer.sets.push_back(refusal); break;
    default: break;
  }
  return layer;
}

Layer alpha(const Gps& gps, StateId x) {
  Layer layer{SemanticsId::ProbabilisticTrace, {}, false, {}};
  for (const auto& e : gps.row(x)) layer.steps.push_back({Letter{e.act, {}}, {e.dst}, e.prob});
  return layer;
}

namespace {

template <class V>
const V& var(std::span<const SemanticValue> val, std::uint32_t i) {
  if (i >= val.size()) throw SemanticsMismatch("layer variable out of range");
  const V* v = std::get_if<V>(&val[i]);
  if (!v) throw SemanticsMismatch("valuation of the wrong semantics");
  return *v;
}

std::uint32_t single(const LayerStep& s) {
  if (s.targets.size() != 1) throw SemanticsMismatch("step must target exactly one variable");
  return s.targets.front();
}

template <class V>
const TreeNode* joined(const LayerStep& s, std::span<const SemanticValue> val, TreeFamily f, int n,
                       TreeStore& store) {
  std::vector<const TreeNode*> nodes;
  for (auto t : s.targets) nodes.push_back(var<V>(val, t).node);
  return store.join(f, n, nodes);
}

}  // namespace

SemanticValue step(const Layer& layer, std::span<const SemanticValue> val, int n, TreeStore& store) {
  const int d = n + 1;
  switch (layer.semantics) {
    case SemanticsId::Trace: {
      TraceValue r{d, {}};
      for (const auto& s : layer.steps)
        for (const auto& w : var<TraceValue>(val, single(s)).words) r.words.insert(prefixed(s.letter, w));
      return r;
    }
    case SemanticsId::CompletedTrace: {
      CompletedTraceValue r{d, {}, {}};
      for (const auto& s : layer.steps) {
        const auto& v = var<CompletedTraceValue>(val, single(s));
        for (const auto& w : v.live) r.live.insert(prefixed(s.letter, w));
        for (const auto& w : v.dead) r.dead.insert(prefixed(s.letter, w));
      }
      if (layer.star) r.dead.insert(Word{});
      return r;
    }
    case SemanticsId::Readiness: {
      ReadinessValue r{d, {}, {}};
      for (auto a : layer.sets) r.pairs.insert({Word{}, a});
      for (const auto& s : layer.steps) {
        const auto& v = var<ReadinessValue>(val, single(s));
        for (const auto& w : v.live) r.live.insert(prefixed(s.letter, w));
        for (const auto& [w, a] : v.pairs) r.pairs.insert({prefixed(s.letter, w), a});
      }
      return r;
    }
    case SemanticsId::Failures: {
      FailuresValue r{d, {}, {}};
      for (auto a : layer.sets) insert_maximal(r.pairs[Word{}], a);
      for (const auto& s : layer.steps) {
        const auto& v = var<FailuresValue>(val, single(s));
        for (const auto& w : v.live) r.live.insert(prefixed(s.letter, w));
        for (const auto& [w, chain] : v.pairs) {
          auto& target = r.pairs[prefixed(s.letter, w)];
          for (auto a : chain) insert_maximal(target, a);
        }
      }
      return r;
    }
    case SemanticsId::ReadyTrace:
    case SemanticsId::FailureTrace: {
      WordSet live, dead;
      for (const auto& s : layer.steps) {
        const WordSet *vl, *vd;
        if (layer.semantics == SemanticsId::ReadyTrace) {
          const auto& v = var<ReadyTraceValue>(val, single(s));
          vl = &v.live, vd = &v.dead;
        } else {
          const auto& v = var<FailureTraceValue>(val, single(s));
          vl = &v.live, vd = &v.dead;
        }
        for (const auto& w : *vl) live.insert(prefixed(s.letter, w));
        for (const auto& w : *vd) dead.insert(prefixed(s.letter, w));
      }
      if (layer.star) dead.insert(Word{});
      if (layer.semantics == SemanticsId::ReadyTrace) return ReadyTraceValue{d, std::move(live), std::move(dead)};
      return FailureTraceValue{d, maximal_words(live), maximal_words(dead)};
    }
    case SemanticsId::Simulation: {
      std::vector<TreeChild> children;
      for (const auto& s : layer.steps)
        children.push_back({s.letter, joined<SimulationValue>(s, val, TreeFamily::Simulation, n, store)});
      return SimulationValue{store.make_maximal(TreeFamily::Simulation, d, false, std::move(children))};
    }
    case SemanticsId::ReadySimulation: {
      std::vector<TreeChild> children;
      for (const auto& s : layer.steps)
        children.push_back(
            {s.letter, joined<ReadySimulationValue>(s, val, TreeFamily::ReadySimulation, n, store)});
      return ReadySimulationValue{
          store.make_maximal(TreeFamily::ReadySimulation, d, layer.star, std::move(children))};
    }
    case SemanticsId::Bisimilarity: {
      std::vector<TreeChild> children;
      for (const auto& s : layer.steps) children.push_back({s.letter, var<BisimulationValue>(val, single(s)).node});
      return BisimulationValue{store.make(TreeFamily::Bisimulation, d, false, std::move(children))};
    }
    case SemanticsId::ProbabilisticTrace: {
      ProbTraceValue r{d, {}};
      for (const auto& s : layer.steps)
        for (const auto& [w, p] : var<ProbTraceValue>(val, single(s)).mass) r.mass[prefixed(s.letter, w)] += s.weight * p;
      return r;
    }
  }
  throw SemanticsMismatch("unknown semantics");
}

namespace {

BetaTable run(const std::vector<Layer>& layers, SemanticsId sem, int depth, TreeStore& store, bool parallel) {
  if (depth < 0) throw SemanticsMismatch("depth must be non-negative");
  const auto n = static_cast<std::ptrdiff_t>(layers.size());
  BetaTable table;
  table.reserve(depth + 1);
  table.emplace_back(layers.size(), unit_value(sem, store));
  for (int k = 0; k < depth; ++k) {
    std::span<const SemanticValue> prev = table.back();
    std::vector<SemanticValue> next(layers.size(), unit_value(sem, store));
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t x = 0; x < n; ++x) next[x] = step(layers[x], prev, k, store);
    } else {
      for (std::ptrdiff_t x = 0; x < n; ++x) next[x] = step(layers[x], prev, k, store);
    }
    table.push_back(std::move(next));
  }
  return table;
}

std::vector<Layer> layers_of(const Lts& lts, SemanticsId sem) {
  std::vector<Layer> layers;
  for (StateId x = 0; x < lts.num_states(); ++x) layers.push_back(alpha(lts, sem, x));
  return layers;
}

std::vector<Layer> layers_of(const Gps& gps, SemanticsId sem) {
  if (!is_probabilistic(sem))
    throw SemanticsMismatch(std::string(name(sem)) + " applies to LTS models only");
  std::vector<Layer> layers;
  for (StateId x = 0; x < gps.num_states(); ++x) layers.push_back(alpha(gps, x));
  return layers;
}

}  // namespace

BetaTable beta_sequence(const Lts& lts, SemanticsId sem, int depth, TreeStore& store) {
  return run(layers_of(lts, sem), sem, depth, store, true);
}

BetaTable beta_sequence(const Gps& gps, SemanticsId sem, int depth, TreeStore& store) {
  return run(layers_of(gps, sem), sem, depth, store, true);
}

BetaTable beta_sequence(const Model& model, SemanticsId sem, int depth, TreeStore& store) {
  return std::visit([&](const auto& m) { return beta_sequence(m, sem, depth, store); }, model);
}

BetaTable beta_sequence_serial(const Lts& lts, SemanticsId sem, int depth, TreeStore& store) {
  return run(layers_of(lts, sem), sem, depth, store, false);
}

BetaTable beta_sequence_serial(const Gps& gps, SemanticsId sem, int depth, TreeStore& store) {
  return run(layers_of(gps, sem), sem, depth, store, false);
}

std::vector<SemanticValue> beta(const Model& model, SemanticsId sem, int depth) {
  return beta_sequence(model, sem, depth).back();
}

std::optional<int> first_difference(const BetaTable& table, StateId x, StateId y) {
  for (std::size_t k = 0; k < table.size(); ++k)
    if (table[k].at(x) != table[k].at(y)) return static_cast<int>(k);
  return std::nullopt;
}

void require_compatible(const Model& model, SemanticsId sem) {
  bool gps = std::holds_alternative<Gps>(model);
  if (gps != is_probabilistic(sem))
    throw SemanticsMismatch(std::string(name(sem)) + (gps ? " applies to LTS models only"
                                                          : " applies to GPS models only"));
}

namespace {

std::size_t num_states(const Model& m) {
  return std::visit([](const auto& x) { return x.num_states(); }, m);
}

}  // namespace

bool equivalent(const Model& model, SemanticsId sem, StateId x, StateId y, int depth) {
  require_compatible(model, sem);
  auto n = num_states(model);
  if (x >= n || y >= n) throw ModelError("state index out of range");
  return !first_difference(beta_sequence(model, sem, depth), x, y).has_value();
}

Partition partition(const BetaTable& table, SemanticsId sem, int depth) {
  Partition p{depth, {}, sem};
  std::size_t n = table.front().size();
  for (StateId x = 0; x < n; ++x) {
    bool placed = false;
    for (auto& block : p.blocks) {
      StateId r = block.front();
      bool same = true;
      for (int k = 0; k <= depth && same; ++k) same = table.at(k)[x] == table.at(k)[r];
      if (same) {
        block.push_back(x);
        placed = true;
        break;
      }
    }
    if (!placed) p.blocks.push_back({x});
  }
  return p;
}

Partition partition(const Model& model, SemanticsId sem, int depth) {
  require_compatible(model, sem);
  return partition(beta_sequence(model, sem, depth), sem, depth);
}

std::vector<std::vector<bool>> simulates_relation(const BetaTable& table, int depth) {
  const auto& row = table.at(depth);
  std::vector<std::vector<bool>> rel(row.size(), std::vector<bool>(row.size()));
  for (std::size_t x = 0; x < row.size(); ++x)
    for (std::size_t y = 0; y < row.size(); ++y) rel[x][y] = sim_leq(row[x], row[y]);
  return rel;
}

int stabilization_depth(const Lts& lts, SemanticsId sem) {
  if (!is_coinductive(sem))
    throw UnsupportedSemantics(std::string(name(sem)) + " has no stabilization depth; use the automata decision");
  auto layers = layers_of(lts, sem);
  auto& store = tree_store();
  const std::size_t n = lts.num_states();

  auto kernel = [&](const std::vector<SemanticValue>& row) {
    std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        rel[x][y] = sem == SemanticsId::Bisimilarity ? row[x] == row[y] : sim_leq(row[x], row[y], store);
    return rel;
  };

  std::vector<SemanticValue> row(n, unit_value(sem, store));
  auto rel = kernel(row);
  for (int k = 0;; ++k) {
    std::vector<SemanticValue> next(n, unit_value(sem, store));
    const auto m = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t x = 0; x < m; ++x) next[x] = step(layers[x], row, k, store);
    auto next_rel = kernel(next);
    if (next_rel == rel) return k;
    row = std::move(next);
    rel = std::move(next_rel);
  }
}

}  // namespace spectrum
