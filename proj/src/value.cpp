#include "spectrum/value.hpp"

#include "spectrum/error.hpp"

namespace spectrum {

SemanticsId semantics_of(const SemanticValue& v) { return static_cast<SemanticsId>(v.index()); }

int depth_of(const SemanticValue& v) {
  return std::visit(
      [](const auto& x) -> int {
        if constexpr (requires { x.node; }) return x.node->depth;
        else return x.depth;
      },
      v);
}

TreeFamily tree_family(SemanticsId s) {
  switch (s) {
    case SemanticsId::Bisimilarity: return TreeFamily::Bisimulation;
    case SemanticsId::Simulation: return TreeFamily::Simulation;
    case SemanticsId::ReadySimulation: return TreeFamily::ReadySimulation;
    default: throw SemanticsMismatch(std::string(name(s)) + " values are not trees");
  }
}

SemanticValue unit_value(SemanticsId s, TreeStore& store) {
  switch (s) {
    case SemanticsId::Bisimilarity: return BisimulationValue{store.top(TreeFamily::Bisimulation)};
    case SemanticsId::Trace: return TraceValue{0, {Word{}}};
    case SemanticsId::CompletedTrace: return CompletedTraceValue{0, {Word{}}, {}};
    case SemanticsId::Readiness: return ReadinessValue{0, {Word{}}, {}};
    case SemanticsId::Failures: return FailuresValue{0, {Word{}}, {}};
    case SemanticsId::ReadyTrace: return ReadyTraceValue{0, {Word{}}, {}};
    case SemanticsId::FailureTrace: return FailureTraceValue{0, {Word{}}, {}};
    case SemanticsId::Simulation: return SimulationValue{store.top(TreeFamily::Simulation)};
    case SemanticsId::ReadySimulation: return ReadySimulationValue{store.top(TreeFamily::ReadySimulation)};
    case SemanticsId::ProbabilisticTrace: return ProbTraceValue{0, {{Word{}, Rational(1)}}};
  }
  throw SemanticsMismatch("unknown semantics");
}

SemanticValue empty_value(SemanticsId s, int depth, TreeStore& store) {
  switch (s) {
    case SemanticsId::Trace: return TraceValue{depth, {}};
    case SemanticsId::CompletedTrace: return CompletedTraceValue{depth, {}, {}};
    case SemanticsId::Readiness: return ReadinessValue{depth, {}, {}};
    case SemanticsId::Failures: return FailuresValue{depth, {}, {}};
    case SemanticsId::ReadyTrace: return ReadyTraceValue{depth, {}, {}};
    case SemanticsId::FailureTrace: return FailureTraceValue{depth, {}, {}};
    case SemanticsId::Simulation:
    case SemanticsId::ReadySimulation: {
      auto f = tree_family(s);
      auto node = store.join(f, depth, {});
      if (s == SemanticsId::Simulation) return SimulationValue{node};
      return ReadySimulationValue{node};
    }
    default: throw SemanticsMismatch(std::string(name(s)) + " has no empty value");
  }
}

namespace {

std::string render_words(const WordSet& ws, const Alphabet& al, bool decorated) {
  std::string out = "{";
  bool first = true;
  for (const auto& w : ws) {
    if (!first) out += ", ";
    first = false;
    out += render_word(w, al, decorated);
  }
  return out + "}";
}

std::string render_tree(const TreeNode* n, const Alphabet& al) {
  if (n->depth == 0) return n->bottom ? "⊥" : "⊤";
  std::string out = "{";
  bool first = true;
  if (n->star) {
    out += "*";
    first = false;
  }
  for (const auto& c : n->children) {
    if (!first) out += ", ";
    first = false;
    if (n->family == TreeFamily::ReadySimulation) out += render_set(c.letter.deco, al);
    out += al.label(c.letter.act) + "(" + render_tree(c.node, al) + ")";
  }
  return out + "}";
}

}  // namespace

std::string render(const SemanticValue& v, const Alphabet& al) {
  struct Visitor {
    const Alphabet& al;
    std::string operator()(const TraceValue& x) { return render_words(x.words, al, false); }
    std::string operator()(const CompletedTraceValue& x) {
      return "live" + render_words(x.live, al, false) + " dead" + render_words(x.dead, al, false);
    }
    std::string operator()(const ReadinessValue& x) {
      std::string out = "live" + render_words(x.live, al, false) + " ready{";
      bool first = true;
      for (const auto& [w, s] : x.pairs) {
        if (!first) out += ", ";
        first = false;
        out += "(" + render_word(w, al, false) + "," + render_set(s, al) + ")";
      }
      return out + "}";
    }
    std::string operator()(const FailuresValue& x) {
      std::string out = "live" + render_words(x.live, al, false) + " fail{";
      bool first = true;
      for (const auto& [w, chain] : x.pairs) {
        if (!first) out += ", ";
        first = false;
        out += "(" + render_word(w, al, false) + ",[";
        for (std::size_t i = 0; i < chain.size(); ++i) out += (i ? "," : "") + render_set(chain[i], al);
        out += "])";
      }
      return out + "}";
    }
    std::string operator()(const ReadyTraceValue& x) {
      return "live" + render_words(x.live, al, true) + " dead" + render_words(x.dead, al, true);
    }
    std::string operator()(const FailureTraceValue& x) {
      return "live" + render_words(x.live, al, true) + " dead" + render_words(x.dead, al, true);
    }
    std::string operator()(const SimulationValue& x) { return render_tree(x.node, al); }
    std::string operator()(const ReadySimulationValue& x) { return render_tree(x.node, al); }
    std::string operator()(const BisimulationValue& x) { return render_tree(x.node, al); }
    std::string operator()(const ProbTraceValue& x) {
      std::string out = "{";
      bool first = true;
      for (const auto& [w, p] : x.mass) {
        if (!first) out += ", ";
        first = false;
        out += render_word(w, al, false) + ": " + to_string(p);
      }
      return out + "}";
    }
  };
  return std::visit(Visitor{al}, v);
}

bool sim_leq(const SemanticValue& v, const SemanticValue& w, TreeStore& store) {
  if (v.index() != w.index()) throw SemanticsMismatch("sim_leq on values of different semantics");
  if (auto a = std::get_if<SimulationValue>(&v)) return store.leq(a->node, std::get<SimulationValue>(w).node);
  if (auto a = std::get_if<ReadySimulationValue>(&v))
    return store.leq(a->node, std::get<ReadySimulationValue>(w).node);
  throw SemanticsMismatch("sim_leq needs simulation or ready-simulation values");
}

}  // namespace spectrum

namespace spectrum {

SemanticValue join_values(const SemanticValue& a, const SemanticValue& b, TreeStore& store) {
  if (a.index() != b.index() || depth_of(a) != depth_of(b))
    throw SemanticsMismatch("join of values of different semantics or depth");
  auto unite = [](WordSet x, const WordSet& y) {
    x.insert(y.begin(), y.end());
    return x;
  };
  return std::visit(
      [&](const auto& x) -> SemanticValue {
        using V = std::decay_t<decltype(x)>;
        const V& y = std::get<V>(b);
        if constexpr (std::is_same_v<V, TraceValue>) {
          return TraceValue{x.depth, unite(x.words, y.words)};
        } else if constexpr (std::is_same_v<V, CompletedTraceValue>) {
          return CompletedTraceValue{x.depth, unite(x.live, y.live), unite(x.dead, y.dead)};
        } else if constexpr (std::is_same_v<V, ReadinessValue>) {
          ReadinessValue r{x.depth, unite(x.live, y.live), x.pairs};
          r.pairs.insert(y.pairs.begin(), y.pairs.end());
          return r;
        } else if constexpr (std::is_same_v<V, FailuresValue>) {
          FailuresValue r{x.depth, unite(x.live, y.live), x.pairs};
          for (const auto& [w, chain] : y.pairs)
            for (auto s : chain) insert_maximal(r.pairs[w], s);
          return r;
        } else if constexpr (std::is_same_v<V, ReadyTraceValue>) {
          return ReadyTraceValue{x.depth, unite(x.live, y.live), unite(x.dead, y.dead)};
        } else if constexpr (std::is_same_v<V, FailureTraceValue>) {
          return FailureTraceValue{x.depth, maximal_words(unite(x.live, y.live)),
                                   maximal_words(unite(x.dead, y.dead))};
        } else if constexpr (std::is_same_v<V, SimulationValue> || std::is_same_v<V, ReadySimulationValue>) {
          const TreeNode* nodes[] = {x.node, y.node};
          return V{store.join(x.node->family, x.node->depth, nodes)};
        } else {
          throw SemanticsMismatch("no join on " + std::string(name(semantics_of(a))) + " values");
        }
      },
      a);
}

SemanticValue mix_values(const Rational& p, const SemanticValue& a, const SemanticValue& b) {
  const auto* x = std::get_if<ProbTraceValue>(&a);
  const auto* y = std::get_if<ProbTraceValue>(&b);
  if (!x || !y || x->depth != y->depth) throw SemanticsMismatch("mix of non-probabilistic or unequal-depth values");
  ProbTraceValue r{x->depth, {}};
  for (const auto& [w, m] : x->mass) r.mass[w] += p * m;
  for (const auto& [w, m] : y->mass) r.mass[w] += (1 - p) * m;
  std::erase_if(r.mass, [](const auto& e) { return e.second == 0; });
  return r;
}

}  // namespace spectrum
