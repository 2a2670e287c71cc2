#include "spectrum/logic.hpp"

#include "spectrum/engine.hpp"
#include "spectrum/error.hpp"

namespace spectrum {

std::string render(const Omega& o) {
  if (auto b = std::get_if<bool>(&o)) return *b ? "true" : "false";
  return to_string(std::get<Rational>(o));
}

namespace {

template <class Match>
WordSet tails(const WordSet& words, Match match) {
  WordSet out;
  for (const auto& w : words)
    if (!w.empty() && match(w.front())) out.insert(Word(w.begin() + 1, w.end()));
  return out;
}

int lowered(int depth) {
  if (depth <= 0) throw SemanticsMismatch("residual of a depth-0 value");
  return depth - 1;
}

}  // namespace

SemanticValue residual(const SemanticValue& v, Letter l) {
  auto by_act = [&](const Letter& x) { return x.act == l.act; };
  auto exact = [&](const Letter& x) { return x == l; };
  auto refusing = [&](const Letter& x) { return x.act == l.act && l.deco.subset_of(x.deco); };
  return std::visit(
      [&](const auto& val) -> SemanticValue {
        using V = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<V, TraceValue>) {
          return TraceValue{lowered(val.depth), tails(val.words, by_act)};
        } else if constexpr (std::is_same_v<V, CompletedTraceValue>) {
          return CompletedTraceValue{lowered(val.depth), tails(val.live, by_act), tails(val.dead, by_act)};
        } else if constexpr (std::is_same_v<V, ReadinessValue>) {
          ReadinessValue r{lowered(val.depth), tails(val.live, by_act), {}};
          for (const auto& [w, a] : val.pairs)
            if (!w.empty() && by_act(w.front())) r.pairs.insert({Word(w.begin() + 1, w.end()), a});
          return r;
        } else if constexpr (std::is_same_v<V, FailuresValue>) {
          FailuresValue r{lowered(val.depth), tails(val.live, by_act), {}};
          for (const auto& [w, chain] : val.pairs)
            if (!w.empty() && by_act(w.front())) r.pairs[Word(w.begin() + 1, w.end())] = chain;
          return r;
        } else if constexpr (std::is_same_v<V, ReadyTraceValue>) {
          return ReadyTraceValue{lowered(val.depth), tails(val.live, exact), tails(val.dead, exact)};
        } else if constexpr (std::is_same_v<V, FailureTraceValue>) {
          return FailureTraceValue{lowered(val.depth), maximal_words(tails(val.live, refusing)),
                                   maximal_words(tails(val.dead, refusing))};
        } else if constexpr (std::is_same_v<V, ProbTraceValue>) {
          ProbTraceValue r{lowered(val.depth), {}};
          for (const auto& [w, p] : val.mass)
            if (!w.empty() && by_act(w.front())) r.mass[Word(w.begin() + 1, w.end())] += p;
          return r;
        } else {
          throw SemanticsMismatch("tree values have no single residual");
        }
      },
      v);
}

namespace {

bool nonempty(const SemanticValue& v) {
  return std::visit(
      [](const auto& val) -> bool {
        using V = std::decay_t<decltype(val)>;
        if constexpr (std::is_same_v<V, TraceValue>) return !val.words.empty();
        else if constexpr (std::is_same_v<V, CompletedTraceValue> || std::is_same_v<V, ReadyTraceValue> ||
                           std::is_same_v<V, FailureTraceValue>)
          return !val.live.empty() || !val.dead.empty();
        else if constexpr (std::is_same_v<V, ReadinessValue> || std::is_same_v<V, FailuresValue>)
          return !val.live.empty() || !val.pairs.empty();
        else if constexpr (std::is_same_v<V, ProbTraceValue>) return !val.mass.empty();
        else return !val.node->bottom;
      },
      v);
}

Rational total(const SemanticValue& v) {
  Rational sum;
  for (const auto& [w, p] : std::get<ProbTraceValue>(v).mass) sum += p;
  return sum;
}

bool dead_now(const SemanticValue& v) {
  Word eps;
  if (auto c = std::get_if<CompletedTraceValue>(&v)) return c->dead.contains(eps);
  if (auto r = std::get_if<ReadyTraceValue>(&v)) return r->dead.contains(eps);
  if (auto f = std::get_if<FailureTraceValue>(&v)) return f->dead.contains(eps);
  throw SemanticsMismatch("* on a value without deadlock information");
}

bool holds(const Omega& o) { return std::get<bool>(o); }

Omega eval(const Formula& f, const SemanticValue& v) {
  switch (f.kind) {
    case NodeKind::Truth: return nonempty(v);
    case NodeKind::Const: return f.constant * total(v);
    case NodeKind::Disj:
      for (const auto& a : f.args)
        if (holds(eval(a, v))) return true;
      return false;
    case NodeKind::Conj:
      for (const auto& a : f.args)
        if (!holds(eval(a, v))) return false;
      return true;
    case NodeKind::Neg: return !holds(eval(f.args.at(0), v));
    case NodeKind::Affine: {
      Rational sum = f.constant * total(v);
      for (std::size_t i = 0; i < f.args.size(); ++i) sum += f.coeffs[i] * std::get<Rational>(eval(f.args[i], v));
      return sum;
    }
    case NodeKind::Diamond:
    case NodeKind::DecoratedDiamond: {
      if (auto b = std::get_if<BisimulationValue>(&v)) {
        for (const auto& c : b->node->children)
          if (c.letter.act == f.act && holds(eval(f.args.at(0), BisimulationValue{c.node}))) return true;
        return false;
      }
      ActionSet deco = f.kind == NodeKind::DecoratedDiamond ? f.set : ActionSet{};
      return eval(f.args.at(0), residual(v, Letter{f.act, deco}));
    }
    case NodeKind::Star: return dead_now(v);
    case NodeKind::ReadyConst: return std::get<ReadinessValue>(v).pairs.contains({Word{}, f.set});
    case NodeKind::FailConst: {
      const auto& pairs = std::get<FailuresValue>(v).pairs;
      auto it = pairs.find(Word{});
      return it != pairs.end() && set_dominated(f.set, it->second);
    }
  }
  throw SemanticsMismatch("unknown formula node");
}

}  // namespace

Omega eval_value(const Formula& f, const Vocabulary& vocab, const SemanticValue& v) {
  check_vocabulary(f, vocab);
  if (semantics_of(v) != vocab.semantics)
    throw SemanticsMismatch("a " + std::string(name(vocab.semantics)) + " formula evaluated on a " +
                            std::string(name(semantics_of(v))) + " value");
  int n = depth_of(v);
  if (!admits_depth(f, n))
    throw SemanticsMismatch("formula of depth " + std::to_string(uniform_depth(f, &vocab.alphabet)) +
                            " evaluated on a depth-" + std::to_string(n) + " value");
  return eval(f, v);
}

namespace {

std::vector<bool> eval_lts(const Formula& f, SemanticsId sem, const Lts& lts) {
  const std::size_t n = lts.num_states();
  std::vector<bool> out(n);
  switch (f.kind) {
    case NodeKind::Truth: out.assign(n, true); break;
    case NodeKind::Disj:
    case NodeKind::Conj: {
      bool is_disj = f.kind == NodeKind::Disj;
      out.assign(n, !is_disj);
      for (const auto& a : f.args) {
        auto sub = eval_lts(a, sem, lts);
        for (std::size_t x = 0; x < n; ++x) out[x] = is_disj ? out[x] || sub[x] : out[x] && sub[x];
      }
      break;
    }
    case NodeKind::Neg: {
      auto sub = eval_lts(f.args.at(0), sem, lts);
      for (std::size_t x = 0; x < n; ++x) out[x] = !sub[x];
      break;
    }
    case NodeKind::Diamond:
    case NodeKind::DecoratedDiamond: {
      auto sub = eval_lts(f.args.at(0), sem, lts);
      for (StateId x = 0; x < n; ++x) {
        if (f.kind == NodeKind::DecoratedDiamond) {
          ActionSet ready = lts.ready_set(x);
          bool ok = sem == SemanticsId::ReadyTrace ? ready == f.set : ready.disjoint(f.set);
          if (!ok) continue;
        }
        for (const auto& s : lts.successors(x))
          if (s.act == f.act && sub[s.dst]) {
            out[x] = true;
            break;
          }
      }
      break;
    }
    case NodeKind::Star:
      for (StateId x = 0; x < n; ++x) out[x] = lts.deadlocked(x);
      break;
    case NodeKind::ReadyConst:
      for (StateId x = 0; x < n; ++x) out[x] = lts.ready_set(x) == f.set;
      break;
    case NodeKind::FailConst:
      for (StateId x = 0; x < n; ++x) out[x] = lts.ready_set(x).disjoint(f.set);
      break;
    default: throw SemanticsMismatch("node not defined on transition systems");
  }
  return out;
}

std::vector<Rational> eval_gps(const Formula& f, const Gps& gps) {
  const std::size_t n = gps.num_states();
  std::vector<Rational> out(n);
  switch (f.kind) {
    case NodeKind::Const: out.assign(n, f.constant); break;
    case NodeKind::Affine: {
      out.assign(n, f.constant);
      for (std::size_t i = 0; i < f.args.size(); ++i) {
        auto sub = eval_gps(f.args[i], gps);
        for (std::size_t x = 0; x < n; ++x) out[x] += f.coeffs[i] * sub[x];
      }
      break;
    }
    case NodeKind::Diamond: {
      auto sub = eval_gps(f.args.at(0), gps);
      for (StateId x = 0; x < n; ++x)
        for (const auto& e : gps.row(x))
          if (e.act == f.act) out[x] += e.prob * sub[e.dst];
      break;
    }
    default: throw SemanticsMismatch("node not defined on probabilistic systems");
  }
  return out;
}

}  // namespace

std::vector<Omega> eval_states(const Formula& f, const Vocabulary& vocab, const Model& model) {
  check_vocabulary(f, vocab);
  require_compatible(model, vocab.semantics);
  const Alphabet& al = std::visit([](const auto& m) -> const Alphabet& { return m.alphabet(); }, model);
  if (!(al == vocab.alphabet)) throw SemanticsMismatch("vocabulary alphabet differs from the model's");
  uniform_depth(f, &vocab.alphabet);
  std::vector<Omega> out;
  if (auto lts = std::get_if<Lts>(&model)) {
    for (bool b : eval_lts(f, vocab.semantics, *lts)) out.emplace_back(b);
  } else {
    for (auto& r : eval_gps(f, std::get<Gps>(model))) out.emplace_back(std::move(r));
  }
  return out;
}

Omega eval_state(const Formula& f, const Vocabulary& vocab, const Model& model, StateId x) {
  auto all = eval_states(f, vocab, model);
  if (x >= all.size()) throw ModelError("state index " + std::to_string(x) + " out of range");
  return all[x];
}

}  // namespace spectrum
