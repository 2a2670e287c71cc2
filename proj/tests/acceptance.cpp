// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "fixtures.hpp"
#include "generators.hpp"
#include "spectrum/error.hpp"
#include "spectrum/laws.hpp"
#include "spectrum/oracles.hpp"
#include "spectrum/separators.hpp"
#include "spectrum/theory.hpp"

using namespace spectrum;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& what) {
    if (ok) detail = what;
    ok = false;
  }
};

constexpr int corpus_depth = 6;

std::vector<SemanticsId> logic_lts_semantics() {
  std::vector<SemanticsId> out;
  for (auto s : lts_semantics)
    if (has_logic(s)) out.push_back(s);
  return out;
}

bool equal_up_to(const BetaTable& t, int n, StateId x, StateId y) {
  for (int k = 0; k <= n; ++k)
    if (!(t[k][x] == t[k][y])) return false;
  return true;
}

// 1. engine = direct-definition oracles on the corpus, all semantics, depths ≤ 6
Outcome oracle_agreement() {
  Outcome o;
  std::size_t checks = 0;
  const auto& c = fixtures::corpus();
  for (std::size_t i = 0; i < c.lts.size(); ++i) {
    const Lts& lts = c.lts[i];
    for (auto sem : lts_semantics) {
      BetaTable t = beta_sequence(lts, sem, corpus_depth);
      for (StateId x = 0; x < lts.num_states(); ++x) {
        auto ref = oracle_values(lts, sem, x, corpus_depth);
        for (int k = 0; k <= corpus_depth; ++k, ++checks)
          if (!(t[k][x] == ref[k]))
            o.fail("lts " + std::to_string(i) + " " + std::string(name(sem)) + " state " + std::to_string(x) +
                   " depth " + std::to_string(k));
      }
    }
  }
  for (std::size_t i = 0; i < c.gps.size(); ++i) {
    const Gps& gps = c.gps[i];
    BetaTable t = beta_sequence(gps, SemanticsId::ProbabilisticTrace, corpus_depth);
    for (StateId x = 0; x < gps.num_states(); ++x) {
      auto ref = oracle_values(gps, SemanticsId::ProbabilisticTrace, x, corpus_depth);
      for (int k = 0; k <= corpus_depth; ++k, ++checks)
        if (!(t[k][x] == ref[k])) o.fail("gps " + std::to_string(i) + " state " + std::to_string(x));
    }
  }
  if (o.ok) o.detail = std::to_string(checks) + " values equal";
  return o;
}

// 2. spectrum inclusions at every depth
Outcome spectrum_lattice() {
  using S = SemanticsId;
  const std::pair<S, S> edges[] = {
      {S::Bisimilarity, S::ReadySimulation}, {S::ReadySimulation, S::Simulation}, {S::ReadySimulation, S::ReadyTrace},
      {S::ReadyTrace, S::Readiness},         {S::ReadyTrace, S::FailureTrace},    {S::FailureTrace, S::Failures},
      {S::Readiness, S::Failures},           {S::Failures, S::CompletedTrace},    {S::CompletedTrace, S::Trace},
      {S::Simulation, S::Trace},
  };
  Outcome o;
  std::size_t implications = 0;
  for (std::size_t i = 0; i < fixtures::corpus().lts.size(); ++i) {
    const Lts& lts = fixtures::corpus().lts[i];
    std::map<S, BetaTable> tables;
    for (auto sem : lts_semantics) tables[sem] = beta_sequence(lts, sem, corpus_depth);
    for (int n = 0; n <= corpus_depth; ++n)
      for (StateId x = 0; x < lts.num_states(); ++x)
        for (StateId y = 0; y < lts.num_states(); ++y)
          for (const auto& [a, b] : edges) {
            ++implications;
            if (equal_up_to(tables[a], n, x, y) && !equal_up_to(tables[b], n, x, y))
              o.fail("lts " + std::to_string(i) + ": " + std::string(name(a)) + " does not imply " +
                     std::string(name(b)) + " at depth " + std::to_string(n));
          }
  }
  if (o.ok) o.detail = std::to_string(implications) + " implications, 0 violations";
  return o;
}

// 3. the G1/G2 fixture, from the engine and independently from the oracles
Outcome fixture_verdicts() {
  using fixtures::u0;
  using fixtures::v0;
  Outcome o;
  const Lts g = fixtures::g1g2();
  const int deep = 12;
  for (auto sem : {SemanticsId::Trace, SemanticsId::CompletedTrace}) {
    if (first_difference(beta_sequence(g, sem, deep), u0, v0)) o.fail(std::string(name(sem)) + " differs (engine)");
    for (int k = 0; k <= 8; ++k)
      if (!(oracle_value(g, sem, u0, k) == oracle_value(g, sem, v0, k)))
        o.fail(std::string(name(sem)) + " differs (oracle)");
    if (!full_trace_like_equivalent(g, sem, u0, v0)) o.fail(std::string(name(sem)) + " differs (automata)");
  }
  for (auto sem : {SemanticsId::Readiness, SemanticsId::Failures, SemanticsId::ReadyTrace, SemanticsId::FailureTrace,
                   SemanticsId::Simulation, SemanticsId::ReadySimulation, SemanticsId::Bisimilarity}) {
    auto fd = first_difference(beta_sequence(g, sem, 6), u0, v0);
    if (fd != 2) o.fail(std::string(name(sem)) + " engine first difference not 2");
    auto ru = oracle_values(g, sem, u0, 6), rv = oracle_values(g, sem, v0, 6);
    std::optional<int> ofd;
    for (int k = 0; k <= 6 && !ofd; ++k)
      if (!(ru[k] == rv[k])) ofd = k;
    if (ofd != 2) o.fail(std::string(name(sem)) + " oracle first difference not 2");
    if (!is_coinductive(sem) && full_trace_like_equivalent(g, sem, u0, v0))
      o.fail(std::string(name(sem)) + " equal under automata");
  }
  auto part = bisim_partition(g);
  for (const auto& block : part.blocks)
    if (std::count(block.begin(), block.end(), u0) && std::count(block.begin(), block.end(), v0))
      o.fail("bisimilar by partition refinement");
  auto sim = sim_preorder(g);
  auto rsim = sim_preorder(g, true);
  if (!sim[v0][u0] || sim[u0][v0]) o.fail("oracle simulation preorder");
  if (rsim[v0][u0] && rsim[u0][v0]) o.fail("oracle ready-simulation equivalence");
  int s = stabilization_depth(g, SemanticsId::Simulation);
  auto rel = simulates_relation(beta_sequence(g, SemanticsId::Simulation, s), s);
  if (!rel[v0][u0] || rel[u0][v0]) o.fail("engine simulates-relation");
  if (o.ok) o.detail = "trace/completed-trace equal; 7 semantics first differ at depth 2; u0 simulates v0 only";
  return o;
}

// 4. eval_state = eval_value ∘ beta for 1000 random formulas per semantics
Outcome invariance() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::size_t evaluations = 0;
  std::vector<SemanticsId> sems = logic_lts_semantics();
  sems.push_back(SemanticsId::ProbabilisticTrace);
  const auto& c = fixtures::corpus();
  for (auto sem : sems) {
    for (int i = 0; i < 1000; ++i) {
      Model m = is_probabilistic(sem) ? Model(c.gps[i % c.gps.size()]) : Model(c.lts[(i * 7) % c.lts.size()]);
      const Alphabet& al = std::visit([](const auto& x) -> const Alphabet& { return x.alphabet(); }, m);
      auto vocab = vocabulary(sem, al);
      int depth = static_cast<int>(rng() % 5);
      Formula f = generators::random_formula(vocab, depth, rng);
      auto by_state = eval_states(f, vocab, m);
      auto values = beta(m, sem, depth);
      for (std::size_t x = 0; x < values.size(); ++x, ++evaluations)
        if (!(eval_value(f, vocab, values[x]) == by_state[x]))
          o.fail(std::string(name(sem)) + ": " + print(f, al) + " at state " + std::to_string(x));
    }
  }
  if (o.ok) o.detail = std::to_string(evaluations) + " evaluations equal";
  return o;
}

void check_witness(Outcome& o, const Model& m, SemanticsId sem, StateId x, StateId y, const BetaTable& t,
                   std::size_t& witnesses, const std::string& where) {
  auto fd = first_difference(t, x, y);
  auto w = distinguish(m, sem, x, y, corpus_depth);
  if (fd.has_value() != w.has_value()) {
    o.fail(where + ": witness presence mismatch");
    return;
  }
  if (!w) return;
  ++witnesses;
  const Alphabet& al = std::visit([](const auto& z) -> const Alphabet& { return z.alphabet(); }, m);
  auto vocab = vocabulary(sem, al);
  if (w->depth != *fd || !admits_depth(w->formula, *fd)) o.fail(where + ": witness not at the least depth");
  if (w->at_x == w->at_y) o.fail(where + ": witness does not separate");
  if (!(eval_state(w->formula, vocab, m, x) == w->at_x) || !(eval_state(w->formula, vocab, m, y) == w->at_y))
    o.fail(where + ": witness unsound");
}

// 5. sound witnesses at the least depth for every inequivalent pair
Outcome expressiveness() {
  Outcome o;
  std::size_t witnesses = 0;
  const auto& c = fixtures::corpus();
  for (std::size_t i = 0; i < c.lts.size(); ++i) {
    Model m = c.lts[i];
    const Lts& lts = c.lts[i];
    for (auto sem : logic_lts_semantics()) {
      BetaTable t = beta_sequence(lts, sem, corpus_depth);
      for (StateId x = 0; x < lts.num_states(); ++x)
        for (StateId y = x + 1; y < lts.num_states(); ++y)
          check_witness(o, m, sem, x, y, t, witnesses, "lts " + std::to_string(i) + " " + std::string(name(sem)));
    }
  }
  for (std::size_t i = 0; i < c.gps.size(); ++i) {
    Model m = c.gps[i];
    BetaTable t = beta_sequence(c.gps[i], SemanticsId::ProbabilisticTrace, corpus_depth);
    for (StateId x = 0; x < c.gps[i].num_states(); ++x)
      for (StateId y = x + 1; y < c.gps[i].num_states(); ++y)
        check_witness(o, m, SemanticsId::ProbabilisticTrace, x, y, t, witnesses, "gps " + std::to_string(i));
  }
  Model p1 = fixtures::p1();
  auto vocab = vocabulary(SemanticsId::ProbabilisticTrace, std::get<Gps>(p1).alphabet());
  if (!(eval_state(parse_formula("<a><b>1", vocab), vocab, p1, 0) == Omega{Rational(1, 2)}))
    o.fail("<a><b>1 at P1 is not 1/2");
  if (o.ok) o.detail = std::to_string(witnesses) + " witnesses sound and depth-minimal; <a><b>1 = 1/2 on P1";
  return o;
}

// 6. graded monad laws and the two mutants
Outcome monad_laws() {
  Outcome o;
  std::size_t checked = 0;
  for (auto sem : all_semantics) {
    auto r = check_monad_laws(sem, {0, 1, 2}, 42);
    for (const auto& l : r.results) {
      checked += l.checked;
      if (!l.passed) o.fail(std::string(name(sem)) + ": " + l.law + " " + l.witness);
    }
  }
  auto f = check_monad_laws(SemanticsId::Failures, {0, 1, 2}, 42, LawMutant::FailuresNoDownclosure);
  auto t = check_monad_laws(SemanticsId::Trace, {0, 1, 2}, 42, LawMutant::TraceNonDistributing);
  for (const auto* r : {&f, &t}) {
    bool caught = false;
    for (const auto& l : r->results)
      if (!l.passed && !l.witness.empty()) caught = true;
    if (!caught) o.fail(std::string("mutant of ") + std::string(name(r->semantics)) + " not caught");
  }
  if (o.ok) o.detail = std::to_string(checked) + " law instances pass; both mutants fail with witnesses";
  return o;
}

// 7. theory lab
Outcome theory_lab() {
  Outcome o;
  std::size_t equations = 0, instances = 0;
  std::vector<SemanticsId> theories;
  for (auto s : all_semantics)
    if (s != SemanticsId::Bisimilarity) theories.push_back(s);
  auto holds = [](SemanticsId th, const EquationText& eq) {
    TermContext ctx{th, theory_alphabet(), {}};
    Term l = parse_term(eq.lhs, ctx), r = parse_term(eq.rhs, ctx);
    return check_equation(th, l, r);
  };
  for (auto th : theories) {
    for (const auto& eq : axiom_instances(th)) {
      ++equations;
      if (!holds(th, eq)) o.fail(std::string(name(th)) + ": " + eq.lhs + " = " + eq.rhs + " not derived");
    }
    for (const auto& eq : non_equations(th))
      if (holds(th, eq)) o.fail(std::string(name(th)) + ": " + eq.lhs + " = " + eq.rhs + " derived");
  }
  if (holds(SemanticsId::Simulation, {"a(x + y)", "a(x) + a(y)"})) o.fail("simulation join preservation derived");

  std::mt19937_64 rng(77);
  for (int i = 0; i < 10000; ++i) {
    SemanticsId th = theories[i % theories.size()];
    int n = static_cast<int>(rng() % 3);
    Term t = generators::random_term(th, 2, 1, 3, rng);
    std::vector<Term> by_var;
    std::vector<SemanticValue> vals;
    for (int v = 0; v < 3; ++v) {
      Term nv = normalize(th, generators::random_term(th, 2, n, 2, rng));
      if (!(normalize(th, nv) == nv)) o.fail("normalization not idempotent");
      vals.push_back(to_value(th, nv, n));
      by_var.push_back(std::move(nv));
    }
    Term nt = normalize(th, t);
    Term nsub = normalize(th, substitute(t, by_var));
    if (!(normalize(th, nt) == nt) || !(normalize(th, nsub) == nsub)) o.fail("normalization not idempotent");
    if (!(to_value(th, nsub, n + 1) == step(layer_from_normal_form(th, nt), vals, n)))
      o.fail(std::string(name(th)) + ": substitution disagrees with the engine step");
    ++instances;
  }
  if (o.ok)
    o.detail = std::to_string(equations) + " axiom instances derived; non-equations refuted; " +
               std::to_string(instances) + " substitution instances agree";
  return o;
}

// 8. decorated-word semantics against the original sequence sets
Outcome sequence_lemmas() {
  Outcome o;
  std::size_t pairs = 0;
  const int max_depth = 5;
  for (std::size_t i = 0; i < fixtures::corpus().lts.size(); ++i) {
    const Lts& lts = fixtures::corpus().lts[i];
    for (auto sem : {SemanticsId::ReadyTrace, SemanticsId::FailureTrace}) {
      const bool rt = sem == SemanticsId::ReadyTrace;
      BetaTable t = beta_sequence(lts, sem, max_depth + 1);
      for (StateId x = 0; x < lts.num_states(); ++x)
        for (StateId y = x + 1; y < lts.num_states(); ++y) {
          ++pairs;
          std::vector<bool> seq_eq;
          for (int k = 0; k <= max_depth + 1; ++k) {
            bool eq = rt ? ready_trace_sequences(lts, x, k) == ready_trace_sequences(lts, y, k)
                         : failure_trace_sequences(lts, x, k) == failure_trace_sequences(lts, y, k);
            seq_eq.push_back(eq && (k == 0 || seq_eq.back()));
          }
          std::string where = "lts " + std::to_string(i) + " " + std::string(name(sem)) + " (" + std::to_string(x) +
                              "," + std::to_string(y) + ")";
          for (int n = 0; n <= max_depth; ++n) {
            bool graded = equal_up_to(t, n + 1, x, y);
            // sequences ≤ n+1 determine the graded values ≤ n+1, which determine sequences ≤ n
            if (seq_eq[n + 1] && !graded) o.fail(where + ": sequences do not determine the graded value");
            if (graded && !seq_eq[n]) o.fail(where + ": graded value does not determine the sequences");
          }
          bool full_graded = full_trace_like_equivalent(lts, sem, x, y);
          bool full_seq = rt ? ready_trace_sequences_equivalent(lts, x, y) : failure_trace_sequences_equivalent(lts, x, y);
          if (full_graded != full_seq) o.fail(where + ": unbounded equivalences differ");
        }
    }
  }
  if (o.ok) o.detail = std::to_string(pairs) + " pairs: bounded sandwich and unbounded equality hold";
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"oracle agreement", oracle_agreement}, {"spectrum lattice", spectrum_lattice},
      {"G1/G2 fixture", fixture_verdicts},     {"invariance", invariance},
      {"expressiveness", expressiveness},      {"graded monad laws", monad_laws},
      {"theory lab", theory_lab},              {"sequence lemmas", sequence_lemmas},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [title, fn] : criteria) {
    ++index;
    auto start = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = fn();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %d %s: %s (%s) [%.1fs]\n", index, title, r.ok ? "PASS" : "FAIL", r.detail.c_str(), secs);
    std::fflush(stdout);
    if (!r.ok) ++failed;
  }
  return failed ? 1 : 0;
}
