#include <doctest.h>

#include "fixtures.hpp"
#include "spectrum/engine.hpp"
#include "spectrum/error.hpp"
#include "spectrum/oracles.hpp"

using namespace spectrum;
using fixtures::u0;
using fixtures::u1;
using fixtures::u2;
using fixtures::v0;

namespace {

constexpr ActionId sigma = 0, tau = 1;

Word w(std::initializer_list<ActionId> acts) { return plain_word(acts); }

// All length-n action sequences along paths from x, by direct search.
WordSet paths(const Lts& lts, StateId x, int n) {
  if (n == 0) return {Word{}};
  WordSet out;
  for (auto s : lts.successors(x))
    for (auto& rest : paths(lts, s.dst, n - 1)) out.insert(prefixed({s.act, {}}, rest));
  return out;
}

}  // namespace

TEST_CASE("trace values of the fixture") {
  Model g = fixtures::g1g2();
  auto b = beta(g, SemanticsId::Trace, 2);
  WordSet expected{w({sigma, sigma}), w({sigma, tau})};
  CHECK(paths(std::get<Lts>(g), u0, 2) == expected);
  CHECK(std::get<TraceValue>(b[u0]).words == expected);
  CHECK(std::get<TraceValue>(b[v0]).words == expected);
}

TEST_CASE("depth 0 is the unit value") {
  Model g = fixtures::g1g2();
  for (auto sem : lts_semantics)
    for (auto& v : beta(g, sem, 0)) CHECK(v == unit_value(sem));
  for (auto& v : beta(Model{fixtures::p1()}, SemanticsId::ProbabilisticTrace, 0))
    CHECK(v == unit_value(SemanticsId::ProbabilisticTrace));
}

TEST_CASE("completed trace of a deadlock") {
  auto b = beta(Model{fixtures::g1g2()}, SemanticsId::CompletedTrace, 1);
  auto& v = std::get<CompletedTraceValue>(b[u2]);
  CHECK(v.live.empty());
  CHECK(v.dead == WordSet{Word{}});
}

TEST_CASE("probabilistic trace of P1") {
  auto b = beta(Model{fixtures::p1()}, SemanticsId::ProbabilisticTrace, 2);
  auto& v = std::get<ProbTraceValue>(b[0]);
  std::map<Word, Rational> expected{{w({0, 1}), Rational(1, 2)}, {w({0, 2}), Rational(1, 2)}};
  CHECK(v.mass == expected);
}

TEST_CASE("equivalence verdicts on the fixture") {
  Model g = fixtures::g1g2();
  CHECK(equivalent(g, SemanticsId::Trace, u0, v0, 6));
  CHECK_FALSE(equivalent(g, SemanticsId::Failures, u0, v0, 2));
  CHECK_FALSE(equivalent(g, SemanticsId::Bisimilarity, u0, v0, 2));
  for (auto sem : lts_semantics) CHECK(equivalent(g, sem, u1, u1, 4));
  CHECK_THROWS_AS(equivalent(g, SemanticsId::ProbabilisticTrace, 0, 1, 1), SemanticsMismatch);
  CHECK_THROWS_AS(equivalent(Model{fixtures::p1()}, SemanticsId::Trace, 0, 1, 1), SemanticsMismatch);
}

TEST_CASE("failure pair after sigma separates u0 from v0") {
  auto b = beta(Model{fixtures::g1g2()}, SemanticsId::Failures, 2);
  auto& fu = std::get<FailuresValue>(b[u0]);
  auto& fv = std::get<FailuresValue>(b[v0]);
  Word s = w({sigma});
  CHECK_FALSE(set_dominated(ActionSet::single(tau), fu.pairs.at(s)));
  CHECK(set_dominated(ActionSet::single(tau), fv.pairs.at(s)));
}

TEST_CASE("simulation order on the fixture") {
  auto b = beta(Model{fixtures::g1g2()}, SemanticsId::Simulation, 2);
  CHECK(sim_leq(b[v0], b[u0]));
  CHECK_FALSE(sim_leq(b[u0], b[v0]));
  CHECK(sim_leq(b[u0], b[u0]));
  auto top = unit_value(SemanticsId::Simulation);
  CHECK(sim_leq(top, top));
  auto b1 = beta(Model{fixtures::g1g2()}, SemanticsId::Simulation, 1);
  CHECK_THROWS_AS(sim_leq(b[u0], b1[u0]), SemanticsMismatch);
  auto t = beta(Model{fixtures::g1g2()}, SemanticsId::Trace, 1);
  CHECK_THROWS_AS(sim_leq(t[u0], t[u0]), SemanticsMismatch);
}

TEST_CASE("partitions") {
  Model g = fixtures::g1g2();
  CHECK(partition(g, SemanticsId::Bisimilarity, 0).blocks.size() == 1);
  auto bis = partition(g, SemanticsId::Bisimilarity, 2);
  auto block_of = [](const Partition& p, StateId x) {
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
      for (auto y : p.blocks[i])
        if (y == x) return i;
    return p.blocks.size();
  };
  CHECK(block_of(bis, u0) != block_of(bis, v0));
  auto tr = partition(g, SemanticsId::Trace, 3);
  CHECK(block_of(tr, u0) == block_of(tr, v0));
  for (std::size_t i = 1; i < bis.blocks.size(); ++i) CHECK(bis.blocks[i - 1].front() < bis.blocks[i].front());
}

TEST_CASE("stabilization depth") {
  auto g = fixtures::g1g2();
  CHECK(stabilization_depth(g, SemanticsId::Bisimilarity) == 2);
  CHECK(stabilization_depth(parse_aut("des (0,0,1)\n"), SemanticsId::Bisimilarity) == 0);
  int sim = stabilization_depth(g, SemanticsId::Simulation);
  CHECK(sim <= 3);
  auto table = beta_sequence(g, SemanticsId::Simulation, sim);
  CHECK(simulates_relation(table, sim) == sim_preorder(g));
  CHECK_THROWS_AS(stabilization_depth(g, SemanticsId::Trace), UnsupportedSemantics);
}

TEST_CASE("serial and parallel kernels agree") {
  for (std::size_t i = 0; i < 40; ++i) {
    auto& lts = fixtures::corpus().lts[i * 5];
    for (auto sem : lts_semantics) CHECK(beta_sequence(lts, sem, 4) == beta_sequence_serial(lts, sem, 4));
  }
  for (auto& g : fixtures::corpus().gps)
    CHECK(beta_sequence(g, SemanticsId::ProbabilisticTrace, 4) ==
          beta_sequence_serial(g, SemanticsId::ProbabilisticTrace, 4));
}

TEST_CASE("engine agrees with the oracles on a corpus slice") {
  for (std::size_t i = 0; i < 200; i += 7) {
    auto& lts = fixtures::corpus().lts[i];
    for (auto sem : lts_semantics) {
      auto table = beta_sequence(lts, sem, 4);
      for (StateId x = 0; x < lts.num_states(); ++x) {
        auto oracle = oracle_values(lts, sem, x, 4);
        for (int k = 0; k <= 4; ++k) CHECK(table[k][x] == oracle[k]);
      }
    }
  }
}

TEST_CASE("value projections") {
  for (std::size_t i = 0; i < 200; i += 9) {
    auto& lts = fixtures::corpus().lts[i];
    auto tr = beta_sequence(lts, SemanticsId::Trace, 4);
    auto ct = beta_sequence(lts, SemanticsId::CompletedTrace, 4);
    auto rd = beta_sequence(lts, SemanticsId::Readiness, 4);
    auto fl = beta_sequence(lts, SemanticsId::Failures, 4);
    auto rt = beta_sequence(lts, SemanticsId::ReadyTrace, 4);
    for (int k = 0; k <= 4; ++k)
      for (StateId x = 0; x < lts.num_states(); ++x) {
        auto& words = std::get<TraceValue>(tr[k][x]).words;
        CHECK(std::get<CompletedTraceValue>(ct[k][x]).live == words);
        CHECK(std::get<ReadinessValue>(rd[k][x]).live == words);
        CHECK(std::get<FailuresValue>(fl[k][x]).live == words);
        auto strip = [](const WordSet& ws) {
          WordSet out;
          for (auto v : ws) {
            for (auto& l : v) l.deco = {};
            out.insert(v);
          }
          return out;
        };
        auto& r = std::get<ReadyTraceValue>(rt[k][x]);
        auto& c = std::get<CompletedTraceValue>(ct[k][x]);
        CHECK(strip(r.live) == c.live);
        CHECK(strip(r.dead) == c.dead);
      }
  }
}

TEST_CASE("stored antichains are canonical") {
  for (std::size_t i = 0; i < 200; i += 11) {
    auto& lts = fixtures::corpus().lts[i];
    auto ft = beta_sequence(lts, SemanticsId::FailureTrace, 4);
    auto fl = beta_sequence(lts, SemanticsId::Failures, 4);
    for (int k = 0; k <= 4; ++k)
      for (StateId x = 0; x < lts.num_states(); ++x) {
        auto& v = std::get<FailureTraceValue>(ft[k][x]);
        CHECK(maximal_words(v.live) == v.live);
        CHECK(maximal_words(v.dead) == v.dead);
        for (auto& [word, chain] : std::get<FailuresValue>(fl[k][x]).pairs) {
          SetAntichain again;
          for (auto a : chain) insert_maximal(again, a);
          CHECK(again == chain);
          for (auto a : chain)
            for (auto b : chain) CHECK((a == b || !a.subset_of(b)));
        }
      }
  }
}

TEST_CASE("probabilistic values sum to one") {
  for (auto& g : fixtures::corpus().gps) {
    auto table = beta_sequence(g, SemanticsId::ProbabilisticTrace, 5);
    for (auto& row : table)
      for (auto& v : row) {
        Rational sum;
        for (auto& [word, p] : std::get<ProbTraceValue>(v).mass) {
          CHECK(p > 0);
          sum += p;
        }
        CHECK(sum == 1);
      }
  }
}

TEST_CASE("coinductive semantics refine monotonically with depth") {
  for (std::size_t i = 0; i < 200; i += 13) {
    auto& lts = fixtures::corpus().lts[i];
    for (auto sem : {SemanticsId::Bisimilarity, SemanticsId::Simulation, SemanticsId::ReadySimulation}) {
      auto table = beta_sequence(lts, sem, 5);
      for (int k = 0; k < 5; ++k)
        for (StateId x = 0; x < lts.num_states(); ++x)
          for (StateId y = 0; y < lts.num_states(); ++y)
            if (table[k + 1][x] == table[k + 1][y]) CHECK(table[k][x] == table[k][y]);
    }
  }
}

TEST_CASE("deep simulates-relation equals the simulation preorder") {
  for (std::size_t i = 0; i < 200; i += 17) {
    auto& lts = fixtures::corpus().lts[i];
    if (lts.num_states() > 5) continue;
    int n = static_cast<int>(lts.num_states() * lts.num_states());
    CHECK(simulates_relation(beta_sequence(lts, SemanticsId::Simulation, n), n) == sim_preorder(lts));
    CHECK(simulates_relation(beta_sequence(lts, SemanticsId::ReadySimulation, n), n) == sim_preorder(lts, true));
  }
}

TEST_CASE("sim_leq is a partial order on realized values") {
  std::vector<SemanticValue> values;
  for (std::size_t i = 0; i < 200; i += 19) {
    auto& lts = fixtures::corpus().lts[i];
    if (lts.alphabet().size() != 2) continue;
    auto table = beta_sequence(lts, SemanticsId::Simulation, 3);
    for (auto& v : table[3]) values.push_back(v);
  }
  for (auto& a : values)
    for (auto& b : values) {
      if (sim_leq(a, b) && sim_leq(b, a)) CHECK(a == b);
      for (auto& c : values)
        if (sim_leq(a, b) && sim_leq(b, c)) CHECK(sim_leq(a, c));
    }
}
