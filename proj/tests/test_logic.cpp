#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "spectrum/engine.hpp"
#include "spectrum/error.hpp"
#include "spectrum/logic.hpp"

using namespace spectrum;
using fixtures::u0;
using fixtures::v0;

namespace {

Vocabulary vocab_for(SemanticsId s, const Lts& lts) { return vocabulary(s, lts.alphabet()); }

bool is_true(const Omega& o) { return std::get<bool>(o); }

}  // namespace

TEST_CASE("parse diamonds under trace") {
  auto g = fixtures::g1g2();
  auto v = vocab_for(SemanticsId::Trace, g);
  auto f = parse_formula("<σ><τ>true", v);
  CHECK(f == diamond(0, diamond(1, truth())));
  CHECK(uniform_depth(f) == 2);
  CHECK(print(f, v.alphabet) == "<σ><τ>true");
}

TEST_CASE("vocabulary violations name the operator") {
  auto lts = parse_aut("des (0,3,4)\n(0,\"s\",1)\n(1,\"s\",2)\n(1,\"t\",3)\n");
  auto tr = vocab_for(SemanticsId::Trace, lts);
  CHECK_THROWS_WITH_AS(parse_formula("<s>(<s>true & <t>true)", tr), doctest::Contains("conjunction not admitted"),
                       VocabularyError);
  CHECK_THROWS_WITH_AS(parse_formula("~<s>true", tr), doctest::Contains("negation not admitted"), VocabularyError);
  CHECK_THROWS_AS(parse_formula("<s>*", tr), VocabularyError);
  CHECK_THROWS_AS(parse_formula("ready{s}", tr), VocabularyError);
  CHECK_THROWS_AS(parse_formula("<x>true", tr), VocabularyError);
  CHECK_THROWS_AS(parse_formula("<s>true", vocab_for(SemanticsId::ReadyTrace, lts)), VocabularyError);
  CHECK_THROWS_AS(parse_formula("0.5", tr), VocabularyError);
  CHECK_THROWS_AS(vocabulary(SemanticsId::Simulation, lts.alphabet()), UnsupportedSemantics);
  CHECK_THROWS_AS(vocabulary(SemanticsId::ReadySimulation, lts.alphabet()), UnsupportedSemantics);
}

TEST_CASE("uniform depth") {
  auto lts = parse_aut("des (0,3,4)\n(0,\"s\",1)\n(1,\"s\",2)\n(1,\"t\",3)\n");
  CHECK(uniform_depth(parse_formula("true", vocab_for(SemanticsId::Trace, lts))) == 0);
  CHECK(uniform_depth(parse_formula("<s> ready{s,t}", vocab_for(SemanticsId::Readiness, lts))) == 2);
  CHECK_THROWS_WITH_AS(parse_formula("<s>true | true", vocab_for(SemanticsId::Trace, lts)),
                       doctest::Contains("truth constant at top level of a depth-1 formula"), IllFormed);
  CHECK_THROWS_AS(parse_formula("<s>true | <t><t>true", vocab_for(SemanticsId::Trace, lts)), IllFormed);
  auto flexible = parse_formula("* | <s>*", vocab_for(SemanticsId::CompletedTrace, lts));
  CHECK(uniform_depth(flexible) == 2);
  CHECK(admits_depth(flexible, 5));
  CHECK_FALSE(admits_depth(flexible, 1));
  CHECK(uniform_depth(falsity()) == 0);
  CHECK(admits_depth(parse_formula("<s>false", vocab_for(SemanticsId::Trace, lts)), 3));
}

TEST_CASE("syntax errors") {
  auto lts = parse_aut("des (0,1,2)\n(0,\"s\",1)\n");
  auto tr = vocab_for(SemanticsId::Trace, lts);
  CHECK_THROWS_AS(parse_formula("<s>", tr), ParseError);
  CHECK_THROWS_AS(parse_formula("<s>true)", tr), ParseError);
  CHECK_THROWS_AS(parse_formula("(<s>true", tr), ParseError);
  CHECK_THROWS_AS(parse_formula("", tr), ParseError);
}

TEST_CASE("printer and parser invert each other") {
  auto g = fixtures::g1g2();
  std::mt19937_64 rng(11);
  for (auto sem : lts_semantics) {
    if (!has_logic(sem)) continue;
    auto v = vocab_for(sem, g);
    for (int i = 0; i < 200; ++i) {
      auto f = generators::random_formula(v, static_cast<int>(rng() % 4), rng);
      auto text = print(f, v.alphabet);
      CHECK_MESSAGE(parse_formula(text, v) == f, text);
    }
  }
  auto p = fixtures::p1();
  auto v = vocabulary(SemanticsId::ProbabilisticTrace, p.alphabet());
  for (int i = 0; i < 200; ++i) {
    auto f = generators::random_formula(v, static_cast<int>(rng() % 4), rng);
    auto text = print(f, v.alphabet);
    CHECK_MESSAGE(parse_formula(text, v) == f, text);
  }
  CHECK(print(parse_formula("<σ> fail{τ}", vocab_for(SemanticsId::Failures, g)), g.alphabet()) == "<σ> fail{τ}");
  CHECK(print(parse_formula("<σ|{σ,τ}>*", vocab_for(SemanticsId::ReadyTrace, g)), g.alphabet()) == "<σ|{σ,τ}>*");
  CHECK(print(parse_formula("0.5*<a>1 + 0.25", v), v.alphabet) == "1/2*<a>1 + 1/4");
}

TEST_CASE("evaluation examples on the fixtures") {
  Model g = fixtures::g1g2();
  auto& lts = std::get<Lts>(g);
  auto tr = vocab_for(SemanticsId::Trace, lts);
  auto b = beta(g, SemanticsId::Trace, 2);
  CHECK(is_true(eval_value(parse_formula("<σ><τ>true", tr), tr, b[u0])));
  CHECK(is_true(eval_value(truth(), tr, unit_value(SemanticsId::Trace))));

  auto fl = vocab_for(SemanticsId::Failures, lts);
  auto f = parse_formula("<σ> fail{τ}", fl);
  CHECK(is_true(eval_state(f, fl, g, v0)));
  CHECK_FALSE(is_true(eval_state(f, fl, g, u0)));

  auto ct = vocab_for(SemanticsId::CompletedTrace, lts);
  CHECK(is_true(eval_state(star(), ct, Model{fixtures::g1()}, fixtures::u2)));

  Model p = fixtures::p1();
  auto pv = vocabulary(SemanticsId::ProbabilisticTrace, fixtures::p1().alphabet());
  auto ab = parse_formula("<a><b>1", pv);
  CHECK(eval_state(ab, pv, p, 0) == Omega{Rational(1, 2)});
  CHECK(eval_value(ab, pv, beta(p, SemanticsId::ProbabilisticTrace, 2)[0]) == Omega{Rational(1, 2)});
  CHECK(eval_state(parse_formula("1/2*<a><c>1 + 1/4", pv), pv, p, 0) == Omega{Rational(1, 2)});
}

TEST_CASE("evaluation rejects mismatches") {
  Model g = fixtures::g1g2();
  auto tr = vocab_for(SemanticsId::Trace, std::get<Lts>(g));
  auto f = parse_formula("<σ>true", tr);
  CHECK_THROWS_AS(eval_value(f, tr, beta(g, SemanticsId::Trace, 2)[0]), SemanticsMismatch);
  CHECK_THROWS_AS(eval_value(f, tr, beta(g, SemanticsId::Failures, 1)[0]), SemanticsMismatch);
  CHECK_THROWS_AS(eval_state(f, tr, Model{fixtures::p1()}, 0), SemanticsMismatch);
}

TEST_CASE("invariance: state evaluation factors through beta") {
  std::mt19937_64 rng(7);
  const auto& corpus = fixtures::corpus();
  for (std::size_t i = 0; i < corpus.lts.size(); i += 5) {
    Model m = corpus.lts[i];
    for (auto sem : lts_semantics) {
      if (!has_logic(sem)) continue;
      auto v = vocab_for(sem, corpus.lts[i]);
      auto table = beta_sequence(m, sem, 4);
      for (int j = 0; j < 10; ++j) {
        int d = static_cast<int>(rng() % 5);
        auto f = generators::random_formula(v, d, rng);
        auto direct = eval_states(f, v, m);
        for (StateId x = 0; x < direct.size(); ++x)
          CHECK_MESSAGE(direct[x] == eval_value(f, v, table[d][x]), print(f, v.alphabet));
      }
    }
  }
  for (const auto& gps : corpus.gps) {
    Model m = gps;
    auto v = vocabulary(SemanticsId::ProbabilisticTrace, gps.alphabet());
    auto table = beta_sequence(m, SemanticsId::ProbabilisticTrace, 4);
    for (int j = 0; j < 10; ++j) {
      int d = static_cast<int>(rng() % 5);
      auto f = generators::random_formula(v, d, rng);
      auto direct = eval_states(f, v, m);
      for (StateId x = 0; x < direct.size(); ++x) {
        CHECK(direct[x] == eval_value(f, v, table[d][x]));
        auto r = std::get<Rational>(direct[x]);
        CHECK((r >= 0 && r <= 1));
      }
    }
  }
}

TEST_CASE("evaluation maps are join-preserving or affine") {
  std::mt19937_64 rng(3);
  const auto& corpus = fixtures::corpus();
  for (std::size_t i = 0; i < corpus.lts.size(); i += 10) {
    Model m = corpus.lts[i];
    for (auto sem : lts_semantics) {
      if (!has_logic(sem) || sem == SemanticsId::Bisimilarity) continue;
      auto v = vocab_for(sem, corpus.lts[i]);
      auto table = beta_sequence(m, sem, 3);
      for (int j = 0; j < 5; ++j) {
        int d = 1 + static_cast<int>(rng() % 3);
        auto f = generators::random_formula(v, d, rng);
        const auto& row = table[d];
        auto empty = empty_value(sem, d);
        CHECK_FALSE(is_true(eval_value(f, v, empty)));
        for (const auto& a : row)
          for (const auto& c : row) {
            bool joined = is_true(eval_value(f, v, join_values(a, c)));
            CHECK(joined == (is_true(eval_value(f, v, a)) || is_true(eval_value(f, v, c))));
          }
      }
    }
  }
  for (std::size_t i = 0; i < corpus.gps.size(); i += 5) {
    Model m = corpus.gps[i];
    auto v = vocabulary(SemanticsId::ProbabilisticTrace, corpus.gps[i].alphabet());
    auto table = beta_sequence(m, SemanticsId::ProbabilisticTrace, 3);
    auto f = generators::random_formula(v, 3, rng);
    Rational p(1, 3);
    for (const auto& a : table[3])
      for (const auto& c : table[3]) {
        auto mixed = std::get<Rational>(eval_value(f, v, mix_values(p, a, c)));
        auto ea = std::get<Rational>(eval_value(f, v, a)), ec = std::get<Rational>(eval_value(f, v, c));
        CHECK(mixed == p * ea + (1 - p) * ec);
      }
  }
}
