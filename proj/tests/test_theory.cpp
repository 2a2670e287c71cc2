#include <doctest.h>

#include "generators.hpp"
#include "spectrum/error.hpp"
#include "spectrum/theory.hpp"

using namespace spectrum;

namespace {

std::vector<SemanticsId> theories() {
  std::vector<SemanticsId> out;
  for (auto s : all_semantics)
    if (s != SemanticsId::Bisimilarity) out.push_back(s);
  return out;
}

TermContext context(SemanticsId th) { return TermContext{th, theory_alphabet(), {}}; }

std::string normal_text(SemanticsId th, const std::string& text) {
  auto ctx = context(th);
  Term t = parse_term(text, ctx);
  return print(normalize(th, t), ctx);
}

bool holds(SemanticsId th, const EquationText& eq) {
  auto ctx = context(th);
  Term l = parse_term(eq.lhs, ctx);
  Term r = parse_term(eq.rhs, ctx);
  return check_equation(th, l, r);
}

}  // namespace

TEST_CASE("term syntax") {
  auto ctx = context(SemanticsId::ReadyTrace);
  Term t = parse_term("<{a,b},a>(x + y) + *", ctx);
  CHECK(ctx.variables == std::vector<std::string>{"x", "y"});
  CHECK(print(t, ctx) == "<{a,b},a>(x + y) + *");
  CHECK(term_depth(t) == 1);

  auto pc = context(SemanticsId::ProbabilisticTrace);
  Term c = parse_term("x (+) 1/2 (+) y (+) 1/3 (+) z", pc);
  CHECK(c.kind == TermKind::Convex);
  CHECK(c.args[0].kind == TermKind::Convex);
  CHECK(print(c, pc) == "x (+) 1/2 (+) y (+) 1/3 (+) z");

  auto tc = context(SemanticsId::Trace);
  CHECK_THROWS_AS(parse_term("a(x) + y", tc), IllFormed);
  CHECK_THROWS_AS(parse_term("a(x", tc), ParseError);
  CHECK_THROWS_AS(parse_term("c(x)", tc), VocabularyError);
  CHECK_THROWS_AS(parse_term("a", tc), ParseError);
  CHECK_THROWS_AS(parse_term("*", tc), VocabularyError);
  CHECK_THROWS_AS(parse_term("x (+) 1/2 (+) y", tc), VocabularyError);
  CHECK_THROWS_AS(parse_term("x + y", pc), VocabularyError);
  CHECK_THROWS_AS(parse_term("x (+) 3/2 (+) y", pc), ParseError);
  auto bc = context(SemanticsId::Bisimilarity);
  CHECK_THROWS_AS(parse_term("x", bc), UnsupportedSemantics);

  CHECK(term_admits_depth(parse_term("a(0)", tc), 3));
  CHECK_FALSE(term_admits_depth(parse_term("a(0)", tc), 0));
}

TEST_CASE("normal forms") {
  CHECK(normal_text(SemanticsId::Trace, "a(x + y)") == "a(x) + a(y)");
  CHECK(normal_text(SemanticsId::Trace, "b(0) + a(x) + a(y + x)") == "a(x) + a(y)");
  CHECK(normal_text(SemanticsId::Simulation, "a(x + y) + a(x)") == "a(x + y)");
  CHECK(normal_text(SemanticsId::Simulation, "a(x) + a(y)") == "a(x) + a(y)");
  CHECK(normal_text(SemanticsId::Failures, "a({a} + {a,b} + {b})") == "a({a,b})");
  CHECK(normal_text(SemanticsId::Readiness, "a({a} + {a,b})") == "a({a}) + a({a,b})");
  CHECK(normal_text(SemanticsId::FailureTrace, "<{a},a>(<{},b>(x)) + <{a,b},a>(<{b},b>(x))") ==
        "<{a,b},a>(<{b},b>(x))");
  CHECK(normal_text(SemanticsId::ProbabilisticTrace, "x (+) 1/2 (+) (x (+) 1/2 (+) y)") ==
        "x (+) 3/4 (+) y");
  CHECK(normal_text(SemanticsId::ProbabilisticTrace, "a(x (+) 1/3 (+) y)") == "a(x) (+) 1/3 (+) a(y)");
  CHECK(normal_text(SemanticsId::ProbabilisticTrace, "x (+) 0 (+) y") == "y");
}

TEST_CASE("axioms hold and non-equations fail") {
  for (auto th : theories()) {
    for (const auto& eq : axiom_instances(th)) CHECK_MESSAGE(holds(th, eq), name(th), ": ", eq.lhs, " = ", eq.rhs);
    auto bad = non_equations(th);
    CHECK_FALSE(bad.empty());
    for (const auto& eq : bad) CHECK_FALSE_MESSAGE(holds(th, eq), name(th), ": ", eq.lhs, " = ", eq.rhs);
  }
  CHECK_THROWS_AS(axiom_instances(SemanticsId::Bisimilarity), UnsupportedSemantics);
  auto ctx = context(SemanticsId::Trace);
  Term l = parse_term("a(x)", ctx), r = parse_term("x", ctx);
  CHECK_THROWS_AS(check_equation(SemanticsId::Trace, l, r), IllFormed);
}

TEST_CASE("normal forms are idempotent, reparse, and independent of rewrite order") {
  std::mt19937_64 rng(11);
  for (auto th : theories()) {
    for (int i = 0; i < 150; ++i) {
      int depth = static_cast<int>(rng() % 4);
      Term t = generators::random_term(th, 2, depth, 3, rng);
      Term nf = normalize(th, t);
      CHECK(is_normal(th, nf));
      CHECK(normalize(th, nf) == nf);
      CHECK(normalize_random(th, t, rng) == nf);
      auto ctx = context(th);
      ctx.variables = {"x", "y", "z"};
      Term back = parse_term(print(nf, ctx), ctx);
      CHECK_MESSAGE(normalize(th, back) == nf, name(th), ": ", print(nf, ctx));
    }
  }
}

TEST_CASE("substitution agrees with the engine step") {
  std::mt19937_64 rng(5);
  for (auto th : theories()) {
    for (int i = 0; i < 150; ++i) {
      int n = static_cast<int>(rng() % 3);
      Term t = generators::random_term(th, 2, 1, 3, rng);
      std::vector<Term> by_var;
      std::vector<SemanticValue> vals;
      for (int v = 0; v < 3; ++v) {
        Term nv = normalize(th, generators::random_term(th, 2, n, 2, rng));
        by_var.push_back(nv);
        vals.push_back(to_value(th, nv, n));
      }
      Layer layer = layer_from_normal_form(th, normalize(th, t));
      SemanticValue via_engine = step(layer, vals, n);
      SemanticValue via_terms = to_value(th, normalize(th, substitute(t, by_var)), n + 1);
      CHECK_MESSAGE(via_terms == via_engine, name(th));
    }
  }
}

TEST_CASE("values of closed terms") {
  auto ctx = context(SemanticsId::CompletedTrace);
  auto v = std::get<CompletedTraceValue>(normal_value(SemanticsId::CompletedTrace, parse_term("a(*) + b(b(x))", ctx)));
  CHECK(v.depth == 2);
  CHECK(v.live.size() == 1);
  CHECK(v.dead.size() == 1);
  CHECK(unit_value(SemanticsId::Trace) == normal_value(SemanticsId::Trace, var_term(0)));
  CHECK(empty_value(SemanticsId::Simulation, 2) ==
        to_value(SemanticsId::Simulation, join_term({}), 2));
}
