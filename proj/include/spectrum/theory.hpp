#pragma once

#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spectrum/engine.hpp"

namespace spectrum {

enum class TermKind {
  Var,
  Join,      // depth 0, any arity; 0-ary is `0`
  Convex,    // depth 0, args[0] ⊞_p args[1]
  Mix,       // depth 0, Σ weights[i]·args[i]; produced by normalization only
  Act,       // depth 1, σ(arg)
  Dec,       // depth 1, ⟨set,σ⟩(arg)
  Star,      // depth-1 constant
  SetConst,  // depth-1 constant: ready or failure set
};

struct Term {
  TermKind kind = TermKind::Var;
  std::uint32_t var = 0;
  ActionId act = 0;
  ActionSet set;
  Rational p;
  std::vector<Rational> weights;
  std::vector<Term> args;
  bool operator==(const Term&) const = default;
};

/// Structural total order.
int compare_terms(const Term& a, const Term& b);

Term var_term(std::uint32_t v);
Term join_term(std::vector<Term> args);
Term convex_term(Rational p, Term a, Term b);
Term act_term(ActionId a, Term t);
Term dec_term(ActionSet s, ActionId a, Term t);
Term star_term();
Term set_term(ActionSet s);

/// Alphabet plus variable names; parsing interns new variables in order of occurrence.
struct TermContext {
  SemanticsId theory = SemanticsId::Trace;
  Alphabet alphabet;
  std::vector<std::string> variables;
};

/// Syntax: `x`, `0`, `t + u`, `t (+) 1/2 (+) u`, `a(t)`, `<{a,b},a>(t)`, `*`, `{a,b}`, parentheses.
/// Throws ParseError, VocabularyError (operation outside the theory), IllFormed (no uniform depth).
Term parse_term(std::string_view text, TermContext& ctx);
std::string print(const Term& t, const TermContext& ctx);

/// Least uniform depth; constants and `0` fit every depth above their least one. Throws IllFormed.
int term_depth(const Term& t);
bool term_admits_depth(const Term& t, int n);

/// Throws UnsupportedSemantics when the semantics has no theory here, VocabularyError for foreign operations.
void check_signature(SemanticsId theory, const Term& t, const Alphabet& alphabet);

/// Exhaustive rewriting by the theory's oriented equations, innermost first.
Term normalize(SemanticsId theory, const Term& t);
/// Same rules, redexes picked at random positions.
Term normalize_random(SemanticsId theory, const Term& t, std::mt19937_64& rng);
bool is_normal(SemanticsId theory, const Term& t);

/// Provable equality via normal forms. Throws IllFormed when the sides have no common depth.
bool check_equation(SemanticsId theory, const Term& lhs, const Term& rhs);

/// The element of Mₙ1 a normal form denotes once all variables are sent to the single point.
SemanticValue to_value(SemanticsId theory, const Term& normal_form, int depth);
/// normalize followed by to_value at the term's least depth.
SemanticValue normal_value(SemanticsId theory, const Term& t);

/// A depth-1 normal form as an engine layer over its variables.
Layer layer_from_normal_form(SemanticsId theory, const Term& normal_form);

Term substitute(const Term& t, const std::vector<Term>& by_var);

struct EquationText {
  std::string lhs;
  std::string rhs;
};

/// Alphabet {a,b} used by the instances below; variables x, y, z.
Alphabet theory_alphabet();
/// Instances of every axiom of the theory over theory_alphabet().
std::vector<EquationText> axiom_instances(SemanticsId theory);
/// Characteristic equations the theory must not prove.
std::vector<EquationText> non_equations(SemanticsId theory);

}  // namespace spectrum
