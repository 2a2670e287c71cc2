#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spectrum/model.hpp"
#include "spectrum/semantics.hpp"

namespace spectrum {

enum class NodeKind {
  Truth,             // ⊤
  Const,             // rational truth constant (probabilistic)
  Disj,              // empty = false
  Conj,
  Neg,
  Affine,            // Σ coeffs[i]·args[i] + constant
  Diamond,           // <act> arg
  DecoratedDiamond,  // <act|set> arg
  Star,              // deadlock, 0-ary
  ReadyConst,        // ready{set}, 0-ary
  FailConst,         // fail{set}, 0-ary
};

struct Formula {
  NodeKind kind = NodeKind::Truth;
  std::vector<Formula> args;
  std::vector<Rational> coeffs;
  Rational constant;
  ActionId act = 0;
  ActionSet set;
  bool operator==(const Formula&) const = default;
};

Formula truth();
Formula falsity();
Formula constant(Rational c);
Formula disj(std::vector<Formula> args);
Formula conj(std::vector<Formula> args);
Formula neg(Formula f);
Formula affine(std::vector<Rational> coeffs, std::vector<Formula> args, Rational offset);
Formula diamond(ActionId a, Formula f);
Formula decorated(ActionId a, ActionSet set, Formula f);
Formula star();
Formula ready_const(ActionSet set);
Formula fail_const(ActionSet set);

/// What a semantics' logic admits. modal_actions, when set, restricts the actions usable in diamonds.
struct Vocabulary {
  SemanticsId semantics = SemanticsId::Trace;
  Alphabet alphabet;
  std::optional<ActionSet> modal_actions;
};

/// Throws UnsupportedSemantics for simulation and ready simulation.
Vocabulary vocabulary(SemanticsId sem, Alphabet alphabet);

/// Throws VocabularyError naming the first offending node.
void check_vocabulary(const Formula& f, const Vocabulary& vocab);

/// Least depth at which f is well formed. `false` and 0-ary modalities fit any depth at or above their
/// least one; everything else has exactly one depth. Throws IllFormed.
int uniform_depth(const Formula& f, const Alphabet* labels = nullptr);
/// Whether f is a formula of depth n.
bool admits_depth(const Formula& f, int n);

/// Throws ParseError (syntax), VocabularyError, IllFormed.
Formula parse_formula(std::string_view text, const Vocabulary& vocab);
std::string print(const Formula& f, const Alphabet& alphabet);

}  // namespace spectrum
