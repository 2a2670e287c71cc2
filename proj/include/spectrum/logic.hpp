#pragma once

#include <string>
#include <variant>
#include <vector>

#include "spectrum/formula.hpp"
#include "spectrum/value.hpp"

namespace spectrum {

/// Truth values: 2 for the Boolean logics, [0,1] for probabilistic trace.
using Omega = std::variant<bool, Rational>;

std::string render(const Omega& o);

/// What the value offers after a first letter. Ready trace matches the decoration exactly; failure trace
/// keeps words whose first refusal set contains l.deco; probabilistic residuals are not renormalized.
/// Not defined for tree values.
SemanticValue residual(const SemanticValue& v, Letter l);

/// Evaluation in the canonical algebra on Mₙ1. Throws SemanticsMismatch on depth or semantics mismatch.
Omega eval_value(const Formula& f, const Vocabulary& vocab, const SemanticValue& v);

/// Direct evaluation on the transition structure.
Omega eval_state(const Formula& f, const Vocabulary& vocab, const Model& model, StateId x);
std::vector<Omega> eval_states(const Formula& f, const Vocabulary& vocab, const Model& model);

}  // namespace spectrum
