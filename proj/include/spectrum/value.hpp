#pragma once

#include <map>
#include <string>
#include <variant>

#include "spectrum/semantics.hpp"
#include "spectrum/tree.hpp"
#include "spectrum/word.hpp"

namespace spectrum {

struct TraceValue {
  int depth = 0;
  WordSet words;
  bool operator==(const TraceValue&) const = default;
};

struct CompletedTraceValue {
  int depth = 0;
  WordSet live;
  WordSet dead;
  bool operator==(const CompletedTraceValue&) const = default;
};

struct ReadinessValue {
  int depth = 0;
  WordSet live;
  std::set<std::pair<Word, ActionSet>> pairs;
  bool operator==(const ReadinessValue&) const = default;
};

/// pairs maps a word to the maximal failure sets after it.
struct FailuresValue {
  int depth = 0;
  WordSet live;
  std::map<Word, SetAntichain> pairs;
  bool operator==(const FailuresValue&) const = default;
};

struct ReadyTraceValue {
  int depth = 0;
  WordSet live;
  WordSet dead;
  bool operator==(const ReadyTraceValue&) const = default;
};

/// live and dead hold maximal decorated words only.
struct FailureTraceValue {
  int depth = 0;
  WordSet live;
  WordSet dead;
  bool operator==(const FailureTraceValue&) const = default;
};

struct SimulationValue {
  const TreeNode* node;
  bool operator==(const SimulationValue&) const = default;
};

struct ReadySimulationValue {
  const TreeNode* node;
  bool operator==(const ReadySimulationValue&) const = default;
};

struct BisimulationValue {
  const TreeNode* node;
  bool operator==(const BisimulationValue&) const = default;
};

struct ProbTraceValue {
  int depth = 0;
  std::map<Word, Rational> mass;
  bool operator==(const ProbTraceValue&) const = default;
};

using SemanticValue =
    std::variant<BisimulationValue, TraceValue, CompletedTraceValue, ReadinessValue, FailuresValue, ReadyTraceValue,
                 FailureTraceValue, SimulationValue, ReadySimulationValue, ProbTraceValue>;

SemanticsId semantics_of(const SemanticValue& v);
int depth_of(const SemanticValue& v);

/// β₀ for every state.
SemanticValue unit_value(SemanticsId s, TreeStore& store = tree_store());
/// Least element of Mₙ1 under the semilattice order (the empty join). None for bisimilarity or probabilistic.
SemanticValue empty_value(SemanticsId s, int depth, TreeStore& store = tree_store());

/// Canonical text form.
std::string render(const SemanticValue& v, const Alphabet& alphabet);

/// Downset inclusion on simulation and ready-simulation values.
bool sim_leq(const SemanticValue& v, const SemanticValue& w, TreeStore& store = tree_store());

TreeFamily tree_family(SemanticsId s);

/// Join in Mₙ1 for the powerset-based semantics (union, or antichain of the union).
SemanticValue join_values(const SemanticValue& a, const SemanticValue& b, TreeStore& store = tree_store());
/// p·a + (1-p)·b on probabilistic values.
SemanticValue mix_values(const Rational& p, const SemanticValue& a, const SemanticValue& b);

}  // namespace spectrum
