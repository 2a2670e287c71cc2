#pragma once

#include <optional>
#include <span>
#include <vector>

#include "spectrum/model.hpp"
#include "spectrum/value.hpp"

namespace spectrum {

/// An element of M₁V over variables V = {0..k-1}: one depth-1 layer awaiting depth-n values for its variables.
/// Steps target a single variable except under simulation semantics, where a step targets the join of its
/// variables. Weights are used by the probabilistic semantics only.
struct LayerStep {
  Letter letter;
  std::vector<std::uint32_t> targets;
  Rational weight{1};
};

struct Layer {
  SemanticsId semantics;
  std::vector<LayerStep> steps;
  bool star = false;              // deadlock marker
  std::vector<ActionSet> sets;    // ready sets, or generators of the failure-set downset
};

/// α·γ(x) with poststates as variables.
Layer alpha(const Lts& lts, SemanticsId sem, StateId x);
Layer alpha(const Gps& gps, StateId x);

/// μ¹ⁿ·M₁(valuation): substitutes depth-n values for the layer's variables.
SemanticValue step(const Layer& layer, std::span<const SemanticValue> valuation, int n,
                   TreeStore& store = tree_store());

/// [depth][state]
using BetaTable = std::vector<std::vector<SemanticValue>>;

/// Each depth is computed in parallel over states.
BetaTable beta_sequence(const Lts& lts, SemanticsId sem, int depth, TreeStore& store = tree_store());
BetaTable beta_sequence(const Gps& gps, SemanticsId sem, int depth, TreeStore& store = tree_store());
BetaTable beta_sequence(const Model& model, SemanticsId sem, int depth, TreeStore& store = tree_store());

/// Serial reference for beta_sequence.
BetaTable beta_sequence_serial(const Lts& lts, SemanticsId sem, int depth, TreeStore& store = tree_store());
BetaTable beta_sequence_serial(const Gps& gps, SemanticsId sem, int depth, TreeStore& store = tree_store());

std::vector<SemanticValue> beta(const Model& model, SemanticsId sem, int depth);

/// Least k ≤ depth with differing values, if any.
std::optional<int> first_difference(const BetaTable& table, StateId x, StateId y);

bool equivalent(const Model& model, SemanticsId sem, StateId x, StateId y, int depth);

struct Partition {
  int depth = 0;
  std::vector<std::vector<StateId>> blocks;  // ordered by least member
  SemanticsId semantics = SemanticsId::Bisimilarity;
  bool operator==(const Partition&) const = default;
};

/// Kernel of β₀ … β_depth.
Partition partition(const BetaTable& table, SemanticsId sem, int depth);
Partition partition(const Model& model, SemanticsId sem, int depth);

/// relation[x][y] iff sim_leq(β_depth(x), β_depth(y)).
std::vector<std::vector<bool>> simulates_relation(const BetaTable& table, int depth);

/// Least n at which the depth-n partition (bisimilarity) or simulates-relation stops changing.
/// Throws UnsupportedSemantics for trace-like semantics.
int stabilization_depth(const Lts& lts, SemanticsId sem);

/// Checks the model kind fits the semantics. Throws SemanticsMismatch.
void require_compatible(const Model& model, SemanticsId sem);

}  // namespace spectrum
