#pragma once

#include <set>
#include <utility>
#include <vector>

#include "spectrum/engine.hpp"
#include "spectrum/model.hpp"
#include "spectrum/value.hpp"

namespace spectrum {

/// Brute-force depth-`depth` value from the direct definitions (path enumeration, naive unfolding).
SemanticValue oracle_value(const Lts& lts, SemanticsId sem, StateId x, int depth);
SemanticValue oracle_value(const Gps& gps, SemanticsId sem, StateId x, int depth);
/// Values at every depth 0..max_depth from one enumeration.
std::vector<SemanticValue> oracle_values(const Lts& lts, SemanticsId sem, StateId x, int max_depth);
std::vector<SemanticValue> oracle_values(const Gps& gps, SemanticsId sem, StateId x, int max_depth);

/// Coarsest bisimulation by signature refinement; depth is the number of refinement rounds.
Partition bisim_partition(const Lts& lts);

/// rel[x][y] iff y simulates x. With ready = true, related states have equal ready sets.
std::vector<std::vector<bool>> sim_preorder(const Lts& lts, bool ready = false);

/// Equality of the full decorated languages via automata.
bool full_trace_like_equivalent(const Lts& lts, SemanticsId sem, StateId x, StateId y);

/// Ready-trace sequences A₀a₁A₁…aₖAₖ with exactly k steps; the word carries A₀…A_{k-1}.
std::set<std::pair<Word, ActionSet>> ready_trace_sequences(const Lts& lts, StateId x, int k);
/// Failure-trace sequences with exactly k steps as the maximal elements of their downset.
std::set<std::pair<Word, ActionSet>> failure_trace_sequences(const Lts& lts, StateId x, int k);

/// Unbounded equality of the sequence sets above.
bool ready_trace_sequences_equivalent(const Lts& lts, StateId x, StateId y);
bool failure_trace_sequences_equivalent(const Lts& lts, StateId x, StateId y);

}  // namespace spectrum
