#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spectrum/engine.hpp"
#include "spectrum/logic.hpp"

namespace spectrum {

struct SeparationWitness {
  Formula formula;
  int depth = 0;
  Omega at_x;
  Omega at_y;
};

/// A formula admitting depth_of(v) on which v and w evaluate differently, using only modalities the
/// vocabulary admits. Least differing word first, then a formula holding at v, then vocabulary order,
/// then decoration order. None if v == w or the vocabulary is too poor.
std::optional<Formula> separating_formula(const Vocabulary& vocab, const SemanticValue& v, const SemanticValue& w);

/// Witness at the least depth ≤ max_depth where x and y differ. Throws UnsupportedSemantics.
std::optional<SeparationWitness> distinguish(const Model& model, SemanticsId sem, StateId x, StateId y,
                                             int max_depth);

struct SeparationCheck {
  bool ok = true;
  std::string witness;              // the undistinguished pair, on failure
  std::vector<std::string> family;  // separating formulas found
};

/// Joint injectivity of the truth constants on M₀1.
SeparationCheck check_depth0_separation(SemanticsId sem);

/// For each pair of distinct depth-(n+1) values realized in the sample (n < depth), looks for one modality
/// applied to a depth-n separating formula. Diamonds over withheld labels are removed from the vocabulary.
/// At most max_pairs pairs per model and depth are tried, drawn by seed.
SeparationCheck check_depth1_separation(SemanticsId sem, const std::vector<Model>& sample, int depth,
                                        std::uint64_t seed = 0, const std::set<std::string>& withheld = {},
                                        std::size_t max_pairs = 5000);

}  // namespace spectrum
