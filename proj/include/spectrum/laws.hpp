#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spectrum/semantics.hpp"

namespace spectrum {

/// Deliberately broken variants, for checking that the checker catches them.
enum class LawMutant {
  None,
  FailuresNoDownclosure,  // μ¹⁰ emits failure-set generators without closing them downward
  TraceNonDistributing,   // σ keeps only singleton arguments, so σ(x+y) = 0
};

struct LawResult {
  std::string law;
  std::size_t carrier = 0;
  bool passed = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  std::string witness;  // set iff !passed
};

struct LawReport {
  SemanticsId semantics = SemanticsId::Trace;
  std::vector<std::size_t> carrier_sizes;
  std::vector<LawResult> results;
  bool ok() const;
};

/// Unit laws, μ⁰⁰ associativity, both M₀-module squares and homomorphy of μ¹⁰ on X = {0..k-1} for each k,
/// over the alphabet {a,b}. Domains with more than 10⁴ elements are sampled using seed. Carrier sizes above 4
/// throw Error.
LawReport check_monad_laws(SemanticsId sem, const std::vector<std::size_t>& carrier_sizes, std::uint64_t seed,
                           LawMutant mutant = LawMutant::None);

}  // namespace spectrum
