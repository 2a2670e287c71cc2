#pragma once

#include <random>

#include "spectrum/formula.hpp"
#include "spectrum/theory.hpp"

namespace generators {

/// Random well-formed formula admitting exactly `depth`, drawn from the vocabulary.
spectrum::Formula random_formula(const spectrum::Vocabulary& vocab, int depth, std::mt19937_64& rng);

/// Random term in the theory's signature admitting `depth`, over variables 0..vars-1.
spectrum::Term random_term(spectrum::SemanticsId theory, std::size_t alphabet_size, int depth, std::uint32_t vars,
                           std::mt19937_64& rng);

spectrum::ActionSet random_set(std::size_t alphabet_size, std::mt19937_64& rng);

}  // namespace generators
