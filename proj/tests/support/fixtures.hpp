#pragma once

#include <string>
#include <vector>

#include "spectrum/model.hpp"

namespace fixtures {

// u0..u3 = 0..3, v0..v4 = 4..8; labels σ, τ.
inline constexpr spectrum::StateId u0 = 0, u1 = 1, u2 = 2, u3 = 3, v0 = 4, v1 = 5, v2 = 6, v3 = 7, v4 = 8;

spectrum::Lts g1();
spectrum::Lts g2();
spectrum::Lts g1g2();
spectrum::Gps p1();

std::string data_path(const std::string& file);

struct Corpus {
  std::vector<spectrum::Lts> lts;
  std::vector<spectrum::Gps> gps;
};

/// 200 random LTSs (1..8 states, 1..3 actions, densities 0.1/0.3/0.6) and 50 random GPSs (1..6 states).
const Corpus& corpus();

}  // namespace fixtures
