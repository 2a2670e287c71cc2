#include "fixtures.hpp"

using namespace spectrum;

namespace fixtures {

Lts g1() {
  Alphabet a({"σ", "τ"});
  return Lts(4, 0, a, {{0, 0, 1}, {1, 0, 2}, {1, 1, 3}});
}

Lts g2() {
  Alphabet a({"σ", "τ"});
  return Lts(5, 0, a, {{0, 0, 1}, {0, 0, 2}, {1, 0, 3}, {2, 1, 4}});
}

Lts g1g2() { return disjoint_union(g1(), g2()); }

Gps p1() {
  Alphabet a({"a", "b", "c"});
  Rational half(1, 2);
  return Gps(3, 0, a, {{{half, 0, 1}, {half, 0, 2}}, {{Rational(1), 1, 1}}, {{Rational(1), 2, 2}}});
}

std::string data_path(const std::string& file) { return std::string(SPECTRUM_TEST_DATA) + "/" + file; }

const Corpus& corpus() {
  static const Corpus c = [] {
    Corpus out;
    const double densities[] = {0.1, 0.3, 0.6};
    for (std::uint64_t i = 0; i < 200; ++i) {
      std::size_t states = 1 + i % 8;
      std::size_t actions = 1 + (i / 8) % 3;
      out.lts.push_back(random_lts(1000 + i, states, actions, densities[(i / 24) % 3]));
    }
    for (std::uint64_t i = 0; i < 50; ++i) out.gps.push_back(random_gps(5000 + i, 1 + i % 6, 1 + i % 3, 3));
    return out;
  }();
  return c;
}

}  // namespace fixtures
