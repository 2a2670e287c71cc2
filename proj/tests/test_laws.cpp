#include <doctest.h>

#include "spectrum/error.hpp"
#include "spectrum/laws.hpp"

using namespace spectrum;

namespace {

const LawResult* failing(const LawReport& r) {
  for (const auto& l : r.results)
    if (!l.passed) return &l;
  return nullptr;
}

}  // namespace

TEST_CASE("laws hold for every semantics") {
  for (auto sem : all_semantics) {
    auto r = check_monad_laws(sem, {0, 1, 2}, 7);
    const auto* bad = failing(r);
    CHECK_MESSAGE(bad == nullptr, name(sem), ": ", (bad ? bad->law + " " + bad->witness : ""));
    CHECK(r.results.size() == 24);
  }
}

TEST_CASE("trace at sizes 1 and 2 is exhaustive where small") {
  auto r = check_monad_laws(SemanticsId::Trace, {1, 2}, 3);
  CHECK(r.ok());
  for (const auto& l : r.results)
    if (l.law.rfind("unit", 0) == 0) CHECK(l.exhaustive);
  auto empty = check_monad_laws(SemanticsId::Trace, {0}, 3);
  CHECK(empty.results[0].passed);
  CHECK(empty.results[0].checked == 1);
}

TEST_CASE("mutants fail with witnesses") {
  auto f = check_monad_laws(SemanticsId::Failures, {1, 2}, 1, LawMutant::FailuresNoDownclosure);
  CHECK_FALSE(f.ok());
  bool homomorphy_failed = false;
  for (const auto& l : f.results)
    if (!l.passed) {
      CHECK_FALSE(l.witness.empty());
      if (l.law == "mu10 homomorphy") homomorphy_failed = true;
    }
  CHECK(homomorphy_failed);

  auto t = check_monad_laws(SemanticsId::Trace, {1, 2}, 1, LawMutant::TraceNonDistributing);
  const auto* bad = failing(t);
  REQUIRE(bad != nullptr);
  CHECK_FALSE(bad->witness.empty());

  CHECK_THROWS_AS(check_monad_laws(SemanticsId::Trace, {1}, 1, LawMutant::FailuresNoDownclosure), Error);
  CHECK_THROWS_AS(check_monad_laws(SemanticsId::Trace, {5}, 1), Error);
}
