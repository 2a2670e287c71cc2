#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace spectrum {

enum class SemanticsId {
  Bisimilarity,
  Trace,
  CompletedTrace,
  Readiness,
  Failures,
  ReadyTrace,
  FailureTrace,
  Simulation,
  ReadySimulation,
  ProbabilisticTrace,
};

inline constexpr std::array<SemanticsId, 10> all_semantics = {
    SemanticsId::Bisimilarity, SemanticsId::Trace,          SemanticsId::CompletedTrace,
    SemanticsId::Readiness,    SemanticsId::Failures,       SemanticsId::ReadyTrace,
    SemanticsId::FailureTrace, SemanticsId::Simulation,     SemanticsId::ReadySimulation,
    SemanticsId::ProbabilisticTrace,
};

inline constexpr std::array<SemanticsId, 9> lts_semantics = {
    SemanticsId::Bisimilarity, SemanticsId::Trace,        SemanticsId::CompletedTrace,
    SemanticsId::Readiness,    SemanticsId::Failures,     SemanticsId::ReadyTrace,
    SemanticsId::FailureTrace, SemanticsId::Simulation,   SemanticsId::ReadySimulation,
};

std::string_view name(SemanticsId s);
std::optional<SemanticsId> parse_semantics(std::string_view text);

constexpr bool is_probabilistic(SemanticsId s) { return s == SemanticsId::ProbabilisticTrace; }

/// Bisimilarity and the two simulation semantics.
constexpr bool is_coinductive(SemanticsId s) {
  return s == SemanticsId::Bisimilarity || s == SemanticsId::Simulation || s == SemanticsId::ReadySimulation;
}

constexpr bool is_trace_like(SemanticsId s) { return !is_coinductive(s); }

constexpr bool has_logic(SemanticsId s) {
  return s != SemanticsId::Simulation && s != SemanticsId::ReadySimulation;
}

constexpr bool is_simulation_like(SemanticsId s) {
  return s == SemanticsId::Simulation || s == SemanticsId::ReadySimulation;
}

/// Steps carry a ready or failure set.
constexpr bool is_decorated(SemanticsId s) {
  return s == SemanticsId::ReadyTrace || s == SemanticsId::FailureTrace || s == SemanticsId::ReadySimulation;
}

}  // namespace spectrum
