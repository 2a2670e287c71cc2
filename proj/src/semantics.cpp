#include "spectrum/semantics.hpp"

namespace spectrum {

std::string_view name(SemanticsId s) {
  switch (s) {
    case SemanticsId::Bisimilarity: return "bisimilarity";
    case SemanticsId::Trace: return "trace";
    case SemanticsId::CompletedTrace: return "completed-trace";
    case SemanticsId::Readiness: return "readiness";
    case SemanticsId::Failures: return "failures";
    case SemanticsId::ReadyTrace: return "ready-trace";
    case SemanticsId::FailureTrace: return "failure-trace";
    case SemanticsId::Simulation: return "simulation";
    case SemanticsId::ReadySimulation: return "ready-simulation";
    case SemanticsId::ProbabilisticTrace: return "probabilistic-trace";
  }
  return "?";
}

std::optional<SemanticsId> parse_semantics(std::string_view text) {
  for (auto s : all_semantics)
    if (name(s) == text) return s;
  return std::nullopt;
}

}  // namespace spectrum
