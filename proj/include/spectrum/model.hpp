#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "spectrum/rational.hpp"

namespace spectrum {

using StateId = std::uint32_t;
using ActionId = std::uint32_t;

inline constexpr std::size_t max_alphabet_size = 64;

/// Subset of an alphabet as a bitmask over action indices.
class ActionSet {
public:
  constexpr ActionSet() = default;
  constexpr explicit ActionSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr ActionSet single(ActionId a) { return ActionSet(std::uint64_t{1} << a); }
  static constexpr ActionSet full(std::size_t n) {
    return ActionSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(ActionId a) const { return (bits_ >> a) & 1u; }
  constexpr bool subset_of(ActionSet o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr bool disjoint(ActionSet o) const { return (bits_ & o.bits_) == 0; }
  int size() const { return __builtin_popcountll(bits_); }

  constexpr ActionSet with(ActionId a) const { return ActionSet(bits_ | (std::uint64_t{1} << a)); }
  constexpr ActionSet without(ActionId a) const { return ActionSet(bits_ & ~(std::uint64_t{1} << a)); }
  constexpr ActionSet operator|(ActionSet o) const { return ActionSet(bits_ | o.bits_); }
  constexpr ActionSet operator&(ActionSet o) const { return ActionSet(bits_ & o.bits_); }
  constexpr ActionSet minus(ActionSet o) const { return ActionSet(bits_ & ~o.bits_); }

  std::vector<ActionId> members() const;

  constexpr auto operator<=>(const ActionSet&) const = default;

private:
  std::uint64_t bits_ = 0;
};

/// Order on sets by characteristic vector, lowest action first; a set lacking the action comes first.
bool decoration_less(ActionSet a, ActionSet b);

/// Ordered set of action labels; index order is declaration order.
class Alphabet {
public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  ActionId intern(std::string_view label);
  std::optional<ActionId> find(std::string_view label) const;
  const std::string& label(ActionId a) const { return labels_.at(a); }
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  ActionSet full() const { return ActionSet::full(labels_.size()); }

  bool operator==(const Alphabet& o) const { return labels_ == o.labels_; }

private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, ActionId> index_;
};

/// Renders {a,b} in alphabet order.
std::string render_set(ActionSet s, const Alphabet& alphabet);

struct Transition {
  StateId src;
  ActionId act;
  StateId dst;
  auto operator<=>(const Transition&) const = default;
};

struct Successor {
  ActionId act;
  StateId dst;
  auto operator<=>(const Successor&) const = default;
};

class Lts {
public:
  Lts() : Lts(1, 0, Alphabet{}, {}) {}
  /// Validates indices and drops duplicate transitions. Throws ModelError.
  Lts(std::size_t num_states, StateId initial, Alphabet alphabet, std::vector<Transition> transitions);

  std::size_t num_states() const { return num_states_; }
  StateId initial() const { return initial_; }
  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  std::span<const Successor> successors(StateId x) const { return succ_.at(x); }
  ActionSet ready_set(StateId x) const { return ready_.at(x); }
  bool deadlocked(StateId x) const { return succ_.at(x).empty(); }

  bool operator==(const Lts& o) const {
    return num_states_ == o.num_states_ && initial_ == o.initial_ && alphabet_ == o.alphabet_ &&
           transitions_ == o.transitions_;
  }

private:
  std::size_t num_states_;
  StateId initial_;
  Alphabet alphabet_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<Successor>> succ_;
  std::vector<ActionSet> ready_;
};

inline ActionSet ready_set(const Lts& lts, StateId x) { return lts.ready_set(x); }

struct GpsEntry {
  Rational prob;
  ActionId act;
  StateId dst;
  bool operator==(const GpsEntry&) const = default;
};

class Gps {
public:
  Gps() : Gps(1, 0, Alphabet{}, {}) {}
  /// Merges duplicate (act, dst) entries and validates row sums. Throws ModelError.
  Gps(std::size_t num_states, StateId initial, Alphabet alphabet, std::vector<std::vector<GpsEntry>> rows);

  std::size_t num_states() const { return num_states_; }
  StateId initial() const { return initial_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::span<const GpsEntry> row(StateId x) const { return rows_.at(x); }

  bool operator==(const Gps&) const = default;

private:
  std::size_t num_states_;
  StateId initial_;
  Alphabet alphabet_;
  std::vector<std::vector<GpsEntry>> rows_;
};

using Model = std::variant<Lts, Gps>;

/// Labels a, b, ... ; each of the n·k·n transitions kept independently with probability density.
Lts random_lts(std::uint64_t seed, std::size_t n_states, std::size_t n_actions, double density);
/// Rows with 1..max_branching entries and dyadic probabilities.
Gps random_gps(std::uint64_t seed, std::size_t n_states, std::size_t n_actions, std::size_t max_branching);

/// States of b are shifted by a.num_states(); alphabets are merged by label.
Lts disjoint_union(const Lts& a, const Lts& b);

Lts parse_aut(std::string_view text);
std::string render_aut(const Lts& lts);
Gps parse_gps(std::string_view text);
std::string render_gps(const Gps& gps);

/// Reads a model file; ".gps"/".json" files are GPS documents, everything else AUT.
Model load_model(const std::string& path);

}  // namespace spectrum
