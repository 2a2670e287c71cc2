#include "spectrum/model.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "spectrum/error.hpp"

namespace spectrum {

std::vector<ActionId> ActionSet::members() const {
  std::vector<ActionId> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<ActionId>(__builtin_ctzll(b)));
  return out;
}

bool decoration_less(ActionSet a, ActionSet b) {
  std::uint64_t diff = a.bits() ^ b.bits();
  if (!diff) return false;
  std::uint64_t low = diff & (~diff + 1);
  return (a.bits() & low) == 0;
}

Alphabet::Alphabet(std::vector<std::string> labels) {
  for (auto& l : labels) intern(l);
}

ActionId Alphabet::intern(std::string_view label) {
  if (auto it = index_.find(std::string(label)); it != index_.end()) return it->second;
  auto id = static_cast<ActionId>(labels_.size());
  labels_.emplace_back(label);
  index_.emplace(labels_.back(), id);
  return id;
}

std::optional<ActionId> Alphabet::find(std::string_view label) const {
  if (auto it = index_.find(std::string(label)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::string render_set(ActionSet s, const Alphabet& alphabet) {
  std::string out = "{";
  bool first = true;
  for (ActionId a : s.members()) {
    if (!first) out += ',';
    first = false;
    out += alphabet.label(a);
  }
  return out + "}";
}

Lts::Lts(std::size_t num_states, StateId initial, Alphabet alphabet, std::vector<Transition> transitions)
    : num_states_(num_states), initial_(initial), alphabet_(std::move(alphabet)) {
  if (num_states_ == 0) throw ModelError("a model needs at least one state");
  if (initial_ >= num_states_) throw ModelError("initial state " + std::to_string(initial_) + " out of range");
  if (alphabet_.size() > max_alphabet_size)
    throw ModelError("alphabet has " + std::to_string(alphabet_.size()) + " actions, at most 64 are supported");
  for (const auto& t : transitions) {
    if (t.src >= num_states_ || t.dst >= num_states_)
      throw ModelError("state index " + std::to_string(std::max(t.src, t.dst)) + " out of range");
    if (t.act >= alphabet_.size()) throw ModelError("action index out of range");
  }
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
  transitions_ = std::move(transitions);
  succ_.resize(num_states_);
  ready_.resize(num_states_);
  for (const auto& t : transitions_) {
    succ_[t.src].push_back({t.act, t.dst});
    ready_[t.src] = ready_[t.src].with(t.act);
  }
}

Gps::Gps(std::size_t num_states, StateId initial, Alphabet alphabet, std::vector<std::vector<GpsEntry>> rows)
    : num_states_(num_states), initial_(initial), alphabet_(std::move(alphabet)) {
  if (num_states_ == 0) throw ModelError("a model needs at least one state");
  if (initial_ >= num_states_) throw ModelError("initial state " + std::to_string(initial_) + " out of range");
  if (rows.size() != num_states_) throw ModelError("expected one row per state");
  rows_.resize(num_states_);
  for (StateId x = 0; x < num_states_; ++x) {
    std::map<std::pair<ActionId, StateId>, Rational> merged;
    for (const auto& e : rows[x]) {
      if (e.dst >= num_states_) throw ModelError("state index " + std::to_string(e.dst) + " out of range");
      if (e.act >= alphabet_.size()) throw ModelError("action index out of range");
      if (e.prob <= 0 || e.prob > 1)
        throw ModelError("state " + std::to_string(x) + ": probability " + to_string(e.prob) + " not in (0,1]");
      merged[{e.act, e.dst}] += e.prob;
    }
    Rational sum = 0;
    for (auto& [key, p] : merged) {
      sum += p;
      rows_[x].push_back({p, key.first, key.second});
    }
    if (sum != 1)
      throw ModelError("state " + std::to_string(x) + ": row sum " + to_string(sum) + " != 1");
  }
}

namespace {

std::string letter_label(std::size_t i) { return std::string(1, static_cast<char>('a' + i)); }

Alphabet letters(std::size_t n) {
  if (n > 26) throw ModelError("random models support at most 26 actions");
  Alphabet a;
  for (std::size_t i = 0; i < n; ++i) a.intern(letter_label(i));
  return a;
}

// Portable draws; the standard distributions are implementation-defined.
bool draw(std::mt19937_64& rng, double p) {
  constexpr double scale = 9007199254740992.0;  // 2^53
  return static_cast<double>(rng() >> 11) < p * scale;
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

}  // namespace

Lts random_lts(std::uint64_t seed, std::size_t n_states, std::size_t n_actions, double density) {
  if (n_states == 0) throw ModelError("random_lts needs at least one state");
  std::mt19937_64 rng(seed);
  std::vector<Transition> ts;
  for (StateId x = 0; x < n_states; ++x)
    for (ActionId a = 0; a < n_actions; ++a)
      for (StateId y = 0; y < n_states; ++y)
        if (draw(rng, density)) ts.push_back({x, a, y});
  return Lts(n_states, 0, letters(n_actions), std::move(ts));
}

Gps random_gps(std::uint64_t seed, std::size_t n_states, std::size_t n_actions, std::size_t max_branching) {
  if (n_states == 0 || n_actions == 0 || max_branching == 0)
    throw ModelError("random_gps needs states, actions and branching");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<GpsEntry>> rows(n_states);
  for (auto& row : rows) {
    std::size_t k = 1 + below(rng, max_branching);
    std::vector<Rational> parts{Rational(1)};
    while (parts.size() < k) {
      auto i = below(rng, parts.size());
      parts[i] /= 2;
      parts.push_back(parts[i]);
    }
    for (auto& p : parts)
      row.push_back({p, static_cast<ActionId>(below(rng, n_actions)), static_cast<StateId>(below(rng, n_states))});
  }
  return Gps(n_states, 0, letters(n_actions), std::move(rows));
}

Lts disjoint_union(const Lts& a, const Lts& b) {
  Alphabet alpha = a.alphabet();
  std::vector<Transition> ts = a.transitions();
  auto shift = static_cast<StateId>(a.num_states());
  for (const auto& t : b.transitions())
    ts.push_back({t.src + shift, alpha.intern(b.alphabet().label(t.act)), t.dst + shift});
  return Lts(a.num_states() + b.num_states(), a.initial(), std::move(alpha), std::move(ts));
}

}  // namespace spectrum
