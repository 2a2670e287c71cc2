#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "spectrum/word.hpp"

namespace spectrum {

enum class TreeFamily : std::uint8_t { Bisimulation, Simulation, ReadySimulation };

struct TreeNode;

struct TreeChild {
  Letter letter;
  const TreeNode* node;
  bool operator==(const TreeChild&) const = default;
};

/// Interned tree value. Depth-0 nodes are ⊤ or ⊥; star marks a deadlock (ready simulation).
struct TreeNode {
  TreeFamily family;
  int depth;
  bool bottom;
  bool star;
  std::vector<TreeChild> children;  // canonically sorted, no duplicates
  std::size_t hash;
  std::uint64_t id;
};

/// Structural total order; equal iff identical.
int compare_trees(const TreeNode* a, const TreeNode* b);

/// Hash-consing table for tree values; safe to share between threads.
class TreeStore {
public:
  TreeStore() = default;
  TreeStore(const TreeStore&) = delete;
  TreeStore& operator=(const TreeStore&) = delete;

  const TreeNode* top(TreeFamily f);
  const TreeNode* bottom(TreeFamily f);

  /// Sorts and deduplicates children; keeps dominated ones.
  const TreeNode* make(TreeFamily f, int depth, bool star, std::vector<TreeChild> children);
  /// Keeps only the maximal children (simulation families).
  const TreeNode* make_maximal(TreeFamily f, int depth, bool star, std::vector<TreeChild> children);

  /// Downset inclusion. Same family and depth required.
  bool leq(const TreeNode* a, const TreeNode* b);
  /// Join in the downset lattice of the given depth; the empty join is the bottom element.
  const TreeNode* join(TreeFamily f, int depth, std::span<const TreeNode* const> nodes);

  std::size_t size() const;

private:
  struct Key {
    TreeFamily family;
    int depth;
    bool bottom;
    bool star;
    const std::vector<TreeChild>* children;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  struct KeyEq {
    bool operator()(const Key& a, const Key& b) const;
  };
  struct PairHash {
    std::size_t operator()(const std::pair<const TreeNode*, const TreeNode*>& p) const;
  };

  const TreeNode* intern(TreeFamily f, int depth, bool bottom, bool star, std::vector<TreeChild> children);
  bool leq_uncached(const TreeNode* a, const TreeNode* b);

  mutable std::mutex mutex_;
  std::deque<TreeNode> nodes_;
  std::unordered_map<Key, const TreeNode*, KeyHash, KeyEq> table_;
  std::mutex leq_mutex_;
  std::unordered_map<std::pair<const TreeNode*, const TreeNode*>, bool, PairHash> leq_memo_;
};

/// Process-wide store used by the engine, oracles and logic, so tree values compare by identity.
TreeStore& tree_store();

}  // namespace spectrum
