#include "spectrum/tree.hpp"

#include <algorithm>

#include "spectrum/error.hpp"

namespace spectrum {

namespace {

int compare_letters(const Letter& a, const Letter& b) {
  if (a.act != b.act) return a.act < b.act ? -1 : 1;
  if (a.deco != b.deco) return a.deco < b.deco ? -1 : 1;
  return 0;
}

void hash_mix(std::size_t& h, std::uint64_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

void canonical_sort(std::vector<TreeChild>& children) {
  std::sort(children.begin(), children.end(), [](const TreeChild& a, const TreeChild& b) {
    int c = compare_letters(a.letter, b.letter);
    if (c) return c < 0;
    return compare_trees(a.node, b.node) < 0;
  });
  children.erase(std::unique(children.begin(), children.end()), children.end());
}

}  // namespace

int compare_trees(const TreeNode* a, const TreeNode* b) {
  if (a == b) return 0;
  if (a->depth != b->depth) return a->depth < b->depth ? -1 : 1;
  if (a->family != b->family) return a->family < b->family ? -1 : 1;
  if (a->bottom != b->bottom) return a->bottom ? -1 : 1;
  if (a->star != b->star) return a->star ? 1 : -1;
  if (a->children.size() != b->children.size()) return a->children.size() < b->children.size() ? -1 : 1;
  for (std::size_t i = 0; i < a->children.size(); ++i) {
    if (int c = compare_letters(a->children[i].letter, b->children[i].letter)) return c;
    if (int c = compare_trees(a->children[i].node, b->children[i].node)) return c;
  }
  return 0;
}

std::size_t TreeStore::KeyHash::operator()(const Key& k) const {
  std::size_t h = static_cast<std::size_t>(k.family) * 31 + static_cast<std::size_t>(k.depth);
  hash_mix(h, (k.bottom ? 2u : 0u) | (k.star ? 1u : 0u));
  for (const auto& c : *k.children) {
    hash_mix(h, c.letter.act);
    hash_mix(h, c.letter.deco.bits());
    hash_mix(h, c.node->id);
  }
  return h;
}

bool TreeStore::KeyEq::operator()(const Key& a, const Key& b) const {
  return a.family == b.family && a.depth == b.depth && a.bottom == b.bottom && a.star == b.star &&
         *a.children == *b.children;
}

std::size_t TreeStore::PairHash::operator()(const std::pair<const TreeNode*, const TreeNode*>& p) const {
  std::size_t h = p.first->id;
  hash_mix(h, p.second->id);
  return h;
}

const TreeNode* TreeStore::intern(TreeFamily f, int depth, bool bottom, bool star, std::vector<TreeChild> children) {
  Key probe{f, depth, bottom, star, &children};
  std::lock_guard lock(mutex_);
  if (auto it = table_.find(probe); it != table_.end()) return it->second;
  std::size_t h = KeyHash{}(probe);
  nodes_.push_back(TreeNode{f, depth, bottom, star, std::move(children), h, nodes_.size()});
  const TreeNode* node = &nodes_.back();
  table_.emplace(Key{f, depth, bottom, star, &node->children}, node);
  return node;
}

const TreeNode* TreeStore::top(TreeFamily f) { return intern(f, 0, false, false, {}); }

const TreeNode* TreeStore::bottom(TreeFamily f) {
  if (f == TreeFamily::Bisimulation) throw SemanticsMismatch("bisimulation values have no bottom element");
  return intern(f, 0, true, false, {});
}

const TreeNode* TreeStore::make(TreeFamily f, int depth, bool star, std::vector<TreeChild> children) {
  if (depth <= 0) throw SemanticsMismatch("tree nodes with children have positive depth");
  for (const auto& c : children)
    if (c.node->depth != depth - 1 || c.node->family != f) throw SemanticsMismatch("child of wrong depth or family");
  canonical_sort(children);
  return intern(f, depth, false, star, std::move(children));
}

const TreeNode* TreeStore::make_maximal(TreeFamily f, int depth, bool star, std::vector<TreeChild> children) {
  canonical_sort(children);
  std::vector<TreeChild> kept;
  for (const auto& c : children) {
    bool dominated = false;
    for (const auto& d : children)
      if (d.node != c.node && d.letter == c.letter && leq(c.node, d.node)) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(c);
  }
  return make(f, depth, star, std::move(kept));
}

bool TreeStore::leq_uncached(const TreeNode* a, const TreeNode* b) {
  if (a->depth == 0) return a->bottom || !b->bottom;
  if (a->star && !b->star) return false;
  for (const auto& ca : a->children) {
    bool found = false;
    for (const auto& cb : b->children)
      if (cb.letter == ca.letter && leq(ca.node, cb.node)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

bool TreeStore::leq(const TreeNode* a, const TreeNode* b) {
  if (a->family != b->family || a->depth != b->depth)
    throw SemanticsMismatch("sim_leq needs values of the same semantics and depth");
  if (a->family == TreeFamily::Bisimulation) throw SemanticsMismatch("bisimulation values are not ordered");
  if (a == b) return true;
  auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(leq_mutex_);
    if (auto it = leq_memo_.find(key); it != leq_memo_.end()) return it->second;
  }
  bool r = leq_uncached(a, b);
  std::lock_guard lock(leq_mutex_);
  leq_memo_.emplace(key, r);
  return r;
}

const TreeNode* TreeStore::join(TreeFamily f, int depth, std::span<const TreeNode* const> nodes) {
  if (f == TreeFamily::Bisimulation) throw SemanticsMismatch("bisimulation values have no joins");
  if (depth == 0) {
    for (auto n : nodes)
      if (!n->bottom) return top(f);
    return bottom(f);
  }
  if (nodes.size() == 1) return nodes[0];
  bool star = false;
  std::vector<TreeChild> children;
  for (auto n : nodes) {
    if (n->depth != depth || n->family != f) throw SemanticsMismatch("join of values of mixed depth");
    star = star || n->star;
    children.insert(children.end(), n->children.begin(), n->children.end());
  }
  return make_maximal(f, depth, star, std::move(children));
}

std::size_t TreeStore::size() const {
  std::lock_guard lock(mutex_);
  return nodes_.size();
}

TreeStore& tree_store() {
  static TreeStore store;
  return store;
}

}  // namespace spectrum
