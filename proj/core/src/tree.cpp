#include "tssb/tree.hpp"

#include "tssb/errors.hpp"

#include <limits>
#include <string>

namespace tssb {

namespace {

std::size_t checked_pow(std::size_t base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > std::numeric_limits<std::size_t>::max() / base)
      throw DomainError("tree too large to index");
    out *= base;
  }
  return out;
}

} // namespace

TreeShape::TreeShape(int branching, int depth) : k_(branching), d_(depth) {
  if (branching < 2)
    throw DomainError("branching factor must be >= 2, got " +
                      std::to_string(branching));
  if (depth < 1)
    throw DomainError("depth must be >= 1, got " + std::to_string(depth));
  const auto k = static_cast<std::size_t>(k_);
  const std::size_t leaves = checked_pow(k, d_);
  inner_ = (leaves - 1) / (k - 1);
  nodes_ = inner_ + leaves;

  depth_.resize(nodes_);
  std::size_t begin = 0;
  std::size_t width = 1;
  for (int d = 0; d <= d_; ++d) {
    for (std::size_t s = begin; s < begin + width; ++s)
      depth_[s] = d;
    begin += width;
    width *= k;
  }
}

void TreeShape::check(NodeId s) const {
  if (s >= nodes_)
    throw DomainError("node id " + std::to_string(s) + " out of range [0, " +
                      std::to_string(nodes_) + ")");
}

int TreeShape::node_depth(NodeId s) const {
  check(s);
  return depth_[s];
}

NodeId TreeShape::parent(NodeId s) const {
  check(s);
  if (s == root())
    throw DomainError("root has no parent");
  return (s - 1) / static_cast<std::size_t>(k_);
}

int TreeShape::child_index(NodeId s) const {
  check(s);
  if (s == root())
    throw DomainError("root has no child index");
  return static_cast<int>((s - 1) % static_cast<std::size_t>(k_));
}

NodeId TreeShape::first_child(NodeId s) const {
  check(s);
  if (is_leaf(s))
    throw DomainError("leaf " + std::to_string(s) + " has no children");
  return static_cast<std::size_t>(k_) * s + 1;
}

NodeId TreeShape::child(NodeId s, int index) const {
  if (index < 0 || index >= k_)
    throw DomainError("child index " + std::to_string(index) +
                      " out of range");
  return first_child(s) + static_cast<std::size_t>(index);
}

bool TreeShape::is_ancestor_or_self(NodeId a, NodeId b) const {
  check(a);
  check(b);
  while (depth_[b] > depth_[a])
    b = (b - 1) / static_cast<std::size_t>(k_);
  return a == b;
}

NodeId TreeShape::leaf_for_path(std::span<const int> path) const {
  if (path.size() != static_cast<std::size_t>(d_))
    throw DomainError("path length " + std::to_string(path.size()) +
                      " does not match depth " + std::to_string(d_));
  NodeId s = root();
  for (int z : path) {
    if (z < 0 || z >= k_)
      throw DomainError("path entry " + std::to_string(z) +
                        " outside 0.." + std::to_string(k_ - 1));
    s = static_cast<std::size_t>(k_) * s + 1 + static_cast<std::size_t>(z);
  }
  return s;
}

std::vector<int> TreeShape::path_to(NodeId s) const {
  check(s);
  std::vector<int> path(static_cast<std::size_t>(depth_[s]));
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    *it = child_index(s);
    s = parent(s);
  }
  return path;
}

// FullSubtree

FullSubtree::FullSubtree(const TreeShape &shape)
    : k_(shape.branching()), inner_(shape.inner_count()),
      members_(shape.node_count(), false) {
  members_[TreeShape::root()] = true;
}

FullSubtree::FullSubtree(const TreeShape &shape, std::vector<bool> members)
    : k_(shape.branching()), inner_(shape.inner_count()),
      members_(std::move(members)) {
  if (!is_full_subtree(shape, members_))
    throw DomainError("membership mask is not a full subtree");
}

bool FullSubtree::is_inner(NodeId s) const {
  if (!members_.at(s) || s >= inner_)
    return false;
  return members_[static_cast<std::size_t>(k_) * s + 1];
}

bool FullSubtree::is_leaf(NodeId s) const {
  return members_.at(s) && !is_inner(s);
}

std::vector<NodeId> FullSubtree::inner_nodes() const {
  std::vector<NodeId> out;
  for (NodeId s = 0; s < members_.size(); ++s)
    if (is_inner(s))
      out.push_back(s);
  return out;
}

std::vector<NodeId> FullSubtree::leaf_nodes() const {
  std::vector<NodeId> out;
  for (NodeId s = 0; s < members_.size(); ++s)
    if (is_leaf(s))
      out.push_back(s);
  return out;
}

void FullSubtree::expand(NodeId s) {
  if (!is_leaf(s) || s >= inner_)
    throw DomainError("only an expandable leaf can be expanded");
  const auto first = static_cast<std::size_t>(k_) * s + 1;
  for (std::size_t c = first; c < first + static_cast<std::size_t>(k_); ++c)
    members_[c] = true;
}

bool is_full_subtree(const TreeShape &shape,
                     const std::vector<bool> &members) {
  if (members.size() != shape.node_count() || !members[TreeShape::root()])
    return false;
  for (NodeId s = 1; s < members.size(); ++s) {
    if (members[s] && !members[shape.parent(s)])
      return false;
  }
  // Siblings are all in or all out.
  for (NodeId s = 0; s < shape.inner_count(); ++s) {
    const NodeId first = shape.first_child(s);
    for (int c = 1; c < shape.branching(); ++c)
      if (members[first + static_cast<std::size_t>(c)] != members[first])
        return false;
  }
  return true;
}

std::size_t count_subtrees(int branching, int depth) {
  constexpr std::size_t sat = std::numeric_limits<std::size_t>::max();
  std::size_t f = 1;
  for (int d = 1; d <= depth; ++d) {
    std::size_t p = 1;
    for (int c = 0; c < branching; ++c) {
      if (f != 0 && p > sat / f)
        return sat;
      p *= f;
    }
    if (p == sat)
      return sat;
    f = p + 1;
  }
  return f;
}

namespace {

// All full-subtree node sets hanging below s, as lists of member ids.
void expand_all(const TreeShape &shape, NodeId s,
                std::vector<std::vector<NodeId>> &out) {
  out.clear();
  out.push_back({s});
  if (shape.is_leaf(s))
    return;
  std::vector<std::vector<NodeId>> combos{{s}};
  std::vector<std::vector<NodeId>> below;
  for (int c = 0; c < shape.branching(); ++c) {
    expand_all(shape, shape.child(s, c), below);
    std::vector<std::vector<NodeId>> next;
    next.reserve(combos.size() * below.size());
    for (const auto &head : combos)
      for (const auto &tail : below) {
        auto joined = head;
        joined.insert(joined.end(), tail.begin(), tail.end());
        next.push_back(std::move(joined));
      }
    combos = std::move(next);
  }
  out.insert(out.end(), combos.begin(), combos.end());
}

} // namespace

std::vector<FullSubtree> enumerate_subtrees(const TreeShape &shape,
                                            std::size_t cap) {
  const std::size_t count = count_subtrees(shape.branching(), shape.depth());
  if (count > cap)
    throw CapacityError("subtree count exceeds enumeration cap of " +
                            std::to_string(cap),
                        cap);
  std::vector<std::vector<NodeId>> sets;
  expand_all(shape, TreeShape::root(), sets);
  std::vector<FullSubtree> out;
  out.reserve(sets.size());
  for (const auto &set : sets) {
    std::vector<bool> mask(shape.node_count(), false);
    for (NodeId s : set)
      mask[s] = true;
    out.emplace_back(shape, std::move(mask));
  }
  return out;
}

std::vector<std::vector<int>> enumerate_paths(const TreeShape &shape,
                                              std::size_t cap) {
  const std::size_t count = shape.leaf_count();
  if (count > cap)
    throw CapacityError("path count exceeds enumeration cap of " +
                            std::to_string(cap),
                        cap);
  std::vector<std::vector<int>> out;
  out.reserve(count);
  for (NodeId leaf = shape.inner_count(); leaf < shape.node_count(); ++leaf)
    out.push_back(shape.path_to(leaf));
  return out;
}

} // namespace tssb
