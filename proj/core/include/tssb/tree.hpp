#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tssb {

using NodeId = std::size_t;

/// Perfect K-ary tree of depth D with breadth-first node numbering.
///
/// Node 0 is the root. The children of node s are K*s+1 .. K*s+K in routing
/// order, so every inner node id is smaller than every leaf id. The shape is
/// immutable after construction.
class TreeShape {
public:
  /// Throws DomainError unless branching >= 2 and depth >= 1.
  TreeShape(int branching, int depth);

  [[nodiscard]] int branching() const noexcept { return k_; }
  [[nodiscard]] int depth() const noexcept { return d_; }

  [[nodiscard]] std::size_t node_count() const noexcept { return nodes_; }
  [[nodiscard]] std::size_t inner_count() const noexcept { return inner_; }
  [[nodiscard]] std::size_t leaf_count() const noexcept {
    return nodes_ - inner_;
  }

  static constexpr NodeId root() noexcept { return 0; }

  [[nodiscard]] bool is_leaf(NodeId s) const noexcept { return s >= inner_; }
  [[nodiscard]] bool is_inner(NodeId s) const noexcept { return s < inner_; }

  [[nodiscard]] int node_depth(NodeId s) const;
  /// Parent of a non-root node.
  [[nodiscard]] NodeId parent(NodeId s) const;
  /// Position of s among its siblings, in 0..K-1. Root is rejected.
  [[nodiscard]] int child_index(NodeId s) const;
  [[nodiscard]] NodeId child(NodeId s, int index) const;
  /// First child id; children are contiguous.
  [[nodiscard]] NodeId first_child(NodeId s) const;

  /// a is an ancestor of b or equal to it.
  [[nodiscard]] bool is_ancestor_or_self(NodeId a, NodeId b) const;

  /// Leaf reached by following child indices from the root.
  [[nodiscard]] NodeId leaf_for_path(std::span<const int> path) const;

  /// Child indices from the root down to s (length = depth of s).
  [[nodiscard]] std::vector<int> path_to(NodeId s) const;

  [[nodiscard]] bool valid(NodeId s) const noexcept { return s < nodes_; }

  friend bool operator==(const TreeShape &a, const TreeShape &b) noexcept {
    return a.k_ == b.k_ && a.d_ == b.d_;
  }

private:
  void check(NodeId s) const;

  int k_;
  int d_;
  std::size_t nodes_;
  std::size_t inner_;
  std::vector<int> depth_;
};

/// A full subtree rooted at the root: every included inner node keeps all K
/// children. Stored as a membership mask over the shape's nodes.
class FullSubtree {
public:
  /// Root-only subtree.
  explicit FullSubtree(const TreeShape &shape);
  /// Throws DomainError if the mask is not a full subtree of `shape`.
  FullSubtree(const TreeShape &shape, std::vector<bool> members);

  [[nodiscard]] bool contains(NodeId s) const { return members_.at(s); }
  /// s is included and its children are included.
  [[nodiscard]] bool is_inner(NodeId s) const;
  /// s is included and its children are not.
  [[nodiscard]] bool is_leaf(NodeId s) const;

  [[nodiscard]] std::vector<NodeId> inner_nodes() const;
  [[nodiscard]] std::vector<NodeId> leaf_nodes() const;
  [[nodiscard]] const std::vector<bool> &members() const noexcept {
    return members_;
  }

  /// Add all children of the current leaf s.
  void expand(NodeId s);

  friend bool operator==(const FullSubtree &a, const FullSubtree &b) {
    return a.members_ == b.members_;
  }

private:
  int k_;
  std::size_t inner_;
  std::vector<bool> members_;
};

/// Validates that a mask describes a full subtree of `shape`.
[[nodiscard]] bool is_full_subtree(const TreeShape &shape,
                                   const std::vector<bool> &members);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Number of full subtrees, f(0)=1, f(d)=1+f(d-1)^K. Saturates at
/// SIZE_MAX on overflow.
[[nodiscard]] std::size_t count_subtrees(int branching, int depth);

/// Every full subtree exactly once. Throws CapacityError when the count
/// exceeds `cap`. Oracle use only.
[[nodiscard]] std::vector<FullSubtree>
enumerate_subtrees(const TreeShape &shape,
                   std::size_t cap = kDefaultEnumerationCap);

/// Every root-to-leaf path in lexicographic order. Throws CapacityError when
/// K^D exceeds `cap`.
[[nodiscard]] std::vector<std::vector<int>>
enumerate_paths(const TreeShape &shape,
                std::size_t cap = kDefaultEnumerationCap);

} // namespace tssb
