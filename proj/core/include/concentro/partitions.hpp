#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace concentro {

/// A block of a set partition: sorted, 1-based positions.
using Block = std::vector<int>;

/// Partition of a ground set S ⊆ {1..order} into nonempty disjoint blocks.
///
/// Blocks are kept in canonical order (sorted by minimum element, indices
/// ascending within a block). Most callers want S = {1..order}; use
/// `is_full()` to check. Split partitions use proper subsets.
class SetPartition {
 public:
  SetPartition() = default;
  explicit SetPartition(int order) : order_(order) {}
  SetPartition(int order, std::vector<Block> blocks);

  /// Partition of {1..labels.size()} from a restricted-growth string
  /// (labels[i] is the 0-based block of position i+1).
  static SetPartition from_labels(const std::vector<int>& labels);

  /// Parses "1,2|3". An empty string gives zero blocks.
  static SetPartition parse(std::string_view text, int order);

  int order() const { return order_; }
  std::size_t size() const { return blocks_.size(); }
  bool empty() const { return blocks_.empty(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& operator[](std::size_t i) const { return blocks_[i]; }

  /// Sorted union of the blocks.
  std::vector<int> ground() const;
  bool is_full() const;

  /// 0-based block id for each position 1..order (-1 outside the ground set).
  std::vector<int> block_of() const;

  /// True if every block of *this lies inside some block of `coarser`.
  bool refines(const SetPartition& coarser) const;

  /// Image under a relabeling of positions: position k goes to perm[k-1].
  SetPartition relabeled(const std::vector<int>& perm) const;

  std::string to_string() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;

 private:
  int order_ = 0;
  std::vector<Block> blocks_;
};

/// Triple (I, J ∈ P_I, K ∈ P_{[d]\I}) indexing the mixed norms.
struct SplitPartition {
  int order = 0;
  SetPartition inner;  // ℓ2-constrained blocks
  SetPartition outer;  // ℓα(ℓ2)-constrained blocks

  SplitPartition() = default;
  SplitPartition(int d, SetPartition in, SetPartition out);

  /// Parses "1|2||3" (inner || outer). Either side may be empty.
  static SplitPartition parse(std::string_view text, int order);

  /// Merged partition J ∪ K of {1..order}.
  SetPartition merged() const;
  std::string to_string() const;

  friend bool operator==(const SplitPartition&, const SplitPartition&) = default;
};

std::size_t bell_number(int d);

/// All partitions of {1..d} in restricted-growth-string order; 1 ≤ d ≤ 6.
std::vector<SetPartition> enumerate_partitions(int d);

/// All partitions of an arbitrary ground set (sorted positions), as
/// partitions of {1..order}'s subset. The empty set has one (empty) partition.
std::vector<SetPartition> enumerate_partitions_of(const std::vector<int>& ground, int order);

/// All split triples for 1 ≤ d ≤ 3, subsets I visited from [d] down to ∅.
std::vector<SplitPartition> enumerate_splits(int d);

}  // namespace concentro
