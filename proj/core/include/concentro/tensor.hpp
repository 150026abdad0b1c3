#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "concentro/partitions.hpp"

namespace concentro {

/// Dense order-d array with every axis of length m, row-major (last index
/// fastest). Immutable once built. Indices are 0-based in the C++ API.
class Tensor {
 public:
  static constexpr std::size_t kMaxEntries = 4'000'000;
  static constexpr int kMaxOrder = 6;

  Tensor(int order, int dim);  // zeros
  Tensor(int order, int dim, std::vector<double> values);

  static Tensor filled(int order, int dim, double value);
  /// Order-d diagonal tensor diag_d(x): entry x_i at (i,...,i).
  static Tensor diagonal(int order, std::span<const double> diag);
  /// diagonal(order, ones): identity matrix for order 2.
  static Tensor identity(int order, int dim);

  int order() const { return order_; }
  int dim() const { return dim_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  std::size_t offset(std::span<const int> index) const;
  void unravel(std::size_t flat, std::span<int> index) const;
  double operator()(std::span<const int> index) const { return values_[offset(index)]; }
  double at(std::initializer_list<int> index) const;

  double frobenius() const;
  bool is_zero() const;
  bool is_symmetric(double tol = 0.0) const;

  /// B with B[i_1..i_d] = A[i_{perm[0]}..i_{perm[d-1]}] (perm is 0-based).
  Tensor permuted(std::span<const int> perm) const;
  /// Average over all index permutations.
  Tensor symmetrized() const;

  Tensor operator+(const Tensor& other) const;
  Tensor operator-(const Tensor& other) const;
  Tensor operator*(double s) const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  int order_;
  int dim_;
  std::vector<double> values_;
};

/// Entry-selection masks of the generalized-diagonal / level-set family.
class IndexMask {
 public:
  enum class Kind { GeneralizedDiagonal, LevelSet, OffDiagonal };

  /// {i : i_k = i_l for all k,l ∈ K}; K is 1-based and needs #K ≥ 2.
  static IndexMask generalized_diagonal(std::vector<int> positions);
  /// L(K): equality pattern of i is exactly K.
  static IndexMask level_set(SetPartition pattern);
  /// All coordinates pairwise distinct (level set of the finest partition).
  static IndexMask off_diagonal();

  Kind kind() const { return kind_; }
  const std::vector<int>& positions() const { return positions_; }
  const SetPartition& pattern() const { return pattern_; }

  bool contains(std::span<const int> index) const;
  /// Throws if the mask refers to positions outside [1, order].
  void validate(int order) const;

 private:
  IndexMask(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<int> positions_;
  SetPartition pattern_;
};

Tensor hadamard(const Tensor& a, const Tensor& b);

/// A ∘ (v_1 ⊗ ... ⊗ v_d).
Tensor hadamard_rank_one(const Tensor& a, std::span<const std::vector<double>> factors);

/// A ∘ 1_C, zero outside the mask.
Tensor apply_mask(const Tensor& a, const IndexMask& mask);

/// Multilinear form Σ_i a_i Π_l x^(l)[i_{J_l}]. Block vector l has length
/// m^{#J_l}, laid out row-major over the block's positions in ascending order.
double contract(const Tensor& a, const SetPartition& partition,
                std::span<const std::vector<double>> blocks);

/// Gradient of the form in block `skip`: the vector g with
/// contract(a, J, x) = <g, x^(skip)>.
std::vector<double> contract_except(const Tensor& a, const SetPartition& partition,
                                    std::span<const std::vector<double>> blocks,
                                    std::size_t skip);

/// Row-major matricization of a two-block partition: rows run over block 0's
/// vector index, columns over block 1's.
std::vector<double> matricize(const Tensor& a, const SetPartition& partition);

/// Length of the block vector for a block of the given size.
std::size_t block_length(int dim, std::size_t block_size);

}  // namespace concentro
