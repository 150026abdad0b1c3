#include "concentro/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "concentro/errors.hpp"

namespace concentro {

namespace {

std::size_t checked_size(int order, int dim) {
  if (order < 1 || order > Tensor::kMaxOrder)
    throw DomainError("tensor order " + std::to_string(order) + " outside [1,6]");
  if (dim < 1) throw DomainError("tensor dim must be positive");
  std::size_t n = 1;
  for (int k = 0; k < order; ++k) {
    n *= static_cast<std::size_t>(dim);
    if (n > Tensor::kMaxEntries)
      throw DomainError("tensor with dim " + std::to_string(dim) + " and order " +
                        std::to_string(order) + " exceeds 4e6 entries");
  }
  return n;
}

void require_same_shape(const Tensor& a, const Tensor& b, const char* what) {
  if (a.order() != b.order() || a.dim() != b.dim())
    throw ShapeError(std::string(what) + ": tensor shapes differ");
}

// Walks all multi-indices in row-major order while tracking, for every block
// of a partition, the offset of the current index inside that block's vector.
class BlockWalker {
 public:
  BlockWalker(const Tensor& a, const SetPartition& part)
      : d_(a.order()), m_(a.dim()), idx_(d_, 0), owner_(part.block_of()),
        stride_(d_, 0), off_(part.size(), 0) {
    for (const auto& b : part.blocks()) {
      std::size_t s = 1;
      for (auto it = b.rbegin(); it != b.rend(); ++it) {
        stride_[*it - 1] = s;
        s *= static_cast<std::size_t>(m_);
      }
    }
  }

  const std::vector<std::size_t>& offsets() const { return off_; }

  void advance() {
    int k = d_ - 1;
    ++idx_[k];
    off_[owner_[k]] += stride_[k];
    while (idx_[k] == m_) {
      idx_[k] = 0;
      off_[owner_[k]] -= static_cast<std::size_t>(m_) * stride_[k];
      if (--k < 0) return;
      ++idx_[k];
      off_[owner_[k]] += stride_[k];
    }
  }

 private:
  int d_;
  int m_;
  std::vector<int> idx_;
  std::vector<int> owner_;
  std::vector<std::size_t> stride_;
  std::vector<std::size_t> off_;
};

void check_blocks(const Tensor& a, const SetPartition& part,
                  std::span<const std::vector<double>> blocks) {
  if (part.order() != a.order() || !part.is_full())
    throw ShapeError("partition " + part.to_string() + " is not a partition of [1," +
                     std::to_string(a.order()) + "]");
  if (blocks.size() != part.size())
    throw ShapeError("expected " + std::to_string(part.size()) + " block vectors, got " +
                     std::to_string(blocks.size()));
  for (std::size_t l = 0; l < part.size(); ++l)
    if (blocks[l].size() != block_length(a.dim(), part[l].size()))
      throw ShapeError("block vector " + std::to_string(l + 1) + " has length " +
                       std::to_string(blocks[l].size()) + ", expected " +
                       std::to_string(block_length(a.dim(), part[l].size())));
}

}  // namespace

std::size_t block_length(int dim, std::size_t block_size) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < block_size; ++i) n *= static_cast<std::size_t>(dim);
  return n;
}

Tensor::Tensor(int order, int dim)
    : order_(order), dim_(dim), values_(checked_size(order, dim), 0.0) {}

Tensor::Tensor(int order, int dim, std::vector<double> values)
    : order_(order), dim_(dim), values_(std::move(values)) {
  const std::size_t n = checked_size(order, dim);
  if (values_.size() != n)
    throw ShapeError("tensor needs " + std::to_string(n) + " values, got " +
                     std::to_string(values_.size()));
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("tensor entries must be finite");
}

Tensor Tensor::filled(int order, int dim, double value) {
  return Tensor(order, dim, std::vector<double>(checked_size(order, dim), value));
}

Tensor Tensor::diagonal(int order, std::span<const double> diag) {
  const int m = static_cast<int>(diag.size());
  std::vector<double> v(checked_size(order, m), 0.0);
  std::size_t step = 0;  // offset of (1,...,1)
  for (int k = 0; k < order; ++k) step = step * m + 1;
  for (int i = 0; i < m; ++i) v[i * step] = diag[i];
  return Tensor(order, m, std::move(v));
}

Tensor Tensor::identity(int order, int dim) {
  const std::vector<double> ones(static_cast<std::size_t>(dim), 1.0);
  return diagonal(order, ones);
}

std::size_t Tensor::offset(std::span<const int> index) const {
  if (index.size() != static_cast<std::size_t>(order_))
    throw ShapeError("index has wrong length");
  std::size_t off = 0;
  for (int i : index) {
    if (i < 0 || i >= dim_) throw ShapeError("index out of range");
    off = off * dim_ + i;
  }
  return off;
}

void Tensor::unravel(std::size_t flat, std::span<int> index) const {
  for (int k = order_ - 1; k >= 0; --k) {
    index[k] = static_cast<int>(flat % dim_);
    flat /= dim_;
  }
}

double Tensor::at(std::initializer_list<int> index) const {
  return (*this)(std::span<const int>(index.begin(), index.size()));
}

double Tensor::frobenius() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

bool Tensor::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

Tensor Tensor::permuted(std::span<const int> perm) const {
  if (perm.size() != static_cast<std::size_t>(order_))
    throw ShapeError("permutation has wrong length");
  std::vector<double> out(values_.size());
  std::vector<int> idx(order_), src(order_);
  for (std::size_t f = 0; f < values_.size(); ++f) {
    unravel(f, idx);
    for (int k = 0; k < order_; ++k) src[k] = idx[perm[k]];
    out[f] = values_[offset(src)];
  }
  return Tensor(order_, dim_, std::move(out));
}

bool Tensor::is_symmetric(double tol) const {
  if (order_ == 1) return true;
  std::vector<int> perm(order_);
  for (int k = 0; k + 1 < order_; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[k], perm[k + 1]);
    const Tensor t = permuted(perm);
    for (std::size_t f = 0; f < values_.size(); ++f)
      if (std::abs(t.values_[f] - values_[f]) > tol) return false;
  }
  return true;
}

Tensor Tensor::symmetrized() const {
  std::vector<int> perm(order_);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<double> acc(values_.size(), 0.0);
  std::size_t count = 0;
  do {
    const Tensor t = permuted(perm);
    for (std::size_t f = 0; f < acc.size(); ++f) acc[f] += t.values_[f];
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  for (double& v : acc) v /= static_cast<double>(count);
  return Tensor(order_, dim_, std::move(acc));
}

Tensor Tensor::operator+(const Tensor& other) const {
  require_same_shape(*this, other, "tensor sum");
  std::vector<double> v(values_);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += other.values_[i];
  return Tensor(order_, dim_, std::move(v));
}

Tensor Tensor::operator-(const Tensor& other) const { return *this + other * -1.0; }

Tensor Tensor::operator*(double s) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= s;
  return Tensor(order_, dim_, std::move(v));
}

IndexMask IndexMask::generalized_diagonal(std::vector<int> positions) {
  std::sort(positions.begin(), positions.end());
  if (positions.size() < 2 ||
      std::adjacent_find(positions.begin(), positions.end()) != positions.end())
    throw DomainError("generalized diagonal needs at least two distinct positions");
  IndexMask m(Kind::GeneralizedDiagonal);
  m.positions_ = std::move(positions);
  return m;
}

IndexMask IndexMask::level_set(SetPartition pattern) {
  if (!pattern.is_full()) throw DomainError("level-set mask needs a partition of [1,d]");
  IndexMask m(Kind::LevelSet);
  m.pattern_ = std::move(pattern);
  return m;
}

IndexMask IndexMask::off_diagonal() { return IndexMask(Kind::OffDiagonal); }

void IndexMask::validate(int order) const {
  switch (kind_) {
    case Kind::GeneralizedDiagonal:
      if (positions_.front() < 1 || positions_.back() > order)
        throw DomainError("generalized diagonal refers to positions outside [1," +
                          std::to_string(order) + "]");
      break;
    case Kind::LevelSet:
      if (pattern_.order() != order)
        throw DomainError("level-set pattern has order " + std::to_string(pattern_.order()) +
                          ", tensor has order " + std::to_string(order));
      break;
    case Kind::OffDiagonal:
      break;
  }
}

bool IndexMask::contains(std::span<const int> index) const {
  const std::size_t d = index.size();
  switch (kind_) {
    case Kind::GeneralizedDiagonal: {
      const int first = index[positions_.front() - 1];
      for (int k : positions_)
        if (index[k - 1] != first) return false;
      return true;
    }
    case Kind::LevelSet: {
      const auto owner = pattern_.block_of();
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k + 1; l < d; ++l)
          if ((index[k] == index[l]) != (owner[k] == owner[l])) return false;
      return true;
    }
    case Kind::OffDiagonal:
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = k + 1; l < d; ++l)
          if (index[k] == index[l]) return false;
      return true;
  }
  return false;
}

Tensor hadamard(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b, "hadamard");
  std::vector<double> v(a.values().begin(), a.values().end());
  const auto bv = b.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= bv[i];
  return Tensor(a.order(), a.dim(), std::move(v));
}

Tensor hadamard_rank_one(const Tensor& a, std::span<const std::vector<double>> factors) {
  if (factors.size() != static_cast<std::size_t>(a.order()))
    throw ShapeError("hadamard_rank_one needs one vector per axis");
  for (const auto& f : factors)
    if (f.size() != static_cast<std::size_t>(a.dim()))
      throw ShapeError("hadamard_rank_one vector length differs from tensor dim");
  std::vector<double> v(a.values().begin(), a.values().end());
  std::vector<int> idx(a.order());
  for (std::size_t f = 0; f < v.size(); ++f) {
    a.unravel(f, idx);
    for (int k = 0; k < a.order(); ++k) v[f] *= factors[k][idx[k]];
  }
  return Tensor(a.order(), a.dim(), std::move(v));
}

Tensor apply_mask(const Tensor& a, const IndexMask& mask) {
  mask.validate(a.order());
  std::vector<double> v(a.values().begin(), a.values().end());
  std::vector<int> idx(a.order());
  for (std::size_t f = 0; f < v.size(); ++f) {
    a.unravel(f, idx);
    if (!mask.contains(idx)) v[f] = 0.0;
  }
  return Tensor(a.order(), a.dim(), std::move(v));
}

double contract(const Tensor& a, const SetPartition& partition,
                std::span<const std::vector<double>> blocks) {
  check_blocks(a, partition, blocks);
  BlockWalker walk(a, partition);
  const auto vals = a.values();
  const std::size_t nb = blocks.size();
  double total = 0.0;
  for (std::size_t f = 0; f < vals.size(); ++f, walk.advance()) {
    if (vals[f] == 0.0) continue;
    double prod = vals[f];
    const auto& off = walk.offsets();
    for (std::size_t b = 0; b < nb; ++b) prod *= blocks[b][off[b]];
    total += prod;
  }
  return total;
}

std::vector<double> contract_except(const Tensor& a, const SetPartition& partition,
                                    std::span<const std::vector<double>> blocks,
                                    std::size_t skip) {
  check_blocks(a, partition, blocks);
  if (skip >= partition.size()) throw ShapeError("contract_except: block out of range");
  std::vector<double> out(block_length(a.dim(), partition[skip].size()), 0.0);
  BlockWalker walk(a, partition);
  const auto vals = a.values();
  const std::size_t nb = blocks.size();
  for (std::size_t f = 0; f < vals.size(); ++f, walk.advance()) {
    if (vals[f] == 0.0) continue;
    double prod = vals[f];
    const auto& off = walk.offsets();
    for (std::size_t b = 0; b < nb; ++b)
      if (b != skip) prod *= blocks[b][off[b]];
    out[off[skip]] += prod;
  }
  return out;
}

std::vector<double> matricize(const Tensor& a, const SetPartition& partition) {
  if (partition.size() != 2 || partition.order() != a.order() || !partition.is_full())
    throw ShapeError("matricize needs a two-block partition of [1," +
                     std::to_string(a.order()) + "]");
  const std::size_t cols = block_length(a.dim(), partition[1].size());
  std::vector<double> out(a.size());
  BlockWalker walk(a, partition);
  const auto vals = a.values();
  for (std::size_t f = 0; f < vals.size(); ++f, walk.advance()) {
    const auto& off = walk.offsets();
    out[off[0] * cols + off[1]] = vals[f];
  }
  return out;
}

}  // namespace concentro
