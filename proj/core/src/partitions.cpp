#include "concentro/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "concentro/errors.hpp"

namespace concentro {

namespace {

void canonicalize(std::vector<Block>& blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

std::vector<std::string_view> split(std::string_view text, std::string_view sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + sep.size();
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

SetPartition::SetPartition(int order, std::vector<Block> blocks)
    : order_(order), blocks_(std::move(blocks)) {
  if (order_ < 0) throw DomainError("partition order must be nonnegative");
  std::vector<bool> seen(static_cast<std::size_t>(order_) + 1, false);
  for (const auto& b : blocks_) {
    if (b.empty()) throw DomainError("partition block is empty");
    for (int k : b) {
      if (k < 1 || k > order_)
        throw DomainError("partition index " + std::to_string(k) + " outside [1," +
                         std::to_string(order_) + "]");
      if (seen[k]) throw DomainError("partition index " + std::to_string(k) + " repeated");
      seen[k] = true;
    }
  }
  canonicalize(blocks_);
}

SetPartition SetPartition::from_labels(const std::vector<int>& labels) {
  const int d = static_cast<int>(labels.size());
  int nblocks = 0;
  for (int l : labels) nblocks = std::max(nblocks, l + 1);
  std::vector<Block> blocks(static_cast<std::size_t>(nblocks));
  for (int k = 0; k < d; ++k) blocks[labels[k]].push_back(k + 1);
  return SetPartition(d, std::move(blocks));
}

SetPartition SetPartition::parse(std::string_view text, int order) {
  text = trim(text);
  std::vector<Block> blocks;
  if (!text.empty()) {
    for (auto part : split(text, "|")) {
      Block b;
      for (auto tok : split(part, ",")) {
        tok = trim(tok);
        int v = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
          throw ParseError("bad partition token '" + std::string(tok) + "' in \"" +
                           std::string(text) + "\"");
        b.push_back(v);
      }
      blocks.push_back(std::move(b));
    }
  }
  return SetPartition(order, std::move(blocks));
}

std::vector<int> SetPartition::ground() const {
  std::vector<int> g;
  for (const auto& b : blocks_) g.insert(g.end(), b.begin(), b.end());
  std::sort(g.begin(), g.end());
  return g;
}

bool SetPartition::is_full() const {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size();
  return n == static_cast<std::size_t>(order_);
}

std::vector<int> SetPartition::block_of() const {
  std::vector<int> out(static_cast<std::size_t>(order_), -1);
  for (std::size_t j = 0; j < blocks_.size(); ++j)
    for (int k : blocks_[j]) out[k - 1] = static_cast<int>(j);
  return out;
}

bool SetPartition::refines(const SetPartition& coarser) const {
  if (order_ != coarser.order_) return false;
  const auto owner = coarser.block_of();
  for (const auto& b : blocks_) {
    const int o = owner[b.front() - 1];
    if (o < 0) return false;
    for (int k : b)
      if (owner[k - 1] != o) return false;
  }
  return true;
}

SetPartition SetPartition::relabeled(const std::vector<int>& perm) const {
  if (perm.size() != static_cast<std::size_t>(order_))
    throw ShapeError("relabeling permutation has wrong length");
  std::vector<Block> blocks = blocks_;
  for (auto& b : blocks)
    for (int& k : b) k = perm[k - 1];
  return SetPartition(order_, std::move(blocks));
}

std::string SetPartition::to_string() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    if (j) os << '|';
    for (std::size_t i = 0; i < blocks_[j].size(); ++i) {
      if (i) os << ',';
      os << blocks_[j][i];
    }
  }
  return os.str();
}

SplitPartition::SplitPartition(int d, SetPartition in, SetPartition out)
    : order(d), inner(std::move(in)), outer(std::move(out)) {
  if (inner.order() != d || outer.order() != d)
    throw ShapeError("split partition sides must share the order");
  if (!merged().is_full())
    throw ParseError("split partition " + to_string() + " does not cover [1," +
                     std::to_string(d) + "]");
}

SplitPartition SplitPartition::parse(std::string_view text, int order) {
  const auto pos = text.find("||");
  if (pos == std::string_view::npos)
    throw ParseError("split partition needs '||' between inner and outer: \"" +
                     std::string(text) + "\"");
  return SplitPartition(order, SetPartition::parse(text.substr(0, pos), order),
                        SetPartition::parse(text.substr(pos + 2), order));
}

SetPartition SplitPartition::merged() const {
  std::vector<Block> blocks = inner.blocks();
  blocks.insert(blocks.end(), outer.blocks().begin(), outer.blocks().end());
  return SetPartition(order, std::move(blocks));
}

std::string SplitPartition::to_string() const {
  return inner.to_string() + "||" + outer.to_string();
}

std::size_t bell_number(int d) {
  if (d < 0) throw DomainError("bell_number: negative argument");
  // Bell triangle.
  std::vector<std::size_t> row{1};
  for (int i = 0; i < d; ++i) {
    std::vector<std::size_t> next{row.back()};
    for (std::size_t v : row) next.push_back(next.back() + v);
    row = std::move(next);
  }
  return row.front();
}

std::vector<SetPartition> enumerate_partitions_of(const std::vector<int>& ground, int order) {
  const std::size_t n = ground.size();
  if (n == 0) return {SetPartition(order)};
  std::vector<SetPartition> out;
  // Restricted-growth strings: labels[0] = 0, labels[i] ≤ 1 + max(labels[0..i)).
  std::vector<int> labels(n, 0), prefix_max(n, 0);
  while (true) {
    std::vector<Block> blocks;
    for (std::size_t i = 0; i < n; ++i) {
      if (static_cast<std::size_t>(labels[i]) >= blocks.size()) blocks.resize(labels[i] + 1);
      blocks[labels[i]].push_back(ground[i]);
    }
    out.emplace_back(order, std::move(blocks));

    std::size_t i = n - 1;
    while (i > 0 && labels[i] > prefix_max[i - 1]) --i;
    if (i == 0) break;
    ++labels[i];
    prefix_max[i] = std::max(prefix_max[i - 1], labels[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      labels[j] = 0;
      prefix_max[j] = prefix_max[i];
    }
  }
  return out;
}

std::vector<SetPartition> enumerate_partitions(int d) {
  if (d < 1 || d > 6)
    throw DomainError("enumerate_partitions: d=" + std::to_string(d) + " outside [1,6]");
  std::vector<int> ground(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) ground[k] = k + 1;
  return enumerate_partitions_of(ground, d);
}

std::vector<SplitPartition> enumerate_splits(int d) {
  if (d < 1) throw DomainError("enumerate_splits: d must be positive");
  if (d > 3) throw Unsupported("enumerate_splits: only d <= 3 is supported");
  std::vector<SplitPartition> out;
  for (int mask = (1 << d) - 1; mask >= 0; --mask) {
    std::vector<int> in, rest;
    for (int k = 0; k < d; ++k) (mask >> k & 1 ? in : rest).push_back(k + 1);
    for (const auto& j : enumerate_partitions_of(in, d))
      for (const auto& k : enumerate_partitions_of(rest, d)) out.emplace_back(d, j, k);
  }
  return out;
}

}  // namespace concentro
