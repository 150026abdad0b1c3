#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "concentro/partitions.hpp"
#include "concentro/tensor.hpp"

namespace concentro {

struct NormOptions {
  int restarts = 64;
  double tol = 1e-10;
  int max_sweeps = 500;
  std::uint64_t seed = 0;
  int workers = 1;
  /// Optional extra starting point (one vector per block), tried before the
  /// random restarts. Ignored when empty.
  std::vector<std::vector<double>> warm_start;
  /// Run alternating maximization even when an exact route exists.
  bool force_als = false;

  void validate() const;
};

enum class NormMethod { Frobenius, MatricizationSpectral, Als };

std::string_view to_string(NormMethod m);

struct NormResult {
  double value = 0.0;
  std::vector<std::vector<double>> certificate;
  NormMethod method = NormMethod::Frobenius;
  int sweeps_used = 0;
  int restarts_used = 0;

  /// ALS values are attained by the certificate but may miss the supremum.
  bool lower_bound() const { return method == NormMethod::Als; }
};

/// sup of the multilinear form over unit block vectors. Exact for one or two
/// blocks, best-of-restarts alternating maximization otherwise.
NormResult norm_J(const Tensor& a, const SetPartition& partition, const NormOptions& opts = {});

/// Independent check for tiny instances: random sphere points, each polished
/// by up to 50 alternating sweeps. Needs sum of block lengths ≤ 64.
double norm_J_bruteforce(const Tensor& a, const SetPartition& partition, long npoints,
                         std::uint64_t seed);

struct MixedNormResult {
  double value = 0.0;
  /// One supremum per choice of distinguished coordinates, in odometer order
  /// over the outer blocks.
  std::vector<double> terms;
};

/// ‖A‖_{J|K}: inner blocks on the unit ℓ2 sphere, outer blocks in the unit
/// ball of ℓα over the distinguished coordinate of ℓ2 over the rest, summed
/// over every choice of distinguished coordinates. Order ≤ 3, α ∈ [1, 2].
MixedNormResult mixed_norm_terms(const Tensor& a, const SplitPartition& split, double alpha,
                                 const NormOptions& opts = {});

double mixed_norm(const Tensor& a, const SplitPartition& split, double alpha,
                  const NormOptions& opts = {});

}  // namespace concentro
