#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "concentro/bounds.hpp"
#include "concentro/poly.hpp"
#include "concentro/rng.hpp"
#include "concentro/tensor.hpp"

namespace concentro {

struct MCConfig {
  long N = 100000;
  std::uint64_t seed = 0;
  std::vector<double> p_list{2.0};
  /// Samples per chunk; chunk c draws from stream (seed, c).
  long batch = 8192;
  int workers = 1;

  /// Largest admissible moment order, ln(N)/1.5.
  double max_p() const;
  /// Checks N, batch, workers and every p in p_list.
  void validate() const;
};

struct MomentEstimate {
  double p = 2.0;
  double value = 0.0;
  double std_error = 0.0;
  long N = 0;
};

struct TailEstimate {
  double t = 0.0;
  double prob = 0.0;
  double lower = 0.0;  // 95% Wilson interval
  double upper = 0.0;
  long count = 0;
  long N = 0;
};

std::vector<double> sample_vector(const ProductDistribution& dist, CounterRng& rng);

/// cfg.N rows of `width` values, row j filled by one call of `draw`. Same
/// chunking and stream rules as sample_values.
std::vector<double> sample_rows(
    const std::function<void(CounterRng&, std::span<double>)>& draw, int width,
    const MCConfig& cfg);

/// cfg.N draws of `draw`, chunked by cfg.batch and spread over cfg.workers
/// threads. The output does not depend on the worker count.
std::vector<double> sample_values(const std::function<double(CounterRng&)>& draw,
                                  const MCConfig& cfg);

/// f(X) for cfg.N independent X ~ dist.
std::vector<double> sample_polynomial(const Polynomial& f, const ProductDistribution& dist,
                                      const MCConfig& cfg);

/// (mean |z - z̄|^p)^{1/p} for each p, with delta-method standard errors.
std::vector<MomentEstimate> centered_moments(std::span<const double> z,
                                             std::span<const double> p_list);

std::vector<MomentEstimate> empirical_moment(const Polynomial& f, const ProductDistribution& dist,
                                             const MCConfig& cfg);

TailEstimate tail_of(std::span<const double> z, double t);
TailEstimate empirical_tail(const Polynomial& f, const ProductDistribution& dist, double t,
                            const MCConfig& cfg);

enum class ChaosMode { Decoupled, Undecoupled };

/// Throws DomainError unless `a` is symmetric and vanishes on every
/// generalized diagonal.
void validate_tetrahedral(const Tensor& a);

/// Empirical ‖Z‖_p of the Gaussian chaos ⟨A, G_1⊗...⊗G_d⟩ (decoupled) or
/// Σ a_i g_{i1}...g_{id} (undecoupled).
MomentEstimate chaos_moment(const Tensor& a, ChaosMode mode, double p, const MCConfig& cfg);

struct SandwichRow {
  double p = 0.0;
  double empirical = 0.0;
  double std_error = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
  bool pass = false;
};

/// Ratio of empirical ‖f - Ef‖_p to bound(p) for each p in cfg.p_list;
/// pass means the ratio lies in [1/window, window].
std::vector<SandwichRow> sandwich_check(const Polynomial& f, const ProductDistribution& dist,
                                        const MCConfig& cfg,
                                        const std::function<BoundReport(double)>& bound,
                                        double window = 10.0);

struct HermiteRow {
  long n_terms = 0;
  double mean_sq = 0.0;  // empirical E Δ²
  double std_error = 0.0;
  double exact = 0.0;  // closed form when known (d ≤ 2), NaN otherwise
};

/// Empirical E[(h_d(g) - d! N^{-d/2} e_d(g_1..g_N))²] with g = N^{-1/2} Σ g_j,
/// cfg.N replicates per entry of n_list.
std::vector<HermiteRow> hermite_tetrahedral_convergence(int d, std::span<const long> n_list,
                                                        const MCConfig& cfg);

struct SobolevRow {
  double p = 0.0;
  double lhs = 0.0;  // ‖f - Ef‖_p
  double rhs = 0.0;  // L p^γ ‖|∇f|‖_p
  double ratio = 0.0;
  bool pass = false;
};

std::vector<SobolevRow> sobolev_check(const ProductDistribution& dist, const Polynomial& f,
                                      const MCConfig& cfg, double max_ratio = 1.0);

}  // namespace concentro
