#pragma once

#include <span>
#include <vector>

#include "concentro/montecarlo.hpp"
#include "concentro/poly.hpp"
#include "concentro/rng.hpp"

namespace concentro {

/// Entry variances of a Wigner matrix. UnitVariance: every entry on and above
/// the diagonal has variance 1. Goe: off-diagonal 1, diagonal 2.
enum class WignerConvention { UnitVariance, Goe };

std::string to_string(WignerConvention c);

struct WignerSpec {
  int n = 0;
  WignerConvention convention = WignerConvention::UnitVariance;
  double L = 1.0;  // log-Sobolev constant of the entry law
};

/// Symmetric Gaussian matrix, row-major n×n.
std::vector<double> sample_wigner(const WignerSpec& spec, CounterRng& rng);

/// All eigenvalues of a symmetric row-major n×n matrix, ascending, by cyclic
/// Jacobi rotations. Throws DomainError on asymmetry beyond 1e-12 (relative
/// to the largest entry) or n > 400.
std::vector<double> eigenvalues_symmetric(std::span<const double> m, int n);

struct LinStatResult {
  double z = 0.0;  // Σ f(λ_i / √n)
  std::vector<double> eigenvalues;
};

LinStatResult linear_statistic(const Polynomial& f, std::span<const double> m, int n);

/// ∫ g dρ for the semicircle law on [-2, 2]; g in one variable, degree ≤ 20.
double semicircle_integral(const Polynomial& g);

/// max |g(x)| over `points` equally spaced x in [-K, K].
double grid_sup(const Polynomial& g, double K, int points = 10000);

struct LinStatBound {
  double sobolev_term = 0.0;   // ∫ f'² dρ
  double second_sup = 0.0;     // grid sup of |f''| on [-K, K]
  double exponent = 0.0;       // the min inside the exponential, before 1/C_L
  double tail = 0.0;
};

/// 2 exp(-(1/C_L) min(t² / (∫f'²dρ + n^{-2/3} ‖f''‖²), n t / ‖f''‖)).
LinStatBound linstat_tail_bound(const Polynomial& f, int n, double t, double C_L = 1.0,
                                double K = 4.0);

struct HoffmanWielandt {
  double lhs = 0.0;  // Σ (λ_i(B) - λ_i(C))², sorted spectra
  double rhs = 0.0;  // ‖B - C‖_F²
  bool holds = false;
};

HoffmanWielandt hoffman_wielandt(std::span<const double> b, std::span<const double> c, int n);

struct WignerTailRow {
  double t = 0.0;
  TailEstimate empirical;
  double bound = 0.0;
};

struct WignerExperiment {
  int n = 0;
  long replicas = 0;
  double mean_z = 0.0;
  double z_std_error = 0.0;
  double sobolev_empirical = 0.0;  // mean of (1/n) Σ f'(λ_i/√n)²
  double sobolev_std_error = 0.0;
  double sobolev_limit = 0.0;      // ∫ f'² dρ
  std::vector<WignerTailRow> rows;
};

/// cfg.N replicas (≤ 10^4) of n×n Wigner matrices, n ≤ 200.
WignerExperiment wigner_experiment(const Polynomial& f, const WignerSpec& spec,
                                   const std::vector<double>& t_list, const MCConfig& cfg,
                                   double C_L = 1.0, double K = 4.0);

}  // namespace concentro
