#pragma once

#include <cstdint>
#include <functional>

#include "rmtsym/core.hpp"
#include "rmtsym/sampler.hpp"

namespace rmtsym {

/// GOE-type covariance coefficient of the Stieltjes-transform fluctuations:
///   S(z1,z2) = 2 ((f1-f2)/(z1-z2))^2 / ((1-f1^2)(1-f2^2)),  f = f_sc.
/// Below |z1-z2| = 1e-6 the difference quotient switches to the exact
/// confluent limit f'(z1) = -f/(z+2f). Symmetric in its arguments.
cplx S_goe(cplx z1, cplx z2);

/// GUE-type coefficient: S_goe / 2.
cplx S_gue(cplx z1, cplx z2);

/// Case-3 covariance coefficient in its as-printed form (reports label
/// it paper-printed):
///   ( 2(f1^2+f2^2)/(f1 f2 (z1-z2)^2)
///     + (z2 f2 + z1 f1)/(2 z1^2 z2^2 f1 f2) )
///   * prod_k (z_k + 1/z_k + 4 f(z_k))^{-1}
/// with f the case-3 solution. Diverges at coincident points; calls with
/// |z1-z2| < 1e-6 raise std::domain_error.
cplx C_case3(cplx z1, cplx z2);

enum class LimitLaw { Semicircle, Case3 };

/// Limit of (1/2n) Tr G^2(z). The default is the exact derivative of the
/// law's Stieltjes transform by implicit differentiation; as_printed selects
/// the alternative right-hand sides kept for comparison output only.
cplx tr_g2_limit(LimitLaw law, cplx z, bool as_printed = false);

struct McExtras {
  bool g_hat = false;       // anti-trace of G per probe (needs the eigenbasis)
  bool tr_g2 = false;       // (1/2n) Tr G^2 per probe
  bool atom_count = false;  // #{ |lambda| < atom_tol }
  bool max_abs = false;     // spectral radius
  bool eigenvalues = false; // keep the full spectrum
  double atom_tol = 1e-8;
};

/// Per-replicate measurements; vectors are aligned with the probe list of
/// the run that produced them.
struct ReplicateRecord {
  std::uint64_t replicate = 0;
  int size_2n = 0;
  SymmetryClass cls = SymmetryClass::Plain;
  std::vector<cplx> g;
  std::vector<cplx> g_hat;
  std::vector<cplx> tr_g2;
  int atom_count = -1;
  double max_abs_eig = 0.0;
  std::vector<double> eigenvalues;
};

struct McResult {
  EnsembleSpec spec;
  std::vector<cplx> probes;
  McExtras extras;
  std::vector<ReplicateRecord> records;

  int probe_index(cplx z) const;  // throws std::out_of_range when missing
};

/// Runs `replicates` independent draws; replicate r is fully determined by
/// (spec.master_seed, r) so the schedule and worker count never matter.
/// Replicates execute in parallel under OpenMP; records land at their own
/// index. Uses the structured eigensolver where the class admits one, except
/// when the eigenbasis is required.
McResult mc_run(const EnsembleSpec& spec, const std::vector<cplx>& probes,
                int replicates, const McExtras& extras = {});

struct MeanEstimate {
  cplx value;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  int replicates = 0;
  double stderr_total() const;
};

/// Sample mean of g(z) with delete-one jackknife errors per component.
MeanEstimate mc_mean(const McResult& result, cplx z);
MeanEstimate mc_mean_g_hat(const McResult& result, cplx z);

struct CovarianceEstimate {
  cplx z1, z2;
  cplx value;       // (1/R) sum g_i(z1) g_i(z2) - mean(z1) mean(z2)
  double stderr = 0.0;  // hypot of the component jackknife errors
  int replicates = 0;
};

/// F_n estimator: non-conjugated product moment with delete-one jackknife.
/// Requires at least 16 records.
CovarianceEstimate mc_covariance(const McResult& result, cplx z1, cplx z2);
CovarianceEstimate covariance_of_series(const std::vector<cplx>& a,
                                        const std::vector<cplx>& b, cplx z1,
                                        cplx z2);

/// Kolmogorov-Smirnov distance between a sorted sample and a target cdf.
double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf);

/// Least-squares slope of log(variance) against log(size).
double variance_slope(const std::vector<int>& sizes_2n,
                      const std::vector<double>& variances);

}  // namespace rmtsym
