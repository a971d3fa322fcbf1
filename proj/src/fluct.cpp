#include "rmtsym/fluct.hpp"

#include <cmath>

#include "rmtsym/eig.hpp"
#include "rmtsym/laws.hpp"

namespace rmtsym {

namespace {

cplx semicircle_derivative(cplx z) {
  const cplx f = semicircle_stieltjes(z);
  return -f / (z + 2.0 * f);
}

cplx case3_derivative(cplx z) {
  const cplx f = case3_stieltjes(z);
  return -f * (1.0 - 1.0 / (z * z)) / (z + 1.0 / z + 4.0 * f);
}

}  // namespace

cplx S_goe(cplx z1, cplx z2) {
  if (z1.imag() == 0.0 || z2.imag() == 0.0)
    throw std::domain_error("S_goe: probes must be off the real axis");
  const cplx f1 = semicircle_stieltjes(z1);
  const cplx f2 = semicircle_stieltjes(z2);
  const cplx ratio = (std::abs(z1 - z2) < 1e-6)
                         ? semicircle_derivative(z1)
                         : (f1 - f2) / (z1 - z2);
  return 2.0 / ((1.0 - f1 * f1) * (1.0 - f2 * f2)) * ratio * ratio;
}

cplx S_gue(cplx z1, cplx z2) { return 0.5 * S_goe(z1, z2); }

cplx C_case3(cplx z1, cplx z2) {
  if (z1.imag() == 0.0 || z2.imag() == 0.0)
    throw std::domain_error("C_case3: probes must be off the real axis");
  if (std::abs(z1 - z2) < 1e-6)
    throw std::domain_error("C_case3: coincident probes (formula diverges)");
  const cplx f1 = case3_stieltjes(z1);
  const cplx f2 = case3_stieltjes(z2);
  const cplx d = z1 - z2;
  const cplx bracket = 2.0 * (f1 * f1 + f2 * f2) / (f1 * f2 * d * d) +
                       (z2 * f2 + z1 * f1) / (2.0 * z1 * z1 * z2 * z2 * f1 * f2);
  const cplx p1 = z1 + 1.0 / z1 + 4.0 * f1;
  const cplx p2 = z2 + 1.0 / z2 + 4.0 * f2;
  return bracket / (p1 * p2);
}

cplx tr_g2_limit(LimitLaw law, cplx z, bool as_printed) {
  if (law == LimitLaw::Semicircle) {
    if (!as_printed) return semicircle_derivative(z);
    const cplx g = semicircle_stieltjes(z);
    return g / (1.0 - g * g);
  }
  if (!as_printed) return case3_derivative(z);
  const cplx f = case3_stieltjes(z);
  const cplx zinv2 = 1.0 / (z * z);
  return -(f / z) * (1.0 - zinv2) / (1.0 + f / z + zinv2);
}

int McResult::probe_index(cplx z) const {
  for (std::size_t i = 0; i < probes.size(); ++i)
    if (probes[i] == z) return static_cast<int>(i);
  throw std::out_of_range("probe not part of this run");
}

McResult mc_run(const EnsembleSpec& spec, const std::vector<cplx>& probes,
                int replicates, const McExtras& extras) {
  validate_spec(spec);
  if (replicates < 2)
    throw std::invalid_argument("mc_run: needs at least 2 replicates");
  for (const cplx& z : probes)
    if (z.imag() == 0.0)
      throw std::domain_error("mc_run: probe on the real axis");

  McResult out;
  out.spec = spec;
  out.probes = probes;
  out.extras = extras;
  out.records.resize(replicates);

  const Ensemble ens(spec);
  const int m = spec.side();
  const bool structured_ok =
      !extras.g_hat && (spec.cls == SymmetryClass::Central2 ||
                        spec.cls == SymmetryClass::RowMirror3);

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < replicates; ++r) {
    const HermitianMatrix w = ens.sample(r);
    Spectrum s;
    if (extras.g_hat)
      s = eigh(w, true);
    else if (structured_ok)
      s = eigh_structured(w, spec.cls);
    else
      s = eigh(w, false);

    ReplicateRecord rec;
    rec.replicate = r;
    rec.size_2n = m;
    rec.cls = spec.cls;
    rec.g.resize(probes.size());
    for (std::size_t p = 0; p < probes.size(); ++p)
      rec.g[p] = stieltjes_from_spectrum(s, probes[p]);

    if (extras.tr_g2) {
      rec.tr_g2.resize(probes.size());
      for (std::size_t p = 0; p < probes.size(); ++p)
        rec.tr_g2[p] = trace_resolvent_square(s, probes[p]);
    }
    if (extras.g_hat) {
      // anti-trace weights tau_i = sum_p v_i(p) conj(v_i(2n-1-p))
      std::vector<cplx> tau(m);
      for (int i = 0; i < m; ++i) {
        const cplx* v = &s.basis[static_cast<std::size_t>(i) * m];
        cplx acc(0.0);
        for (int p = 0; p < m; ++p) acc += v[p] * std::conj(v[m - 1 - p]);
        tau[i] = acc;
      }
      rec.g_hat.resize(probes.size());
      for (std::size_t p = 0; p < probes.size(); ++p) {
        cplx acc(0.0);
        for (int i = 0; i < m; ++i) acc += tau[i] / (s.eigenvalues[i] - probes[p]);
        rec.g_hat[p] = acc / static_cast<double>(m);
      }
    }
    if (extras.atom_count) {
      int count = 0;
      for (double lam : s.eigenvalues)
        if (std::abs(lam) < extras.atom_tol) ++count;
      rec.atom_count = count;
    }
    if (extras.max_abs)
      rec.max_abs_eig = std::max(std::abs(s.eigenvalues.front()),
                                 std::abs(s.eigenvalues.back()));
    if (extras.eigenvalues) rec.eigenvalues = s.eigenvalues;

    out.records[r] = std::move(rec);
  }
  return out;
}

namespace {

MeanEstimate jackknife_mean(const std::vector<cplx>& xs) {
  const int r = static_cast<int>(xs.size());
  if (r < 2) throw std::invalid_argument("mean estimate: needs >= 2 records");
  cplx sum(0.0);
  for (const cplx& x : xs) sum += x;
  const cplx mean = sum / static_cast<double>(r);

  double var_re = 0.0, var_im = 0.0;
  for (const cplx& x : xs) {
    const cplx leave = (sum - x) / static_cast<double>(r - 1);
    var_re += (leave.real() - mean.real()) * (leave.real() - mean.real());
    var_im += (leave.imag() - mean.imag()) * (leave.imag() - mean.imag());
  }
  const double scale = static_cast<double>(r - 1) / r;
  MeanEstimate est;
  est.value = mean;
  est.stderr_re = std::sqrt(scale * var_re);
  est.stderr_im = std::sqrt(scale * var_im);
  est.replicates = r;
  return est;
}

}  // namespace

double MeanEstimate::stderr_total() const {
  return std::hypot(stderr_re, stderr_im);
}

MeanEstimate mc_mean(const McResult& result, cplx z) {
  const int p = result.probe_index(z);
  std::vector<cplx> xs(result.records.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = result.records[i].g[p];
  return jackknife_mean(xs);
}

MeanEstimate mc_mean_g_hat(const McResult& result, cplx z) {
  if (!result.extras.g_hat)
    throw std::out_of_range("g_hat was not recorded in this run");
  const int p = result.probe_index(z);
  std::vector<cplx> xs(result.records.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = result.records[i].g_hat[p];
  return jackknife_mean(xs);
}

CovarianceEstimate covariance_of_series(const std::vector<cplx>& a,
                                        const std::vector<cplx>& b, cplx z1,
                                        cplx z2) {
  const int r = static_cast<int>(a.size());
  if (r < 16)
    throw std::invalid_argument("covariance estimate: needs >= 16 records");
  cplx s1(0.0), s2(0.0), s12(0.0);
  for (int i = 0; i < r; ++i) {
    s1 += a[i];
    s2 += b[i];
    s12 += a[i] * b[i];
  }
  const double rd = r;
  const cplx value = s12 / rd - (s1 / rd) * (s2 / rd);

  // delete-one jackknife of the product-moment estimator
  cplx jk_sum(0.0);
  std::vector<cplx> jk(r);
  const double rm1 = rd - 1.0;
  for (int i = 0; i < r; ++i) {
    const cplx m12 = (s12 - a[i] * b[i]) / rm1;
    const cplx m1 = (s1 - a[i]) / rm1;
    const cplx m2 = (s2 - b[i]) / rm1;
    jk[i] = m12 - m1 * m2;
    jk_sum += jk[i];
  }
  const cplx jk_mean = jk_sum / rd;
  double var_re = 0.0, var_im = 0.0;
  for (const cplx& j : jk) {
    var_re += (j.real() - jk_mean.real()) * (j.real() - jk_mean.real());
    var_im += (j.imag() - jk_mean.imag()) * (j.imag() - jk_mean.imag());
  }
  const double scale = rm1 / rd;

  CovarianceEstimate est;
  est.z1 = z1;
  est.z2 = z2;
  est.value = value;
  est.stderr = std::hypot(std::sqrt(scale * var_re), std::sqrt(scale * var_im));
  est.replicates = r;
  return est;
}

CovarianceEstimate mc_covariance(const McResult& result, cplx z1, cplx z2) {
  const int p1 = result.probe_index(z1);
  const int p2 = result.probe_index(z2);
  std::vector<cplx> a(result.records.size()), b(result.records.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = result.records[i].g[p1];
    b[i] = result.records[i].g[p2];
  }
  return covariance_of_series(a, b, z1, z2);
}

double ks_distance(const std::vector<double>& sorted_samples,
                   const std::function<double(double)>& cdf) {
  const std::size_t n = sorted_samples.size();
  if (n == 0) throw std::domain_error("ks_distance: empty sample");
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && sorted_samples[i] < sorted_samples[i - 1])
      throw std::invalid_argument("ks_distance: samples not sorted");
    const double f = cdf(sorted_samples[i]);
    const double hi = static_cast<double>(i + 1) / n - f;
    const double lo = f - static_cast<double>(i) / n;
    worst = std::max(worst, std::max(hi, lo));
  }
  return worst;
}

double variance_slope(const std::vector<int>& sizes_2n,
                      const std::vector<double>& variances) {
  if (sizes_2n.size() < 3 || sizes_2n.size() != variances.size())
    throw std::domain_error("variance_slope: needs >= 3 matching sizes");
  const std::size_t n = sizes_2n.size();
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (variances[i] <= 0.0)
      throw std::domain_error("variance_slope: nonpositive variance");
    const double x = std::log(static_cast<double>(sizes_2n[i]));
    const double y = std::log(variances[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double nd = static_cast<double>(n);
  return (nd * sxy - sx * sy) / (nd * sxx - sx * sx);
}

}  // namespace rmtsym
