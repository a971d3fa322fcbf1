#include "rmtsym/laws.hpp"

#include <algorithm>
#include <cmath>

namespace rmtsym {

namespace {

// Roots of a f^2 + b f + c = 0, cancellation-safe.
std::pair<cplx, cplx> quadratic_roots(cplx a, cplx b, cplx c) {
  const cplx disc = std::sqrt(b * b - 4.0 * a * c);
  const cplx q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc)
                                                         : -0.5 * (b - disc);
  if (q == cplx(0.0)) return {cplx(0.0), cplx(0.0)};
  return {q / a, c / q};
}

// Track the Nevanlinna branch from high above the real axis down to z by
// always taking the candidate closest to the previous value.
cplx continue_from_asymptote(const std::function<std::pair<cplx, cplx>(cplx)>& roots,
                             cplx z) {
  const double target_im = z.imag();
  double y = std::max(8.0, std::abs(z) + 8.0);
  cplx cur;
  {
    const auto [r1, r2] = roots(cplx(z.real(), y));
    cur = (r1.imag() > r2.imag()) ? r1 : r2;
  }
  while (y > std::abs(target_im) * (1.0 + 1e-12)) {
    y = std::max(0.5 * y, std::abs(target_im));
    const auto [r1, r2] = roots(cplx(z.real(), std::copysign(y, 1.0)));
    cur = (std::abs(r1 - cur) <= std::abs(r2 - cur)) ? r1 : r2;
  }
  if (target_im < 0.0) cur = std::conj(cur);
  return cur;
}

// Branch selection shared by all the quadratic laws here: unique root with
// Im f > 0 in the upper half-plane, continuation fallback near the axis.
RootSelection select_nevanlinna(const std::function<std::pair<cplx, cplx>(cplx)>& roots,
                                cplx z) {
  RootSelection sel;
  sel.z = z;
  const bool lower = z.imag() < 0.0;
  const cplx zu = lower ? std::conj(z) : z;

  const auto [r1, r2] = roots(zu);
  sel.candidates = {lower ? std::conj(r1) : r1, lower ? std::conj(r2) : r2};

  constexpr double tol = 1e-12;
  const bool q1 = r1.imag() > tol, q2 = r2.imag() > tol;
  if (q1 != q2) {
    sel.rule = RootRule::PositiveImaginaryPart;
    const cplx chosen = q1 ? r1 : r2;
    sel.chosen = lower ? std::conj(chosen) : chosen;
    return sel;
  }

  sel.rule = RootRule::AsymptoticContinuation;
  const cplx chosen = continue_from_asymptote(roots, zu);
  if (std::abs(chosen - r1) > tol && std::abs(chosen - r2) > tol &&
      std::abs(chosen - r1) > 1e-9 * std::abs(chosen) &&
      std::abs(chosen - r2) > 1e-9 * std::abs(chosen))
    throw branch_error("branch-ambiguity: continuation did not land on a root");
  sel.chosen = lower ? std::conj(chosen) : chosen;
  return sel;
}

std::pair<cplx, cplx> semicircle_roots(cplx z) {
  return quadratic_roots(cplx(1.0), z, cplx(1.0));
}

std::pair<cplx, cplx> case3_roots(cplx z) {
  return quadratic_roots(cplx(2.0), z + 1.0 / z, cplx(1.0));
}

std::pair<cplx, cplx> halfscale_roots(cplx z) {
  return quadratic_roots(cplx(2.0), z, cplx(1.0));
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa,
                   double b, double fb, double c, double fc, double whole,
                   double tol, int depth) {
  const double lm = 0.5 * (a + c), rm = 0.5 * (c + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (c - a) / 6.0 * (fa + 4.0 * flm + fc);
  const double right = (b - c) / 6.0 * (fc + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, fa, c, fc, lm, flm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, c, fc, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  if (a == b) return 0.0;
  const double c = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fc = f(c);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fc + fb);
  return simpson_rec(f, a, fa, b, fb, c, fc, whole, tol, 60);
}

cplx semicircle_stieltjes(cplx z) {
  if (z.imag() == 0.0)
    throw std::domain_error("semicircle_stieltjes: real z; use the density");
  return select_nevanlinna(semicircle_roots, z).chosen;
}

double semicircle_density(double lam) {
  if (std::abs(lam) >= 2.0) return 0.0;
  return std::sqrt(4.0 - lam * lam) / (2.0 * M_PI);
}

double semicircle_cdf(double lam) {
  if (lam <= -2.0) return 0.0;
  if (lam >= 2.0) return 1.0;
  return 0.5 + lam * std::sqrt(4.0 - lam * lam) / (4.0 * M_PI) +
         std::asin(0.5 * lam) / M_PI;
}

RootSelection case3_root_selection(cplx z) {
  if (z == cplx(0.0)) throw std::domain_error("case3_stieltjes: z = 0");
  if (z.imag() == 0.0) throw std::domain_error("case3_stieltjes: real z");
  return select_nevanlinna(case3_roots, z);
}

cplx case3_stieltjes(cplx z) { return case3_root_selection(z).chosen; }

double case3_edge_inner() { return std::sqrt(2.0) - 1.0; }
double case3_edge_outer() { return std::sqrt(2.0) + 1.0; }

double case3_density(double lam) {
  const double a = std::abs(lam);
  if (a <= case3_edge_inner() || a >= case3_edge_outer()) return 0.0;
  const double rad = 6.0 - lam * lam - 1.0 / (lam * lam);
  return rad > 0.0 ? std::sqrt(rad) / (4.0 * M_PI) : 0.0;
}

double case3_density_alt_sign(double lam) {
  const double a = std::abs(lam);
  if (a < case3_edge_inner() || a > case3_edge_outer()) return 0.0;
  const double rad = 6.0 - lam * lam + 1.0 / (lam * lam);
  return rad > 0.0 ? std::sqrt(rad) / (4.0 * M_PI) : 0.0;
}

double case3_density_from_stieltjes(double lam) {
  const double eps = 1e-4;
  const double t1 = case3_stieltjes(cplx(lam, eps)).imag() / M_PI;
  const double t2 = case3_stieltjes(cplx(lam, 0.5 * eps)).imag() / M_PI;
  const double t3 = case3_stieltjes(cplx(lam, 0.25 * eps)).imag() / M_PI;
  const double a1 = 2.0 * t2 - t1;
  const double a2 = 2.0 * t3 - t2;
  return (4.0 * a2 - a1) / 3.0;
}

double atom_residue_at_zero(const std::function<cplx(cplx)>& stieltjes) {
  const double ys[3] = {1e-3, 1e-4, 1e-5};
  double t[3];
  for (int i = 0; i < 3; ++i) t[i] = ys[i] * stieltjes(cplx(0.0, ys[i])).imag();
  // first-order Richardson in y cancels the linear term left by the
  // continuous part of the measure
  const double r12 = (10.0 * t[1] - t[0]) / 9.0;
  const double r23 = (10.0 * t[2] - t[1]) / 9.0;
  if (std::abs(r23 - r12) > 1e-4)
    throw std::runtime_error("atom residue extrapolation did not settle");
  return r23;
}

double case3_atom_residue() { return atom_residue_at_zero(case3_stieltjes); }

namespace {

// cdf of an even two-interval density plus an optional atom at 0, by
// adaptive quadrature between the support breakpoints.
std::function<double(double)> piecewise_cdf(std::function<double(double)> density,
                                            std::vector<double> edges,
                                            double atom_mass, double tol) {
  return [density = std::move(density), edges = std::move(edges), atom_mass,
          tol](double lam) {
    double acc = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); p += 2) {
      const double lo = edges[p], hi = edges[p + 1];
      if (lam >= hi)
        acc += adaptive_simpson(density, lo, hi, tol);
      else if (lam > lo) {
        acc += adaptive_simpson(density, lo, lam, tol);
        break;
      } else
        break;
    }
    if (lam >= 0.0) acc += atom_mass;
    return std::min(1.0, acc);
  };
}

}  // namespace

SpectralLaw semicircle_law() {
  SpectralLaw law;
  law.name = "semicircle";
  law.density = semicircle_density;
  law.cdf = semicircle_cdf;
  law.stieltjes = semicircle_stieltjes;
  law.edges = {-2.0, 2.0};
  return law;
}

SpectralLaw case3_law() {
  SpectralLaw law;
  law.name = "case3";
  const double atom = case3_atom_residue();
  law.density = case3_density;
  law.stieltjes = case3_stieltjes;
  law.atoms = {{0.0, atom}};
  law.edges = {-case3_edge_outer(), -case3_edge_inner(), case3_edge_inner(),
               case3_edge_outer()};
  law.cdf = piecewise_cdf(case3_density, law.edges, atom, 1e-10);
  return law;
}

SpectralLaw case3_block_law() {
  SpectralLaw law;
  law.name = "case3-block";
  const double edge = 2.0 * std::sqrt(2.0);
  law.density = [](double lam) {
    if (std::abs(lam) >= 2.0 * std::sqrt(2.0)) return 0.0;
    return 0.5 * std::sqrt(8.0 - lam * lam) / (4.0 * M_PI);
  };
  law.cdf = [](double lam) {
    const double sq2 = std::sqrt(2.0);
    return 0.5 * semicircle_cdf(lam / sq2) + (lam >= 0.0 ? 0.5 : 0.0);
  };
  law.stieltjes = [](cplx z) -> cplx {
    if (z.imag() == 0.0)
      throw std::domain_error("block-law stieltjes: real z");
    const cplx h = select_nevanlinna(halfscale_roots, z).chosen;
    return 0.5 * (h - 1.0 / z);
  };
  law.atoms = {{0.0, 0.5}};
  law.edges = {-edge, edge};
  return law;
}

double law_moment(const SpectralLaw& law, int k) {
  if (k < 0 || k > 8)
    throw std::invalid_argument("law_moment: unsupported order " +
                                std::to_string(k));
  double acc = 0.0;
  for (const auto& [loc, mass] : law.atoms) acc += std::pow(loc, k) * mass;
  for (std::size_t p = 0; p + 1 < law.edges.size(); p += 2) {
    acc += adaptive_simpson(
        [&](double lam) { return std::pow(lam, k) * law.density(lam); },
        law.edges[p], law.edges[p + 1], 1e-9);
  }
  return acc;
}

}  // namespace rmtsym
