#pragma once

#include <functional>

#include "rmtsym/core.hpp"

namespace rmtsym {

struct branch_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RootRule { PositiveImaginaryPart, AsymptoticContinuation };

/// Record of one branch choice among the roots of a defining polynomial.
struct RootSelection {
  cplx z;
  std::vector<cplx> candidates;
  cplx chosen;
  RootRule rule = RootRule::PositiveImaginaryPart;
};

/// Stieltjes transform of the semicircle law: the root of f^2 + z f + 1 = 0
/// with Im f > 0 in the upper half-plane, conjugate-symmetric below, and
/// z f -> -1 at infinity. Throws std::domain_error for real z.
cplx semicircle_stieltjes(cplx z);

/// (2 pi)^{-1} sqrt(4 - lam^2) on [-2, 2].
double semicircle_density(double lam);
double semicircle_cdf(double lam);

/// Nevanlinna solution of 2 f^2 + (z + 1/z) f + 1 = 0. Exactly one root
/// qualifies away from the real axis; near it the branch is tracked by
/// continuation from the -1/z asymptote, and a still-ambiguous selection
/// raises branch_error.
cplx case3_stieltjes(cplx z);
RootSelection case3_root_selection(cplx z);

double case3_edge_inner();  // sqrt(3 - 2 sqrt 2) = sqrt 2 - 1
double case3_edge_outer();  // sqrt(3 + 2 sqrt 2) = sqrt 2 + 1

/// Continuous density sqrt(6 - lam^2 - lam^-2)/(4 pi) on the two support
/// intervals; vanishes at the edges.
double case3_density(double lam);

/// Sign variant sqrt(6 - lam^2 + lam^-2)/(4 pi) on the same support, kept
/// only for comparison output: it does not vanish at the edges and is not
/// consistent with the defining equation.
double case3_density_alt_sign(double lam);

/// Alternative as-printed atom weight, reported for comparison only.
constexpr double kCase3AltAtomMass = 0.25;

/// Density recovered from the solved equation as Im f(lam + i eps)/pi,
/// Richardson-extrapolated over eps in {1e-4, 5e-5, 2.5e-5}.
double case3_density_from_stieltjes(double lam);

/// Mass of the atom at 0 extracted as lim y Im f(iy), extrapolated over
/// y in {1e-3, 1e-4, 1e-5}; throws std::runtime_error when the extrapolation
/// spread exceeds 1e-4.
double atom_residue_at_zero(const std::function<cplx(cplx)>& stieltjes);
double case3_atom_residue();

/// A limiting law bundle. `edges` holds the continuous-support endpoints in
/// ascending order, taken pairwise as intervals. cdf is right-continuous and
/// includes the atom jumps.
struct SpectralLaw {
  std::string name;
  std::function<double(double)> density;
  std::function<double(double)> cdf;
  std::function<cplx(cplx)> stieltjes;
  std::vector<std::pair<double, double>> atoms;
  std::vector<double> edges;
};

SpectralLaw semicircle_law();

/// Law solved from the case-3 self-consistent equation: residue atom at 0
/// plus the closed-form continuous density.
SpectralLaw case3_law();

/// Exact consequence of Hermiticity + row-mirror symmetry: (1/2) delta_0
/// plus half a semicircle rescaled to [-2 sqrt 2, 2 sqrt 2]; Stieltjes
/// transform (h(z) - 1/z)/2 with 2 h^2 + z h + 1 = 0.
SpectralLaw case3_block_law();

/// k-th moment from atoms plus adaptive quadrature of the density; k <= 8.
double law_moment(const SpectralLaw& law, int k);

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace rmtsym
