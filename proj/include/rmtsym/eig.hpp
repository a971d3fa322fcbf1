#pragma once

#include "rmtsym/core.hpp"

namespace rmtsym {

struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dense square complex matrix, row-major; workhorse for resolvents and the
/// exact trace identities.
struct ComplexMatrix {
  int side = 0;
  std::vector<cplx> a;

  ComplexMatrix() = default;
  explicit ComplexMatrix(int m) : side(m), a(static_cast<std::size_t>(m) * m) {}

  cplx& at(int p, int q) { return a[static_cast<std::size_t>(p) * side + q]; }
  cplx at(int p, int q) const { return a[static_cast<std::size_t>(p) * side + q]; }
};

ComplexMatrix matmul(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

/// (1/side) * sum_p M(p, side-1-p): in signed sites, (1/2n) sum_x M(x,-x).
/// Throws std::invalid_argument on odd side.
cplx anti_trace(const ComplexMatrix& m);

/// (1/side) * trace.
cplx trace_mean(const ComplexMatrix& m);

/// Eigenvalues (ascending) of a Hermitian matrix held in raw row-major
/// storage of arbitrary side; used for the half-size blocks of the
/// structured paths. Householder tridiagonalization followed by implicit QL
/// with Wilkinson shifts; throws solver_error if an eigenvalue fails to
/// converge within 30 sweeps.
void eigh_raw(int side, const cplx* a, std::vector<double>& eigenvalues,
              std::vector<cplx>* basis_transposed);

Spectrum eigh(const HermitianMatrix& W, bool want_basis = false);

/// Symmetry-reduced eigensolve. Central2 splits into the flip-even and
/// flip-odd half blocks (two n x n solves); RowMirror3 duplicated rows force
/// rank <= n, so the spectrum is {2 eig(A)} u {0^n} with A the negative-site
/// block. Other classes fall back to the dense path. The class symmetry is a
/// precondition, checked to 1e-12.
Spectrum eigh_structured(const HermitianMatrix& W, SymmetryClass cls);

struct ResolventMatrix {
  cplx z;
  int n = 0;
  ComplexMatrix g;

  int side() const { return 2 * n; }
  cplx operator()(int x, int y) const { return g.at(pos(x, n), pos(y, n)); }
};

/// G = (W - z)^{-1} by complex LU with partial pivoting.
/// Throws std::domain_error when |Im z| < 1e-12.
ResolventMatrix resolvent_matrix(const HermitianMatrix& W, cplx z);

/// (1/2n) sum_i 1/(lambda_i - z); throws std::domain_error for real z.
cplx stieltjes_from_spectrum(const Spectrum& s, cplx z);

/// (1/2n) sum_i 1/(lambda_i - z)^2, the normalized trace of G^2.
cplx trace_resolvent_square(const Spectrum& s, cplx z);

/// Fraction of eigenvalues with |lambda| < tol.
double atom_mass_estimate(const Spectrum& s, double tol);

/// Max-entry residual of the class resolvent identity:
///   Flip1:      G(j,k) = G(-k,-j)
///   Central2:   G(j,k) = G(-j,-k)
///   RowMirror3: G(j,k) = G(-j,k) - z^{-1} (delta_jk - delta_{-j,k})
/// Plain and Quarter4 have no such identity (std::invalid_argument).
double resolvent_symmetry_residual(const ResolventMatrix& G, SymmetryClass cls);

}  // namespace rmtsym
