#include "doctest.h"

#include <cmath>
#include <limits>

#include "rmtsym/eig.hpp"
#include "rmtsym/reference.hpp"
#include "rmtsym/sampler.hpp"

using namespace rmtsym;

namespace {

HermitianMatrix pauli_x() {
  HermitianMatrix w(1);
  w.set(-1, 1, cplx(1.0, 0.0));
  return w;
}

double reconstruction_residual(const HermitianMatrix& w, const Spectrum& s) {
  const int m = w.side();
  double worst = 0.0;
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      cplx acc(0.0);
      for (int i = 0; i < m; ++i)
        acc += s.basis[static_cast<std::size_t>(i) * m + p] * s.eigenvalues[i] *
               std::conj(s.basis[static_cast<std::size_t>(i) * m + q]);
      worst = std::max(worst, std::abs(acc - w.raw(p, q)));
    }
  }
  return worst;
}

}  // namespace

TEST_SUITE("eig") {

TEST_CASE("2x2 analytic spectra") {
  const Spectrum s = eigh(pauli_x());
  REQUIRE(s.eigenvalues.size() == 2);
  CHECK(s.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

  HermitianMatrix d(1);
  d.set(-1, -1, 2.5);
  d.set(1, 1, -0.5);
  const Spectrum sd = eigh(d);
  CHECK(sd.eigenvalues[0] == doctest::Approx(-0.5));
  CHECK(sd.eigenvalues[1] == doctest::Approx(2.5));
}

TEST_CASE("random 64x64: reconstruction, residuals, trace") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::Plain, 32, 4242}, 0);
  const Spectrum s = eigh(w, true);
  const double fro = w.frobenius_norm();
  const int m = w.side();

  CHECK(reconstruction_residual(w, s) <= 1e-10 * fro);

  double sum = 0.0;
  for (double lam : s.eigenvalues) sum += lam;
  CHECK(std::abs(sum - w.trace_real()) <= 1e-10 * fro);

  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < m; ++i) {
    double resid2 = 0.0;
    for (int p = 0; p < m; ++p) {
      cplx acc(0.0);
      for (int q = 0; q < m; ++q)
        acc += w.raw(p, q) * s.basis[static_cast<std::size_t>(i) * m + q];
      acc -= s.eigenvalues[i] * s.basis[static_cast<std::size_t>(i) * m + p];
      resid2 += std::norm(acc);
    }
    CHECK(std::sqrt(resid2) <= 64.0 * m * eps * fro);
  }

  for (std::size_t i = 1; i < s.eigenvalues.size(); ++i)
    CHECK(s.eigenvalues[i - 1] <= s.eigenvalues[i]);
}

TEST_CASE("agrees with the serial jacobi reference") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::Central2, 16, 7}, 1);
  const Spectrum s = eigh(w);
  const std::vector<double> ref = jacobi_eigh(w);
  REQUIRE(s.eigenvalues.size() == ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i)
    CHECK(s.eigenvalues[i] == doctest::Approx(ref[i]).epsilon(1e-11));
}

TEST_CASE("structured rowmirror3: rank-one 2x2 and forced zeros") {
  const HermitianMatrix tiny = sample_matrix({SymmetryClass::RowMirror3, 1, 3}, 0);
  const double a = tiny(-1, -1).real();
  const Spectrum st = eigh_structured(tiny, SymmetryClass::RowMirror3);
  CHECK(st.eigenvalues[0] == doctest::Approx(std::min(0.0, 2 * a)));
  CHECK(st.eigenvalues[1] == doctest::Approx(std::max(0.0, 2 * a)));

  const int n = 128;
  const HermitianMatrix w = sample_matrix({SymmetryClass::RowMirror3, n, 99}, 0);
  const Spectrum dense = eigh(w);
  const Spectrum fast = eigh_structured(w, SymmetryClass::RowMirror3);
  int zeros = 0;
  for (double lam : dense.eigenvalues)
    if (std::abs(lam) < 1e-8) ++zeros;
  CHECK(zeros == n);
  const double tol = 1e-8 * w.frobenius_norm();
  for (int i = 0; i < 2 * n; ++i)
    CHECK(std::abs(dense.eigenvalues[i] - fast.eigenvalues[i]) <= tol);
}

TEST_CASE("structured paths match dense on random samples") {
  for (SymmetryClass cls : {SymmetryClass::Central2, SymmetryClass::RowMirror3}) {
    for (int n : {4, 32, 128}) {
      const Ensemble ens({cls, n, 1234});
      for (int rep = 0; rep < 20; ++rep) {
        const HermitianMatrix w = ens.sample(rep);
        const Spectrum dense = eigh(w);
        const Spectrum fast = eigh_structured(w, cls);
        const double tol = 1e-8 * w.frobenius_norm();
        double worst = 0.0;
        for (int i = 0; i < 2 * n; ++i)
          worst = std::max(
              worst, std::abs(dense.eigenvalues[i] - fast.eigenvalues[i]));
        CHECK(worst <= tol);
      }
    }
  }
}

TEST_CASE("structured path validates its precondition") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::Plain, 8, 5}, 0);
  CHECK_THROWS_AS(eigh_structured(w, SymmetryClass::Central2),
                  std::invalid_argument);
}

TEST_CASE("structured fallback equals dense for flip1/quarter4/plain") {
  for (SymmetryClass cls :
       {SymmetryClass::Plain, SymmetryClass::Flip1, SymmetryClass::Quarter4}) {
    const HermitianMatrix w = sample_matrix({cls, 8, 31}, 2);
    const Spectrum a = eigh(w);
    const Spectrum b = eigh_structured(w, cls);
    for (int i = 0; i < w.side(); ++i)
      CHECK(a.eigenvalues[i] == b.eigenvalues[i]);
  }
}

TEST_CASE("resolvent of the 2x2 flip matrix at z=i") {
  const ResolventMatrix g = resolvent_matrix(pauli_x(), cplx(0, 1));
  CHECK(std::abs(g(-1, -1) - cplx(0, 0.5)) < 1e-14);
  CHECK(std::abs(g(-1, 1) - cplx(0.5, 0)) < 1e-14);
  CHECK(std::abs(g(1, -1) - cplx(0.5, 0)) < 1e-14);
  CHECK(std::abs(g(1, 1) - cplx(0, 0.5)) < 1e-14);
}

TEST_CASE("resolvent defect, operator bound, spectral consistency") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::Plain, 16, 808}, 0);
  const cplx z(0.7, 1.3);
  const ResolventMatrix g = resolvent_matrix(w, z);
  const int m = w.side();

  double defect = 0.0;
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      cplx acc = -(p == q ? cplx(1.0) : cplx(0.0));
      for (int k = 0; k < m; ++k)
        acc += (w.raw(p, k) - (p == k ? z : cplx(0.0))) * g.g.at(k, q);
      defect = std::max(defect, std::abs(acc));
    }
  }
  CHECK(defect <= 1e-10);

  const double bound = 1.0 / std::abs(z.imag());
  for (const cplx& v : g.g.a) CHECK(std::abs(v) <= bound + 1e-12);

  const Spectrum s = eigh(w);
  CHECK(std::abs(trace_mean(g.g) - stieltjes_from_spectrum(s, z)) <= 1e-10);

  const ResolventMatrix gc = resolvent_matrix(w, std::conj(z));
  double dev = 0.0;
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q)
      dev = std::max(dev, std::abs(gc.g.at(p, q) - std::conj(g.g.at(q, p))));
  CHECK(dev <= 1e-10);

  CHECK_THROWS_AS(resolvent_matrix(w, cplx(1.0, 1e-14)), std::domain_error);
}

TEST_CASE("stieltjes transform of a two-point spectrum") {
  Spectrum s;
  s.n = 1;
  s.eigenvalues = {-1.0, 1.0};
  CHECK(std::abs(stieltjes_from_spectrum(s, cplx(0, 1)) - cplx(0, 0.5)) < 1e-15);
  CHECK_THROWS_AS(stieltjes_from_spectrum(s, cplx(2.0, 0.0)), std::domain_error);

  // z g -> -1 at infinity
  const cplx z(0, 1e4);
  CHECK(std::abs(z * stieltjes_from_spectrum(s, z) + 1.0) < 2e-8);
}

TEST_CASE("nevanlinna property and operator bounds on random spectra") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::Flip1, 12, 2024}, 5);
  const Spectrum s = eigh(w);
  for (const cplx z : {cplx(0.3, 0.8), cplx(-1.5, 2.0), cplx(2.0, 0.05)}) {
    const cplx g = stieltjes_from_spectrum(s, z);
    CHECK(g.imag() > 0.0);
    CHECK(std::abs(g) <= 1.0 / z.imag() + 1e-12);
    CHECK(std::abs(trace_resolvent_square(s, z)) <=
          1.0 / (z.imag() * z.imag()) + 1e-12);
    const cplx gc = stieltjes_from_spectrum(s, std::conj(z));
    CHECK(std::abs(gc - std::conj(g)) < 1e-15);
  }
}

TEST_CASE("trace of G^2 equals dg/dz") {
  Spectrum two;
  two.n = 1;
  two.eigenvalues = {-1.0, 1.0};
  CHECK(std::abs(trace_resolvent_square(two, cplx(0, 1))) < 1e-15);

  const HermitianMatrix w = sample_matrix({SymmetryClass::Quarter4, 10, 64}, 2);
  const Spectrum s = eigh(w);
  const cplx z(0.4, 1.7);
  const double h = 1e-5;
  const cplx fd = (stieltjes_from_spectrum(s, z + h) -
                   stieltjes_from_spectrum(s, z - h)) /
                  (2.0 * h);
  CHECK(std::abs(trace_resolvent_square(s, z) - fd) < 1e-6);
}

TEST_CASE("anti-trace") {
  const ResolventMatrix g = resolvent_matrix(pauli_x(), cplx(0, 1));
  CHECK(std::abs(anti_trace(g.g) - cplx(0.5, 0.0)) < 1e-14);

  ComplexMatrix eye(4);
  for (int p = 0; p < 4; ++p) eye.at(p, p) = 1.0;
  CHECK(std::abs(anti_trace(eye)) == 0.0);

  ComplexMatrix odd(3);
  CHECK_THROWS_AS(anti_trace(odd), std::invalid_argument);
}

TEST_CASE("rowmirror3 anti-trace identity g_hat - g = 1/z") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::RowMirror3, 8, 6}, 1);
  for (const cplx z : {cplx(0, 1), cplx(1.0, 2.0), cplx(-0.5, 3.0)}) {
    const ResolventMatrix g = resolvent_matrix(w, z);
    const cplx diff = anti_trace(g.g) - trace_mean(g.g);
    CHECK(std::abs(diff - 1.0 / z) <= 1e-10);
  }
}

TEST_CASE("atom mass estimate") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::RowMirror3, 16, 12}, 0);
  CHECK(atom_mass_estimate(eigh(w), 1e-8) == 0.5);

  const HermitianMatrix p = sample_matrix({SymmetryClass::Plain, 16, 12}, 0);
  CHECK(atom_mass_estimate(eigh(p), 1e-8) == 0.0);

  Spectrum s;
  s.n = 2;
  s.eigenvalues = {0.0, 0.0, 1.0, 2.0};
  CHECK(atom_mass_estimate(s, 1e-8) == 0.5);
  CHECK_THROWS_AS(atom_mass_estimate(s, 0.0), std::invalid_argument);
}

TEST_CASE("per-sample resolvent symmetries for classes 1-3") {
  const cplx z(1.0, 2.0);
  for (SymmetryClass cls : {SymmetryClass::Flip1, SymmetryClass::Central2,
                            SymmetryClass::RowMirror3}) {
    const HermitianMatrix w = sample_matrix({cls, 8, 50}, 0);
    const ResolventMatrix g = resolvent_matrix(w, z);
    CHECK(resolvent_symmetry_residual(g, cls) <= 1e-10);
  }
  // generic violation: plain sample has no such symmetry
  const HermitianMatrix p = sample_matrix({SymmetryClass::Plain, 8, 50}, 0);
  const ResolventMatrix gp = resolvent_matrix(p, z);
  CHECK(resolvent_symmetry_residual(gp, SymmetryClass::RowMirror3) > 1e-6);
  CHECK_THROWS_AS(resolvent_symmetry_residual(gp, SymmetryClass::Quarter4),
                  std::invalid_argument);
}

TEST_CASE("trace identity for G^2(z1) G(z2)") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::Plain, 16, 2}, 0);
  const Spectrum s = eigh(w);
  const cplx z1(1.0, 2.0), z2(0.0, 1.0);

  const ResolventMatrix g1 = resolvent_matrix(w, z1);
  const ResolventMatrix g2 = resolvent_matrix(w, z2);
  const ComplexMatrix m = matmul(matmul(g1.g, g1.g), g2.g);
  const cplx lhs = trace_mean(m);

  const cplx rhs = (trace_resolvent_square(s, z1) -
                    (stieltjes_from_spectrum(s, z1) -
                     stieltjes_from_spectrum(s, z2)) /
                        (z1 - z2)) /
                   (z1 - z2);
  CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("case-3 antidiagonal trace identity") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::RowMirror3, 8, 44}, 3);
  const cplx z1(0.5, 2.0), z2(-0.3, 1.5);
  const ResolventMatrix g1 = resolvent_matrix(w, z1);
  const ResolventMatrix g2 = resolvent_matrix(w, z2);
  const ComplexMatrix m = matmul(matmul(g1.g, g1.g), g2.g);
  const cplx rhs = trace_mean(m) + 1.0 / (z1 * z1 * z2);
  CHECK(std::abs(anti_trace(m) - rhs) <= 1e-10);
}

TEST_CASE("schwartz bound for Tr P(z) G(z)") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::Quarter4, 8, 13}, 0);
  const cplx z(0.2, 1.1);
  const ResolventMatrix g = resolvent_matrix(w, z);
  const int n = w.half_n();
  ComplexMatrix p(w.side());
  for (int x = -n; x <= n; ++x) {
    if (x == 0) continue;
    for (int y = -n; y <= n; ++y) {
      if (y == 0) continue;
      p.at(pos(x, n), pos(y, n)) = g(y, -x);
    }
  }
  const cplx tpg = trace_mean(matmul(p, g.g));
  CHECK(std::abs(tpg) <= 1.0 / (z.imag() * z.imag()) + 1e-12);
}

}  // TEST_SUITE
