#include "doctest.h"

#include <cmath>
#include <cstring>

#include "rmtsym/sampler.hpp"

using namespace rmtsym;

TEST_SUITE("sampler") {

TEST_CASE("identical (seed, replicate) gives bitwise-identical matrices") {
  const EnsembleSpec spec{SymmetryClass::Flip1, 5, 9001};
  const Ensemble ens(spec);
  const HermitianMatrix a = ens.sample(17);
  const HermitianMatrix b = ens.sample(17);
  CHECK(std::memcmp(a.data(), b.data(),
                    sizeof(cplx) * spec.side() * spec.side()) == 0);
  const HermitianMatrix c = ens.sample(18);
  CHECK(std::memcmp(a.data(), c.data(),
                    sizeof(cplx) * spec.side() * spec.side()) != 0);
}

TEST_CASE("sample equals one-shot helper") {
  const EnsembleSpec spec{SymmetryClass::Central2, 3, 5};
  const HermitianMatrix a = Ensemble(spec).sample(2);
  const HermitianMatrix b = sample_matrix(spec, 2);
  CHECK(std::memcmp(a.data(), b.data(),
                    sizeof(cplx) * spec.side() * spec.side()) == 0);
}

TEST_CASE("rowmirror3 n=1 is the rank-one pattern [[a,a],[a,a]]") {
  for (std::uint64_t seed : {0ull, 1ull, 77ull}) {
    const HermitianMatrix w = sample_matrix({SymmetryClass::RowMirror3, 1, seed}, 0);
    const cplx a = w(-1, -1);
    CHECK(a.imag() == 0.0);
    CHECK(w(-1, 1) == a);
    CHECK(w(1, -1) == a);
    CHECK(w(1, 1) == a);
  }
}

TEST_CASE("samples satisfy their own symmetry exactly") {
  for (SymmetryClass cls : kAllClasses) {
    const EnsembleSpec spec{cls, 6, 321};
    const HermitianMatrix w = sample_matrix(spec, 3);
    CHECK(validate_symmetry(w, cls) == 0.0);
    CHECK(w.hermiticity_deviation() == 0.0);
  }
}

TEST_CASE("generic plain sample violates foreign symmetries") {
  const HermitianMatrix w = sample_matrix({SymmetryClass::Plain, 6, 555}, 0);
  CHECK(validate_symmetry(w, SymmetryClass::RowMirror3) > 0.0);
  CHECK(validate_symmetry(w, SymmetryClass::Flip1) > 0.0);
}

TEST_CASE("rowmirror3 closure discovers the induced column symmetry") {
  const int n = 5;
  const HermitianMatrix w = sample_matrix({SymmetryClass::RowMirror3, n, 11}, 4);
  double dev = 0.0;
  for (int x = -n; x <= n; ++x) {
    if (x == 0) continue;
    for (int y = -n; y <= n; ++y) {
      if (y == 0) continue;
      dev = std::max(dev, std::abs(w(x, y) - w(x, -y)));
    }
  }
  CHECK(dev == 0.0);
}

TEST_CASE("marginal law: zero mean and variance 1/(2n)") {
  const int n = 4;
  const int replicates = 100000;
  const EnsembleSpec spec{SymmetryClass::Plain, n, 20240601};
  const Ensemble ens(spec);

  double sum_re = 0.0, sum_im = 0.0, sum_sq_off = 0.0, sum_sq_diag = 0.0;
  for (int r = 0; r < replicates; ++r) {
    const HermitianMatrix w = ens.sample(r);
    const cplx off = w(-1, 2);
    sum_re += off.real();
    sum_im += off.imag();
    sum_sq_off += std::norm(off);
    sum_sq_diag += std::norm(w(1, 1));
  }
  const double ev = spec.entry_variance();  // 0.125
  const double mean_re = sum_re / replicates;
  const double mean_im = sum_im / replicates;
  const double second_off = sum_sq_off / replicates;
  const double second_diag = sum_sq_diag / replicates;

  // component sigma^2 = ev/2; three standard errors of each estimator
  const double se_mean = std::sqrt(ev / 2.0 / replicates);
  CHECK(std::abs(mean_re) < 3.0 * se_mean);
  CHECK(std::abs(mean_im) < 3.0 * se_mean);
  // chi-square estimator: Var|W|^2 = ev^2 for a free complex entry,
  // 2 ev^2 for a real constrained one
  CHECK(std::abs(second_off - ev) < 3.0 * ev / std::sqrt(replicates));
  CHECK(std::abs(second_diag - ev) <
        3.0 * ev * std::sqrt(2.0 / replicates));
}

TEST_CASE("call order does not matter") {
  const EnsembleSpec spec{SymmetryClass::Quarter4, 3, 77};
  const Ensemble ens(spec);
  const HermitianMatrix first_0 = ens.sample(0);
  const HermitianMatrix first_9 = ens.sample(9);
  const HermitianMatrix again_9 = ens.sample(9);
  const HermitianMatrix again_0 = ens.sample(0);
  CHECK(std::memcmp(first_0.data(), again_0.data(),
                    sizeof(cplx) * spec.side() * spec.side()) == 0);
  CHECK(std::memcmp(first_9.data(), again_9.data(),
                    sizeof(cplx) * spec.side() * spec.side()) == 0);
}

}  // TEST_SUITE
