#include "rmtsym/sampler.hpp"

#include <cmath>

#include "rmtsym/rng.hpp"

namespace rmtsym {

Ensemble::Ensemble(EnsembleSpec spec) : spec_(spec) {
  validate_spec(spec_);
  sys_ = build_orbit_system(spec_.cls, spec_.n);
}

HermitianMatrix Ensemble::sample(std::uint64_t replicate) const {
  const int n = spec_.n;
  const int m = 2 * n;
  HermitianMatrix w(n);
  cplx* a = w.data();

  // E|W_xy|^2 = 1/(2n) for every entry: a free complex entry splits the
  // second moment over its two components, a constrained one carries it all.
  const double sigma_free = std::sqrt(1.0 / (4.0 * n));
  const double sigma_constrained = std::sqrt(1.0 / (2.0 * n));

  for (std::size_t k = 0; k < sys_.orbits.size(); ++k) {
    const Orbit& orbit = sys_.orbits[k];
    CounterRng rng(spec_.master_seed, replicate, k);
    const auto [g0, g1] = rng.next_gauss_pair();

    cplx v;
    switch (orbit.reality) {
      case OrbitReality::ComplexFree:
        v = cplx(g0 * sigma_free, g1 * sigma_free);
        break;
      case OrbitReality::RealConstrained:
        v = cplx(g0 * sigma_constrained, 0.0);
        break;
      case OrbitReality::ImagConstrained:
        v = cplx(0.0, g0 * sigma_constrained);
        break;
    }

    for (const OrbitMember& mem : orbit.members) {
      const std::size_t e =
          static_cast<std::size_t>(pos(mem.x, n)) * m + pos(mem.y, n);
      if (orbit.reality == OrbitReality::RealConstrained)
        a[e] = v;  // conj is the identity; keep +0.0 imaginary parts
      else
        a[e] = mem.conjugated ? std::conj(v) : v;
    }
  }

  return w;
}

HermitianMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t replicate) {
  return Ensemble(spec).sample(replicate);
}

double validate_symmetry(const HermitianMatrix& W, SymmetryClass cls) {
  const int n = W.half_n();
  const int m = W.side();
  const cplx* a = W.data();

  // raw index of the mirrored site: pos(-site(p))
  std::vector<int> neg(m);
  for (int p = 0; p < m; ++p) neg[p] = pos(-site(p, n), n);

  double dev2 = 0.0;
  for (int p = 0; p < m; ++p) {
    for (int q = 0; q < m; ++q) {
      std::size_t mapped;
      switch (cls) {
        case SymmetryClass::Plain: continue;
        case SymmetryClass::Flip1:
          mapped = static_cast<std::size_t>(neg[q]) * m + neg[p];
          break;
        case SymmetryClass::Central2:
          mapped = static_cast<std::size_t>(neg[p]) * m + neg[q];
          break;
        case SymmetryClass::RowMirror3:
          mapped = static_cast<std::size_t>(neg[p]) * m + q;
          break;
        case SymmetryClass::Quarter4:
          mapped = static_cast<std::size_t>(q) * m + neg[p];
          break;
      }
      dev2 = std::max(dev2,
                      std::norm(a[static_cast<std::size_t>(p) * m + q] - a[mapped]));
    }
  }
  return std::sqrt(dev2);
}

}  // namespace rmtsym
