#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "rmtsym/core.hpp"

namespace rmtsym {

/// Serial cyclic Jacobi eigensolver for complex Hermitian matrices. Slow but
/// independent of the Householder/QL production path; kept as the reference
/// implementation for tests and the benchmark baseline.
inline std::vector<double> jacobi_eigh(int m, const cplx* a_in) {
  std::vector<cplx> a(a_in, a_in + static_cast<std::size_t>(m) * m);
  auto at = [&](int p, int q) -> cplx& {
    return a[static_cast<std::size_t>(p) * m + q];
  };

  double fro2 = 0.0;
  for (const cplx& v : a) fro2 += std::norm(v);
  const double stop = 1e-28 * fro2;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off2 = 0.0;
    for (int p = 0; p < m; ++p)
      for (int q = p + 1; q < m; ++q) off2 += std::norm(at(p, q));
    if (2.0 * off2 <= stop) break;

    for (int p = 0; p < m; ++p) {
      for (int q = p + 1; q < m; ++q) {
        const cplx apq = at(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx u = apq / mag;  // phase
        const double app = at(p, p).real(), aqq = at(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double sr = t * c;
        const cplx s = sr * u;

        for (int i = 0; i < m; ++i) {
          if (i == p || i == q) continue;
          const cplx aip = at(i, p), aiq = at(i, q);
          at(i, p) = c * aip - std::conj(s) * aiq;
          at(i, q) = s * aip + c * aiq;
          at(p, i) = std::conj(at(i, p));
          at(q, i) = std::conj(at(i, q));
        }
        at(p, p) = cplx(c * c * app + sr * sr * aqq - 2.0 * c * sr * mag, 0.0);
        at(q, q) = cplx(sr * sr * app + c * c * aqq + 2.0 * c * sr * mag, 0.0);
        at(p, q) = 0.0;
        at(q, p) = 0.0;
      }
    }
  }

  std::vector<double> ev(m);
  for (int p = 0; p < m; ++p) ev[p] = at(p, p).real();
  std::sort(ev.begin(), ev.end());
  return ev;
}

inline std::vector<double> jacobi_eigh(const HermitianMatrix& W) {
  return jacobi_eigh(W.side(), W.data());
}

}  // namespace rmtsym
