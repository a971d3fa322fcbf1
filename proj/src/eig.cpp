#include "rmtsym/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rmtsym/sampler.hpp"

namespace rmtsym {

namespace {

constexpr double kEps = 2.220446049250313e-16;

// Elementary reflector H = I - tau v v^H with v = (1, x...) mapping
// (alpha, x...) to (beta, 0...), beta real. Scales x into the tail of v
// in place and returns beta. tau = 0 means "nothing to do".
double larfg(cplx alpha, cplx* x, int len, cplx& tau) {
  double xnorm2 = 0.0;
  for (int i = 0; i < len; ++i) xnorm2 += std::norm(x[i]);
  if (xnorm2 == 0.0 && alpha.imag() == 0.0) {
    tau = 0.0;
    return alpha.real();
  }
  const double beta = -std::copysign(
      std::sqrt(std::norm(alpha) + xnorm2), alpha.real() == 0.0 ? 1.0 : alpha.real());
  tau = cplx((beta - alpha.real()) / beta, -alpha.imag() / beta);
  const cplx scale = 1.0 / (alpha - beta);
  for (int i = 0; i < len; ++i) x[i] *= scale;
  return beta;
}

// Householder reduction of the Hermitian matrix (re/im split storage,
// row-major, lower triangle referenced) to real symmetric tridiagonal (d, e).
// Reflector tails and taus are kept for the optional basis accumulation.
// Split storage lets the dot-product reductions and rank-2 updates run as
// plain double SIMD loops.
void tridiagonalize(int m, std::vector<double>& are, std::vector<double>& aim,
                    std::vector<double>& d, std::vector<double>& e,
                    std::vector<cplx>& taus, std::vector<cplx>& vs) {
  d.assign(m, 0.0);
  e.assign(m, 0.0);
  taus.assign(m, 0.0);
  vs.assign(static_cast<std::size_t>(m) * m, 0.0);

  std::vector<double> vr(m), vi(m), xr(m), xi(m), wr(m), wi(m);
  std::vector<cplx> tail(m);
  for (int k = 0; k + 1 < m; ++k) {
    const int r = m - k - 1;  // trailing block size
    const std::size_t col = static_cast<std::size_t>(k);

    // reflector from column k below the diagonal
    for (int i = 1; i < r; ++i) {
      const std::size_t e_ = static_cast<std::size_t>(k + 1 + i) * m + col;
      tail[i - 1] = cplx(are[e_], aim[e_]);
    }
    cplx tau;
    const std::size_t sub = static_cast<std::size_t>(k + 1) * m + col;
    e[k] = larfg(cplx(are[sub], aim[sub]), tail.data(), r - 1, tau);
    taus[k] = tau;
    vr[0] = 1.0;
    vi[0] = 0.0;
    for (int i = 1; i < r; ++i) {
      vr[i] = tail[i - 1].real();
      vi[i] = tail[i - 1].imag();
    }
    for (int i = 0; i < r; ++i)
      vs[static_cast<std::size_t>(k) * m + i] = cplx(vr[i], vi[i]);
    if (tau == cplx(0.0)) continue;

    // x = A_sub * v using the lower triangle of the trailing block
    std::fill(xr.begin(), xr.begin() + r, 0.0);
    std::fill(xi.begin(), xi.begin() + r, 0.0);
    for (int i = 0; i < r; ++i) {
      const std::size_t row = static_cast<std::size_t>(k + 1 + i) * m + (k + 1);
      const double* rr = &are[row];
      const double* ri = &aim[row];
      const double vri = vr[i], vii = vi[i];
      double sr = rr[i] * vri;  // real diagonal
      double si = rr[i] * vii;
#pragma omp simd reduction(+ : sr, si)
      for (int j = 0; j < i; ++j) {
        const double br = rr[j], bi = ri[j];
        sr += br * vr[j] - bi * vi[j];
        si += br * vi[j] + bi * vr[j];
        // x[j] += conj(row[j]) * v[i]
        xr[j] += br * vri + bi * vii;
        xi[j] += br * vii - bi * vri;
      }
      xr[i] += sr;
      xi[i] += si;
    }

    // w = tau x - (tau/2)((tau x)^H v) v
    for (int i = 0; i < r; ++i) {
      const cplx t = tau * cplx(xr[i], xi[i]);
      xr[i] = t.real();
      xi[i] = t.imag();
    }
    cplx xhv(0.0);
    for (int i = 0; i < r; ++i)
      xhv += cplx(xr[i], -xi[i]) * cplx(vr[i], vi[i]);
    const cplx alpha = -0.5 * tau * xhv;
    for (int i = 0; i < r; ++i) {
      const cplx w = cplx(xr[i], xi[i]) + alpha * cplx(vr[i], vi[i]);
      wr[i] = w.real();
      wi[i] = w.imag();
    }

    // rank-2 update of the lower triangle: A_sub -= v w^H + w v^H
    for (int i = 0; i < r; ++i) {
      const std::size_t row = static_cast<std::size_t>(k + 1 + i) * m + (k + 1);
      double* rr = &are[row];
      double* ri = &aim[row];
      const double vri = vr[i], vii = vi[i], wri = wr[i], wii = wi[i];
#pragma omp simd
      for (int j = 0; j <= i; ++j) {
        rr[j] -= vri * wr[j] + vii * wi[j] + wri * vr[j] + wii * vi[j];
        ri[j] -= vii * wr[j] - vri * wi[j] + wii * vr[j] - wri * vi[j];
      }
    }
  }
  for (int i = 0; i < m; ++i)
    d[i] = are[static_cast<std::size_t>(i) * m + i];
}

// Implicit QL with Wilkinson shifts on the tridiagonal (d, e). When vt is
// non-null its rows are the transposed eigenvector candidates and every
// rotation is applied to the row pair it mixes.
void tridiag_ql(int m, std::vector<double>& d, std::vector<double>& e,
                std::vector<cplx>* vt) {
  if (m == 1) return;
  e[m - 1] = 0.0;

  // Absolute floor keeps the split test reachable when a block of exact
  // zeros leaves d and e at denormal scale.
  double anorm = 0.0;
  for (int i = 0; i < m; ++i)
    anorm = std::max(anorm, std::abs(d[i]) + std::abs(e[i]) +
                                (i > 0 ? std::abs(e[i - 1]) : 0.0));
  const double floor = kEps * anorm;

  for (int l = 0; l < m; ++l) {
    int iter = 0;
    int split;
    do {
      for (split = l; split < m - 1; ++split) {
        const double scale = std::abs(d[split]) + std::abs(d[split + 1]);
        if (std::abs(e[split]) <= std::max(kEps * scale, floor)) break;
      }
      if (split != l) {
        if (iter++ == 30)
          throw solver_error("tridiagonal QL failed to converge in 30 sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[split] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = split - 1; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[split] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (vt) {
            cplx* lo = vt->data() + static_cast<std::size_t>(i) * m;
            cplx* hi = vt->data() + static_cast<std::size_t>(i + 1) * m;
            for (int k = 0; k < m; ++k) {
              const cplx t = hi[k];
              hi[k] = s * lo[k] + c * t;
              lo[k] = c * lo[k] - s * t;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[split] = 0.0;
      }
    } while (split != l);
  }
}

}  // namespace

void eigh_raw(int m, const cplx* a_in, std::vector<double>& eigenvalues,
              std::vector<cplx>* basis_transposed) {
  const std::size_t total = static_cast<std::size_t>(m) * m;
  std::vector<double> are(total), aim(total);
  for (std::size_t i = 0; i < total; ++i) {
    are[i] = a_in[i].real();
    aim[i] = a_in[i].imag();
  }
  std::vector<double> d, e;
  std::vector<cplx> taus, vs;
  tridiagonalize(m, are, aim, d, e, taus, vs);

  std::vector<cplx> vt;
  if (basis_transposed) {
    // accumulate Q^T = (H_0 H_1 ... H_{m-2})^T into rows
    vt.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) vt[static_cast<std::size_t>(i) * m + i] = 1.0;
    std::vector<cplx> t(m);
    for (int k = m - 2; k >= 0; --k) {
      const cplx tau = taus[k];
      if (tau == cplx(0.0)) continue;
      const int r = m - k - 1;
      const cplx* v = &vs[static_cast<std::size_t>(k) * m];
      for (int i = k + 1; i < m; ++i) {
        cplx* row = vt.data() + static_cast<std::size_t>(i) * m + (k + 1);
        cplx acc(0.0);
        for (int q = 0; q < r; ++q) acc += row[q] * std::conj(v[q]);
        acc *= tau;
        for (int q = 0; q < r; ++q) row[q] -= acc * v[q];
      }
    }
  }

  tridiag_ql(m, d, e, basis_transposed ? &vt : nullptr);

  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) { return d[i] < d[j]; });

  eigenvalues.resize(m);
  for (int i = 0; i < m; ++i) eigenvalues[i] = d[order[i]];

  if (basis_transposed) {
    basis_transposed->assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i)
      std::copy_n(vt.begin() + static_cast<std::size_t>(order[i]) * m, m,
                  basis_transposed->begin() + static_cast<std::size_t>(i) * m);
  }
}

Spectrum eigh(const HermitianMatrix& W, bool want_basis) {
  const int m = W.side();
  Spectrum s;
  s.n = W.half_n();
  if (!want_basis) {
    eigh_raw(m, W.data(), s.eigenvalues, nullptr);
    return s;
  }
  std::vector<cplx> vt;
  eigh_raw(m, W.data(), s.eigenvalues, &vt);
  s.basis.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i)
    for (int p = 0; p < m; ++p)
      s.basis[static_cast<std::size_t>(i) * m + p] = vt[static_cast<std::size_t>(i) * m + p];
  return s;
}

Spectrum eigh_structured(const HermitianMatrix& W, SymmetryClass cls) {
  const double dev = validate_symmetry(W, cls);
  if (dev > 1e-12)
    throw std::invalid_argument("eigh_structured: symmetry deviation " +
                                std::to_string(dev) + " exceeds 1e-12");
  const int n = W.half_n();

  if (cls == SymmetryClass::Central2) {
    // flip-even and flip-odd blocks over positive sites
    std::vector<cplx> se(static_cast<std::size_t>(n) * n),
        so(static_cast<std::size_t>(n) * n);
    for (int x = 1; x <= n; ++x) {
      for (int y = 1; y <= n; ++y) {
        const std::size_t e = static_cast<std::size_t>(x - 1) * n + (y - 1);
        se[e] = W(x, y) + W(x, -y);
        so[e] = W(x, y) - W(x, -y);
      }
    }
    std::vector<double> even, odd;
    eigh_raw(n, se.data(), even, nullptr);
    eigh_raw(n, so.data(), odd, nullptr);
    Spectrum s;
    s.n = n;
    s.eigenvalues.reserve(2 * n);
    s.eigenvalues.insert(s.eigenvalues.end(), even.begin(), even.end());
    s.eigenvalues.insert(s.eigenvalues.end(), odd.begin(), odd.end());
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
  }

  if (cls == SymmetryClass::RowMirror3) {
    // duplicated rows: spectrum is {2 eig(A)} u {0^n}, A the negative block
    std::vector<cplx> block(static_cast<std::size_t>(n) * n);
    for (int x = -n; x <= -1; ++x)
      for (int y = -n; y <= -1; ++y)
        block[static_cast<std::size_t>(x + n) * n + (y + n)] = W(x, y);
    std::vector<double> mu;
    eigh_raw(n, block.data(), mu, nullptr);
    Spectrum s;
    s.n = n;
    s.eigenvalues.assign(n, 0.0);
    for (double m : mu) s.eigenvalues.push_back(2.0 * m);
    std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return s;
  }

  return eigh(W, false);
}

ComplexMatrix matmul(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  if (lhs.side != rhs.side) throw std::invalid_argument("matmul: side mismatch");
  const int m = lhs.side;
  ComplexMatrix out(m);
  for (int i = 0; i < m; ++i) {
    cplx* dst = &out.a[static_cast<std::size_t>(i) * m];
    for (int k = 0; k < m; ++k) {
      const cplx f = lhs.at(i, k);
      const cplx* src = &rhs.a[static_cast<std::size_t>(k) * m];
      for (int j = 0; j < m; ++j) dst[j] += f * src[j];
    }
  }
  return out;
}

cplx anti_trace(const ComplexMatrix& m) {
  if (m.side % 2 != 0)
    throw std::invalid_argument("anti_trace: side must be even");
  cplx sum(0.0);
  for (int p = 0; p < m.side; ++p) sum += m.at(p, m.side - 1 - p);
  return sum / static_cast<double>(m.side);
}

cplx trace_mean(const ComplexMatrix& m) {
  cplx sum(0.0);
  for (int p = 0; p < m.side; ++p) sum += m.at(p, p);
  return sum / static_cast<double>(m.side);
}

ResolventMatrix resolvent_matrix(const HermitianMatrix& W, cplx z) {
  if (std::abs(z.imag()) < 1e-12)
    throw std::domain_error("resolvent_matrix: |Im z| < 1e-12");
  const int m = W.side();
  ComplexMatrix lu(m);
  std::copy_n(W.data(), static_cast<std::size_t>(m) * m, lu.a.begin());
  for (int p = 0; p < m; ++p) lu.at(p, p) -= z;

  std::vector<int> piv(m);
  for (int k = 0; k < m; ++k) {
    int r = k;
    double best = std::abs(lu.at(k, k));
    for (int i = k + 1; i < m; ++i) {
      const double cand = std::abs(lu.at(i, k));
      if (cand > best) {
        best = cand;
        r = i;
      }
    }
    if (best == 0.0) throw solver_error("resolvent_matrix: singular pivot");
    piv[k] = r;
    if (r != k)
      std::swap_ranges(lu.a.begin() + static_cast<std::size_t>(k) * m,
                       lu.a.begin() + static_cast<std::size_t>(k + 1) * m,
                       lu.a.begin() + static_cast<std::size_t>(r) * m);
    const cplx inv = 1.0 / lu.at(k, k);
    for (int i = k + 1; i < m; ++i) {
      const cplx f = (lu.at(i, k) *= inv);
      const cplx* src = &lu.a[static_cast<std::size_t>(k) * m];
      cplx* dst = &lu.a[static_cast<std::size_t>(i) * m];
      for (int j = k + 1; j < m; ++j) dst[j] -= f * src[j];
    }
  }

  ResolventMatrix out;
  out.z = z;
  out.n = W.half_n();
  out.g = ComplexMatrix(m);
  std::vector<cplx> b(m);
  for (int c = 0; c < m; ++c) {
    std::fill(b.begin(), b.end(), cplx(0.0));
    b[c] = 1.0;
    for (int k = 0; k < m; ++k)
      if (piv[k] != k) std::swap(b[k], b[piv[k]]);
    for (int i = 1; i < m; ++i) {
      cplx sum = b[i];
      const cplx* row = &lu.a[static_cast<std::size_t>(i) * m];
      for (int j = 0; j < i; ++j) sum -= row[j] * b[j];
      b[i] = sum;
    }
    for (int i = m - 1; i >= 0; --i) {
      cplx sum = b[i];
      const cplx* row = &lu.a[static_cast<std::size_t>(i) * m];
      for (int j = i + 1; j < m; ++j) sum -= row[j] * b[j];
      b[i] = sum / row[i];
    }
    for (int p = 0; p < m; ++p) out.g.at(p, c) = b[p];
  }
  return out;
}

cplx stieltjes_from_spectrum(const Spectrum& s, cplx z) {
  if (z.imag() == 0.0)
    throw std::domain_error("stieltjes_from_spectrum: real z");
  cplx sum(0.0);
  for (double lam : s.eigenvalues) sum += 1.0 / (lam - z);
  return sum / static_cast<double>(s.eigenvalues.size());
}

cplx trace_resolvent_square(const Spectrum& s, cplx z) {
  if (z.imag() == 0.0)
    throw std::domain_error("trace_resolvent_square: real z");
  cplx sum(0.0);
  for (double lam : s.eigenvalues) {
    const cplx r = 1.0 / (lam - z);
    sum += r * r;
  }
  return sum / static_cast<double>(s.eigenvalues.size());
}

double atom_mass_estimate(const Spectrum& s, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("atom_mass_estimate: tol must be > 0");
  std::size_t count = 0;
  for (double lam : s.eigenvalues)
    if (std::abs(lam) < tol) ++count;
  return static_cast<double>(count) / static_cast<double>(s.eigenvalues.size());
}

double resolvent_symmetry_residual(const ResolventMatrix& G, SymmetryClass cls) {
  const int n = G.n;
  const cplx zinv = 1.0 / G.z;
  double dev = 0.0;
  for (int p = 0; p < G.side(); ++p) {
    for (int q = 0; q < G.side(); ++q) {
      const int j = site(p, n), k = site(q, n);
      cplx expected;
      switch (cls) {
        case SymmetryClass::Flip1: expected = G(-k, -j); break;
        case SymmetryClass::Central2: expected = G(-j, -k); break;
        case SymmetryClass::RowMirror3: {
          const double dj = (j == k) ? 1.0 : 0.0;
          const double dm = (-j == k) ? 1.0 : 0.0;
          expected = G(-j, k) - zinv * (dj - dm);
          break;
        }
        default:
          throw std::invalid_argument(
              "resolvent_symmetry_residual: no identity for this class");
      }
      dev = std::max(dev, std::abs(G(j, k) - expected));
    }
  }
  return dev;
}

}  // namespace rmtsym
