#include "rmtsym/core.hpp"

#include <cmath>

namespace rmtsym {

const char* class_name(SymmetryClass c) {
  switch (c) {
    case SymmetryClass::Plain: return "plain";
    case SymmetryClass::Flip1: return "flip1";
    case SymmetryClass::Central2: return "central2";
    case SymmetryClass::RowMirror3: return "rowmirror3";
    case SymmetryClass::Quarter4: return "quarter4";
  }
  throw std::invalid_argument("class_name: unknown symmetry class");
}

SymmetryClass class_from_name(const std::string& name) {
  for (SymmetryClass c : kAllClasses)
    if (name == class_name(c)) return c;
  // numeric aliases matching the usual 1..4 labelling
  if (name == "0") return SymmetryClass::Plain;
  if (name == "1") return SymmetryClass::Flip1;
  if (name == "2") return SymmetryClass::Central2;
  if (name == "3") return SymmetryClass::RowMirror3;
  if (name == "4") return SymmetryClass::Quarter4;
  throw std::invalid_argument("unknown symmetry class: " + name);
}

int pos(int x, int n) {
  if (x == 0 || x < -n || x > n)
    throw std::out_of_range("site index " + std::to_string(x) +
                            " outside {-n..-1,1..n} for n=" + std::to_string(n));
  return x < 0 ? x + n : x + n - 1;
}

int site(int p, int n) {
  if (p < 0 || p >= 2 * n)
    throw std::out_of_range("storage index " + std::to_string(p) +
                            " outside [0,2n) for n=" + std::to_string(n));
  return p < n ? p - n : p - n + 1;
}

std::pair<int, int> class_map(SymmetryClass c, int x, int y) {
  switch (c) {
    case SymmetryClass::Plain: return {x, y};
    case SymmetryClass::Flip1: return {-y, -x};
    case SymmetryClass::Central2: return {-x, -y};
    case SymmetryClass::RowMirror3: return {-x, y};
    case SymmetryClass::Quarter4: return {y, -x};
  }
  throw std::invalid_argument("class_map: unknown symmetry class");
}

void validate_spec(const EnsembleSpec& spec) {
  if (spec.n < 1)
    throw std::invalid_argument("invalid-size: n must be >= 1, got " +
                                std::to_string(spec.n));
  switch (spec.cls) {
    case SymmetryClass::Plain:
    case SymmetryClass::Flip1:
    case SymmetryClass::Central2:
    case SymmetryClass::RowMirror3:
    case SymmetryClass::Quarter4:
      return;
  }
  throw std::invalid_argument("invalid-class: unknown symmetry class");
}

HermitianMatrix::HermitianMatrix(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("HermitianMatrix: n must be >= 1");
  a_.assign(static_cast<std::size_t>(2 * n) * (2 * n), cplx(0.0, 0.0));
}

std::size_t HermitianMatrix::idx(int x, int y) const {
  return static_cast<std::size_t>(pos(x, n_)) * side() + pos(y, n_);
}

void HermitianMatrix::set(int x, int y, cplx v) {
  if (x == y) {
    if (std::abs(v.imag()) > 0.0)
      throw std::invalid_argument("diagonal entries must be real");
    a_[idx(x, x)] = cplx(v.real(), 0.0);
    return;
  }
  a_[idx(x, y)] = v;
  a_[idx(y, x)] = std::conj(v);
}

double HermitianMatrix::trace_real() const {
  double t = 0.0;
  for (int p = 0; p < side(); ++p) t += raw(p, p).real();
  return t;
}

double HermitianMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

double HermitianMatrix::hermiticity_deviation() const {
  double dev = 0.0;
  const int m = side();
  for (int p = 0; p < m; ++p)
    for (int q = 0; q <= p; ++q)
      dev = std::max(dev, std::abs(raw(p, q) - std::conj(raw(q, p))));
  return dev;
}

}  // namespace rmtsym
