#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rmtsym {

using cplx = std::complex<double>;

/// Index symmetries imposed on top of Hermiticity. Entries are addressed by
/// signed sites x, y in {-n..-1, 1..n}; the constraint of each class is
///   Flip1:      W(x,y) = W(-y,-x)
///   Central2:   W(x,y) = W(-x,-y)
///   RowMirror3: W(x,y) = W(-x,y)
///   Quarter4:   W(x,y) = W(y,-x)
/// and Plain carries no extra constraint.
enum class SymmetryClass { Plain, Flip1, Central2, RowMirror3, Quarter4 };

constexpr SymmetryClass kAllClasses[] = {
    SymmetryClass::Plain, SymmetryClass::Flip1, SymmetryClass::Central2,
    SymmetryClass::RowMirror3, SymmetryClass::Quarter4};

const char* class_name(SymmetryClass c);
SymmetryClass class_from_name(const std::string& name);

/// Signed site -> storage index in [0, 2n). Sites are -n..-1, 1..n; there is
/// no site 0. Throws std::out_of_range outside the domain.
int pos(int x, int n);

/// Storage index -> signed site; inverse of pos.
int site(int p, int n);

inline int mirror(int x) { return -x; }

/// Image of (x, y) under the class map; identity for Plain.
std::pair<int, int> class_map(SymmetryClass c, int x, int y);

/// What to sample: symmetry class, half-size n (side = 2n) and master seed.
/// The per-entry second moment E|W_xy|^2 = 1/(2n) is derived, never stored.
struct EnsembleSpec {
  SymmetryClass cls = SymmetryClass::Plain;
  int n = 1;
  std::uint64_t master_seed = 0;

  int side() const { return 2 * n; }
  double entry_variance() const { return 1.0 / (2.0 * n); }
};

/// Throws std::invalid_argument unless n >= 1 and the class is known.
void validate_spec(const EnsembleSpec& spec);

/// Dense complex Hermitian matrix with signed-site addressing. Hermiticity is
/// maintained structurally: set() writes both (x,y) and (y,x).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n);

  int half_n() const { return n_; }
  int side() const { return 2 * n_; }

  cplx operator()(int x, int y) const { return a_[idx(x, y)]; }
  void set(int x, int y, cplx v);

  cplx raw(int p, int q) const { return a_[static_cast<std::size_t>(p) * side() + q]; }
  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

  double trace_real() const;
  double frobenius_norm() const;
  /// max |W(x,y) - conj(W(y,x))|; 0.0 for any matrix built through set().
  double hermiticity_deviation() const;

 private:
  std::size_t idx(int x, int y) const;
  int n_;
  std::vector<cplx> a_;
};

/// Eigenvalues in ascending order (always 2n of them) and, on request, an
/// orthonormal eigenbasis stored column-major: basis[p + side*i] is component
/// p of eigenvector i.
struct Spectrum {
  int n = 0;
  std::vector<double> eigenvalues;
  std::vector<cplx> basis;

  int side() const { return 2 * n; }
  bool has_basis() const { return !basis.empty(); }
};

}  // namespace rmtsym
