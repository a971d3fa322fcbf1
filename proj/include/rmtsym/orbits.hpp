#pragma once

#include "rmtsym/core.hpp"

namespace rmtsym {

/// How the closure constrains an orbit's value. A parity conflict v = conj(v)
/// forces a real value; v = -conj(v) would force a pure imaginary one, which
/// the Hermitian + class-map generators cannot produce but is kept
/// representable for completeness.
enum class OrbitReality { ComplexFree, RealConstrained, ImagConstrained };

struct OrbitMember {
  int x, y;
  bool conjugated;  // member value = conj(representative value)
};

/// One equivalence class of entry positions under Hermitian conjugation and
/// the class map. The representative is the lexicographically smallest member
/// under (pos(x), pos(y)) ordering.
struct Orbit {
  int rep_x, rep_y;
  std::vector<OrbitMember> members;
  OrbitReality reality = OrbitReality::ComplexFree;
};

/// Partition of all (2n)^2 entry positions into constraint orbits; the
/// sampler's fundamental domain.
struct OrbitSystem {
  SymmetryClass cls = SymmetryClass::Plain;
  int n = 0;
  std::vector<Orbit> orbits;
  std::vector<std::int32_t> orbit_of;   // raw position p*2n+q -> orbit id
  std::vector<std::uint8_t> parity_of;  // 1 if conjugated relative to rep

  int side() const { return 2 * n; }
};

/// BFS closure of every position under the generators
///   (x,y) -> (y,x) with conjugation   (Hermiticity)
///   (x,y) -> class_map(cls, x, y)     (no conjugation)
/// with parity tracking. Deterministic for fixed (cls, n).
OrbitSystem build_orbit_system(SymmetryClass cls, int n);

/// Real dimension of the constraint space: 2 per ComplexFree orbit, 1 per
/// constrained orbit.
int free_parameter_count(const OrbitSystem& sys);

}  // namespace rmtsym
