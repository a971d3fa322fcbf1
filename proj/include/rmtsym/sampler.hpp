#pragma once

#include <cstdint>

#include "rmtsym/core.hpp"
#include "rmtsym/orbits.hpp"

namespace rmtsym {

/// An ensemble with its orbit system built once. sample() is pure in
/// (spec, replicate): one independent Gaussian per orbit, drawn from a
/// counter stream keyed by (master_seed, replicate, orbit id) and propagated
/// to all members with the recorded conjugation parity. Safe to call
/// concurrently for distinct replicates.
class Ensemble {
 public:
  explicit Ensemble(EnsembleSpec spec);

  const EnsembleSpec& spec() const { return spec_; }
  const OrbitSystem& orbits() const { return sys_; }

  HermitianMatrix sample(std::uint64_t replicate) const;

 private:
  EnsembleSpec spec_;
  OrbitSystem sys_;
};

/// One-shot convenience; builds the orbit system each call.
HermitianMatrix sample_matrix(const EnsembleSpec& spec, std::uint64_t replicate);

/// max over (x,y) of |W(x,y) - W(class_map(x,y))|. Exactly 0.0 for matrices
/// produced by sample() of the same class.
double validate_symmetry(const HermitianMatrix& W, SymmetryClass cls);

}  // namespace rmtsym
