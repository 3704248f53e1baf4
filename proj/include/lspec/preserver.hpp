#pragma once

#include <cstdint>

#include "lspec/oracle.hpp"
#include "lspec/spectrum.hpp"

namespace lspec {

// Linear operator on 3x3 matrices in the column-major unit-matrix basis
// E11, E21, E31, E12, E22, E32, E13, E23, E33.
struct LinearMap3 {
  double m[9][9] = {};

  static LinearMap3 identity() {
    LinearMap3 r;
    for (int i = 0; i < 9; ++i) r.m[i][i] = 1.0;
    return r;
  }
};

struct NotOrthogonal : std::runtime_error {
  NotOrthogonal() : std::runtime_error("q is not orthogonal") {}
};
struct NotCanonical : std::runtime_error {
  NotCanonical()
      : std::runtime_error("map is not a conjugation by diag(Q, 1)") {}
};

// phi(A) = (Q + [1]) A (Q + [1])^T as a 9x9 operator, i.e. the Kronecker
// square of the extended orthogonal matrix.
LinearMap3 make_preserver(const Mat2& q);

Mat3 apply_map(const LinearMap3& map, const Mat3& A);

// Deterministic test battery: fixed structured prefix (identities, unit
// matrices, each boundary-structure class, infinite-spectrum forms, symmetric
// zero-block cases) followed by seeded dense random fill up to count.
std::vector<Mat3> battery_gen(std::uint64_t seed, std::size_t count);

struct PreserverVerdict {
  bool is_preserver = false;
  std::optional<Mat3> witness;          // first battery failure
  std::optional<Spectrum> witness_spectrum;
  std::optional<Spectrum> image_spectrum;
  std::optional<Mat2> q_recovered;
};

// Sampling check: map(I) = I and spectral equality over the battery; on
// success attempts to recover Q and verify the canonical form entrywise.
PreserverVerdict check_preserver(const LinearMap3& map, std::uint64_t seed,
                                 std::size_t count, double tol);

// Extract Q from the images of E31 and E32; throws NotCanonical when the map
// is not a conjugation of the expected block form.
Mat2 recover_q(const LinearMap3& map, double tol);

struct NatureVerdict {
  bool preserves_nature = false;
  std::optional<Mat3> witness;
  std::optional<Spectrum> witness_spectrum;
  std::optional<Spectrum> image_spectrum;
};

// Checks that interior and boundary parts match separately over the battery.
NatureVerdict check_nature(const LinearMap3& map, std::uint64_t seed,
                           std::size_t count, double tol);

}  // namespace lspec
