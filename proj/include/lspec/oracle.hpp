#pragma once

#include "lspec/spectrum.hpp"

namespace lspec {

struct OracleConfig {
  std::size_t theta_steps = 100000;
  double residual_tol = 1e-7;
  // accepted boundary values spanning more than this become an interval
  double cluster_gap = 1e-4;
};

// Independent Lorentz-spectrum computation: dense sweep of the unit circle
// for boundary eigenvalues plus the standard interior test.  Shares no code
// with the system-based boundary solver.
Spectrum oracle_spectrum(const Mat3& A, const OracleConfig& cfg = {});

struct SpectrumDiff {
  double hausdorff_distance = 0.0;
  std::vector<double> missing;  // sample values of a that b does not cover
  std::vector<double> extra;    // sample values of b that a does not cover
};

// Set representations: points as degenerate intervals, sorted and disjoint.
std::vector<Interval> spectrum_point_set(const Spectrum& s);
std::vector<Interval> interior_point_set(const Spectrum& s);
std::vector<Interval> boundary_point_set(const Spectrum& s);

double hausdorff_distance(const std::vector<Interval>& a,
                          const std::vector<Interval>& b);

// Hausdorff comparison of the two spectra as subsets of the real line.
SpectrumDiff spectra_equal(const Spectrum& a, const Spectrum& b, double tol);

}  // namespace lspec
