#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "lspec/smallmat.hpp"

namespace lspec {

// Decomposition lambda = mu + s witnessing a boundary Lorentz eigenvalue,
// together with the unit vector xi of the eigenvector [xi; 1].
struct BoundaryWitness {
  double mu = 0.0;
  double s = 0.0;
  Vec2 xi{1.0, 0.0};
};

struct LEigenvalue {
  double value = 0.0;
  bool interior = false;
  bool boundary = false;
  std::optional<Vec2> interior_xi;          // ||xi|| < 1
  std::optional<BoundaryWitness> boundary_witness;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Canonicalized Lorentz spectrum: sorted deduplicated points plus disjoint
// closed boundary intervals.
struct Spectrum {
  std::vector<LEigenvalue> points;
  std::vector<Interval> intervals;
};

// Structured parameter families whose spectra have closed forms.
struct DiagCA {
  double c = 0.0, a = 0.0;
};
struct ZeroTilde {
  Vec2 u, v;
  double a = 0.0;
};
struct CIva {
  double c = 0.0;
  Vec2 v;
  double a = 0.0;
};
struct OffDiag {
  double c = 0.0, d = 0.0, v1 = 0.0, v2 = 0.0, a = 0.0;
};
struct GeneralFamily {};

using FamilyTag = std::variant<DiagCA, ZeroTilde, CIva, OffDiag, GeneralFamily>;

struct UnsupportedFamily : std::runtime_error {
  UnsupportedFamily() : std::runtime_error("no closed form for the General family") {}
};
struct FamilyDomainError : std::runtime_error {
  explicit FamilyDomainError(const char* what) : std::runtime_error(what) {}
};
struct InvalidMu : std::runtime_error {
  InvalidMu() : std::runtime_error("mu is not an eigenvalue of the leading block at tolerance") {}
};

Mat3 assemble(const FamilyTag& f);

// Interior Lorentz eigenvalues: real standard eigenvalues whose eigenvector
// scales to [xi; 1] with ||xi|| < 1.
std::vector<LEigenvalue> interior_spectrum(const Mat3& A, double tol);

// Boundary candidates with mu not an eigenvalue of the leading block:
// real roots of ||adj(At - mu I) u||^2 - det(At - mu I)^2 = 0.
std::vector<LEigenvalue> solve_system_I(const Mat3& A, double tol);

struct SystemOut {
  std::vector<LEigenvalue> points;
  std::optional<Interval> interval;
};

// Boundary candidates for an eigenvalue mu of the leading block, dispatching
// on geometric multiplicity and the two range-membership tests.
SystemOut solve_systems_II_III_IV(const Mat3& A, double mu, double tol);

struct BoundaryOut {
  std::vector<LEigenvalue> points;
  std::vector<Interval> intervals;
};

BoundaryOut boundary_spectrum(const Mat3& A, double tol);

// Fires iff A = [c I, 0; v^T, a] with v != 0 and c < a + ||v||; returns
// the interval [max{c, (a+c-||v||)/2}, (a+c+||v||)/2].
std::optional<Interval> detect_infinite(const Mat3& A, double tol);

Spectrum full_spectrum(const Mat3& A, double tol);

// Closed-form spectrum of a family, used as an oracle for full_spectrum.
Spectrum closed_form_spectrum(const FamilyTag& f);

void canonicalize(Spectrum& s, double tol);

// Residual of (A - lambda I)[xi;1] = s[-xi;1].
double boundary_residual(const Mat3& A, double lambda, const Vec2& xi, double s);

}  // namespace lspec
