#include "lspec/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lspec {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPointMerge = 1e-7;

struct Probe {
  double g = 0.0;       // residual orthogonal to the eigen-equation span
  double s = 0.0;
  double lambda = 0.0;
};

struct Sampler {
  Mat2 At;
  Vec2 u, v;
  double a = 0.0;

  explicit Sampler(const Mat3& A) : At(A.tilde()), u(A.u()), v(A.v()), a(A.a()) {}

  Probe at(double theta) const {
    const Vec2 xi{std::cos(theta), std::sin(theta)};
    const Vec2 top = At.mul(xi) + u;
    const double third = v.dot(xi) + a;
    Probe p;
    // [xi;1] and [-xi;1] are orthogonal with squared norm 2, so the
    // eigen-equation (A-mu I)[xi;1] = s[-xi;1] decomposes exactly:
    p.lambda = (xi.dot(top) + third) / 2.0;
    p.s = (third - xi.dot(top)) / 2.0;
    p.g = xi.perp().dot(top);
    return p;
  }
};

// lambda with the negative part of the acceptance slack on s removed: an
// accepted probe with s < 0 witnesses the eigenvalue at s = 0 exactly
inline double lam_adj(const Probe& p) { return p.s < 0.0 ? p.lambda - p.s : p.lambda; }

double bisect_sign_change(const Sampler& smp, double lo, double hi, double glo) {
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = smp.at(mid).g;
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// golden-section minimization of f on [lo, hi]
template <class F>
double golden_min(F&& f, double lo, double hi) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

void merge_sorted_intervals(std::vector<Interval>& ivs, double gap) {
  std::sort(ivs.begin(), ivs.end(),
            [](const Interval& l, const Interval& r) { return l.lo < r.lo; });
  std::vector<Interval> out;
  for (const auto& iv : ivs) {
    if (!out.empty() && iv.lo <= out.back().hi + gap)
      out.back().hi = std::max(out.back().hi, iv.hi);
    else
      out.push_back(iv);
  }
  ivs = std::move(out);
}

}  // namespace

Spectrum oracle_spectrum(const Mat3& A, const OracleConfig& cfg) {
  if (cfg.theta_steps < 8) throw std::invalid_argument("oracle: theta_steps too small");
  if (cfg.residual_tol <= 0.0 || cfg.cluster_gap <= 0.0)
    throw std::invalid_argument("oracle: tolerances must be positive");

  const Sampler smp(A);
  const std::size_t N = cfg.theta_steps;
  const double step = 2.0 * kPi / static_cast<double>(N);
  const double scale = std::max(1.0, A.max_abs());
  const double eps_g = cfg.residual_tol * scale;
  const double eps_s = cfg.residual_tol * scale;

  std::vector<Probe> grid(N);
  std::vector<char> ok(N);
  for (std::size_t i = 0; i < N; ++i) {
    grid[i] = smp.at(step * static_cast<double>(i));
    ok[i] = grid[i].g <= eps_g && grid[i].g >= -eps_g && grid[i].s >= -eps_s;
  }

  auto accepted = [&](double theta) {
    const Probe p = smp.at(theta);
    return std::fabs(p.g) <= eps_g && p.s >= -eps_s;
  };

  std::vector<double> point_vals;
  std::vector<Interval> intervals;

  // maximal circular runs of accepted grid points
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // [begin, len]
  {
    std::size_t i = 0;
    if (std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; })) {
      runs.emplace_back(0, N);
    } else {
      // rotate so index 0 is rejected, then scan linearly
      std::size_t start = 0;
      while (ok[start]) ++start;
      for (std::size_t k = 0; k < N; ++k) {
        const std::size_t idx = (start + k) % N;
        if (ok[idx]) {
          if (runs.empty() || i == 0) runs.emplace_back(idx, 0);
          ++runs.back().second;
          i = runs.back().second;
        } else {
          i = 0;
        }
      }
    }
  }

  for (const auto& [begin, len] : runs) {
    double lam_lo = lam_adj(grid[begin]), lam_hi = lam_adj(grid[begin]);
    double th_at_lo = step * static_cast<double>(begin);
    double th_at_hi = th_at_lo;
    for (std::size_t k = 0; k < len; ++k) {
      const std::size_t idx = (begin + k) % N;
      const double th = step * static_cast<double>(idx);
      const double lam = lam_adj(grid[idx]);
      if (lam < lam_lo) { lam_lo = lam; th_at_lo = th; }
      if (lam > lam_hi) { lam_hi = lam; th_at_hi = th; }
    }

    if (len < N) {
      // refine the run edges: bisect the acceptance predicate
      const double th_first = step * static_cast<double>(begin);
      const double th_last = step * static_cast<double>(begin + len - 1);
      for (auto [in, out] : {std::pair{th_first, th_first - step},
                             std::pair{th_last, th_last + step}}) {
        double a_ = in, b_ = out;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (a_ + b_);
          (accepted(mid) ? a_ : b_) = mid;
        }
        const double lam = lam_adj(smp.at(a_));
        lam_lo = std::min(lam_lo, lam);
        lam_hi = std::max(lam_hi, lam);
      }
    }

    // refine interior lambda extrema of the run
    for (auto [th, sgn] : {std::pair{th_at_lo, 1.0}, std::pair{th_at_hi, -1.0}}) {
      const double th_ref =
          golden_min([&](double t) { return sgn * smp.at(t).lambda; },
                     th - step, th + step);
      if (accepted(th_ref)) {
        const double lam = lam_adj(smp.at(th_ref));
        lam_lo = std::min(lam_lo, lam);
        lam_hi = std::max(lam_hi, lam);
      }
    }

    if (lam_hi - lam_lo > cfg.cluster_gap)
      intervals.push_back({lam_lo, lam_hi});
    else
      point_vals.push_back(0.5 * (lam_lo + lam_hi));
  }

  // isolated zeros of g: sign changes and near-touching local minima of |g|
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t j = (i + 1) % N;
    if (ok[i] && ok[j]) continue;  // inside a run, already covered
    const double gi = grid[i].g, gj = grid[j].g;
    const double ti = step * static_cast<double>(i);
    if ((gi > 0.0 && gj < 0.0) || (gi < 0.0 && gj > 0.0)) {
      const double th = bisect_sign_change(smp, ti, ti + step, gi);
      const Probe p = smp.at(th);
      if (std::fabs(p.g) <= eps_g && p.s >= -eps_s) point_vals.push_back(lam_adj(p));
    }
  }
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t ip = (i + N - 1) % N;
    const std::size_t in_ = (i + 1) % N;
    const double ai = std::fabs(grid[i].g);
    if (ai < std::fabs(grid[ip].g) && ai < std::fabs(grid[in_].g) &&
        (grid[ip].g > 0.0) == (grid[in_].g > 0.0)) {
      const double ti = step * static_cast<double>(i);
      const double th =
          golden_min([&](double t) { return std::fabs(smp.at(t).g); },
                     ti - step, ti + step);
      const Probe p = smp.at(th);
      if (std::fabs(p.g) <= eps_g && p.s >= -eps_s) point_vals.push_back(lam_adj(p));
    }
  }

  merge_sorted_intervals(intervals, kPointMerge);

  std::sort(point_vals.begin(), point_vals.end());
  Spectrum s;
  s.intervals = std::move(intervals);
  for (double lam : point_vals) {
    bool covered = false;
    for (const auto& iv : s.intervals)
      if (lam >= iv.lo - kPointMerge && lam <= iv.hi + kPointMerge) covered = true;
    if (covered) continue;
    if (!s.points.empty() &&
        std::fabs(lam - s.points.back().value) <=
            kPointMerge * std::max(1.0, std::fabs(lam))) {
      continue;
    }
    LEigenvalue e;
    e.value = lam;
    e.boundary = true;
    s.points.push_back(e);
  }

  // interior part via the standard eigenvalue characterization
  const double int_tol = std::max(cfg.residual_tol * 0.1, 1e-10);
  for (const auto& e : interior_spectrum(A, int_tol)) {
    bool merged = false;
    for (auto& p : s.points) {
      if (std::fabs(p.value - e.value) <=
          kPointMerge * std::max(1.0, std::fabs(e.value))) {
        p.interior = true;
        p.interior_xi = e.interior_xi;
        merged = true;
        break;
      }
    }
    if (!merged) s.points.push_back(e);
  }

  canonicalize(s, std::max(cfg.residual_tol, 1e-9));
  return s;
}

namespace {

std::vector<Interval> normalize_set(std::vector<Interval> ivs) {
  merge_sorted_intervals(ivs, 0.0);
  return ivs;
}

double dist_to_set(double x, const std::vector<Interval>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& iv : set) {
    double d = 0.0;
    if (x < iv.lo) d = iv.lo - x;
    else if (x > iv.hi) d = x - iv.hi;
    best = std::min(best, d);
  }
  return best;
}

// directed Hausdorff sup_{x in a} dist(x, b); the sup over an interval of a
// is attained at one of its endpoints or at a midpoint of a gap of b.
double directed_hausdorff(const std::vector<Interval>& a,
                          const std::vector<Interval>& b,
                          std::vector<double>* witnesses, double tol) {
  if (a.empty()) return 0.0;
  if (b.empty()) {
    double worst = 0.0;
    for (const auto& iv : a) {
      worst = std::max({worst, std::fabs(iv.lo), std::fabs(iv.hi), 1.0});
      if (witnesses) {
        witnesses->push_back(iv.lo);
        if (iv.hi != iv.lo) witnesses->push_back(iv.hi);
      }
    }
    return worst;
  }
  double worst = 0.0;
  auto consider = [&](double x) {
    const double d = dist_to_set(x, b);
    worst = std::max(worst, d);
    if (witnesses && d > tol) witnesses->push_back(x);
  };
  for (const auto& iv : a) {
    consider(iv.lo);
    consider(iv.hi);
    for (std::size_t k = 0; k + 1 < b.size(); ++k) {
      const double mid = 0.5 * (b[k].hi + b[k + 1].lo);
      if (mid > iv.lo && mid < iv.hi) consider(mid);
    }
  }
  return worst;
}

}  // namespace

std::vector<Interval> spectrum_point_set(const Spectrum& s) {
  std::vector<Interval> out = s.intervals;
  for (const auto& p : s.points) out.push_back({p.value, p.value});
  return normalize_set(std::move(out));
}

std::vector<Interval> interior_point_set(const Spectrum& s) {
  std::vector<Interval> out;
  for (const auto& p : s.points)
    if (p.interior) out.push_back({p.value, p.value});
  return normalize_set(std::move(out));
}

std::vector<Interval> boundary_point_set(const Spectrum& s) {
  std::vector<Interval> out = s.intervals;
  for (const auto& p : s.points)
    if (p.boundary) out.push_back({p.value, p.value});
  return normalize_set(std::move(out));
}

double hausdorff_distance(const std::vector<Interval>& a,
                          const std::vector<Interval>& b) {
  if (a.empty() && b.empty()) return 0.0;
  return std::max(directed_hausdorff(a, b, nullptr, 0.0),
                  directed_hausdorff(b, a, nullptr, 0.0));
}

SpectrumDiff spectra_equal(const Spectrum& a, const Spectrum& b, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("spectra_equal: tol must be positive");
  const auto sa = spectrum_point_set(a);
  const auto sb = spectrum_point_set(b);
  SpectrumDiff d;
  const double ab = directed_hausdorff(sa, sb, &d.missing, tol);
  const double ba = directed_hausdorff(sb, sa, &d.extra, tol);
  d.hausdorff_distance = std::max(ab, ba);
  return d;
}

}  // namespace lspec
