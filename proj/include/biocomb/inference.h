#pragma once

#include <cstddef>

#include "biocomb/core.h"

namespace biocomb {

struct IntervalEstimate {
  double lower = 0.0;
  double upper = 0.0;
  double level = 0.95;

  double length() const { return upper - lower; }
  bool contains(double x) const { return lower < x && x < upper; }
};

/// Wilson score interval for successes / n at level 1 - alpha. The
/// endpoints are the two roots of (p - phat)^2 = z^2 p (1 - p) / n.
IntervalEstimate wilson_interval(std::size_t successes, std::size_t n, double alpha);

struct VarianceBounds {
  double at_lower = 0.0;  // l (1 - l) / n
  double at_upper = 0.0;  // u (1 - u) / n
};
/// Bernoulli variances evaluated at each endpoint. Not ordered.
VarianceBounds variance_bounds(const IntervalEstimate& interval, std::size_t n);

struct AdjustedProportions {
  double healthy = 0.0;   // p0: shrunk P(score <= c | healthy)
  double diseased = 0.0;  // p1: shrunk P(score <= c | diseased)
};
/// Agresti-Coull point estimates (count + z^2/2) / (n + z^2).
AdjustedProportions ac_adjusted_proportions(std::size_t neg_at_or_below, std::size_t n0,
                                            std::size_t pos_at_or_below, std::size_t n1, double alpha);

struct YoudenInterval {
  double ac_youden = 0.0;         // p0 - p1 with AC shrinkage
  double empirical_youden = 0.0;  // unshrunk, the fit's own estimate
  IntervalEstimate interval;
};

/// Square-and-add Wilson interval centred at the AC-adjusted Youden index.
///
/// Counts are taken on `panel` at the fit's frozen weights and cutoff:
///   J_L = J_ac - z sqrt(Var_l(p0) + Var_u(p1))
///   J_U = J_ac + z sqrt(Var_u(p0) + Var_l(p1))
/// with each Var from that class's Wilson interval around the raw proportion.
/// Set `clip` to clamp the limits to [-1, 1] for reporting.
YoudenInterval youden_interval(const YoudenFit& fit, const BiomarkerPanel& panel, double alpha,
                               bool clip = false);

/// Same half-widths, centred at the empirical Youden index instead.
IntervalEstimate youden_interval_np(const YoudenFit& fit, const BiomarkerPanel& panel, double alpha,
                                    bool clip = false);

}  // namespace biocomb
