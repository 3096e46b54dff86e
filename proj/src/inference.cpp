#include "biocomb/inference.h"

#include <algorithm>
#include <cmath>

#include "biocomb/errors.h"
#include "biocomb/normal.h"

namespace biocomb {

namespace {

struct ClassCounts {
  std::size_t healthy_le = 0;
  std::size_t n0 = 0;
  std::size_t diseased_le = 0;
  std::size_t n1 = 0;
};

ClassCounts counts_at_fit(const YoudenFit& fit, const BiomarkerPanel& panel) {
  if (fit.weights.size() != panel.biomarkers()) throw ValidationError("fit and panel dimensions differ");
  const ScoreSplit s = project_scores(panel, fit.weights);
  ClassCounts c;
  c.n0 = s.n_healthy();
  c.n1 = s.n_diseased();
  c.healthy_le = static_cast<std::size_t>(std::count_if(s.healthy.begin(), s.healthy.end(),
                                                         [&](double x) { return x <= fit.cutoff; }));
  c.diseased_le = static_cast<std::size_t>(std::count_if(s.diseased.begin(), s.diseased.end(),
                                                          [&](double x) { return x <= fit.cutoff; }));
  return c;
}

struct HalfWidths {
  double below = 0.0;
  double above = 0.0;
};

HalfWidths square_and_add(const ClassCounts& c, double alpha) {
  const double z = two_sided_z(alpha);
  const VarianceBounds v0 = variance_bounds(wilson_interval(c.healthy_le, c.n0, alpha), c.n0);
  const VarianceBounds v1 = variance_bounds(wilson_interval(c.diseased_le, c.n1, alpha), c.n1);
  return {z * std::sqrt(v0.at_lower + v1.at_upper), z * std::sqrt(v0.at_upper + v1.at_lower)};
}

IntervalEstimate around(double center, const HalfWidths& w, double alpha, bool clip) {
  IntervalEstimate out{center - w.below, center + w.above, 1.0 - alpha};
  if (clip) {
    out.lower = std::clamp(out.lower, -1.0, 1.0);
    out.upper = std::clamp(out.upper, -1.0, 1.0);
  }
  return out;
}

}  // namespace

IntervalEstimate wilson_interval(std::size_t successes, std::size_t n, double alpha) {
  if (n < 1) throw ValidationError("wilson_interval: n must be >= 1");
  if (successes > n) throw ValidationError("wilson_interval: successes exceed n");
  const double z = two_sided_z(alpha);
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double scale = 1.0 / (1.0 + z2 / nn);
  const double center = phat + z2 / (2.0 * nn);
  const double spread = z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));

  IntervalEstimate out;
  out.level = 1.0 - alpha;
  // the boundary roots are exact; the closed form can miss them by an ulp
  out.lower = successes == 0 ? 0.0 : std::clamp(scale * (center - spread), 0.0, 1.0);
  out.upper = successes == n ? 1.0 : std::clamp(scale * (center + spread), 0.0, 1.0);
  return out;
}

VarianceBounds variance_bounds(const IntervalEstimate& interval, std::size_t n) {
  if (n < 1) throw ValidationError("variance_bounds: n must be >= 1");
  const double nn = static_cast<double>(n);
  return {interval.lower * (1.0 - interval.lower) / nn, interval.upper * (1.0 - interval.upper) / nn};
}

AdjustedProportions ac_adjusted_proportions(std::size_t neg_at_or_below, std::size_t n0,
                                            std::size_t pos_at_or_below, std::size_t n1, double alpha) {
  if (neg_at_or_below > n0 || pos_at_or_below > n1) throw ValidationError("counts exceed class sizes");
  const double z = two_sided_z(alpha);
  const double z2 = z * z;
  return {(static_cast<double>(neg_at_or_below) + z2 / 2.0) / (static_cast<double>(n0) + z2),
          (static_cast<double>(pos_at_or_below) + z2 / 2.0) / (static_cast<double>(n1) + z2)};
}

YoudenInterval youden_interval(const YoudenFit& fit, const BiomarkerPanel& panel, double alpha, bool clip) {
  const ClassCounts c = counts_at_fit(fit, panel);
  const AdjustedProportions ac = ac_adjusted_proportions(c.healthy_le, c.n0, c.diseased_le, c.n1, alpha);
  YoudenInterval out;
  out.ac_youden = ac.healthy - ac.diseased;
  out.empirical_youden = static_cast<double>(c.healthy_le) / static_cast<double>(c.n0) -
                         static_cast<double>(c.diseased_le) / static_cast<double>(c.n1);
  out.interval = around(out.ac_youden, square_and_add(c, alpha), alpha, clip);
  return out;
}

IntervalEstimate youden_interval_np(const YoudenFit& fit, const BiomarkerPanel& panel, double alpha, bool clip) {
  const ClassCounts c = counts_at_fit(fit, panel);
  const double empirical = static_cast<double>(c.healthy_le) / static_cast<double>(c.n0) -
                           static_cast<double>(c.diseased_le) / static_cast<double>(c.n1);
  return around(empirical, square_and_add(c, alpha), alpha, clip);
}

}  // namespace biocomb
