#pragma once

namespace biocomb {

/// Standard normal CDF, 0.5 * erfc(-z / sqrt(2)). Relative error is that of
/// the C library erfc (about one ulp), well under 1e-15 absolute.
double normal_cdf(double z);

/// Standard normal density.
double normal_pdf(double z);

/// Inverse standard normal CDF for p in (0, 1).
///
/// Acklam's rational approximation (relative error below 1.15e-9) followed
/// by one Halley refinement step against normal_cdf, which brings the
/// result to within a few ulp over the central range.
double normal_quantile(double p);

/// Two-sided critical value z_{1 - alpha/2}.
double two_sided_z(double alpha);

}  // namespace biocomb
