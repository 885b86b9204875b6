#pragma once

namespace wgof {

/// Standard normal density.
double normal_pdf(double x) noexcept;
double normal_log_pdf(double x) noexcept;

/// Standard normal CDF, computed as erfc(-x/sqrt 2)/2 so both tails keep
/// full relative accuracy.
double normal_cdf(double x) noexcept;

/// Upper tail 1 - normal_cdf(x) without cancellation.
double normal_sf(double x) noexcept;

/// Inverse of the standard normal CDF (Wichura, AS 241, PPND16).
///
/// Relative accuracy is about 1e-16 over (0,1). For p > 1/2 the algorithm
/// works with 1 - p, which is exact in double arithmetic, so callers that
/// hold the complement q = 1 - p more accurately than p should call
/// normal_quantile_upper(q) instead. Returns -inf/+inf at 0/1 and NaN
/// outside [0,1].
double normal_quantile(double p) noexcept;

/// -normal_quantile(q): the point whose upper tail probability is q.
double normal_quantile_upper(double q) noexcept;

/// Probit of a point of (0,1) given as the pair (t, 1 - t). Uses whichever
/// of the two carries more precision.
double probit(double t, double tc) noexcept;

}  // namespace wgof
