#pragma once

#include <vector>

namespace frap {

// Standard normal density, CDF, log-CDF and quantile.  The log-CDF switches
// to an asymptotic expansion deep in the lower tail where erfc underflows.
double norm_pdf(double x);
double norm_cdf(double x);
double norm_logcdf(double x);

// Inverse standard normal CDF (Wichura's PPND16 rational approximation,
// accurate to ~1e-15 over (0,1)).  Throws std::invalid_argument outside (0,1).
double norm_quantile(double p);

// log(sum(exp(v))) guarded against overflow; -inf for an empty input.
double logsumexp(const std::vector<double>& v);

}  // namespace frap
