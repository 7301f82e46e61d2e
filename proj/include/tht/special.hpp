#pragma once

namespace tht {

/// Real dilogarithm Li2(x) = -int_0^x ln(1-t)/t dt for any real x.
double dilog(double x);

/// J(s,h) = p.v. int_{-h}^{h} ln|tau| / (tau - s) dtau for 0 < |s| < h.
/// Closed form via dilogarithms; odd in s.
double pv_log_kernel(double s, double h);

}  // namespace tht
