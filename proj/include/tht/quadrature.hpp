#pragma once

#include <functional>
#include <span>
#include <vector>

namespace tht {

/// Gauss-Legendre rule on [-1,1].  Nodes ascending.
struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

/// Cached rule of order n (nodes via Newton on the Legendre polynomial).
const QuadRule& gauss_legendre(int n);

struct Panel {
    double lo, hi;
};

std::vector<Panel> uniform_panels(double lo, double hi, int count);

/// Panels on [lo,hi] shrinking geometrically toward one end so integrands
/// with a logarithmic (or similar integrable) singularity there are resolved.
/// The smallest panel has width ~ floor_width; ratio is the geometric factor.
/// toward_lo = true grades into `lo`.
std::vector<Panel> graded_panels(double lo, double hi, bool toward_lo,
                                 double ratio = 2.0, double floor_width = 0.0);

/// Graded toward both ends; interior split at the midpoint.
std::vector<Panel> double_graded_panels(double lo, double hi,
                                        double ratio = 2.0, double floor_width = 0.0);

void append_panels(std::vector<Panel>& dst, const std::vector<Panel>& src);

double integrate(const std::function<double(double)>& f,
                 std::span<const Panel> panels, int pts = 12);

double integrate(const std::function<double(double)>& f,
                 double lo, double hi, int pts = 12, int count = 8);

}  // namespace tht
