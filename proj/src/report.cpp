#include "bsq/report.hpp"

#include <cmath>

#include "bsq/errors.hpp"

namespace bsq {

LogLogFit fit_loglog(std::span<const SweepPoint> points) {
    if (points.size() < 3) throw InvalidArgument("fit_loglog: need at least 3 points");
    const auto n = static_cast<double>(points.size());
    double sx = 0, sy = 0;
    for (const auto& p : points) {
        if (!(p.N > 0.0) || !(p.value > 0.0)) throw InvalidArgument("fit_loglog: N and value must be positive");
        sx += std::log(p.N);
        sy += std::log(p.value);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& p : points) {
        const double dx = std::log(p.N) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(p.value) - my);
    }
    if (sxx == 0.0) throw InvalidArgument("fit_loglog: N values must not all coincide");
    LogLogFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (const auto& p : points) {
        const double r = std::log(p.value) - (fit.intercept + fit.slope * std::log(p.N));
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

}  // namespace bsq
