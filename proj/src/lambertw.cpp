#include "groklab/lambertw.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace groklab {

double lambert_w_minus1(double x) {
    constexpr double kE = 2.718281828459045235360287471353;
    const double branch = -1.0 / kE;
    if (!(x >= branch && x < 0.0)) {
        throw std::domain_error("lambert_w_minus1: argument " + std::to_string(x) +
                                " outside [-1/e, 0)");
    }

    const double s = 1.0 + kE * x;  // 0 at the branch point
    if (s <= 0.0) return -1.0;

    double w;
    if (x > -0.25) {
        // Asymptotic seed for small |x|.
        const double L1 = std::log(-x);
        const double L2 = std::log(-L1);
        w = L1 - L2 + L2 / L1;
    } else {
        const double u = std::sqrt(2.0 * s);
        w = -1.0 - u - u * u / 3.0 - 11.0 / 72.0 * u * u * u;
        if (u < 1e-7) return w;  // series already past full precision here
    }

    for (int it = 0; it < 100; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        const double w1 = w + 1.0;
        const double denom = ew * w1 - (w + 2.0) * f / (2.0 * w1);
        const double step = f / denom;
        w -= step;
        if (std::abs(step) <= 1e-12 * (1.0 + std::abs(w))) return w;
    }
    throw std::runtime_error("lambert_w_minus1: no convergence for x = " + std::to_string(x));
}

}  // namespace groklab
