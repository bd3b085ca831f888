#include "mmrclust/stats.hpp"

#include "mmrclust/error.hpp"

#include <cmath>
#include <algorithm>

namespace mmrclust::stats {

namespace {

constexpr int kMaxTerms = 500;
constexpr double kEpsilon = 1e-16;
constexpr double kTiny = 1e-300;

/// Continued fraction for I_x(a, b), convergent for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x)
{
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxTerms; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEpsilon) {
            break;
        }
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x)
{
    if (!(a > 0.0) || !(b > 0.0) || !(x >= 0.0 && x <= 1.0)) {
        throw Error(ErrorCode::InvalidArgument, "incomplete beta needs a, b > 0 and x in [0, 1]");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (x == 1.0) {
        return 1.0;
    }
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof)
{
    if (!(dof > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "degrees of freedom must be positive");
    }
    if (std::isnan(t)) {
        throw Error(ErrorCode::InvalidArgument, "t statistic is NaN");
    }
    if (std::isinf(t)) {
        return 0.0;
    }
    const double x = dof / (dof + t * t);
    const double p = regularized_incomplete_beta(0.5 * dof, 0.5, x);
    return std::clamp(p, 0.0, 1.0);
}

}  // namespace mmrclust::stats
