#include <cmath>
#include <numbers>

#include "robin/direct.hpp"
#include "robin/errors.hpp"

namespace robin {

namespace {

constexpr double kSeriesLimit = 15.0;

double series(int order, double x)
{
    const double q = 0.25 * x * x;
    double term = order == 0 ? 1.0 : 0.5 * x;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * static_cast<double>(k + order));
        sum += term;
        if (term < 1e-17 * sum) break;
    }
    return sum;
}

// e^{−x} I_ν(x) ~ (2πx)^{−1/2} Σ (−1)^k a_k(ν) / x^k, summed to its smallest term.
double asymptotic_scaled(int order, double x)
{
    const double mu = 4.0 * order * order;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        const double next = -term * (mu - odd * odd) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) break;
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

void check_argument(int order, double x)
{
    if (order != 0 && order != 1) throw PreconditionError("bessel_i supports orders 0 and 1");
    if (!(x >= 0.0)) throw PreconditionError("bessel_i needs x >= 0");
}

}  // namespace

double bessel_i_scaled(int order, double x)
{
    check_argument(order, x);
    if (x <= kSeriesLimit) return std::exp(-x) * series(order, x);
    return asymptotic_scaled(order, x);
}

double bessel_i(int order, double x)
{
    check_argument(order, x);
    if (x > 700.0) throw RangeError("bessel_i overflows for x > 700; use bessel_i_scaled");
    if (x <= kSeriesLimit) return series(order, x);
    return std::exp(x) * asymptotic_scaled(order, x);
}

DiskEigen disk_ground(double radius, double beta)
{
    if (!(radius > 0.0 && beta > 0.0)) throw PreconditionError("disk_exact needs R > 0 and beta > 0");
    // F(k) = k I₁(kR)/I₀(kR) − β is increasing from −β to ∞; the ratio is < 1 so k > β.
    const auto F = [&](double k) { return k * bessel_i_scaled(1, k * radius) / bessel_i_scaled(0, k * radius) - beta; };
    double lo = 0.0;
    double hi = beta + 1.0 / radius;
    while (F(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
    }
    for (int i = 0; i < 300; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (F(mid) < 0.0) lo = mid; else hi = mid;
    }
    DiskEigen d;
    d.k = 0.5 * (lo + hi);
    d.eigenvalue = -d.k * d.k;
    d.residual = std::abs(F(d.k)) / beta;
    return d;
}

double disk_exact(double radius, double beta) { return disk_ground(radius, beta).eigenvalue; }

}  // namespace robin
