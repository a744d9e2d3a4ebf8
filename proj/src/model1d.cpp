#include "robin/model1d.hpp"

#include <cmath>
#include <sstream>

#include "robin/errors.hpp"

namespace robin {

std::string to_string(ModelOperator op)
{
    return op == ModelOperator::robin_robin ? "robin-robin" : "robin-dirichlet";
}

namespace {

constexpr int kMaxBisections = 200;
constexpr double kRelTol = 1e-13;

std::string describe(double a, double beta, double gamma)
{
    std::ostringstream os;
    os.precision(17);
    os << "(a = " << a << ", beta = " << beta << ", gamma = " << gamma << ")";
    return os.str();
}

void check_robin_robin(double a, double beta, double gamma)
{
    if (!(a > 0.0)) throw PreconditionError("robin-robin: a > 0 fails " + describe(a, beta, gamma));
    if (!(beta > 2.0 * std::abs(gamma)))
        throw PreconditionError("robin-robin: beta > 2 gamma fails " + describe(a, beta, gamma));
    if (!(beta * a > 1.0)) throw PreconditionError("robin-robin: beta a > 1 fails " + describe(a, beta, gamma));
}

void check_robin_dirichlet(double a, double beta)
{
    if (!(a > 0.0 && beta > 0.0)) throw PreconditionError("robin-dirichlet: a > 0 and beta > 0 required");
    if (!(beta * a > 4.0 / 3.0)) {
        std::ostringstream os;
        os.precision(17);
        os << "robin-dirichlet: beta a > 4/3 fails (a = " << a << ", beta = " << beta << ")";
        throw PreconditionError(os.str());
    }
}

// Bisection in x = log s for an increasing function F(s) with F(e^lo) < 0 < F(e^hi).
template <typename F>
double bisect_log(F&& f, double lo, double hi, int* iterations)
{
    // Runs past the 1e-13 tolerance to the last representable midpoint so the
    // residual of the defining equation also meets 1e-12 when the root is large.
    int it = 0;
    while (it < kMaxBisections) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (f(mid) < 0.0) lo = mid; else hi = mid;
        ++it;
        if (hi - lo <= kRelTol * 1e-3) break;
    }
    *iterations = it;
    return 0.5 * (lo + hi);
}

}  // namespace

double robin_robin_root_bound(double a, double beta) { return (1.0 + 41.0 * std::exp(-2.0 * beta * a)) * beta; }

double robin_dirichlet_root_floor(double a, double beta) { return std::sqrt(beta * beta - beta / a); }

Interval robin_robin_bounds(double a, double beta, double gamma)
{
    check_robin_robin(a, beta, gamma);
    const double b2 = beta * beta;
    return {-b2 * (1.0 + 123.0 * std::exp(-2.0 * beta * a)), -b2};
}

Interval robin_dirichlet_bounds(double a, double beta)
{
    check_robin_dirichlet(a, beta);
    const double b2 = beta * beta;
    return {-b2, -b2 * (1.0 - 4.0 * std::exp(-beta * a))};
}

GroundStateCertificate robin_robin_ground(double a, double beta, double gamma)
{
    check_robin_robin(a, beta, gamma);
    GroundStateCertificate c;
    c.op = ModelOperator::robin_robin;
    c.a = a;
    c.beta = beta;
    c.gamma = gamma;
    c.extended_precondition = gamma < 0.0;
    c.enclosure = robin_robin_bounds(a, beta, gamma);

    // k = β + s. (k+β)/(k−β) = ((k−γ)/(k+γ)) e^{2ka} becomes H(s) = 0 with
    // H(s) = log s − log(2β+s) + log((β+s−γ)/(β+s+γ)) + 2(β+s)a, increasing in s.
    const auto H = [&](double x) {
        const double s = std::exp(x);
        return x - std::log(2.0 * beta + s) + std::log1p(-2.0 * gamma / (beta + s + gamma)) + 2.0 * (beta + s) * a;
    };
    // s < 41βe^{−2βa}; the log form avoids underflow for large βa.
    const double hi = std::log(41.0 * beta) - 2.0 * beta * a;
    double lo = hi - 40.0;
    while (H(lo) >= 0.0) lo -= 40.0;
    if (!(H(hi) > 0.0)) throw ConvergenceError("robin-robin: root bound does not bracket " + describe(a, beta, gamma));

    c.log_gap = bisect_log(H, lo, hi, &c.iterations);
    const double s = std::exp(c.log_gap);
    c.k = beta + s;
    c.eigenvalue = -c.k * c.k;
    c.residual = std::abs(H(c.log_gap));
    return c;
}

GroundStateCertificate robin_dirichlet_ground(double a, double beta)
{
    check_robin_dirichlet(a, beta);
    GroundStateCertificate c;
    c.op = ModelOperator::robin_dirichlet;
    c.a = a;
    c.beta = beta;
    c.enclosure = robin_dirichlet_bounds(a, beta);

    // k = β − s with s ∈ (0, β − k₀). log(β+k) − log(β−k) − 2ka = 0 becomes
    // P(s) = log s − log(2β − s) + 2(β − s)a = 0, P increasing on that range.
    const auto P = [&](double x) {
        const double s = std::exp(x);
        return x - std::log(2.0 * beta - s) + 2.0 * (beta - s) * a;
    };
    // β − k₀ in cancellation-free form.
    const double s_max = (beta / a) / (beta + robin_dirichlet_root_floor(a, beta));
    const double hi = std::log(s_max);
    double lo = std::min(hi, std::log(2.0 * beta) - beta * a) - 40.0;
    while (P(lo) >= 0.0) lo -= 40.0;
    if (!(P(hi) > 0.0)) throw ConvergenceError("robin-dirichlet: k0 does not bracket the root");

    c.log_gap = bisect_log(P, lo, hi, &c.iterations);
    const double s = std::exp(c.log_gap);
    c.k = beta - s;
    c.eigenvalue = -c.k * c.k;
    c.residual = std::abs(P(c.log_gap));
    return c;
}

double GroundStateCertificate::log_excess() const
{
    const double s = std::exp(log_gap);
    return op == ModelOperator::robin_robin ? log_gap + std::log(2.0 * beta + s) : log_gap + std::log(2.0 * beta - s);
}

bool GroundStateCertificate::strictly_enclosed() const
{
    if (op == ModelOperator::robin_robin) {
        // β² < −E  ⇔  gap > 0;  −E − β² < 123β²e^{−2βa}
        return std::isfinite(log_gap) && log_excess() < std::log(123.0) + 2.0 * std::log(beta) - 2.0 * beta * a;
    }
    // β² − (−E) > 0 ⇔ gap > 0;  β² − (−E) < 4β²e^{−βa}
    return std::isfinite(log_gap) && k > 0.0 && log_excess() < std::log(4.0) + 2.0 * std::log(beta) - beta * a;
}

}  // namespace robin
