#include <doctest.h>

#include <cmath>
#include <random>

#include "robin/errors.hpp"
#include "robin/model1d.hpp"

using namespace robin;

namespace {

// Plain bisection in k on the unreduced equations, long double.
long double oracle_robin_robin(long double a, long double beta, long double gamma)
{
    const auto f = [&](long double k) {
        return std::log(k + beta) + std::log(k + gamma) - std::log(k - beta) - std::log(k - gamma) - 2.0L * k * a;
    };
    long double lo = beta * (1.0L + 1e-15L), hi = beta * (1.0L + 41.0L * std::exp(-2.0L * beta * a));
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        (f(mid) > 0.0L ? lo : hi) = mid;
    }
    return 0.5L * (lo + hi);
}

long double oracle_robin_dirichlet(long double a, long double beta)
{
    const auto f = [&](long double k) { return std::log(beta + k) - std::log(beta - k) - 2.0L * k * a; };
    long double lo = std::sqrt(beta * beta - beta / a), hi = beta;
    for (int i = 0; i < 200; ++i) {
        const long double mid = 0.5L * (lo + hi);
        (f(mid) < 0.0L ? lo : hi) = mid;
    }
    return 0.5L * (lo + hi);
}

}  // namespace

TEST_CASE("robin-robin ground state, a=0.5, beta=10, gamma=1")
{
    const GroundStateCertificate c = robin_robin_ground(0.5, 10.0, 1.0);
    const Interval e = robin_robin_bounds(0.5, 10.0, 1.0);
    CHECK(e.hi == -100.0);
    CHECK(e.lo == doctest::Approx(-(100.0 + 12300.0 * std::exp(-10.0))).epsilon(1e-15));
    CHECK(e.lo == doctest::Approx(-100.55841913607856).epsilon(1e-14));
    CHECK(c.strictly_enclosed());
    CHECK(e.lo < c.eigenvalue);
    CHECK(c.eigenvalue < e.hi);
    CHECK(c.k > 10.0);
    CHECK(c.k < robin_robin_root_bound(0.5, 10.0));
    CHECK(robin_robin_root_bound(0.5, 10.0) == doctest::Approx(10.0 * (1.0 + 41.0 * std::exp(-10.0))));
    // mpmath, 50 digits
    CHECK(c.k == doctest::Approx(10.001108583084465).epsilon(1e-15));
    CHECK(std::exp(c.log_gap) == doctest::Approx(0.0011085830844650488).epsilon(1e-12));
    CHECK(c.eigenvalue == doctest::Approx(-100.02217289064575614).epsilon(1e-15));
    CHECK(c.residual <= 1e-12);
    CHECK_FALSE(c.extended_precondition);
}

TEST_CASE("robin-robin with a Neumann far end")
{
    const GroundStateCertificate c = robin_robin_ground(0.5, 10.0, 0.0);
    CHECK(c.strictly_enclosed());
    CHECK(static_cast<double>(oracle_robin_robin(0.5L, 10.0L, 0.0L)) == doctest::Approx(c.k).epsilon(1e-14));
    // (k+β)e^{−ka} = (k−β)e^{ka}
    const double k = c.k;
    CHECK((k + 10.0) * std::exp(-0.5 * k) == doctest::Approx((k - 10.0) * std::exp(0.5 * k)).epsilon(1e-10));
}

TEST_CASE("robin-robin against the unreduced equation")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ua(0.05, 2.0), ub(2.0, 40.0), ug(-0.45, 0.45);
    int checked = 0;
    while (checked < 200) {
        const double a = ua(rng), beta = ub(rng), gamma = ug(rng) * beta;
        if (beta * a <= 1.0 || beta * a > 12.0) continue;
        const GroundStateCertificate c = robin_robin_ground(a, beta, gamma);
        const double k = static_cast<double>(oracle_robin_robin(a, beta, gamma));
        CHECK(c.k == doctest::Approx(k).epsilon(1e-13));
        CHECK(c.extended_precondition == (gamma < 0.0));
        ++checked;
    }
}

TEST_CASE("robin-dirichlet ground state, a=0.5, beta=10")
{
    const GroundStateCertificate c = robin_dirichlet_ground(0.5, 10.0);
    const Interval e = robin_dirichlet_bounds(0.5, 10.0);
    CHECK(e.lo == -100.0);
    CHECK(e.hi == doctest::Approx(-(100.0 - 400.0 * std::exp(-5.0))).epsilon(1e-15));
    CHECK(e.hi == doctest::Approx(-97.304821200365813).epsilon(1e-14));
    CHECK(robin_dirichlet_root_floor(0.5, 10.0) == doctest::Approx(std::sqrt(80.0)).epsilon(1e-15));
    CHECK(robin_dirichlet_root_floor(0.5, 10.0) == doctest::Approx(8.944).epsilon(1e-4));
    CHECK(c.k > robin_dirichlet_root_floor(0.5, 10.0));
    CHECK(c.k < 10.0);
    CHECK(c.strictly_enclosed());
    CHECK(c.k == doctest::Approx(9.9990912171523255).epsilon(1e-15));
    CHECK(c.eigenvalue == doctest::Approx(-99.981825168932774).epsilon(1e-15));
    CHECK(10.0 - c.k == doctest::Approx(9.0878284767449e-4).epsilon(1e-10));
    CHECK(c.residual <= 1e-12);
}

TEST_CASE("robin-dirichlet ground state, a=0.2, beta=10")
{
    const GroundStateCertificate c = robin_dirichlet_ground(0.2, 10.0);
    CHECK(c.k == doctest::Approx(9.5750402407726874).epsilon(1e-15));
    CHECK(c.eigenvalue == doctest::Approx(-91.681395612416284).epsilon(1e-15));
    CHECK(c.strictly_enclosed());
    const Interval e = robin_dirichlet_bounds(0.2, 10.0);
    CHECK(e.lo == -100.0);
    CHECK(e.hi == doctest::Approx(-100.0 * (1.0 - 4.0 * std::exp(-2.0))).epsilon(1e-15));
    CHECK(e.hi == doctest::Approx(-45.865886705354923).epsilon(1e-14));
    CHECK(static_cast<double>(oracle_robin_dirichlet(0.2L, 10.0L)) == doctest::Approx(c.k).epsilon(1e-14));
}

TEST_CASE("a priori bounds for small and large beta a")
{
    const Interval small = robin_robin_bounds(1.0, 2.0, 0.5);
    CHECK(small.hi == -4.0);
    CHECK(small.lo == doctest::Approx(-(4.0 + 492.0 * std::exp(-4.0))).epsilon(1e-15));
    CHECK(small.lo == doctest::Approx(-13.011294333257217).epsilon(1e-14));

    double prev2 = 1e300, prev3 = 1e300;
    for (double beta : {10.0, 20.0, 40.0, 80.0, 160.0}) {
        const double w2 = robin_robin_bounds(1.0, beta, 1.0).width() / (beta * beta);
        const double w3 = robin_dirichlet_bounds(1.0, beta).width() / (beta * beta);
        CHECK(w2 <= prev2);
        CHECK(w3 <= prev3);
        prev2 = w2;
        prev3 = w3;
    }
    CHECK(prev2 < 1e-100);
    CHECK(prev3 < 1e-60);
}

TEST_CASE("preconditions")
{
    CHECK_THROWS_AS(robin_robin_ground(0.5, 2.0, 1.0), PreconditionError);  // β = 2γ
    CHECK_THROWS_AS(robin_robin_ground(0.5, 2.0, 1.5), PreconditionError);
    CHECK_THROWS_AS(robin_robin_ground(0.1, 10.0, 1.0), PreconditionError);  // βa = 1
    CHECK_THROWS_AS(robin_robin_ground(-0.5, 10.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(robin_robin_ground(0.5, 10.0, -6.0), PreconditionError);  // β < 2|γ|
    CHECK_THROWS_AS(robin_robin_bounds(0.5, 2.0, 1.0), PreconditionError);
    CHECK_THROWS_AS(robin_dirichlet_ground(0.1, 10.0), PreconditionError);  // βa = 1 ≤ 4/3
    CHECK_THROWS_AS(robin_dirichlet_ground(0.4 / 3.0, 10.0), PreconditionError);
    CHECK_THROWS_AS(robin_dirichlet_bounds(0.1, 10.0), PreconditionError);
    CHECK(robin_robin_ground(0.5, 10.0, -2.0).extended_precondition);
    CHECK(robin_robin_ground(0.5, 10.0, -2.0).strictly_enclosed());
}

TEST_CASE("strict enclosures on random parameters")
{
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> la(std::log(0.05), std::log(2.0)), lb(std::log(2.0), std::log(200.0));
    std::uniform_real_distribution<double> ug(0.0, 0.4999);
    int n2 = 0, n3 = 0;
    while (n2 < 1000 || n3 < 1000) {
        const double a = std::exp(la(rng)), beta = std::exp(lb(rng));
        if (n2 < 1000 && beta * a > 1.0) {
            const GroundStateCertificate c = robin_robin_ground(a, beta, ug(rng) * beta);
            CHECK(c.strictly_enclosed());
            CHECK(c.enclosure.contains(c.eigenvalue));
            CHECK(c.residual <= 1e-12);
            ++n2;
        }
        if (n3 < 1000 && beta * a > 4.0 / 3.0) {
            const GroundStateCertificate c = robin_dirichlet_ground(a, beta);
            CHECK(c.strictly_enclosed());
            CHECK(c.enclosure.contains(c.eigenvalue));
            CHECK(c.residual <= 1e-12);
            ++n3;
        }
    }
}

TEST_CASE("defining functions change sign exactly once")
{
    const auto sign_changes = [](auto f, double lo, double hi) {
        int changes = 0;
        double prev = f(lo + (hi - lo) * 1e-9);
        for (int i = 1; i <= 1000; ++i) {
            const double v = f(lo + (hi - lo) * (i / 1000.0));
            changes += (v > 0.0) != (prev > 0.0);
            prev = v;
        }
        return changes;
    };
    for (double a : {0.2, 0.5, 1.0}) {
        for (double beta : {8.0, 15.0}) {
            const double gamma = 1.0;
            const auto g = [&](double k) {
                return std::log(k + beta) + std::log(k + gamma) - std::log(k - beta) - std::log(k - gamma) - 2.0 * k * a;
            };
            CHECK(sign_changes(g, beta, robin_robin_root_bound(a, beta)) == 1);
            const auto p = [&](double k) { return std::log(beta + k) - std::log(beta - k) - 2.0 * k * a; };
            CHECK(sign_changes(p, robin_dirichlet_root_floor(a, beta), std::nextafter(beta, 0.0)) == 1);
        }
    }
}

TEST_CASE("ground states decrease with beta")
{
    double prev_rr = 0.0, prev_rd = 0.0;
    for (double beta : {10.0, 20.0, 40.0, 80.0}) {
        const double rr = robin_robin_ground(0.5, beta, 1.0).eigenvalue;
        const double rd = robin_dirichlet_ground(0.5, beta).eigenvalue;
        CHECK(rr <= prev_rr);
        CHECK(rd <= prev_rd);
        prev_rr = rr;
        prev_rd = rd;
    }
}

TEST_CASE("robin-robin and robin-dirichlet agree for large beta a")
{
    for (double gamma : {0.0, 1.0}) {
        const double a = 2.0, beta = 5.0;
        const double diff = std::abs(robin_robin_ground(a, beta, gamma).eigenvalue - robin_dirichlet_ground(a, beta).eigenvalue);
        CHECK(diff <= std::max(123.0 * std::exp(-2.0 * beta * a), 4.0 * std::exp(-beta * a)) * beta * beta);
    }
}
