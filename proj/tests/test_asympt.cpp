#include <doctest.h>

#include <cmath>
#include <numbers>

#include "robin/asympt.hpp"
#include "robin/direct.hpp"
#include "robin/errors.hpp"

using namespace robin;
using std::numbers::pi;

namespace {

DomainBoundary disk(double R) { return DomainBoundary({BoundaryArc(CircleArc{{0.0, 0.0}, R})}); }

LineFit width_slope(MRule rule, std::size_t count)
{
    BracketOptions o;
    o.m_rule = rule;
    const auto records = sweep(disk(1.0), geometric_betas(100.0, 1e4, count), {Method::bracket}, o);
    std::vector<double> x, y;
    for (const SweepRecord& r : records) {
        REQUIRE(r.ok);
        x.push_back(r.beta);
        y.push_back(*r.width());
    }
    return loglog_slope(x, y);
}

}  // namespace

TEST_CASE("methods")
{
    CHECK(parse_method("bracket") == Method::bracket);
    CHECK(parse_method("bessel") == Method::bessel);
    CHECK(to_string(Method::bessel) == "bessel");
    CHECK_THROWS_AS(parse_method("fd"), ParseError);
}

TEST_CASE("disk radius detection")
{
    CHECK(disk_radius(disk(2.5)) == doctest::Approx(2.5));
    CHECK_FALSE(disk_radius(DomainBoundary({BoundaryArc(EllipseArc{{0.0, 0.0}, 2.0, 1.0})})));
    CHECK_FALSE(disk_radius(DomainBoundary({BoundaryArc(CircleArc{{0.0, 0.0}, 1.0}, true)}, true)));
}

TEST_CASE("geometric betas")
{
    const auto b = geometric_betas(10.0, 320.0, 6);
    REQUIRE(b.size() == 6);
    CHECK(b.front() == 10.0);
    CHECK(b.back() == 320.0);
    for (std::size_t i = 1; i < b.size(); ++i) CHECK(b[i] / b[i - 1] == doctest::Approx(2.0));
    CHECK_THROWS_AS(geometric_betas(5.0, 5.0, 1), PreconditionError);
    CHECK_THROWS_AS(geometric_betas(10.0, 5.0, 4), PreconditionError);
    CHECK_THROWS_AS(geometric_betas(0.0, 5.0, 4), PreconditionError);
    CHECK_THROWS_AS(geometric_betas(1.0, 5.0, 0), PreconditionError);
}

TEST_CASE("disk sweep sandwiches the oracle")
{
    const auto betas = geometric_betas(20.0, 2560.0, 8);
    const auto records = sweep(disk(1.0), betas, {Method::bracket, Method::bessel});
    REQUIRE(records.size() == 16);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const SweepRecord& r = records[i];
        CHECK(r.beta == betas[i / 2]);
        CHECK(r.ok);
        CHECK(r.status == "ok");
        const double exact = disk_exact(1.0, r.beta);
        if (r.method == Method::bracket) {
            REQUIRE(r.lower);
            REQUIRE(r.upper);
            CHECK(*r.lower <= exact);
            CHECK(exact <= *r.upper);
            CHECK(*r.width() > 0.0);
            CHECK(*r.value() == 0.5 * (*r.lower + *r.upper));
            CHECK(*r.oracle == exact);
        } else {
            CHECK_FALSE(r.lower);
            CHECK(*r.oracle == exact);
        }
        CHECK(*r.residual == doctest::Approx(*r.value() + r.beta * r.beta + r.beta).epsilon(1e-12));
    }
}

TEST_CASE("sweep edge cases")
{
    CHECK(sweep(disk(1.0), {}, {Method::bracket}).empty());
    CHECK_THROWS_AS(sweep(disk(1.0), {40.0, 20.0}, {Method::bracket}), PreconditionError);
    CHECK_THROWS_AS(sweep(disk(1.0), {40.0, 40.0}, {Method::bracket}), PreconditionError);
    const auto r = sweep(disk(1.0), {5.0, 40.0}, {Method::bracket});
    REQUIRE(r.size() == 2);
    CHECK_FALSE(r[0].ok);
    CHECK(r[0].status.find("threshold") != std::string::npos);
    CHECK_FALSE(r[0].lower);
    CHECK(r[1].ok);
    const auto e = sweep(DomainBoundary({BoundaryArc(EllipseArc{{0.0, 0.0}, 2.0, 1.0})}), {500.0}, {Method::bessel});
    REQUIRE(e.size() == 1);
    CHECK_FALSE(e[0].ok);
}

TEST_CASE("serial and parallel sweeps agree")
{
    const BracketSetup setup = prepare_bracket(disk(1.0));
    const auto betas = geometric_betas(50.0, 5000.0, 5);
    const auto p = sweep(setup, betas, {Method::bracket, Method::bessel}, Exec::parallel);
    const auto s = sweep(setup, betas, {Method::bracket, Method::bessel}, Exec::serial);
    REQUIRE(p.size() == s.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        CHECK(p[i].lower == s[i].lower);
        CHECK(p[i].upper == s[i].upper);
        CHECK(p[i].oracle == s[i].oracle);
    }
}

TEST_CASE("bessel fit recovers the leading coefficients")
{
    const auto records = sweep(disk(1.0), geometric_betas(10.0, 320.0, 10), {Method::bessel});
    const FitResult f = fit_expansion(records, 1.0);
    CHECK(std::abs(f.c2 - 1.0) <= 1e-3);
    CHECK(std::abs(f.c1 - 1.0) <= 5e-2);
    CHECK(f.n == 10);
    CHECK(f.beta_hi == 320.0);
    REQUIRE(f.remainder);
    // remainder → −1/2
    CHECK(std::abs(f.remainder->slope) <= 0.1);
}

TEST_CASE("exact synthetic expansion")
{
    std::vector<SweepRecord> records;
    for (double beta : geometric_betas(10.0, 1000.0, 12)) {
        SweepRecord r;
        r.beta = beta;
        r.method = Method::bessel;
        r.ok = true;
        r.status = "ok";
        r.oracle = -beta * beta - 2.0 * beta;
        records.push_back(r);
    }
    const FitResult f = fit_expansion(records, 2.0);
    CHECK(std::abs(f.c2 - 1.0) <= 1e-12);
    CHECK(std::abs(f.c1 - 2.0) <= 1e-12);
    for (const SweepRecord& r : records) CHECK(std::abs(r.oracle.value() + r.beta * r.beta + 2.0 * r.beta) <= 1e-12 * r.beta * r.beta);
    CHECK(f.rms_residual <= 1e-9);
    CHECK_THROWS_AS(fit_expansion({records[0]}, 2.0), FitError);
    CHECK_THROWS_AS(fit_expansion({}, 2.0), FitError);
}

TEST_CASE("loglog slope")
{
    const LineFit l = loglog_slope({1.0, 10.0, 100.0, 1000.0}, {2.0, 2.0 * std::pow(10.0, 0.5), 20.0, 2.0 * std::pow(10.0, 1.5)});
    CHECK(l.slope == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(l.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(l.slope_halfwidth <= 1e-10);
    CHECK(loglog_slope({1.0, 2.0, 3.0}, {0.0, 1.0, 2.0}).n == 2);
    CHECK_THROWS_AS(loglog_slope({1.0, 2.0}, {0.0, 1.0}), FitError);
}

TEST_CASE("bracket width grows sublinearly")
{
    const LineFit standard = width_slope(MRule::standard, 12);
    const LineFit critical = width_slope(MRule::critical, 12);
    CHECK(standard.slope <= 0.75);
    CHECK(critical.slope <= 0.60);
    MESSAGE("width slopes: standard " << standard.slope << ", critical " << critical.slope);

    // stable when the lowest quarter is dropped
    BracketOptions o;
    const auto betas = geometric_betas(100.0, 1e4, 16);
    const auto records = sweep(disk(1.0), betas, {Method::bracket}, o);
    std::vector<double> x, y, xs, ys;
    for (std::size_t i = 0; i < records.size(); ++i) {
        x.push_back(records[i].beta);
        y.push_back(*records[i].width());
        if (i >= records.size() / 4) {
            xs.push_back(x.back());
            ys.push_back(y.back());
        }
    }
    CHECK(std::abs(loglog_slope(x, y).slope - loglog_slope(xs, ys).slope) <= 0.05);
}
