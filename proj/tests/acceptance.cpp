// Acceptance checks. One PASS/FAIL line per criterion; exit status 1 if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "robin/asympt.hpp"
#include "robin/bracket.hpp"
#include "robin/direct.hpp"
#include "robin/errors.hpp"
#include "robin/model1d.hpp"

using namespace robin;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

DomainBoundary unit_disk() { return DomainBoundary({BoundaryArc(CircleArc{{0.0, 0.0}, 1.0})}); }

template <class Draw>
Outcome enclosure_suite(Draw draw)
{
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> la(std::log(0.05), std::log(2.0)), lb(std::log(2.0), std::log(200.0));
    int n = 0, bad = 0;
    while (n < 1000) {
        const double a = std::exp(la(rng)), beta = std::exp(lb(rng));
        const auto ok = draw(a, beta, rng);
        if (!ok) continue;
        bad += !*ok;
        ++n;
    }
    return {bad == 0, std::to_string(n) + " samples, " + std::to_string(bad) + " outside"};
}

Outcome robin_robin_suite()
{
    return enclosure_suite([](double a, double beta, std::mt19937_64& rng) -> std::optional<bool> {
        if (!(beta * a > 1.0)) return std::nullopt;
        const double gamma = std::uniform_real_distribution<double>(0.0, 0.5)(rng) * beta;
        if (!(beta > 2.0 * gamma)) return std::nullopt;
        // −E − β² = g(2β + g) with g = k − β; compared in log form since g ≪ ulp(β) for large βa
        const GroundStateCertificate c = robin_robin_ground(a, beta, gamma);
        const double g = std::exp(c.log_gap);
        const double excess = c.log_gap + std::log(2.0 * beta + g);
        return c.k >= beta && std::isfinite(c.log_gap) && excess < std::log(123.0 * beta * beta) - 2.0 * beta * a;
    });
}

Outcome robin_dirichlet_suite()
{
    return enclosure_suite([](double a, double beta, std::mt19937_64&) -> std::optional<bool> {
        if (!(beta * a > 4.0 / 3.0)) return std::nullopt;
        // β² + E = g(2β − g) with g = β − k
        const GroundStateCertificate c = robin_dirichlet_ground(a, beta);
        const double g = std::exp(c.log_gap);
        const double deficit = c.log_gap + std::log(2.0 * beta - g);
        return c.k <= beta && std::isfinite(c.log_gap) && g < beta && deficit < std::log(4.0 * beta * beta) - beta * a;
    });
}

Outcome disk_sandwich()
{
    std::ostringstream os;
    bool ok = true;
    for (double beta : {20.0, 40.0, 80.0, 160.0}) {
        const BracketResult r = domain_bounds(unit_disk(), beta);
        const double e = disk_exact(1.0, beta);
        ok = ok && r.lower <= e && e <= r.upper;
        os << "β=" << beta << ": " << r.lower << " ≤ " << e << " ≤ " << r.upper << "; ";
    }
    return {ok, os.str()};
}

Outcome coefficients()
{
    const auto records = sweep(unit_disk(), geometric_betas(10.0, 320.0, 10), {Method::bessel});
    const FitResult f = fit_expansion(records, 1.0);
    std::ostringstream os;
    os.precision(8);
    os << "c2 = " << f.c2 << ", c1 = " << f.c1;
    return {f.n == 10 && f.c2 >= 0.999 && f.c2 <= 1.001 && f.c1 >= 0.95 && f.c1 <= 1.05, os.str()};
}

Outcome width_slope(MRule rule, double limit)
{
    BracketOptions o;
    o.m_rule = rule;
    const auto records = sweep(unit_disk(), geometric_betas(100.0, 1e4, 20), {Method::bracket}, o);
    std::vector<double> x, y;
    for (const SweepRecord& r : records) {
        if (!r.ok) return {false, "β = " + std::to_string(r.beta) + ": " + r.status};
        x.push_back(r.beta);
        y.push_back(*r.width());
    }
    const LineFit l = loglog_slope(x, y);
    std::ostringstream os;
    os.precision(4);
    os << "slope " << l.slope << " ± " << l.slope_halfwidth << " (limit " << limit << ")";
    return {l.slope <= limit, os.str()};
}

Outcome separable_strip()
{
    const CurvatureProfile flat = curvature_profile([](double) { return CurvatureSample{}; }, 1.0);
    const double exact = std::numbers::pi * std::numbers::pi + robin_dirichlet_ground(0.5, 10.0).eigenvalue;
    std::ostringstream os;
    double prev = 1e300;
    bool improving = true;
    for (int n : {32, 64, 128}) {
        const NumericEigenResult r = strip_fd_ground(flat, 0.5, 10.0, EndCondition::dirichlet, {n, n}, false);
        const double rel = std::abs(r.eigenvalue - exact) / std::abs(exact);
        improving = improving && rel < prev;
        prev = rel;
        os << n << ": " << rel << "; ";
    }
    return {improving && prev <= 1e-3, os.str()};
}

Outcome scaling()
{
    double worst = 0.0;
    for (double R : {0.5, 2.0})
        for (double beta : {5.0, 20.0})
            worst = std::max(worst, std::abs(disk_exact(R, beta) - disk_exact(1.0, R * beta) / (R * R)) / (beta * beta));
    std::ostringstream os;
    os << "max |Δ|/β² = " << worst;
    return {worst <= 1e-9, os.str()};
}

Outcome monotone_and_dominance()
{
    const auto betas = geometric_betas(20.0, 5000.0, 20);
    const BracketSetup sharp = prepare_bracket(unit_disk());
    BracketOptions co;
    co.mode = BracketMode::closed_form;
    const BracketSetup closed = prepare_bracket(unit_disk(), co);
    double pl = 0.0, pu = 0.0, po_ = 0.0;
    int compared = 0, violations = 0;
    for (double beta : betas) {
        const BracketResult s = domain_bounds(sharp, beta);
        const double e = disk_exact(1.0, beta);
        violations += s.lower > pl || s.upper > pu || e > po_;
        pl = s.lower;
        pu = s.upper;
        po_ = e;
        try {
            const BracketResult p = domain_bounds(closed, beta);
            ++compared;
            violations += s.lower < p.lower || s.upper > p.upper;
        } catch (const ValidityError&) {
        }
    }
    std::ostringstream os;
    os << betas.size() << " β values, " << compared << " with both modes, " << violations << " violations";
    return {violations == 0 && compared > 0, os.str()};
}

Outcome hypothesis_gate()
{
    const std::string cmd = std::string(ROBIN_CLI) + " validate --domain " + ROBIN_TEST_DATA + "/l_shape.json 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {false, "could not start the CLI"};
    std::string out;
    char buf[1024];
    for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) out.append(buf, n);
    const int status = pclose(pipe);
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    const bool msg = out.find("larger than pi") != std::string::npos;
    return {code == 1 && msg, "exit " + std::to_string(code)};
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"Robin-Robin enclosure suite", 2.0, robin_robin_suite},
        {"Robin-Dirichlet enclosure suite", 2.0, robin_dirichlet_suite},
        {"disk sandwich", 30.0, disk_sandwich},
        {"two-term coefficients from the disk oracle", 5.0, coefficients},
        {"width slope, M ~ beta^(1/3)", 120.0, [] { return width_slope(MRule::standard, 0.75); }},
        {"width slope, M ~ beta^(1/4)", 120.0, [] { return width_slope(MRule::critical, 0.60); }},
        {"separable strip against finite differences", 30.0, separable_strip},
        {"disk scaling identity", 1.0, scaling},
        {"monotonicity and mode dominance", 60.0, monotone_and_dominance},
        {"convex corner rejected by validate", 1.0, hypothesis_gate},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < criteria[i].budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::cout << (pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].name << ": " << o.detail << " ["
                  << secs << " s of " << criteria[i].budget_s << (in_time ? "" : ", over budget") << "]\n";
    }
    std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
