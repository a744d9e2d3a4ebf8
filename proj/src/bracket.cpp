#include "robin/bracket.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "robin/errors.hpp"

namespace robin {

std::string to_string(BracketMode mode) { return mode == BracketMode::sharp_root ? "sharp" : "closed-form"; }
std::string to_string(MRule rule) { return rule == MRule::standard ? "standard" : "critical"; }

double strip_potential(const CurvatureSample& c, double u)
{
    const double w = 1.0 / (1.0 - u * c.kappa);
    const double w2 = w * w;
    return 0.5 * u * c.d2kappa * w2 * w + 1.25 * u * u * c.dkappa * c.dkappa * w2 * w2 + 0.25 * c.kappa * c.kappa * w2;
}

TransverseConstants transverse_constants(const CurvatureProfile& profile, double a, TraceRule rule)
{
    TransverseConstants t;
    t.rule = rule;
    t.K = seminorm_K(profile);
    t.C = trace_constant(profile.length, rule);
    t.a = a;
    t.a0 = t.K > 0.0 ? 0.5 / t.K : std::numeric_limits<double>::infinity();
    t.a1 = t.K > 0.0 ? std::min(t.a0, 0.1 / (t.K * t.C)) : std::numeric_limits<double>::infinity();
    if (!(a > 0.0 && a < t.a0)) {
        std::ostringstream os;
        os << "strip half-width a = " << a << " must lie in (0, (2K)^-1) = (0, " << t.a0 << ")";
        throw PreconditionError(os.str());
    }
    // |V| ≤ 4aK + 20a²K² + K² from 1/(1−uκ) ≤ 2 and |κ|,|κ′|,|κ″| ≤ K.
    t.v = 4.0 * a * t.K + 20.0 * a * a * t.K * t.K + t.K * t.K;
    t.beta_min = 3.0 * t.K + 1.0 + 4.0 / (3.0 * a);

    constexpr int n = 64;
    for (int i = 0; i < n; ++i) {
        const CurvatureSample c = profile.evaluate(profile.length * i / (n - 1));
        for (int j = 0; j < n; ++j)
            t.max_potential = std::max(t.max_potential, std::abs(strip_potential(c, a * j / (n - 1))));
    }
    if (t.max_potential > t.v * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "potential bound violated: max |V| = " << t.max_potential << " > v = " << t.v;
        throw InternalConstantError(os.str());
    }
    return t;
}

Partition partition(const CurvatureProfile& profile, int M, Exec exec)
{
    if (M < 1) throw PreconditionError("partition needs M >= 1");
    constexpr int sub = 33;
    Partition p;
    p.M = M;
    p.delta = profile.length / M;
    p.kappa.resize(static_cast<std::size_t>(M));
    detail::for_each_index(exec, p.kappa.size(), [&](std::size_t j) {
        const double s0 = static_cast<double>(j) * p.delta;
        const double h = p.delta / (sub - 1);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        double slope = 0.0;
        for (int i = 0; i < sub; ++i) {
            const double s = i + 1 == sub ? std::min(s0 + p.delta, profile.length) : s0 + i * h;
            const CurvatureSample c = profile.evaluate(s);
            lo = std::min(lo, c.kappa);
            hi = std::max(hi, c.kappa);
            slope = std::max(slope, std::abs(c.dkappa));
        }
        // Lipschitz correction with the local slope bound.
        const double pad = 0.5 * h * (slope + 0.5 * h * profile.sup_d2kappa);
        p.kappa[j] = {lo - pad, hi + pad};
    });
    return p;
}

int auto_M(double beta, MRule rule)
{
    if (!(beta >= 1.0)) throw PreconditionError("auto_M needs beta >= 1");
    const double root = rule == MRule::standard ? std::cbrt(beta) : std::sqrt(std::sqrt(beta));
    return std::max(1, static_cast<int>(std::ceil(root - 1e-12)));
}

double closed_form_threshold(double K, double a)
{
    const auto excess = [K, a](double beta) {
        const double b2 = (beta + 0.5 * K) * (beta + 0.5 * K);
        const double x = a * (beta - 0.5 * K);
        return beta * (b2 * std::exp(-2.0 * x) + 4.0 * b2 * std::exp(-x)) - 1.0;
    };
    double lo = 3.0 / a + 0.5 * K;
    if (excess(lo) <= 0.0) return lo;
    double hi = 2.0 * lo;
    while (excess(hi) > 0.0) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0) lo = mid; else hi = mid;
    }
    return hi;
}

namespace {

std::string threshold_message(double beta, const TransverseConstants& t)
{
    std::ostringstream os;
    os.precision(10);
    os << "beta = " << beta << " below threshold 3K+1+4/(3a) = " << t.beta_min << " (K = " << t.K << ", a = " << t.a
       << ")";
    return os.str();
}

}  // namespace

StripBounds strip_bounds(const CurvatureProfile& profile, const TransverseConstants& constants,
                         const Partition& part, double beta, BracketMode mode, Exec exec)
{
    const auto& t = constants;
    if (!(t.a < t.a1)) {
        std::ostringstream os;
        os << "strip half-width a = " << t.a << " is not below a1 = min{(2K)^-1, (10KC)^-1} = " << t.a1;
        throw ValidityError(os.str());
    }
    if (!(beta > t.beta_min)) throw ValidityError(threshold_message(beta, t));

    StripBounds b;
    b.mode = mode;
    const double M = part.M;
    b.lower_shift = -t.v - 4.0 * t.a * t.K * t.C;
    b.upper_shift = 4.0 * std::numbers::pi * std::numbers::pi * M * M / (profile.length * profile.length) + t.v;
    const std::size_t n = part.kappa.size();
    b.interval_lower.resize(n);
    b.interval_upper.resize(n);

    if (mode == BracketMode::sharp_root) {
        b.lower_certificates.resize(n);
        b.upper_certificates.resize(n);
        detail::for_each_index(exec, n, [&](std::size_t j) {
            const double beta_lo = beta + 0.5 * part.kappa[j].hi;
            const double beta_hi = beta + 0.5 * part.kappa[j].lo;
            try {
                b.lower_certificates[j] = robin_robin_ground(t.a, beta_lo, t.K);
                b.upper_certificates[j] = robin_dirichlet_ground(t.a, beta_hi);
            } catch (const PreconditionError& e) {
                throw ValidityError("interval " + std::to_string(j) + ": " + e.what());
            }
            b.interval_lower[j] = b.lower_certificates[j].eigenvalue;
            b.interval_upper[j] = b.upper_certificates[j].eigenvalue;
        });
    } else {
        const double beta_a = closed_form_threshold(t.K, t.a);
        b.beta_a = beta_a;
        if (!(beta > beta_a + t.beta_min)) {
            std::ostringstream os;
            os.precision(10);
            os << "beta = " << beta << " below beta_a + 3K+1+4/(3a) = " << beta_a + t.beta_min
               << " required by the closed-form bounds (beta_a = " << beta_a << ")";
            throw ValidityError(os.str());
        }
        for (std::size_t j = 0; j < n; ++j) {
            b.interval_lower[j] = -beta * beta - part.kappa[j].hi * beta - 0.25 * t.K * t.K - 1.0 / beta;
            b.interval_upper[j] = -beta * beta - part.kappa[j].lo * beta + 1.0 / beta;
        }
    }

    // Serial reduction keeps the result independent of the execution policy.
    b.argmin_lower = static_cast<std::size_t>(std::min_element(b.interval_lower.begin(), b.interval_lower.end()) -
                                              b.interval_lower.begin());
    b.argmin_upper = static_cast<std::size_t>(std::min_element(b.interval_upper.begin(), b.interval_upper.end()) -
                                              b.interval_upper.begin());
    b.lower = b.lower_shift + b.interval_lower[b.argmin_lower];
    b.upper = b.upper_shift + b.interval_upper[b.argmin_upper];
    return b;
}

BracketSetup prepare_bracket(const DomainBoundary& domain, const BracketOptions& options)
{
    BracketSetup setup{domain, options, {}, {}, 0.0, 0.0, {}};
    setup.profiles = domain_profiles(domain, options.profile_samples, options.exec);
    setup.limit = strip_halfwidth_limit(domain, setup.profiles, options.trace_rule);
    setup.gamma_max = gamma_max(setup.profiles);
    const double a1 = setup.limit.a1;
    if (options.a) {
        if (!(*options.a > 0.0 && *options.a < a1)) {
            std::ostringstream os;
            os << "strip half-width a = " << *options.a << " must lie in (0, a1) = (0, " << a1 << ")";
            throw ValidityError(os.str());
        }
        setup.a = *options.a;
    } else {
        if (!(options.a_fraction > 0.0 && options.a_fraction < 1.0))
            throw PreconditionError("a_fraction must lie in (0, 1)");
        setup.a = options.a_fraction * a1;
    }
    for (const auto& p : setup.profiles) setup.constants.push_back(transverse_constants(p, setup.a, options.trace_rule));
    return setup;
}

BracketResult domain_bounds(const BracketSetup& setup, double beta)
{
    const auto& opt = setup.options;
    BracketResult r;
    r.beta = beta;
    r.mode = opt.mode;
    r.m_rule = opt.m_rule;
    r.trace_rule = opt.trace_rule;
    r.a = setup.a;
    r.a1 = setup.limit.a1;
    r.gamma_max = setup.gamma_max;
    r.widening = opt.widening;
    r.exterior = setup.domain.exterior();
    if (!(beta >= 1.0)) {
        std::ostringstream os;
        os << "beta = " << beta << " below threshold 3K+1+4/(3a) = " << setup.constants.front().beta_min;
        throw ValidityError(os.str());
    }
    const int M = opt.M ? *opt.M : auto_M(beta, opt.m_rule);

    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < setup.profiles.size(); ++k) {
        ArcBracket arc;
        arc.arc = k;
        arc.kind = setup.domain.arcs()[k].kind_name();
        arc.length = setup.profiles[k].length;
        arc.max_kappa = setup.profiles[k].max_kappa;
        arc.constants = setup.constants[k];
        arc.M = M;
        try {
            const Partition part = partition(setup.profiles[k], M, opt.exec);
            arc.delta = part.delta;
            arc.kappa = part.kappa;
            arc.strip = strip_bounds(setup.profiles[k], arc.constants, part, beta, opt.mode, opt.exec);
        } catch (const ValidityError& e) {
            throw ValidityError("arc " + std::to_string(k) + ": " + e.what());
        }
        arc.lower = arc.strip.lower;
        arc.upper = arc.strip.upper;
        lower = std::min(lower, arc.lower);
        upper = std::min(upper, arc.upper);
        r.arcs.push_back(std::move(arc));
    }
    // The residual region contributes E₀ ≥ 0 to both sides and E(β) < 0.
    upper = std::min(upper, 0.0);
    r.lower = lower - opt.widening * std::abs(lower);
    r.upper = upper + opt.widening * std::abs(upper);
    return r;
}

BracketResult domain_bounds(const DomainBoundary& domain, double beta, const BracketOptions& options)
{
    return domain_bounds(prepare_bracket(domain, options), beta);
}

}  // namespace robin
