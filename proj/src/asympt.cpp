#include "robin/asympt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include <Eigen/Dense>
#include <boost/math/distributions/students_t.hpp>

#include "robin/direct.hpp"
#include "robin/errors.hpp"

namespace robin {

std::string to_string(Method method) { return method == Method::bracket ? "bracket" : "bessel"; }

Method parse_method(const std::string& name)
{
    if (name == "bracket") return Method::bracket;
    if (name == "bessel") return Method::bessel;
    throw ParseError("unknown method '" + name + "' (expected bracket or bessel)");
}

std::optional<double> SweepRecord::value() const
{
    if (lower && upper) return 0.5 * (*lower + *upper);
    return oracle;
}

std::optional<double> SweepRecord::width() const
{
    if (lower && upper) return *upper - *lower;
    return std::nullopt;
}

std::optional<double> disk_radius(const DomainBoundary& domain)
{
    if (domain.exterior() || domain.arcs().size() != 1) return std::nullopt;
    const BoundaryArc& arc = domain.arcs().front();
    const auto* c = std::get_if<CircleArc>(&arc.kind());
    if (!c || arc.reversed()) return std::nullopt;
    if (std::abs((c->t_end - c->t_begin) - 2.0 * std::numbers::pi) > 1e-12) return std::nullopt;
    return c->radius;
}

std::vector<SweepRecord> sweep(const BracketSetup& setup, const std::vector<double>& betas,
                               const std::vector<Method>& methods, Exec exec)
{
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (!std::isfinite(betas[i])) throw PreconditionError("beta values must be finite");
        if (i > 0 && !(betas[i] > betas[i - 1])) throw PreconditionError("beta list must be strictly increasing");
    }
    const std::optional<double> radius = disk_radius(setup.domain);
    const bool want_oracle =
        radius && std::find(methods.begin(), methods.end(), Method::bessel) != methods.end();
    const double gmax = setup.gamma_max;

    std::vector<SweepRecord> out(betas.size() * methods.size());
    detail::for_each_index(exec, betas.size(), [&](std::size_t i) {
        const double beta = betas[i];
        std::optional<double> oracle;
        std::string oracle_error;
        if (want_oracle) {
            try {
                oracle = disk_exact(*radius, beta);
            } catch (const std::exception& e) {
                oracle_error = e.what();
            }
        }
        for (std::size_t m = 0; m < methods.size(); ++m) {
            SweepRecord& rec = out[i * methods.size() + m];
            rec.beta = beta;
            rec.method = methods[m];
            try {
                if (methods[m] == Method::bracket) {
                    const BracketResult r = domain_bounds(setup, beta);
                    rec.lower = r.lower;
                    rec.upper = r.upper;
                    rec.oracle = oracle;
                } else {
                    if (!radius) throw PreconditionError("bessel oracle needs a full disk domain");
                    if (!oracle) throw RangeError(oracle_error);
                    rec.oracle = oracle;
                }
                rec.residual = *rec.value() + beta * beta + gmax * beta;
                rec.ok = true;
                rec.status = "ok";
                if (rec.lower && rec.oracle && !(*rec.lower <= *rec.oracle && *rec.oracle <= *rec.upper)) {
                    rec.ok = false;
                    rec.status = "oracle outside bracket";
                }
            } catch (const std::exception& e) {
                rec.lower.reset();
                rec.upper.reset();
                rec.oracle.reset();
                rec.residual.reset();
                rec.ok = false;
                rec.status = e.what();
            }
        }
    });
    return out;
}

std::vector<SweepRecord> sweep(const DomainBoundary& domain, const std::vector<double>& betas,
                               const std::vector<Method>& methods, const BracketOptions& options)
{
    if (betas.empty() || methods.empty()) return {};
    return sweep(prepare_bracket(domain, options), betas, methods, options.exec);
}

std::vector<double> geometric_betas(double start, double end, std::size_t count)
{
    if (!(start > 0.0 && std::isfinite(end))) throw PreconditionError("geometric range needs 0 < start");
    if (!(end > start)) throw PreconditionError("geometric range needs start < end");
    if (count < 2) throw PreconditionError("geometric range needs at least 2 points");
    std::vector<double> out(count);
    const double ratio = std::log(end / start) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) out[i] = start * std::exp(ratio * static_cast<double>(i));
    out.front() = start;
    out.back() = end;
    return out;
}

LineFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y)
{
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (x[i] > 0.0 && y[i] != 0.0 && std::isfinite(y[i])) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(std::abs(y[i])));
        }
    const std::size_t n = lx.size();
    if (n < 2) throw FitError("slope fit needs at least 2 points with nonzero values");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw FitError("slope fit needs at least 2 distinct abscissae");
    LineFit fit;
    fit.n = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double sse = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double e = ly[i] - fit.intercept - fit.slope * lx[i];
            sse += e * e;
        }
        const double se = std::sqrt(sse / static_cast<double>(n - 2) / sxx);
        const boost::math::students_t dist(static_cast<double>(n - 2));
        fit.slope_halfwidth = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
    } else {
        fit.slope_halfwidth = std::numeric_limits<double>::infinity();
    }
    return fit;
}

FitResult fit_expansion(const std::vector<SweepRecord>& records, double gamma_max)
{
    std::vector<const SweepRecord*> good;
    double beta_top = 0.0;
    for (const auto& r : records)
        if (r.ok && r.value()) {
            good.push_back(&r);
            beta_top = std::max(beta_top, r.beta);
        }
    std::vector<const SweepRecord*> used;
    std::set<double> distinct;
    for (const auto* r : good)
        if (r->beta >= beta_top / 100.0) {
            used.push_back(r);
            distinct.insert(r->beta);
        }
    if (distinct.size() < 2) throw FitError("fit needs records at 2 or more distinct beta values");

    // Columns scaled by β_top for conditioning.
    const Eigen::Index n = static_cast<Eigen::Index>(used.size());
    Eigen::MatrixXd X(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double b = used[static_cast<std::size_t>(i)]->beta / beta_top;
        X(i, 0) = -b * b;
        X(i, 1) = -b;
        y(i) = *used[static_cast<std::size_t>(i)]->value() / (beta_top * beta_top);
    }
    const Eigen::Vector2d coef = X.colPivHouseholderQr().solve(y);

    FitResult fit;
    fit.c2 = coef(0);
    fit.c1 = coef(1) * beta_top;
    fit.gamma_max = gamma_max;
    fit.beta_lo = *distinct.begin();
    fit.beta_hi = *distinct.rbegin();
    fit.n = used.size();
    double ss = 0.0;
    std::vector<double> betas, remainders, wbetas, widths;
    for (const auto* r : used) {
        const double b = r->beta;
        const double v = *r->value();
        const double e = v - (-fit.c2 * b * b - fit.c1 * b);
        fit.fit_residuals.push_back(e);
        ss += e * e;
        betas.push_back(b);
        remainders.push_back(v + b * b + gamma_max * b);
        if (auto w = r->width()) {
            wbetas.push_back(b);
            widths.push_back(*w);
        }
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(used.size()));
    try {
        fit.remainder = loglog_slope(betas, remainders);
    } catch (const FitError&) {
    }
    try {
        fit.width = loglog_slope(wbetas, widths);
    } catch (const FitError&) {
    }
    return fit;
}

}  // namespace robin
