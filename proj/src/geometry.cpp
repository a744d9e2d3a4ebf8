#include "robin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "robin/errors.hpp"

namespace robin {

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }

std::size_t FourierArc::degree() const
{
    const std::size_t n = std::max({x_cos.size(), x_sin.size(), y_cos.size(), y_sin.size()});
    return n == 0 ? 0 : n - 1;
}

namespace {

constexpr int kPanels = 64;

double coefficient(const std::vector<double>& c, std::size_t n) { return n < c.size() ? c[n] : 0.0; }

// d^m/dt^m of (cos t, sin t) scaled by (cx, sy): rotates by m·π/2.
Vec2 trig_derivative(int m, double c, double s)
{
    switch (m % 4) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case 2: return {-c, -s};
    default: return {s, -c};
    }
}

Jet native_jet(const ArcKind& kind, double t)
{
    Jet j{};
    if (const auto* c = std::get_if<CircleArc>(&kind)) {
        const double ct = std::cos(t), st = std::sin(t);
        for (int m = 0; m <= 4; ++m) j.d[m] = c->radius * trig_derivative(m, ct, st);
        j.d[0] = j.d[0] + c->center;
    } else if (const auto* e = std::get_if<EllipseArc>(&kind)) {
        const double ct = std::cos(t), st = std::sin(t);
        for (int m = 0; m <= 4; ++m) {
            const Vec2 r = trig_derivative(m, ct, st);
            j.d[m] = {e->semi_x * r.x, e->semi_y * r.y};
        }
        j.d[0] = j.d[0] + e->center;
    } else if (const auto* seg = std::get_if<SegmentArc>(&kind)) {
        j.d[0] = seg->from + t * (seg->to - seg->from);
        j.d[1] = seg->to - seg->from;
    } else {
        const auto& f = std::get<FourierArc>(kind);
        const std::size_t deg = f.degree();
        for (std::size_t n = 0; n <= deg; ++n) {
            const double nt = static_cast<double>(n) * t;
            const double cn = std::cos(nt), sn = std::sin(nt);
            double scale = 1.0;
            for (int m = 0; m <= 4; ++m) {
                // derivative of (cos nt, sin nt) is n^m · rotated pair
                const Vec2 r = trig_derivative(m, cn, sn);
                const double dc = scale * r.x;  // d^m cos(nt)
                const double ds = scale * r.y;  // d^m sin(nt)
                j.d[m].x += coefficient(f.x_cos, n) * dc + coefficient(f.x_sin, n) * ds;
                j.d[m].y += coefficient(f.y_cos, n) * dc + coefficient(f.y_sin, n) * ds;
                scale *= static_cast<double>(n);
            }
        }
    }
    return j;
}

std::pair<double, double> native_span(const ArcKind& kind)
{
    return std::visit(
        [](const auto& k) -> std::pair<double, double> {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, SegmentArc>) {
                return {0.0, 1.0};
            } else {
                return {k.t_begin, k.t_end};
            }
        },
        kind);
}

void check_kind(const ArcKind& kind)
{
    if (const auto* c = std::get_if<CircleArc>(&kind)) {
        if (!(c->radius > 0.0)) throw MalformedCurveError("circle radius must be positive");
    } else if (const auto* e = std::get_if<EllipseArc>(&kind)) {
        if (!(e->semi_x > 0.0 && e->semi_y > 0.0))
            throw MalformedCurveError("ellipse semi-axes must be positive");
    } else if (const auto* s = std::get_if<SegmentArc>(&kind)) {
        if (norm(s->to - s->from) == 0.0) throw MalformedCurveError("degenerate segment");
    } else {
        const auto& f = std::get<FourierArc>(kind);
        if (f.x_cos.empty() && f.x_sin.empty() && f.y_cos.empty() && f.y_sin.empty())
            throw MalformedCurveError("fourier arc without coefficients");
    }
    const auto [t0, t1] = native_span(kind);
    if (!(std::isfinite(t0) && std::isfinite(t1) && t1 > t0))
        throw MalformedCurveError("parameter span must satisfy t_begin < t_end");
}

}  // namespace

BoundaryArc::BoundaryArc(ArcKind kind, bool reversed) : kind_(std::move(kind)), reversed_(reversed)
{
    check_kind(kind_);
    std::tie(t_lo_, t_hi_) = native_span(kind_);
    knot_t_.resize(kPanels + 1);
    knot_s_.resize(kPanels + 1);
    const double dt = (t_hi_ - t_lo_) / kPanels;
    knot_t_[0] = t_lo_;
    knot_s_[0] = 0.0;
    for (int i = 1; i <= kPanels; ++i) {
        knot_t_[i] = i == kPanels ? t_hi_ : t_lo_ + i * dt;
        knot_s_[i] = knot_s_[i - 1] + panel_length(knot_t_[i - 1], knot_t_[i]);
    }
    length_ = knot_s_.back();
    if (!(std::isfinite(length_) && length_ > 0.0)) throw MalformedCurveError("arc has no length");
    // Speed must not vanish anywhere for the arc-length map to be invertible.
    for (int i = 0; i <= 8 * kPanels; ++i) {
        const double t = t_lo_ + (t_hi_ - t_lo_) * i / (8.0 * kPanels);
        if (!(speed(t) > 1e-12 * length_)) throw MalformedCurveError("arc has a singular point");
    }
}

std::string BoundaryArc::kind_name() const
{
    static const char* names[] = {"circle", "ellipse", "segment", "fourier"};
    return names[kind_.index()];
}

Jet BoundaryArc::jet(double t) const
{
    if (!reversed_) return native_jet(kind_, t);
    Jet j = native_jet(kind_, t_lo_ + t_hi_ - t);
    for (int m = 1; m <= 4; m += 2) j.d[m] = -1.0 * j.d[m];
    return j;
}

double BoundaryArc::speed(double t) const { return norm(jet(t).d[1]); }

double BoundaryArc::panel_length(double t0, double t1) const
{
    using boost::math::quadrature::gauss;
    return gauss<double, 20>::integrate([this](double t) { return speed(t); }, t0, t1);
}

double BoundaryArc::arclength_at(double t) const
{
    t = std::clamp(t, t_lo_, t_hi_);
    const auto it = std::upper_bound(knot_t_.begin(), knot_t_.end(), t);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - knot_t_.begin()), kPanels) - 1;
    if (t == knot_t_[i]) return knot_s_[i];
    return knot_s_[i] + panel_length(knot_t_[i], t);
}

double BoundaryArc::parameter_at(double s) const
{
    if (s <= 0.0) return t_lo_;
    if (s >= length_) return t_hi_;
    const auto it = std::upper_bound(knot_s_.begin(), knot_s_.end(), s);
    const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(it - knot_s_.begin()), kPanels) - 1;
    double lo = knot_t_[i], hi = knot_t_[i + 1];
    double t = lo + (hi - lo) * (s - knot_s_[i]) / (knot_s_[i + 1] - knot_s_[i]);
    for (int iter = 0; iter < 50; ++iter) {
        const double r = knot_s_[i] + panel_length(knot_t_[i], t) - s;
        if (r > 0.0) hi = t; else lo = t;
        double next = t - r / speed(t);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - t) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t))) return next;
        t = next;
    }
    return t;
}

Vec2 BoundaryArc::point(double s) const { return jet(parameter_at(s)).d[0]; }

Vec2 BoundaryArc::tangent(double s) const
{
    const Vec2 d = jet(parameter_at(s)).d[1];
    return (1.0 / norm(d)) * d;
}

Vec2 BoundaryArc::inward_normal(double s) const
{
    const Vec2 t = tangent(s);
    return {-t.y, t.x};
}

Vec2 BoundaryArc::strip_point(double s, double u) const
{
    const Jet j = jet(parameter_at(s));
    const Vec2 t = (1.0 / norm(j.d[1])) * j.d[1];
    return j.d[0] + u * Vec2{-t.y, t.x};
}

CurvatureSample BoundaryArc::curvature(double s) const
{
    const Jet j = jet(parameter_at(s));
    const Vec2 r1 = j.d[1], r2 = j.d[2], r3 = j.d[3], r4 = j.d[4];
    const double n0 = cross(r1, r2);
    const double n1 = cross(r1, r3);
    const double n2 = cross(r2, r3) + cross(r1, r4);
    const double sg = norm(r1);
    const double sg1 = dot(r1, r2) / sg;
    const double sg2 = (dot(r2, r2) + dot(r1, r3)) / sg - dot(r1, r2) * dot(r1, r2) / (sg * sg * sg);
    const double sg3 = sg * sg * sg, sg4 = sg3 * sg, sg5 = sg4 * sg;

    const double k = n0 / sg3;
    const double k_t = n1 / sg3 - 3.0 * n0 * sg1 / sg4;
    const double k_tt = n2 / sg3 - 6.0 * n1 * sg1 / sg4 - 3.0 * n0 * sg2 / sg4 + 12.0 * n0 * sg1 * sg1 / sg5;

    CurvatureSample out{k, k_t / sg, k_tt / (sg * sg) - k_t * sg1 / sg3};
    if (!(std::isfinite(out.kappa) && std::isfinite(out.dkappa) && std::isfinite(out.d2kappa)))
        throw MalformedCurveError("non-finite curvature derivative at s = " + std::to_string(s));
    return out;
}

BoundaryArc BoundaryArc::scaled(double factor) const
{
    ArcKind k = kind_;
    if (auto* c = std::get_if<CircleArc>(&k)) {
        c->center = factor * c->center;
        c->radius *= factor;
    } else if (auto* e = std::get_if<EllipseArc>(&k)) {
        e->center = factor * e->center;
        e->semi_x *= factor;
        e->semi_y *= factor;
    } else if (auto* s = std::get_if<SegmentArc>(&k)) {
        s->from = factor * s->from;
        s->to = factor * s->to;
    } else {
        auto& f = std::get<FourierArc>(k);
        for (auto* v : {&f.x_cos, &f.x_sin, &f.y_cos, &f.y_sin})
            for (double& c : *v) c *= factor;
    }
    return BoundaryArc(std::move(k), reversed_);
}

// ---------------------------------------------------------------------------
// Curvature profiles

namespace {

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_difference(const std::vector<double>& v, double h)
{
    double m = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) m = std::max(m, std::abs(v[i] - v[i - 1]) / h);
    return m;
}

double max_abs_second_difference(const std::vector<double>& v, double h)
{
    double m = 0.0;
    for (std::size_t i = 2; i < v.size(); ++i)
        m = std::max(m, std::abs(v[i] - 2.0 * v[i - 1] + v[i - 2]) / (h * h));
    return m;
}

// Newton iteration on κ′ = 0 starting from the best sample, kept inside the
// neighbouring sample cell.
double refine_extremum(const CurvatureProfile& p, std::size_t i, bool maximize, double* where)
{
    const double lo = p.s[i == 0 ? 0 : i - 1];
    const double hi = p.s[std::min(i + 1, p.s.size() - 1)];
    double best_s = p.s[i];
    double best = p.kappa[i];
    double s = p.s[i];
    for (int iter = 0; iter < 30; ++iter) {
        const CurvatureSample c = p.evaluate(s);
        if ((maximize ? c.kappa > best : c.kappa < best)) {
            best = c.kappa;
            best_s = s;
        }
        const bool concave_ok = maximize ? c.d2kappa < 0.0 : c.d2kappa > 0.0;
        if (!concave_ok || c.dkappa == 0.0) break;
        const double next = std::clamp(s - c.dkappa / c.d2kappa, lo, hi);
        if (std::abs(next - s) <= 1e-15 * std::max(1.0, p.length)) {
            s = next;
            const CurvatureSample f = p.evaluate(s);
            if ((maximize ? f.kappa > best : f.kappa < best)) {
                best = f.kappa;
                best_s = s;
            }
            break;
        }
        s = next;
    }
    *where = best_s;
    return best;
}

}  // namespace

CurvatureProfile curvature_profile(CurvatureProfile::Evaluator kappa, double length, std::size_t n_samples,
                                   Exec exec)
{
    if (n_samples < 16) throw PreconditionError("curvature profile needs at least 16 samples");
    if (!(length > 0.0)) throw PreconditionError("curvature profile needs a positive length");

    CurvatureProfile p;
    p.length = length;
    p.step = length / static_cast<double>(n_samples - 1);
    p.evaluate = std::move(kappa);
    p.s.resize(n_samples);
    p.kappa.resize(n_samples);
    p.dkappa.resize(n_samples);
    p.d2kappa.resize(n_samples);

    detail::for_each_index(exec, n_samples, [&](std::size_t i) {
        const double s = i + 1 == n_samples ? length : static_cast<double>(i) * p.step;
        const CurvatureSample c = p.evaluate(s);
        if (!(std::isfinite(c.kappa) && std::isfinite(c.dkappa) && std::isfinite(c.d2kappa)))
            throw MalformedCurveError("non-finite curvature sample");
        p.s[i] = s;
        p.kappa[i] = c.kappa;
        p.dkappa[i] = c.dkappa;
        p.d2kappa[i] = c.d2kappa;
    });

    // Between samples a function can exceed its sampled maximum by at most
    // (Lipschitz constant)·h/2. The chain starts from a difference estimate of κ‴.
    const double h = p.step;
    const double d3 = max_abs_difference(p.d2kappa, h) + 0.5 * h * max_abs_second_difference(p.d2kappa, h);
    p.sup_d3kappa = d3;
    p.sup_d2kappa = max_abs(p.d2kappa) + 0.5 * h * d3;
    p.sup_dkappa = max_abs(p.dkappa) + 0.5 * h * p.sup_d2kappa;
    p.sup_kappa = max_abs(p.kappa) + 0.5 * h * p.sup_dkappa;

    const auto imax = static_cast<std::size_t>(std::max_element(p.kappa.begin(), p.kappa.end()) - p.kappa.begin());
    const auto imin = static_cast<std::size_t>(std::min_element(p.kappa.begin(), p.kappa.end()) - p.kappa.begin());
    p.max_kappa = refine_extremum(p, imax, true, &p.argmax_kappa);
    double where = 0.0;
    p.min_kappa = refine_extremum(p, imin, false, &where);
    return p;
}

CurvatureProfile curvature_profile(const BoundaryArc& arc, std::size_t n_samples, Exec exec)
{
    return curvature_profile([arc](double s) { return arc.curvature(s); }, arc.length(), n_samples, exec);
}

double seminorm_K(const CurvatureProfile& profile)
{
    return profile.sup_kappa + profile.sup_dkappa + profile.sup_d2kappa;
}

// ---------------------------------------------------------------------------
// Domains

std::string to_string(JunctionKind kind)
{
    switch (kind) {
    case JunctionKind::smooth: return "smooth";
    case JunctionKind::tangent_continuous: return "tangent-continuous";
    case JunctionKind::reflex: return "reflex";
    case JunctionKind::convex: return "convex";
    }
    return "unknown";
}

namespace {

double domain_scale(const std::vector<BoundaryArc>& arcs)
{
    double scale = 1.0;
    for (const auto& a : arcs) scale = std::max({scale, std::abs(a.start_point().x), std::abs(a.start_point().y)});
    return scale;
}

Junction classify_junction(const std::vector<BoundaryArc>& arcs, std::size_t from, std::size_t to)
{
    const BoundaryArc& a = arcs[from];
    const BoundaryArc& b = arcs[to];
    Junction j;
    j.from_arc = from;
    j.to_arc = to;
    j.vertex = a.end_point();
    j.mismatch = norm(a.end_point() - b.start_point());
    const Vec2 t_in = a.tangent(a.length());
    const Vec2 t_out = b.tangent(0.0);
    const double turn = std::atan2(cross(t_in, t_out), dot(t_in, t_out));
    j.angle = std::numbers::pi - turn;
    if (std::abs(turn) <= 1e-8) {
        const CurvatureSample ca = a.curvature(a.length());
        const CurvatureSample cb = b.curvature(0.0);
        const auto close = [](double x, double y) { return std::abs(x - y) <= 1e-6 * (1.0 + std::abs(x) + std::abs(y)); };
        j.kind = close(ca.kappa, cb.kappa) && close(ca.dkappa, cb.dkappa) && close(ca.d2kappa, cb.d2kappa)
                     ? JunctionKind::smooth
                     : JunctionKind::tangent_continuous;
        j.angle = std::numbers::pi;
    } else {
        j.kind = turn < 0.0 ? JunctionKind::reflex : JunctionKind::convex;
    }
    return j;
}

}  // namespace

DomainBoundary::DomainBoundary(std::vector<BoundaryArc> arcs, bool exterior)
    : arcs_(std::move(arcs)), exterior_(exterior)
{
    if (arcs_.empty()) throw MalformedDomainError("domain has no arcs");
    const double tol = vertex_tolerance * domain_scale(arcs_);
    std::size_t loop_start = 0;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < arcs_.size(); ++i) {
        current.push_back(i);
        const Vec2 end = arcs_[i].end_point();
        if (norm(end - arcs_[loop_start].start_point()) <= tol) {
            loops_.push_back(current);
            current.clear();
            loop_start = i + 1;
            continue;
        }
        if (i + 1 == arcs_.size()) {
            std::ostringstream msg;
            msg << "open chain: arc " << i << " ends at (" << end.x << ", " << end.y
                << ") but the loop starting at arc " << loop_start << " is not closed";
            throw MalformedDomainError(msg.str());
        }
        const double gap = norm(end - arcs_[i + 1].start_point());
        if (gap > tol) {
            std::ostringstream msg;
            msg << "arc " << i << " does not meet arc " << i + 1 << " (gap " << gap << ")";
            throw MalformedDomainError(msg.str());
        }
    }
    for (const auto& loop : loops_)
        for (std::size_t k = 0; k < loop.size(); ++k)
            junctions_.push_back(classify_junction(arcs_, loop[k], loop[(k + 1) % loop.size()]));
}

DomainBoundary DomainBoundary::scaled(double factor) const
{
    if (!(factor > 0.0)) throw PreconditionError("scale factor must be positive");
    std::vector<BoundaryArc> arcs;
    arcs.reserve(arcs_.size());
    for (const auto& a : arcs_) arcs.push_back(a.scaled(factor));
    return DomainBoundary(std::move(arcs), exterior_);
}

std::vector<CurvatureProfile> domain_profiles(const DomainBoundary& domain, std::size_t n_samples, Exec exec)
{
    std::vector<CurvatureProfile> out;
    out.reserve(domain.arcs().size());
    for (const auto& arc : domain.arcs()) out.push_back(curvature_profile(arc, n_samples, exec));
    return out;
}

double gamma_max(const std::vector<CurvatureProfile>& profiles)
{
    double g = -std::numeric_limits<double>::infinity();
    for (const auto& p : profiles) g = std::max(g, p.max_kappa);
    return g;
}

double gamma_max(const DomainBoundary& domain) { return gamma_max(domain_profiles(domain)); }

namespace {

double fd_speed(const BoundaryArc& arc, double s, double h)
{
    const Vec2 d = (1.0 / (12.0 * h)) *
                   (arc.point(s - 2 * h) - 8.0 * arc.point(s - h) + 8.0 * arc.point(s + h) - arc.point(s + 2 * h));
    return norm(d);
}

double signed_area(const DomainBoundary& domain, const std::vector<std::size_t>& loop)
{
    using boost::math::quadrature::gauss_kronrod;
    double area = 0.0;
    for (std::size_t k : loop) {
        const BoundaryArc& arc = domain.arcs()[k];
        const double t0 = arc.parameter_at(0.0), t1 = arc.parameter_at(arc.length());
        area += gauss_kronrod<double, 31>::integrate(
            [&arc](double t) {
                const Jet j = arc.jet(t);
                return 0.5 * cross(j.d[0], j.d[1]);
            },
            t0, t1, 15, 1e-13);
    }
    return area;
}

}  // namespace

ValidationReport validate_domain(const DomainBoundary& domain)
{
    ValidationReport report;
    report.junctions = domain.junctions();

    std::mt19937_64 rng(0x5eed);
    for (const auto& arc : domain.arcs()) {
        const double h = std::min(1e-3, arc.length() / 100.0);
        std::uniform_real_distribution<double> dist(2.0 * h, arc.length() - 2.0 * h);
        for (int i = 0; i < 1000; ++i)
            report.unit_speed_residual = std::max(report.unit_speed_residual, std::abs(fd_speed(arc, dist(rng), h) - 1.0));
    }
    if (report.unit_speed_residual > 1e-8)
        report.violations.push_back("arc-length parametrization is not unit speed (residual " +
                                    std::to_string(report.unit_speed_residual) + ")");

    for (const auto& j : report.junctions) {
        report.closure_residual = std::max(report.closure_residual, j.mismatch);
        if (j.kind == JunctionKind::convex) {
            report.no_convex_corners = false;
            std::ostringstream msg;
            msg << "convex corner between arc " << j.from_arc << " and arc " << j.to_arc << " at (" << j.vertex.x
                << ", " << j.vertex.y << "): opening angle " << j.angle
                << " rad; all corner opening angles must be larger than pi";
            report.violations.push_back(msg.str());
        }
    }

    double total = 0.0;
    for (const auto& loop : domain.loops()) {
        report.loop_areas.push_back(signed_area(domain, loop));
        total += report.loop_areas.back();
    }
    report.orientation_ok = domain.exterior() ? total < 0.0 : total > 0.0;
    if (!report.orientation_ok)
        report.violations.push_back(domain.exterior()
                                        ? "exterior domain boundary must be traversed clockwise"
                                        : "boundary must be traversed with the domain on the left");

    if (!report.passed()) throw AssumptionViolation(report.violations.front(), report);
    return report;
}

// ---------------------------------------------------------------------------
// Strip widths

double trace_constant(double length, TraceRule rule)
{
    if (!(length > 0.0)) throw PreconditionError("trace constant needs a positive length");
    if (rule == TraceRule::elementary) return 2.0 + 4.0 / length;
    return 1.0 / std::tanh(0.5 * length);
}

namespace {

using Polyline = std::vector<Vec2>;

double orient(Vec2 a, Vec2 b, Vec2 c) { return cross(b - a, c - a); }

bool proper_crossing(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2)
{
    const double d1 = orient(p1, p2, q1), d2 = orient(p1, p2, q2);
    const double d3 = orient(q1, q2, p1), d4 = orient(q1, q2, p2);
    return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

bool boxes_overlap(Vec2 p1, Vec2 p2, Vec2 q1, Vec2 q2)
{
    return std::max(p1.x, p2.x) >= std::min(q1.x, q2.x) && std::max(q1.x, q2.x) >= std::min(p1.x, p2.x) &&
           std::max(p1.y, p2.y) >= std::min(q1.y, q2.y) && std::max(q1.y, q2.y) >= std::min(p1.y, p2.y);
}

bool polylines_cross(const Polyline& a, const Polyline& b)
{
    for (std::size_t i = 1; i < a.size(); ++i)
        for (std::size_t j = 1; j < b.size(); ++j)
            if (boxes_overlap(a[i - 1], a[i], b[j - 1], b[j]) && proper_crossing(a[i - 1], a[i], b[j - 1], b[j]))
                return true;
    return false;
}

bool self_crossing(const Polyline& a, bool closed)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = i + 2; j < n; ++j) {
            if (closed && i == 1 && j == n - 1) continue;
            if (boxes_overlap(a[i - 1], a[i], a[j - 1], a[j]) && proper_crossing(a[i - 1], a[i], a[j - 1], a[j]))
                return true;
        }
    return false;
}

// Even-odd rule over a set of closed polylines.
bool inside(const std::vector<Polyline>& rings, Vec2 p)
{
    bool in = false;
    for (const auto& ring : rings)
        for (std::size_t i = 1; i < ring.size(); ++i) {
            const Vec2 a = ring[i - 1], b = ring[i];
            if ((a.y > p.y) != (b.y > p.y)) {
                const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
                if (p.x < x) in = !in;
            }
        }
    return in;
}

struct StripOutline {
    Polyline outer;   // Γ(s)
    Polyline inner;   // Φ(s, a)
    Polyline face0;   // Φ(0, u)
    Polyline face1;   // Φ(ℓ, u)
    Polyline ring;    // closed outline for containment tests
    Vec2 sample;      // Φ(ℓ/2, a/2)
    bool closed_arc = false;
};

StripOutline outline(const BoundaryArc& arc, double a, std::size_t n)
{
    StripOutline o;
    const double ell = arc.length();
    for (std::size_t i = 0; i <= n; ++i) {
        const double s = ell * static_cast<double>(i) / static_cast<double>(n);
        o.outer.push_back(arc.point(s));
        o.inner.push_back(arc.strip_point(s, a));
    }
    o.face0 = {arc.strip_point(0.0, 0.0), arc.strip_point(0.0, a)};
    o.face1 = {arc.strip_point(ell, 0.0), arc.strip_point(ell, a)};
    o.closed_arc = norm(o.outer.front() - o.outer.back()) <= 1e-9 * (1.0 + norm(o.outer.front()));
    o.ring = o.outer;
    o.ring.insert(o.ring.end(), o.inner.rbegin(), o.inner.rend());
    o.ring.push_back(o.outer.front());
    o.sample = arc.strip_point(0.5 * ell, 0.5 * a);
    return o;
}

}  // namespace

bool strips_disjoint(const DomainBoundary& domain, double a, std::size_t samples_per_arc)
{
    const auto& arcs = domain.arcs();
    std::vector<StripOutline> strips;
    strips.reserve(arcs.size());
    for (const auto& arc : arcs) strips.push_back(outline(arc, a, samples_per_arc));

    std::vector<Polyline> boundary_rings;
    for (const auto& loop : domain.loops()) {
        Polyline ring;
        for (std::size_t k : loop) ring.insert(ring.end(), strips[k].outer.begin(), strips[k].outer.end());
        ring.push_back(ring.front());
        boundary_rings.push_back(std::move(ring));
    }

    for (std::size_t k = 0; k < strips.size(); ++k) {
        const auto& sk = strips[k];
        if (self_crossing(sk.inner, sk.closed_arc)) return false;
        if (!sk.closed_arc && (polylines_cross(sk.face0, sk.inner) || polylines_cross(sk.face1, sk.inner) ||
                               polylines_cross(sk.face0, sk.face1)))
            return false;
        const bool in_domain = inside(boundary_rings, sk.sample);
        if (in_domain == domain.exterior()) return false;
        for (std::size_t j = 0; j < strips.size(); ++j) {
            const auto& sj = strips[j];
            for (const Polyline* side : {&sk.inner, &sk.face0, &sk.face1})
                if (polylines_cross(*side, sj.outer)) return false;
            if (j == k) continue;
            for (const Polyline* side : {&sk.inner, &sk.face0, &sk.face1})
                for (const Polyline* other : {&sj.inner, &sj.face0, &sj.face1})
                    if (polylines_cross(*side, *other)) return false;
            if (!sj.closed_arc && inside({sj.ring}, sk.sample)) return false;
        }
    }
    return true;
}

StripLimit strip_halfwidth_limit(const DomainBoundary& domain, const std::vector<CurvatureProfile>& profiles,
                                 TraceRule rule)
{
    if (profiles.size() != domain.arcs().size())
        throw PreconditionError("one curvature profile per arc is required");
    StripLimit lim;
    lim.a0 = std::numeric_limits<double>::infinity();
    lim.a1_formula = std::numeric_limits<double>::infinity();
    double extent = 0.0;
    for (std::size_t k = 0; k < profiles.size(); ++k) {
        const double K = seminorm_K(profiles[k]);
        const double C = trace_constant(profiles[k].length, rule);
        extent = std::max(extent, profiles[k].length);
        if (K > 0.0) {
            lim.a0 = std::min(lim.a0, 0.5 / K);
            lim.a1_formula = std::min({lim.a1_formula, 0.5 / K, 0.1 / (K * C)});
        }
    }
    // Flat pieces give no curvature limit; fall back to the boundary extent.
    double candidate = std::min(lim.a1_formula, extent);
    if (strips_disjoint(domain, candidate)) {
        lim.a1 = lim.a1_formula;
        return lim;
    }
    double ok = candidate;
    for (int i = 0; i < 30 && !strips_disjoint(domain, ok); ++i) ok *= 0.5;
    if (!strips_disjoint(domain, ok))
        throw GeometryError("boundary strips overlap for every tested half-width down to " + std::to_string(ok));
    double bad = std::min(candidate, 2.0 * ok);
    for (int i = 0; i < 40; ++i) {
        const double mid = 0.5 * (ok + bad);
        if (strips_disjoint(domain, mid)) ok = mid; else bad = mid;
    }
    lim.a1 = ok;
    lim.reduced_by_disjointness = true;
    return lim;
}

}  // namespace robin
