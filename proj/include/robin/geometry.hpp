#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "robin/exec.hpp"

namespace robin {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
    friend bool operator==(Vec2, Vec2) = default;
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);

// Arc kinds. Parameter spans are in the native parameter t; all kinds are
// real-analytic so derivatives of every order are exact.
struct CircleArc {
    Vec2 center;
    double radius = 1.0;
    double t_begin = 0.0;
    double t_end = 6.283185307179586;
};

struct EllipseArc {
    Vec2 center;
    double semi_x = 1.0;
    double semi_y = 1.0;
    double t_begin = 0.0;
    double t_end = 6.283185307179586;
};

struct SegmentArc {
    Vec2 from;
    Vec2 to;
};

// x(t) = Σ x_cos[n] cos(nt) + x_sin[n] sin(nt), likewise y, n = 0..degree.
struct FourierArc {
    std::vector<double> x_cos, x_sin, y_cos, y_sin;
    double t_begin = 0.0;
    double t_end = 6.283185307179586;

    std::size_t degree() const;
};

using ArcKind = std::variant<CircleArc, EllipseArc, SegmentArc, FourierArc>;

// Position and derivatives up to order 4 with respect to the native parameter.
struct Jet {
    Vec2 d[5];
};

// Signed curvature and its first two arc-length derivatives.
struct CurvatureSample {
    double kappa = 0.0;
    double dkappa = 0.0;
    double d2kappa = 0.0;
};

// One smooth piece Σ_k of the boundary, traversed so that the left normal
// (−Γ′₂, Γ′₁) points into the domain. `reversed` flips the native direction.
class BoundaryArc {
public:
    explicit BoundaryArc(ArcKind kind, bool reversed = false);

    const ArcKind& kind() const { return kind_; }
    bool reversed() const { return reversed_; }
    double length() const { return length_; }
    std::string kind_name() const;

    // Native parameter at arc length s ∈ [0, ℓ], and its inverse.
    double parameter_at(double s) const;
    double arclength_at(double t) const;

    // Derivatives in the (direction-adjusted) native parameter.
    Jet jet(double t) const;

    Vec2 point(double s) const;
    Vec2 tangent(double s) const;
    Vec2 inward_normal(double s) const;
    // Tubular map Φ(s, u) = Γ(s) + u ν(s).
    Vec2 strip_point(double s, double u) const;
    CurvatureSample curvature(double s) const;

    Vec2 start_point() const { return point(0.0); }
    Vec2 end_point() const { return point(length_); }

    BoundaryArc scaled(double factor) const;

private:
    double speed(double t) const;
    double panel_length(double t0, double t1) const;

    ArcKind kind_;
    bool reversed_;
    double t_lo_ = 0.0;
    double t_hi_ = 0.0;
    // Cumulative arc length at panel knots; 20-point Gauss–Legendre per panel.
    std::vector<double> knot_t_;
    std::vector<double> knot_s_;
    double length_ = 0.0;
};

// Curvature samples of one arc together with certified suprema.
struct CurvatureProfile {
    using Evaluator = std::function<CurvatureSample(double)>;

    double length = 0.0;
    double step = 0.0;
    std::vector<double> s;
    std::vector<double> kappa;
    std::vector<double> dkappa;
    std::vector<double> d2kappa;

    // Upper bounds: grid maximum plus a Lipschitz correction.
    double sup_kappa = 0.0;
    double sup_dkappa = 0.0;
    double sup_d2kappa = 0.0;
    // Upper bound of |κ‴| estimated from finite differences of κ″ samples.
    double sup_d3kappa = 0.0;

    // max κ located by Newton refinement of the best sample.
    double max_kappa = 0.0;
    double argmax_kappa = 0.0;
    double min_kappa = 0.0;

    Evaluator evaluate;
};

CurvatureProfile curvature_profile(const BoundaryArc& arc, std::size_t n_samples = 1024,
                                   Exec exec = Exec::parallel);

// Builds a profile from a curvature function on [0, length] directly.
CurvatureProfile curvature_profile(CurvatureProfile::Evaluator kappa, double length,
                                   std::size_t n_samples = 1024, Exec exec = Exec::parallel);

// K = sup|κ| + sup|κ′| + sup|κ″|.
double seminorm_K(const CurvatureProfile& profile);

enum class JunctionKind { smooth, tangent_continuous, reflex, convex };

std::string to_string(JunctionKind kind);

struct Junction {
    std::size_t from_arc = 0;
    std::size_t to_arc = 0;
    Vec2 vertex;
    // Interior opening angle in (0, 2π); π for tangent-continuous junctions.
    double angle = 0.0;
    double mismatch = 0.0;
    JunctionKind kind = JunctionKind::smooth;
};

// Ordered arcs forming one or more closed loops. A loop closes as soon as an
// arc ends at the start point of the loop's first arc.
class DomainBoundary {
public:
    explicit DomainBoundary(std::vector<BoundaryArc> arcs, bool exterior = false);

    const std::vector<BoundaryArc>& arcs() const { return arcs_; }
    const std::vector<Junction>& junctions() const { return junctions_; }
    const std::vector<std::vector<std::size_t>>& loops() const { return loops_; }
    bool exterior() const { return exterior_; }
    bool closed() const { return true; }

    DomainBoundary scaled(double factor) const;

    static constexpr double vertex_tolerance = 1e-10;

private:
    std::vector<BoundaryArc> arcs_;
    std::vector<std::vector<std::size_t>> loops_;
    std::vector<Junction> junctions_;
    bool exterior_;
};

double gamma_max(const DomainBoundary& domain);
double gamma_max(const std::vector<CurvatureProfile>& profiles);

std::vector<CurvatureProfile> domain_profiles(const DomainBoundary& domain,
                                              std::size_t n_samples = 1024,
                                              Exec exec = Exec::parallel);

struct ValidationReport {
    double unit_speed_residual = 0.0;
    double closure_residual = 0.0;
    std::vector<Junction> junctions;
    std::vector<double> loop_areas;
    bool closed = true;
    bool no_convex_corners = true;
    bool orientation_ok = true;
    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }
};

// Checks the hypotheses the asymptotics rely on. Throws AssumptionViolation
// (carrying the report) when a convex corner or a misoriented loop is found.
ValidationReport validate_domain(const DomainBoundary& domain);

class AssumptionViolation : public std::runtime_error {
public:
    AssumptionViolation(const std::string& what, ValidationReport report)
        : std::runtime_error(what), report_(std::move(report))
    {
    }
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

enum class TraceRule { sharp, elementary };

// Constant C with ∫|f(0,u)|² + ∫|f(ℓ,u)|² ≤ C (‖∂_s f‖² + ‖f‖²) on (0,ℓ)×(0,a).
// sharp: coth(ℓ/2); elementary: 2 + 4/ℓ.
double trace_constant(double length, TraceRule rule = TraceRule::sharp);

struct StripLimit {
    double a0 = 0.0;        // min over arcs of (2K)⁻¹
    double a1_formula = 0;  // min over arcs of min{(2K)⁻¹, (10KC)⁻¹}
    double a1 = 0.0;        // after the numeric disjointness check
    bool reduced_by_disjointness = false;
};

// Whether the strips Φ_k((0,ℓ_k)×(0,a)) are pairwise disjoint, do not fold,
// and stay inside the domain (numerically, on a sampled polyline model).
bool strips_disjoint(const DomainBoundary& domain, double a, std::size_t samples_per_arc = 400);

StripLimit strip_halfwidth_limit(const DomainBoundary& domain,
                                 const std::vector<CurvatureProfile>& profiles,
                                 TraceRule rule = TraceRule::sharp);

}  // namespace robin
