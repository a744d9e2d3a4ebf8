#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "robin/exec.hpp"
#include "robin/geometry.hpp"
#include "robin/model1d.hpp"

namespace robin {

// Constants of the transverse bracketing on one boundary strip (0,ℓ)×(0,a).
struct TransverseConstants {
    double K = 0.0;         // curvature seminorm
    double C = 0.0;         // end-face trace constant
    double v = 0.0;         // bound of |V| on the strip
    double a = 0.0;         // strip half-width
    double a0 = 0.0;        // (2K)⁻¹
    double a1 = 0.0;        // min{(2K)⁻¹, (10KC)⁻¹}
    double beta_min = 0.0;  // 3K + 1 + 4/(3a)
    double max_potential = 0.0;  // max |V| found on the verification grid
    TraceRule rule = TraceRule::sharp;
};

// Potential of the transformed strip form at (s, u).
double strip_potential(const CurvatureSample& c, double u);

TransverseConstants transverse_constants(const CurvatureProfile& profile, double a,
                                         TraceRule rule = TraceRule::sharp);

// Uniform partition of [0, ℓ] into M intervals with certified curvature
// bounds κ⁻_j ≤ κ ≤ κ⁺_j on each.
struct Partition {
    int M = 0;
    double delta = 0.0;
    std::vector<Interval> kappa;  // lo = κ⁻_j, hi = κ⁺_j
};

Partition partition(const CurvatureProfile& profile, int M, Exec exec = Exec::parallel);

// standard: M ~ β^{1/3}; critical: M ~ β^{1/4} (smooth curvature maximum).
enum class MRule { standard, critical };

int auto_M(double beta, MRule rule = MRule::standard);

// sharp_root: per-interval ground states from the model operators.
// closed_form: explicit per-interval bounds, valid past β_a.
enum class BracketMode { sharp_root, closed_form };

std::string to_string(BracketMode mode);
std::string to_string(MRule rule);

struct StripBounds {
    BracketMode mode = BracketMode::sharp_root;
    double lower = 0.0;  // E⁻_M
    double upper = 0.0;  // E⁺_M
    double lower_shift = 0.0;  // inf spec Q⁻ = −v − 4aKC
    double upper_shift = 0.0;  // inf spec Q⁺ = 4π²M²/ℓ² + v
    std::size_t argmin_lower = 0;
    std::size_t argmin_upper = 0;
    std::vector<double> interval_lower;  // E^{−,j}
    std::vector<double> interval_upper;  // E^{+,j}
    std::vector<GroundStateCertificate> lower_certificates;
    std::vector<GroundStateCertificate> upper_certificates;
    std::optional<double> beta_a;
};

// Threshold beyond which the exponential remainders of the model operators
// are below 1/β (bisection on the displayed inequality; monotone past 3/a).
double closed_form_threshold(double K, double a);

StripBounds strip_bounds(const CurvatureProfile& profile, const TransverseConstants& constants,
                         const Partition& part, double beta, BracketMode mode = BracketMode::sharp_root,
                         Exec exec = Exec::parallel);

struct BracketOptions {
    std::optional<double> a;
    std::optional<int> M;
    BracketMode mode = BracketMode::sharp_root;
    MRule m_rule = MRule::standard;
    TraceRule trace_rule = TraceRule::sharp;
    double a_fraction = 0.95;     // default a = a_fraction · a₁
    double widening = 1e-9;       // relative padding of both ends
    std::size_t profile_samples = 1024;
    Exec exec = Exec::parallel;
};

struct ArcBracket {
    std::size_t arc = 0;
    std::string kind;
    double length = 0.0;
    double max_kappa = 0.0;
    TransverseConstants constants;
    int M = 0;
    double delta = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    StripBounds strip;
    std::vector<Interval> kappa;
};

struct BracketResult {
    double beta = 0.0;
    BracketMode mode = BracketMode::sharp_root;
    MRule m_rule = MRule::standard;
    TraceRule trace_rule = TraceRule::sharp;
    double a = 0.0;
    double a1 = 0.0;
    double gamma_max = 0.0;
    double widening = 0.0;
    bool exterior = false;
    double lower = 0.0;
    double upper = 0.0;
    std::vector<ArcBracket> arcs;

    double width() const { return upper - lower; }
    double midpoint() const { return 0.5 * (lower + upper); }
};

// β-independent data of a bracket computation: profiles, admissible a.
struct BracketSetup {
    DomainBoundary domain;
    BracketOptions options;
    std::vector<CurvatureProfile> profiles;
    StripLimit limit;
    double a = 0.0;
    double gamma_max = 0.0;
    std::vector<TransverseConstants> constants;
};

BracketSetup prepare_bracket(const DomainBoundary& domain, const BracketOptions& options = {});

BracketResult domain_bounds(const BracketSetup& setup, double beta);
BracketResult domain_bounds(const DomainBoundary& domain, double beta, const BracketOptions& options = {});

}  // namespace robin
