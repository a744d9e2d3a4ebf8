#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "robin/bracket.hpp"
#include "robin/exec.hpp"
#include "robin/geometry.hpp"

namespace robin {

enum class Method { bracket, bessel };

std::string to_string(Method method);
// Accepts "bracket" and "bessel"; throws ParseError otherwise.
Method parse_method(const std::string& name);

// One row of an asymptotic experiment. Failed rows keep β, method and the
// error message in `status` and carry no values.
struct SweepRecord {
    double beta = 0.0;
    Method method = Method::bracket;
    bool ok = false;
    std::string status;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<double> oracle;
    // value + β² + γ_max β
    std::optional<double> residual;

    // Bracket midpoint when present, oracle otherwise.
    std::optional<double> value() const;
    std::optional<double> width() const;
};

// Radius of the domain if it is a single full circle traversed
// counterclockwise (the case the Bessel oracle covers).
std::optional<double> disk_radius(const DomainBoundary& domain);

// One record per β per method, ordered by β then by method. β must be
// strictly increasing. Per-β failures are recorded, not thrown.
std::vector<SweepRecord> sweep(const BracketSetup& setup, const std::vector<double>& betas,
                               const std::vector<Method>& methods, Exec exec = Exec::parallel);
std::vector<SweepRecord> sweep(const DomainBoundary& domain, const std::vector<double>& betas,
                               const std::vector<Method>& methods, const BracketOptions& options = {});

// count points start·q^i, i = 0..count−1, ending exactly at `end`.
std::vector<double> geometric_betas(double start, double end, std::size_t count);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_halfwidth = 0.0;  // 95% Student-t half-width
    std::size_t n = 0;
};

// Least-squares line through (log x, log |y|); zero y are skipped.
LineFit loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct FitResult {
    double c2 = 0.0;
    double c1 = 0.0;
    double gamma_max = 0.0;
    double beta_lo = 0.0;
    double beta_hi = 0.0;
    std::size_t n = 0;
    std::vector<double> fit_residuals;  // value − (−c₂β² − c₁β), per fitted record
    double rms_residual = 0.0;
    // Slope of log|r(β)| against log β; absent when fewer than two records
    // have a nonzero remainder.
    std::optional<LineFit> remainder;
    // Slope of log(width) for records that carry a bracket.
    std::optional<LineFit> width;
};

// Fits value ≈ −c₂β² − c₁β over the top two decades of the successful
// records. The remainder is measured against the given γ_max.
FitResult fit_expansion(const std::vector<SweepRecord>& records, double gamma_max);

}  // namespace robin
