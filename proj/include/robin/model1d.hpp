#pragma once

#include <optional>
#include <string>

namespace robin {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    bool contains(double x) const { return lo <= x && x <= hi; }
    double width() const { return hi - lo; }
};

enum class ModelOperator {
    robin_robin,      // −f″ on (0,a), f′(0)+βf(0) = 0, f′(a)−γf(a) = 0
    robin_dirichlet,  // −f″ on (0,a), f′(0)+βf(0) = 0, f(a) = 0
};

std::string to_string(ModelOperator op);

// Ground state −k² of a one-dimensional model operator with its analytic
// enclosure. The root is stored both as k and as log|k − β| so that the
// strict enclosure can be decided even when k − β is below the resolution
// of β in double precision.
struct GroundStateCertificate {
    ModelOperator op = ModelOperator::robin_robin;
    double a = 0.0;
    double beta = 0.0;
    std::optional<double> gamma;

    double k = 0.0;
    double log_gap = 0.0;  // log|k − β|
    double eigenvalue = 0.0;
    Interval enclosure;  // a priori eigenvalue interval
    double residual = 0.0;
    int iterations = 0;
    bool extended_precondition = false;

    // |−E − β²| = gap·(2β ± gap), in log form.
    double log_excess() const;
    // Strict check of the enclosure, evaluated in log form.
    bool strictly_enclosed() const;
};

// Robin–Robin ground state. Requires a > 0, β > 2γ, βa > 1; γ < 0 is accepted
// when β > 2|γ| and flagged extended_precondition.
GroundStateCertificate robin_robin_ground(double a, double beta, double gamma);

// Robin–Dirichlet ground state. Requires a > 0, βa > 4/3.
GroundStateCertificate robin_dirichlet_ground(double a, double beta);

// (−β²(1 + 123e^{−2βa}), −β²)
Interval robin_robin_bounds(double a, double beta, double gamma);
// (−β², −β²(1 − 4e^{−βa}))
Interval robin_dirichlet_bounds(double a, double beta);

// Upper bound of the Robin–Robin root used as initial bracket: (1 + 41e^{−2βa})β.
double robin_robin_root_bound(double a, double beta);
// Left end of the Robin–Dirichlet bracket: √(β² − β/a).
double robin_dirichlet_root_floor(double a, double beta);

}  // namespace robin
