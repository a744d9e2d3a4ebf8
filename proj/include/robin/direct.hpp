#pragma once

#include <Eigen/SparseCore>

#include "robin/geometry.hpp"

namespace robin {

// Modified Bessel function of the first kind, orders 0 and 1. Power series up
// to x = 15, asymptotic expansion beyond. Unscaled values overflow past 700.
double bessel_i(int order, double x);
// e^{−x} I_ν(x), finite for all x ≥ 0.
double bessel_i_scaled(int order, double x);

struct DiskEigen {
    double k = 0.0;
    double eigenvalue = 0.0;
    double residual = 0.0;
};

// Principal Robin eigenvalue of the disk of radius R: −k² with
// k I₁(kR) = β I₀(kR).
DiskEigen disk_ground(double radius, double beta);
double disk_exact(double radius, double beta);

enum class EndCondition {
    neumann,    // natural conditions at s = 0, ℓ and u = a
    dirichlet,  // zero at s = 0, ℓ and u = a
};

struct StripGrid {
    int n_s = 64;
    int n_u = 64;
};

// Discrete transformed strip form on the tensor grid: stiffness A (symmetric)
// and lumped mass (trapezoidal weights), restricted to the free nodes.
struct StripSystem {
    Eigen::SparseMatrix<double> stiffness;
    Eigen::VectorXd mass;
    std::vector<double> u_of_unknown;
    double h_s = 0.0;
    double h_u = 0.0;
};

StripSystem assemble_strip_form(const CurvatureProfile& profile, double a, double beta, EndCondition bc,
                                StripGrid grid);

struct NumericEigenResult {
    double eigenvalue = 0.0;
    StripGrid grid;
    int iterations = 0;
    double residual = 0.0;  // ‖Ây − λy‖ / |λ| for the mass-scaled operator Â
    double shift = 0.0;
    // Richardson pair (h, h/2) and the extrapolated value (4E_{h/2} − E_h)/3.
    double coarse = 0.0;
    double fine = 0.0;
    double extrapolated = 0.0;
    bool has_richardson = false;
};

// Smallest eigenvalue of the discrete strip form by shift-invert Lanczos.
NumericEigenResult smallest_eigenvalue(const StripSystem& system, double shift, double tolerance = 1e-10);

NumericEigenResult strip_fd_ground(const CurvatureProfile& profile, double a, double beta, EndCondition bc,
                                   StripGrid grid, bool richardson = true);

}  // namespace robin
