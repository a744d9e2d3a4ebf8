#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

#include "robin/bracket.hpp"
#include "robin/direct.hpp"
#include "robin/errors.hpp"

namespace robin {

namespace {

double trapezoid_weight(int i, int n, double h) { return (i == 0 || i == n) ? 0.5 * h : h; }

}  // namespace

StripSystem assemble_strip_form(const CurvatureProfile& profile, double a, double beta, EndCondition bc,
                                StripGrid grid)
{
    if (grid.n_s < 2 || grid.n_u < 2) throw PreconditionError("strip grid needs at least 2 cells per direction");
    if (!(a > 0.0)) throw PreconditionError("strip half-width must be positive");
    const int ns = grid.n_s, nu = grid.n_u;
    const double ell = profile.length;
    StripSystem sys;
    sys.h_s = ell / ns;
    sys.h_u = a / nu;

    std::vector<CurvatureSample> node(static_cast<std::size_t>(ns + 1));
    std::vector<double> mid(static_cast<std::size_t>(ns));
    for (int i = 0; i <= ns; ++i) node[static_cast<std::size_t>(i)] = profile.evaluate(i == ns ? ell : i * sys.h_s);
    for (int i = 0; i < ns; ++i) mid[static_cast<std::size_t>(i)] = profile.evaluate((i + 0.5) * sys.h_s).kappa;
    for (const auto& c : node)
        if (1.0 - a * c.kappa < 0.5)
            throw DiscretizationError("strip leaves the tubular regime: 1 - u kappa < 1/2 on the grid");

    const bool dirichlet = bc == EndCondition::dirichlet;
    const auto free_node = [&](int i, int j) { return !dirichlet || (i > 0 && i < ns && j < nu); };
    std::vector<int> index(static_cast<std::size_t>((ns + 1) * (nu + 1)), -1);
    int count = 0;
    for (int i = 0; i <= ns; ++i)
        for (int j = 0; j <= nu; ++j)
            if (free_node(i, j)) {
                index[static_cast<std::size_t>(i * (nu + 1) + j)] = count++;
                sys.u_of_unknown.push_back(j * sys.h_u);
            }
    const auto id = [&](int i, int j) { return index[static_cast<std::size_t>(i * (nu + 1) + j)]; };

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(count) * 5);
    sys.mass.resize(count);
    const auto edge = [&](int p, int q, double w) {
        if (p >= 0) trip.emplace_back(p, p, w);
        if (q >= 0) trip.emplace_back(q, q, w);
        if (p >= 0 && q >= 0) {
            trip.emplace_back(p, q, -w);
            trip.emplace_back(q, p, -w);
        }
    };

    // (1−uκ)⁻² |∂_s f|²
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j <= nu; ++j) {
            const double u = j * sys.h_u;
            const double c = 1.0 / ((1.0 - u * mid[static_cast<std::size_t>(i)]) * (1.0 - u * mid[static_cast<std::size_t>(i)]));
            edge(id(i, j), id(i + 1, j), trapezoid_weight(j, nu, sys.h_u) * c / sys.h_s);
        }
    // |∂_u f|²
    for (int i = 0; i <= ns; ++i)
        for (int j = 0; j < nu; ++j) edge(id(i, j), id(i, j + 1), trapezoid_weight(i, ns, sys.h_s) / sys.h_u);

    const double ell_end = 0.5 * node.back().dkappa;
    const double ell_start = 0.5 * node.front().dkappa;
    for (int i = 0; i <= ns; ++i) {
        const CurvatureSample& c = node[static_cast<std::size_t>(i)];
        const double ws = trapezoid_weight(i, ns, sys.h_s);
        for (int j = 0; j <= nu; ++j) {
            const int p = id(i, j);
            if (p < 0) continue;
            const double u = j * sys.h_u;
            const double wu = trapezoid_weight(j, nu, sys.h_u);
            double diag = -ws * wu * strip_potential(c, u);
            if (j == 0) diag -= ws * (beta + 0.5 * c.kappa);
            if (j == nu) diag += ws * 0.5 * c.kappa / (1.0 - a * c.kappa);
            const double w3 = u / std::pow(1.0 - u * c.kappa, 3);
            if (i == ns) diag += ell_end * wu * w3;
            if (i == 0) diag -= ell_start * wu * w3;
            trip.emplace_back(p, p, diag);
            sys.mass[p] = ws * wu;
        }
    }
    sys.stiffness.resize(count, count);
    sys.stiffness.setFromTriplets(trip.begin(), trip.end());
    if (!(sys.mass.minCoeff() > 0.0)) throw DiscretizationError("mass matrix is not positive definite");
    return sys;
}

NumericEigenResult smallest_eigenvalue(const StripSystem& system, double shift, double tolerance)
{
    using SpMat = Eigen::SparseMatrix<double>;
    const Eigen::VectorXd scale = system.mass.cwiseSqrt().cwiseInverse();
    const SpMat A = scale.asDiagonal() * system.stiffness * scale.asDiagonal();
    const Eigen::Index n = A.rows();
    SpMat identity(n, n);
    identity.setIdentity();

    Eigen::SimplicialLLT<SpMat> llt;
    for (int attempt = 0;; ++attempt) {
        llt.compute(A - shift * identity);
        if (llt.info() == Eigen::Success) break;
        if (attempt == 60) throw ConvergenceError("no shift below the discrete spectrum found");
        shift -= std::max(1.0, 0.25 * std::abs(shift));
    }

    // Start: decaying profile in u, positive everywhere.
    Eigen::VectorXd x(n);
    const double decay = std::sqrt(std::max(1.0, -shift));
    for (Eigen::Index i = 0; i < n; ++i)
        x[i] = std::exp(-decay * system.u_of_unknown[static_cast<std::size_t>(i)]) / scale[i];
    x.normalize();

    const int m = static_cast<int>(std::min<Eigen::Index>(n, 60));
    Eigen::MatrixXd V(n, m + 1);
    NumericEigenResult out;
    out.shift = shift;
    for (int restart = 0; restart < 200; ++restart) {
        std::vector<double> alpha, beta;
        V.col(0) = x;
        int steps = 0;
        for (int j = 0; j < m; ++j) {
            Eigen::VectorXd w = llt.solve(V.col(j));
            alpha.push_back(V.col(j).dot(w));
            for (int pass = 0; pass < 2; ++pass)
                w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
            ++steps;
            const double b = w.norm();
            if (b < 1e-14 * std::abs(alpha.back()) || j + 1 == m) break;
            beta.push_back(b);
            V.col(j + 1) = w / b;
        }
        out.iterations += steps;
        Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), steps);
        Eigen::VectorXd sub = Eigen::Map<Eigen::VectorXd>(beta.data(), steps - 1);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        tri.computeFromTridiagonal(diag, sub);
        // Largest Ritz value of (Â − σ)⁻¹ ↔ smallest eigenvalue of Â.
        const Eigen::VectorXd z = tri.eigenvectors().col(steps - 1);
        x = V.leftCols(steps) * z;
        x.normalize();
        const Eigen::VectorXd Ax = A * x;
        const double lambda = x.dot(Ax);
        out.eigenvalue = lambda;
        out.residual = (Ax - lambda * x).norm() / std::abs(lambda);
        if (out.residual <= tolerance) return out;
    }
    std::ostringstream os;
    os << "shift-invert Lanczos did not converge (residual " << out.residual << ")";
    throw ConvergenceError(os.str());
}

NumericEigenResult strip_fd_ground(const CurvatureProfile& profile, double a, double beta, EndCondition bc,
                                   StripGrid grid, bool richardson)
{
    const double K = seminorm_K(profile);
    const double shift = -(beta + K) * (beta + K) - 1.0;
    NumericEigenResult coarse = smallest_eigenvalue(assemble_strip_form(profile, a, beta, bc, grid), shift);
    coarse.grid = grid;
    coarse.coarse = coarse.eigenvalue;
    if (!richardson) return coarse;
    const StripGrid fine_grid{2 * grid.n_s, 2 * grid.n_u};
    const NumericEigenResult fine = smallest_eigenvalue(assemble_strip_form(profile, a, beta, bc, fine_grid), shift);
    coarse.fine = fine.eigenvalue;
    coarse.extrapolated = (4.0 * fine.eigenvalue - coarse.eigenvalue) / 3.0;
    coarse.has_richardson = true;
    return coarse;
}

}  // namespace robin
