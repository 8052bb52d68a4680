#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "chemo/grid.hpp"

namespace chemo {

struct EllipticSolveReport {
    int iterations = 0;
    double final_residual_rel = 0.0; // ||w - (I - c*Lap)v||_2 / ||w||_2
    double min_v = 0.0;
    double max_v = 0.0;
};

enum class Preconditioner {
    None,
    Jacobi,
    /// Exact cosine-basis diagonalization of (I - c*Lap): the mirror-ghost
    /// Neumann Laplacian on a uniform grid is diagonal in the DCT-II basis,
    /// so this preconditioner solves in one application. CG wraps it and
    /// certifies the residual, keeping the iterative contract intact.
    Spectral,
};

/// Solver context for (I - coeff*Lap_h) x = w on one grid. The operator is
/// symmetric positive definite (identity plus the negated Neumann Laplacian),
/// solved by conjugate gradients. One instance per run; instances share
/// nothing, so independent runs may solve concurrently.
class HelmholtzSolver {
  public:
    explicit HelmholtzSolver(const GridSpec& grid,
                             Preconditioner pc = Preconditioner::None);
    ~HelmholtzSolver();
    HelmholtzSolver(HelmholtzSolver&&) noexcept;
    HelmholtzSolver& operator=(HelmholtzSolver&&) noexcept;

    /// Solves to ||w - A x||_2 <= max(tol*||w||_2, floor), where floor is the
    /// eps-scaled evaluation noise of A x (residuals below it cannot be
    /// certified in double precision; the floor only matters when tol asks
    /// for more than the arithmetic can represent). Throws NonConvergence
    /// when the target is missed within max_iter or the residual stagnates.
    /// Initial guess defaults to w itself.
    std::pair<ScalarField, EllipticSolveReport>
    solve(const ScalarField& w, double tol, int max_iter,
          const ScalarField* initial_guess = nullptr, double coeff = 1.0) const;

    const GridSpec& grid() const { return grid_; }
    Preconditioner preconditioner() const { return pc_; }

  private:
    GridSpec grid_;
    Preconditioner pc_;
    struct SpectralPlan;
    std::unique_ptr<SpectralPlan> plan_;
    std::vector<double> jacobi_diag_;
};

/// One-shot solve of (I - Lap_h) v = w. Unpreconditioned by default; the
/// jacobi flag switches in a diagonal preconditioner.
std::pair<ScalarField, EllipticSolveReport>
solve_helmholtz(const ScalarField& w, double tol, int max_iter,
                const ScalarField* initial_guess = nullptr, bool jacobi = false);

/// Discrete maximum principle check for v solving (I - Lap_h) v = w:
/// true iff min(w) - slack <= v <= max(w) + slack everywhere,
/// slack = 10 * tol * ||w||_inf.
bool check_elliptic_bounds(const ScalarField& v, const ScalarField& w, double tol);

} // namespace chemo
