#include "chemo/kernels.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace chemo {

namespace {

constexpr int kOmpMinCells = omp_min_cells;

// Per-cell / per-face arithmetic shared by the serial and parallel builds.
// Keeping a single definition is what guarantees bitwise parity.

inline double grad_x(const ScalarField& f, int i, int j, double inv_hx) {
    return (f.at(i, j) - f.at(i - 1, j)) * inv_hx;
}

inline double grad_y(const ScalarField& f, int i, int j, double inv_hy) {
    return (f.at(i, j) - f.at(i, j - 1)) * inv_hy;
}

// Laplacian of f at (i,j) written as the divergence of its face gradients,
// with boundary faces pinned to zero (insulated boundary).
inline double lap_cell(const ScalarField& f, int i, int j,
                       double inv_hx, double inv_hy) {
    const int nx = f.grid.nx, ny = f.grid.ny;
    const double gxl = (i > 0) ? grad_x(f, i, j, inv_hx) : 0.0;
    const double gxr = (i + 1 < nx) ? grad_x(f, i + 1, j, inv_hx) : 0.0;
    const double gyb = (j > 0) ? grad_y(f, i, j, inv_hy) : 0.0;
    const double gyt = (j + 1 < ny) ? grad_y(f, i, j + 1, inv_hy) : 0.0;
    return (gxr - gxl) * inv_hx + (gyt - gyb) * inv_hy;
}

inline double div_cell(const FaceFluxField& flux, int i, int j,
                       double inv_hx, double inv_hy) {
    return (flux.x_at(i + 1, j) - flux.x_at(i, j)) * inv_hx +
           (flux.y_at(i, j + 1) - flux.y_at(i, j)) * inv_hy;
}

// Row partial sums accumulated in row order: the canonical reduction order.
template <typename RowSum>
double reduce_rows_serial(int ny, RowSum&& row_sum) {
    double total = 0.0;
    for (int j = 0; j < ny; ++j) total += row_sum(j);
    return total;
}

template <typename RowSum>
double reduce_rows_parallel(int ny, int cells, RowSum&& row_sum) {
    if (cells < kOmpMinCells) return reduce_rows_serial(ny, row_sum);
    std::vector<double> partial(static_cast<std::size_t>(ny));
#pragma omp parallel for schedule(static)
    for (int j = 0; j < ny; ++j) partial[j] = row_sum(j);
    double total = 0.0;
    for (int j = 0; j < ny; ++j) total += partial[j];
    return total;
}

inline double row_sum_values(const ScalarField& f, int j) {
    const int nx = f.grid.nx;
    double s = 0.0;
    for (int i = 0; i < nx; ++i) s += f.values[f.idx(i, j)];
    return s;
}

inline double row_sum_prod(const ScalarField& a, const ScalarField& b, int j) {
    const int nx = a.grid.nx;
    double s = 0.0;
    for (int i = 0; i < nx; ++i) s += a.values[a.idx(i, j)] * b.values[b.idx(i, j)];
    return s;
}

inline double row_sum_sq(const ScalarField& f, int j) {
    const int nx = f.grid.nx;
    double s = 0.0;
    for (int i = 0; i < nx; ++i) {
        const double v = f.values[f.idx(i, j)];
        s += v * v;
    }
    return s;
}

inline double row_sum_abs(const ScalarField& f, int j) {
    const int nx = f.grid.nx;
    double s = 0.0;
    for (int i = 0; i < nx; ++i) s += std::abs(f.values[f.idx(i, j)]);
    return s;
}

// Squared face gradients owned by row j: x-faces of row j plus the y-faces
// below row j (the top boundary row of y-faces is zero anyway).
inline double row_grad_sq(const ScalarField& f, int j,
                          double inv_hx, double inv_hy) {
    const int nx = f.grid.nx;
    double s = 0.0;
    for (int i = 1; i < nx; ++i) {
        const double g = grad_x(f, i, j, inv_hx);
        s += g * g;
    }
    if (j > 0) {
        for (int i = 0; i < nx; ++i) {
            const double g = grad_y(f, i, j, inv_hy);
            s += g * g;
        }
    }
    return s;
}

FieldStats stats_from_rows(const ScalarField& f,
                           const std::vector<double>& sum_row,
                           const std::vector<double>& abs_row,
                           const std::vector<double>& sq_row,
                           const std::vector<double>& min_row,
                           const std::vector<double>& max_row) {
    const int ny = f.grid.ny;
    FieldStats st;
    st.min = std::numeric_limits<double>::infinity();
    st.max = -std::numeric_limits<double>::infinity();
    double sum = 0.0, abs_sum = 0.0, sq_sum = 0.0;
    for (int j = 0; j < ny; ++j) {
        sum += sum_row[j];
        abs_sum += abs_row[j];
        sq_sum += sq_row[j];
        st.min = std::min(st.min, min_row[j]);
        st.max = std::max(st.max, max_row[j]);
    }
    const double w = f.grid.cell_area();
    st.mean = sum / f.grid.cells();
    st.l1 = w * abs_sum;
    st.l2 = std::sqrt(w * sq_sum);
    st.linf = std::max(std::abs(st.min), std::abs(st.max));
    return st;
}

void stats_row(const ScalarField& f, int j, double& sum, double& abs_sum,
               double& sq_sum, double& mn, double& mx) {
    const int nx = f.grid.nx;
    sum = 0.0;
    abs_sum = 0.0;
    sq_sum = 0.0;
    mn = std::numeric_limits<double>::infinity();
    mx = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < nx; ++i) {
        const double v = f.values[f.idx(i, j)];
        sum += v;
        abs_sum += std::abs(v);
        sq_sum += v * v;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
}

} // namespace

// ----------------------------------------------------------------- reference

namespace ref {

double integrate(const ScalarField& f) {
    return f.grid.cell_area() *
           reduce_rows_serial(f.grid.ny, [&](int j) { return row_sum_values(f, j); });
}

double dot_weighted(const ScalarField& a, const ScalarField& b) {
    return a.grid.cell_area() *
           reduce_rows_serial(a.grid.ny, [&](int j) { return row_sum_prod(a, b, j); });
}

double norm2(const ScalarField& f) {
    return std::sqrt(
        reduce_rows_serial(f.grid.ny, [&](int j) { return row_sum_sq(f, j); }));
}

FieldStats field_stats(const ScalarField& f) {
    const int ny = f.grid.ny;
    std::vector<double> sum(ny), abs_sum(ny), sq(ny), mn(ny), mx(ny);
    for (int j = 0; j < ny; ++j)
        stats_row(f, j, sum[j], abs_sum[j], sq[j], mn[j], mx[j]);
    return stats_from_rows(f, sum, abs_sum, sq, mn, mx);
}

void gradient_faces(const ScalarField& f, FaceFluxField& out) {
    const int nx = f.grid.nx, ny = f.grid.ny;
    const double inv_hx = 1.0 / f.grid.hx(), inv_hy = 1.0 / f.grid.hy();
    for (int j = 0; j < ny; ++j) {
        out.x_at(0, j) = 0.0;
        for (int i = 1; i < nx; ++i) out.x_at(i, j) = grad_x(f, i, j, inv_hx);
        out.x_at(nx, j) = 0.0;
    }
    for (int i = 0; i < nx; ++i) out.y_at(i, 0) = 0.0;
    for (int j = 1; j < ny; ++j)
        for (int i = 0; i < nx; ++i) out.y_at(i, j) = grad_y(f, i, j, inv_hy);
    for (int i = 0; i < nx; ++i) out.y_at(i, ny) = 0.0;
}

void divergence(const FaceFluxField& flux, ScalarField& out) {
    const int nx = flux.grid.nx, ny = flux.grid.ny;
    const double inv_hx = 1.0 / flux.grid.hx(), inv_hy = 1.0 / flux.grid.hy();
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.at(i, j) = div_cell(flux, i, j, inv_hx, inv_hy);
}

void laplacian_neumann(const ScalarField& f, ScalarField& out) {
    const int nx = f.grid.nx, ny = f.grid.ny;
    const double inv_hx = 1.0 / f.grid.hx(), inv_hy = 1.0 / f.grid.hy();
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.at(i, j) = lap_cell(f, i, j, inv_hx, inv_hy);
}

void apply_helmholtz(const ScalarField& x, double coeff, ScalarField& out) {
    const int nx = x.grid.nx, ny = x.grid.ny;
    const double inv_hx = 1.0 / x.grid.hx(), inv_hy = 1.0 / x.grid.hy();
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.at(i, j) = x.at(i, j) - coeff * lap_cell(x, i, j, inv_hx, inv_hy);
}

double gradient_energy(const ScalarField& f) {
    const double inv_hx = 1.0 / f.grid.hx(), inv_hy = 1.0 / f.grid.hy();
    const double s = reduce_rows_serial(
        f.grid.ny, [&](int j) { return row_grad_sq(f, j, inv_hx, inv_hy); });
    return f.grid.cell_area() * s;
}

} // namespace ref

// -------------------------------------------------------------------- kernels

namespace kern {

double integrate(const ScalarField& f) {
    return f.grid.cell_area() *
           reduce_rows_parallel(f.grid.ny, f.grid.cells(),
                                [&](int j) { return row_sum_values(f, j); });
}

double dot_weighted(const ScalarField& a, const ScalarField& b) {
    return a.grid.cell_area() *
           reduce_rows_parallel(a.grid.ny, a.grid.cells(),
                                [&](int j) { return row_sum_prod(a, b, j); });
}

double norm2(const ScalarField& f) {
    return std::sqrt(reduce_rows_parallel(
        f.grid.ny, f.grid.cells(), [&](int j) { return row_sum_sq(f, j); }));
}

FieldStats field_stats(const ScalarField& f) {
    const int ny = f.grid.ny;
    std::vector<double> sum(ny), abs_sum(ny), sq(ny), mn(ny), mx(ny);
#pragma omp parallel for schedule(static) if (f.grid.cells() >= kOmpMinCells)
    for (int j = 0; j < ny; ++j)
        stats_row(f, j, sum[j], abs_sum[j], sq[j], mn[j], mx[j]);
    return stats_from_rows(f, sum, abs_sum, sq, mn, mx);
}

void gradient_faces(const ScalarField& f, FaceFluxField& out) {
    const int nx = f.grid.nx, ny = f.grid.ny;
    const double inv_hx = 1.0 / f.grid.hx(), inv_hy = 1.0 / f.grid.hy();
#pragma omp parallel for schedule(static) if (f.grid.cells() >= kOmpMinCells)
    for (int j = 0; j < ny; ++j) {
        out.x_at(0, j) = 0.0;
        for (int i = 1; i < nx; ++i) out.x_at(i, j) = grad_x(f, i, j, inv_hx);
        out.x_at(nx, j) = 0.0;
    }
#pragma omp parallel for schedule(static) if (f.grid.cells() >= kOmpMinCells)
    for (int j = 0; j <= ny; ++j) {
        if (j == 0 || j == ny) {
            for (int i = 0; i < nx; ++i) out.y_at(i, j) = 0.0;
        } else {
            for (int i = 0; i < nx; ++i) out.y_at(i, j) = grad_y(f, i, j, inv_hy);
        }
    }
}

void divergence(const FaceFluxField& flux, ScalarField& out) {
    const int nx = flux.grid.nx, ny = flux.grid.ny;
    const double inv_hx = 1.0 / flux.grid.hx(), inv_hy = 1.0 / flux.grid.hy();
#pragma omp parallel for schedule(static) if (flux.grid.cells() >= kOmpMinCells)
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.at(i, j) = div_cell(flux, i, j, inv_hx, inv_hy);
}

void laplacian_neumann(const ScalarField& f, ScalarField& out) {
    const int nx = f.grid.nx, ny = f.grid.ny;
    const double inv_hx = 1.0 / f.grid.hx(), inv_hy = 1.0 / f.grid.hy();
#pragma omp parallel for schedule(static) if (f.grid.cells() >= kOmpMinCells)
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.at(i, j) = lap_cell(f, i, j, inv_hx, inv_hy);
}

void apply_helmholtz(const ScalarField& x, double coeff, ScalarField& out) {
    const int nx = x.grid.nx, ny = x.grid.ny;
    const double inv_hx = 1.0 / x.grid.hx(), inv_hy = 1.0 / x.grid.hy();
#pragma omp parallel for schedule(static) if (x.grid.cells() >= kOmpMinCells)
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            out.at(i, j) = x.at(i, j) - coeff * lap_cell(x, i, j, inv_hx, inv_hy);
}

double gradient_energy(const ScalarField& f) {
    const double inv_hx = 1.0 / f.grid.hx(), inv_hy = 1.0 / f.grid.hy();
    const double s = reduce_rows_parallel(
        f.grid.ny, f.grid.cells(),
        [&](int j) { return row_grad_sq(f, j, inv_hx, inv_hy); });
    return f.grid.cell_area() * s;
}

void axpy(ScalarField& y, double a, const ScalarField& x) {
    const int n = y.grid.cells();
#pragma omp parallel for schedule(static) if (n >= kOmpMinCells)
    for (int k = 0; k < n; ++k) y.values[k] += a * x.values[k];
}

void xpay(ScalarField& y, double a, const ScalarField& x) {
    const int n = y.grid.cells();
#pragma omp parallel for schedule(static) if (n >= kOmpMinCells)
    for (int k = 0; k < n; ++k) y.values[k] = x.values[k] + a * y.values[k];
}

void sub(const ScalarField& a, const ScalarField& b, ScalarField& out) {
    const int n = a.grid.cells();
#pragma omp parallel for schedule(static) if (n >= kOmpMinCells)
    for (int k = 0; k < n; ++k) out.values[k] = a.values[k] - b.values[k];
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
    const int ny = a.grid.ny, nx = a.grid.nx;
    std::vector<double> row(ny, 0.0);
#pragma omp parallel for schedule(static) if (a.grid.cells() >= kOmpMinCells)
    for (int j = 0; j < ny; ++j) {
        double m = 0.0;
        for (int i = 0; i < nx; ++i)
            m = std::max(m, std::abs(a.values[a.idx(i, j)] - b.values[b.idx(i, j)]));
        row[j] = m;
    }
    double m = 0.0;
    for (int j = 0; j < ny; ++j) m = std::max(m, row[j]);
    return m;
}

} // namespace kern

// ------------------------------------------------------------------- wrappers

double integrate(const ScalarField& f) { return kern::integrate(f); }

ScalarField laplacian_neumann(const ScalarField& f) {
    ScalarField out(f.grid);
    kern::laplacian_neumann(f, out);
    return out;
}

FaceFluxField gradient_faces(const ScalarField& f) {
    FaceFluxField out(f.grid);
    kern::gradient_faces(f, out);
    return out;
}

ScalarField divergence(const FaceFluxField& flux) {
    ScalarField out(flux.grid);
    kern::divergence(flux, out);
    return out;
}

FieldStats field_stats(const ScalarField& f) { return kern::field_stats(f); }

double gradient_energy(const ScalarField& f) { return kern::gradient_energy(f); }

} // namespace chemo
