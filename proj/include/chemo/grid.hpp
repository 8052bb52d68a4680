#pragma once

#include <cstddef>
#include <vector>

namespace chemo {

/// Uniform rectangular grid of cell-centered values on [0,lx] x [0,ly].
/// Cell (i,j) spans [i*hx,(i+1)*hx] x [j*hy,(j+1)*hy]; hx, hy are derived,
/// never stored.
struct GridSpec {
    int nx = 2;
    int ny = 2;
    double lx = 1.0;
    double ly = 1.0;

    GridSpec() = default;
    GridSpec(int nx, int ny, double lx, double ly);

    double hx() const { return lx / nx; }
    double hy() const { return ly / ny; }
    double cell_area() const { return hx() * hy(); }
    double area() const { return lx * ly; }
    int cells() const { return nx * ny; }

    /// Cell-center coordinates.
    double xc(int i) const { return (i + 0.5) * hx(); }
    double yc(int j) const { return (j + 0.5) * hy(); }

    bool operator==(const GridSpec&) const = default;
};

/// Cell-averaged scalar field, row-major with row j=0 first.
struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : grid(g), values(static_cast<std::size_t>(g.cells()), fill) {}

    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(j) * grid.nx + i;
    }
    double& at(int i, int j) { return values[idx(i, j)]; }
    double at(int i, int j) const { return values[idx(i, j)]; }

    /// NaN/Inf anywhere marks a corrupted field, never a valid state.
    bool finite() const;
};

/// Face-centered flux field. x-faces sit between cells (i-1,j) and (i,j),
/// y-faces between (i,j-1) and (i,j). Boundary faces carry exactly 0 for any
/// zero-flux quantity; that is how the insulated boundary enters the scheme.
struct FaceFluxField {
    GridSpec grid;
    std::vector<double> fx; // (nx+1) * ny
    std::vector<double> fy; // nx * (ny+1)

    FaceFluxField() = default;
    explicit FaceFluxField(const GridSpec& g)
        : grid(g),
          fx(static_cast<std::size_t>(g.nx + 1) * g.ny, 0.0),
          fy(static_cast<std::size_t>(g.nx) * (g.ny + 1), 0.0) {}

    std::size_t xidx(int i, int j) const {
        return static_cast<std::size_t>(j) * (grid.nx + 1) + i;
    }
    std::size_t yidx(int i, int j) const {
        return static_cast<std::size_t>(j) * grid.nx + i;
    }
    double& x_at(int i, int j) { return fx[xidx(i, j)]; }
    double x_at(int i, int j) const { return fx[xidx(i, j)]; }
    double& y_at(int i, int j) { return fy[yidx(i, j)]; }
    double y_at(int i, int j) const { return fy[yidx(i, j)]; }

    bool zero_boundary() const;
};

} // namespace chemo
