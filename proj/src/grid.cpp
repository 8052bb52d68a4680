#include "chemo/grid.hpp"

#include <cmath>

#include "chemo/errors.hpp"

namespace chemo {

GridSpec::GridSpec(int nx_, int ny_, double lx_, double ly_)
    : nx(nx_), ny(ny_), lx(lx_), ly(ly_) {
    if (nx < 1 || ny < 1)
        throw ValidationError("grid: nx and ny must be at least 1");
    if (!(lx > 0.0) || !(ly > 0.0))
        throw ValidationError("grid: lx and ly must be positive");
}

bool ScalarField::finite() const {
    for (double v : values)
        if (!std::isfinite(v)) return false;
    return true;
}

bool FaceFluxField::zero_boundary() const {
    const int nx = grid.nx, ny = grid.ny;
    for (int j = 0; j < ny; ++j)
        if (x_at(0, j) != 0.0 || x_at(nx, j) != 0.0) return false;
    for (int i = 0; i < nx; ++i)
        if (y_at(i, 0) != 0.0 || y_at(i, ny) != 0.0) return false;
    return true;
}

} // namespace chemo
