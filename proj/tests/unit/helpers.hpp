#pragma once

#include <cstdint>

#include "chemo/grid.hpp"
#include "chemo/rng.hpp"

namespace chemo::testing {

inline ScalarField random_field(const GridSpec& g, std::uint64_t seed,
                                double lo = -1.0, double hi = 1.0) {
    ScalarField f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            f.at(i, j) = lo + (hi - lo) * cell_uniform01(seed, i, j);
    return f;
}

/// Random flux with zero boundary faces (the zero-flux contract).
inline FaceFluxField random_flux(const GridSpec& g, std::uint64_t seed,
                                 double amp = 1.0) {
    FaceFluxField flux(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i < g.nx; ++i)
            flux.x_at(i, j) = amp * (2.0 * cell_uniform01(seed, i, j) - 1.0);
    for (int j = 1; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            flux.y_at(i, j) = amp * (2.0 * cell_uniform01(seed ^ 0x5a5a, i, j) - 1.0);
    return flux;
}

} // namespace chemo::testing
