#include "chemo/field_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace chemo {

void write_field(std::ostream& os, const ScalarField& f) {
    os << f.grid.nx << ' ' << f.grid.ny << ' ' << std::setprecision(17)
       << f.grid.lx << ' ' << f.grid.ly << '\n';
    os << std::setprecision(17);
    for (int j = 0; j < f.grid.ny; ++j) {
        for (int i = 0; i < f.grid.nx; ++i) {
            if (i) os << ' ';
            os << f.at(i, j);
        }
        os << '\n';
    }
}

void write_field(const std::string& path, const ScalarField& f) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_field(os, f);
}

ScalarField read_field(std::istream& is) {
    int nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;
    if (!(is >> nx >> ny >> lx >> ly))
        throw std::runtime_error("field dump: bad header");
    ScalarField f(GridSpec(nx, ny, lx, ly));
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            if (!(is >> f.at(i, j)))
                throw std::runtime_error("field dump: truncated data");
    return f;
}

ScalarField read_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_field(is);
}

} // namespace chemo
