#pragma once

#include <iosfwd>
#include <string>

#include "chemo/grid.hpp"

namespace chemo {

// Plain-text field dump: header "nx ny lx ly", then ny lines of nx values,
// row j=0 first, written with 17 significant digits.

void write_field(std::ostream& os, const ScalarField& f);
void write_field(const std::string& path, const ScalarField& f);

ScalarField read_field(std::istream& is);
ScalarField read_field(const std::string& path);

} // namespace chemo
