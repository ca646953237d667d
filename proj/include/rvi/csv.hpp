#pragma once

#include <istream>
#include <string>

#include "rvi/ols.hpp"

namespace rvi::csv {

// Comma-separated, first row headers, '.' decimal point. Fields that do not
// parse as finite numbers are missing values; rows containing any missing
// value are dropped and counted on the resulting Dataset.
ols::Dataset read(std::istream& in);
ols::Dataset read_file(const std::string& path);

}  // namespace rvi::csv
