#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "rvi/ovb.hpp"

namespace rvi::cli {

enum class Mode { summary, data };
enum class OutputFormat { text, json, csv };

// Flags shared by every verb.
struct AnalysisConfig {
  Mode mode = Mode::summary;
  double alpha = 0.05;
  double null_value = 0.0;
  OutputFormat format = OutputFormat::text;
  int grid_resolution = 101;
};

// Adjusted-|t| sheet over a rectangle of postulated strength pairs, plus
// the critical value external tools need to draw the significance contour.
struct GridSheet {
  std::vector<double> axis_y;
  std::vector<double> axis_d;
  std::vector<std::vector<double>> t_values;  // [i][j] at (axis_y[i], axis_d[j])
  double critical_value = 0.0;
};

// Inclusive linear axes from 0 to each bound (a zero bound collapses to the
// single point 0). Bounds must lie in [0, 1); resolution >= 2.
GridSheet make_grid(const ovb::RestrictedFit& fit, double r2_y_max,
                    double r2_d_max, int resolution, double alpha);

// Entry point used by both main() and the tests. Returns the process exit
// code: 0 success, 2 usage error, 3 data error, 4 numerical error.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace rvi::cli
