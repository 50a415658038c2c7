#pragma once

#include <string>
#include <vector>

#include "hatano/csv.hpp"

namespace hatano::cli {

/// Eigenvalues in the complex plane, coloured by g. Needs columns g, re, im.
std::string spectrum_svg(const CsvTable& table, const std::string& title);

/// One polyline of rate against g per (sample_id, j), predicted lines
/// gamma - g dashed. Needs sample_id, j, g, rate, predicted.
std::string rate_svg(const CsvTable& table);

/// Histogram of the values with a marker at `reference` (NaN for none).
std::string histogram_svg(const std::vector<double>& values, const std::string& title, const std::string& xlabel,
                          double reference);

}  // namespace hatano::cli
