#pragma once

#include <string>

#include "ica/model.hpp"

namespace ica {

// Shared matrix CSV format: comma-separated decimals, one matrix row per
// line, no header, '.' decimal separator, '\n' terminators. Written with 17
// significant digits so doubles round-trip exactly.

std::string format_double(double v);

Matrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const Matrix& m, const std::string& path);

}  // namespace ica
