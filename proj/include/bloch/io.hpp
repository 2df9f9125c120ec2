#pragma once

#include <string>

namespace bloch {

/// Shortest round-trip-safe rendering: 17 significant digits.
std::string format_real(double x);

std::string read_file(const std::string& path);

/// "-" means stdout. Throws IoError.
void write_file(const std::string& path, const std::string& content);

}  // namespace bloch
