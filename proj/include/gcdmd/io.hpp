#pragma once

#include <string>

namespace gcdmd {

// Shortest round-trip of the value rounded to 15 significant digits.
std::string format_double(double v);
double round15(double v);

// Writes to a sibling temp file, then renames over the target.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}
