// Internal file helpers: atomic writes (temp + rename) and number formatting
// shared by the CSV writers.
#pragma once

#include <string>

namespace traction::io {

// Writes content to path atomically (same-directory temp file + rename).
void write_file_atomic(const std::string& path, const std::string& content);

// Shortest-ish decimal form, stable across runs; "%.12g".
std::string fmt(double v);

}  // namespace traction::io
