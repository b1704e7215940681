#pragma once

#include <filesystem>
#include <string>

namespace groklab {

// Whole-file atomic write: writes to a temp file in the same directory, then
// renames over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

// Shortest decimal form that round-trips a double (17 significant digits).
std::string format_double(double v);

}  // namespace groklab
