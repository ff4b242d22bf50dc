#pragma once

#include <string>

namespace genipm {

std::string read_text_file(const std::string& path);

// Write-to-temp-then-rename in the target directory, so readers never see a
// partial file and a crashed run leaves the previous version intact.
void atomic_write_file(const std::string& path, const std::string& content);

// Shortest decimal that round-trips a double (%.17g trimmed).
std::string format_double(double x);

}  // namespace genipm
