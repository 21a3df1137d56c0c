#pragma once

#include <string>
#include <vector>

// Output plumbing for the CLI: value formatting, CSV assembly, and atomic
// file writes (temp file + rename, so readers never observe a partial file).

namespace supra::io {

// Round-trip-safe decimal rendering, 17 significant digits.
std::string format_g17(double v);

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

void write_text_atomic(const std::string& path, const std::string& content);

} // namespace supra::io
