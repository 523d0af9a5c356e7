#pragma once

#include <string>
#include <vector>

namespace qbox {

// Shortest round-trip decimal form (std::to_chars); deterministic bytes.
std::string format_double(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace qbox
