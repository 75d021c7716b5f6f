#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace qgrnn {

// Shortest text that round-trips, capped at 17 significant digits.
std::string format_double(double v);

void write_text_file(const std::filesystem::path& path, const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

// Indented JSON with a trailing newline.
void write_json_file(const std::filesystem::path& path, const nlohmann::ordered_json& j);

}  // namespace qgrnn
