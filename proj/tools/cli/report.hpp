#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace cocite::cli {

std::string sha256_hex(std::string_view data);

/// Current UTC time as ISO-8601, e.g. "2026-01-31T12:00:00Z".
std::string utc_timestamp();

/// Writes `content` byte for byte; throws std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cocite::cli
