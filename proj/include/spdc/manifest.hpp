#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace spdc {

/// crc32 of a file's bytes, as 8 lowercase hex digits.
std::string file_crc32(const std::filesystem::path& path);
std::uint32_t crc32_of(std::string_view bytes);

/// Record written next to every output: enough to rerun the command and
/// check the result bit for bit.
struct RunManifest {
  std::string tool_version;
  std::string command;
  std::string database_path;
  std::string database_crc32;
  nlohmann::json parameters = nlohmann::json::object();
  std::vector<std::string> outputs;
  double wall_time_s = 0.0;

  nlohmann::json to_json() const;
};

/// Writes text atomically enough for a single writer: temp file then rename.
void write_text(const std::filesystem::path& path, std::string_view text);
std::string read_text(const std::filesystem::path& path);

}  // namespace spdc
