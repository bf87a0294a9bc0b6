#include "spdc/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>

#include <fmt/format.h>
#include <zlib.h>

#include "spdc/error.hpp"

namespace spdc {

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large inputs in chunks.
  constexpr std::size_t kChunk = 1u << 30;
  for (std::size_t pos = 0; pos < bytes.size(); pos += kChunk) {
    const auto n = static_cast<uInt>(std::min(kChunk, bytes.size() - pos));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + pos), n);
  }
  return static_cast<std::uint32_t>(crc);
}

std::string file_crc32(const std::filesystem::path& path) {
  return fmt::format("{:08x}", crc32_of(read_text(path)));
}

nlohmann::json RunManifest::to_json() const {
  return {
      {"tool_version", tool_version},
      {"command", command},
      {"database", {{"path", database_path}, {"crc32", database_crc32}}},
      {"parameters", parameters},
      {"outputs", outputs},
      {"wall_time_s", wall_time_s},
  };
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot open {} for writing", tmp.string()));
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(fmt::format("write to {} failed", tmp.string()));
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(fmt::format("cannot move {} into place: {}", path.string(), ec.message()));
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot open {}", path.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace spdc
