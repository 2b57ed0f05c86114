#include "gdr/manifest.hpp"

#include <json.hpp>

#include "gdr/digest.hpp"
#include "gdr/io.hpp"

namespace gdr::manifest {

using nlohmann::json;

std::string make_run_id(const RunManifest& manifest) {
  std::string material = manifest.command_line;
  material += '\x1f';
  material += manifest.config_hash;
  for (const auto& [path, sum] : manifest.input_digests) {
    material += '\x1f';
    material += path;
    material += '=';
    material += sum;
  }
  return digest::sha256_hex(material).substr(0, 16);
}

void write(const std::filesystem::path& path, RunManifest manifest) {
  if (manifest.run_id.empty()) {
    manifest.run_id = make_run_id(manifest);
  }
  json failures = json::array();
  for (const auto& [id, reason] : manifest.failure_details) {
    failures.push_back({{"record_id", id}, {"reason", reason}});
  }
  json j = {
      {"run_id", manifest.run_id},
      {"command_line", manifest.command_line},
      {"config_hash", manifest.config_hash},
      {"inputs", manifest.input_digests},
      {"outputs", manifest.output_digests},
      {"backend_id", manifest.backend_id},
      {"counts",
       {{"records", manifest.records},
        {"failures", manifest.failures},
        {"cached_hits", manifest.cached_hits}}},
      {"wall_time_s", manifest.wall_time_s},
      {"failure_details", failures},
  };
  io::atomic_write(path, j.dump(2) + "\n");
}

}  // namespace gdr::manifest
