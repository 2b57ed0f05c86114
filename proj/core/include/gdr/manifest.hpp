#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace gdr::manifest {

/// Provenance record written atomically at the end of every CLI run.
struct RunManifest {
  std::string run_id;  // content hash of command line, config, and inputs
  std::string command_line;
  std::string config_hash;
  std::map<std::string, std::string> input_digests;
  std::map<std::string, std::string> output_digests;
  std::string backend_id;
  long long records = 0;
  long long failures = 0;
  long long cached_hits = 0;
  double wall_time_s = 0.0;
  std::vector<std::pair<std::string, std::string>> failure_details;
};

std::string make_run_id(const RunManifest& manifest);

void write(const std::filesystem::path& path, RunManifest manifest);

}  // namespace gdr::manifest
