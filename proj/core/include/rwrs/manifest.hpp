#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rwrs {

// Provenance record for a CLI run. Data files named in `outputs` are
// byte-identical across re-runs with the same manifest inputs; the
// timestamp lives only here and is excluded from that contract.
struct RunManifest {
  std::string command;
  std::string config_echo;
  std::uint64_t master_seed = 0;
  std::string seed_source;  // flag | env | default
  unsigned threads = 0;
  std::string format;
  std::map<std::string, std::string> derived_seeds;  // stream name -> key hex
  std::vector<std::string> outputs;
};

std::string manifest_to_json(const RunManifest& manifest, bool with_timestamp = true);
void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace rwrs
