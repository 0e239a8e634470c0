#include "rwrs/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rwrs/version.hpp"

namespace rwrs {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

}  // namespace

std::string manifest_to_json(const RunManifest& manifest, bool with_timestamp) {
  nlohmann::ordered_json j;
  j["artifact"] = "rwrs";
  j["version"] = kVersion;
  if (with_timestamp) j["created_utc"] = utc_now();
  j["command"] = manifest.command;
  j["master_seed"] = manifest.master_seed;
  j["seed_source"] = manifest.seed_source;
  j["threads"] = manifest.threads;
  j["format"] = manifest.format;
  j["derived_seeds"] = manifest.derived_seeds;
  j["outputs"] = manifest.outputs;
  j["config_echo"] = manifest.config_echo;
  return j.dump(2);
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write manifest: " + path);
  os << manifest_to_json(manifest) << "\n";
}

}  // namespace rwrs
