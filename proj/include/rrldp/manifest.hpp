// Copyright 2026 The rrldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rrldp/errors.hpp"

namespace rrldp {

inline constexpr std::string_view kArtifactVersion = "0.1.0";
inline constexpr std::string_view kSchemaTag = "rr-ldp/1";

// Everything needed to reproduce a CLI run byte for byte: the subcommand and
// its full argument vector. The timestamp documents when the run happened;
// it is not part of the reproducible output.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;  // arguments after the program name
  std::optional<std::uint64_t> seed;
  std::string version = std::string(kArtifactVersion);
  std::string created;  // ISO-8601 UTC

  nlohmann::ordered_json ToJson() const {
    nlohmann::ordered_json j;
    j["schema"] = std::string(kSchemaTag);
    j["kind"] = "run-manifest";
    j["version"] = version;
    j["command"] = command;
    j["argv"] = argv;
    if (seed.has_value()) {
      j["seed"] = *seed;
    } else {
      j["seed"] = nullptr;
    }
    j["created"] = created;
    return j;
  }

  std::string Serialize() const { return ToJson().dump(2) + "\n"; }

  static RunManifest FromJson(const nlohmann::json& j) {
    if (!j.contains("schema") || j["schema"] != std::string(kSchemaTag)) {
      throw Error("manifest has no rr-ldp/1 schema tag");
    }
    RunManifest manifest;
    manifest.command = j.at("command").get<std::string>();
    manifest.argv = j.at("argv").get<std::vector<std::string>>();
    if (j.contains("seed") && !j["seed"].is_null()) {
      manifest.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("version")) {
      manifest.version = j["version"].get<std::string>();
    }
    if (j.contains("created")) {
      manifest.created = j["created"].get<std::string>();
    }
    return manifest;
  }

  static RunManifest Parse(const std::string& text) {
    try {
      return FromJson(nlohmann::json::parse(text));
    } catch (const nlohmann::json::exception& e) {
      throw Error(std::string("cannot parse manifest: ") + e.what());
    }
  }
};

inline std::string CurrentTimestampUtc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return std::string(buffer);
}

}  // namespace rrldp
