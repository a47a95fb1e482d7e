// Copyright 2026 The heliodac Authors.
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

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace heliodac {

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

struct ManifestEntry {
    std::string role;
    std::filesystem::path path;
};

// Records the canonical config hash plus the hash of every input and output file.
nlohmann::json make_manifest(const nlohmann::json& config, const std::vector<ManifestEntry>& inputs,
                             const std::vector<std::filesystem::path>& outputs, std::string_view command);

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& manifest);

} // namespace heliodac
