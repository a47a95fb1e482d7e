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
#include "heliodac/hashing.hpp"

#include <array>
#include <fstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "heliodac/error.hpp"

namespace heliodac {

namespace {

class Digest {
public:
    Digest() : ctx_(EVP_MD_CTX_new())
    {
        if (!ctx_ || EVP_DigestInit_ex(ctx_, EVP_sha256(), nullptr) != 1)
            throw Error("cannot initialise SHA-256");
    }
    ~Digest() { EVP_MD_CTX_free(ctx_); }
    Digest(const Digest&) = delete;
    Digest& operator=(const Digest&) = delete;

    void update(const void* data, std::size_t n)
    {
        if (EVP_DigestUpdate(ctx_, data, n) != 1)
            throw Error("SHA-256 update failed");
    }

    std::string hex()
    {
        std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
        unsigned int len = 0;
        if (EVP_DigestFinal_ex(ctx_, md.data(), &len) != 1)
            throw Error("SHA-256 finalisation failed");
        std::string out;
        out.reserve(2 * len);
        for (unsigned int i = 0; i < len; ++i)
            out += fmt::format("{:02x}", md[i]);
        return out;
    }

private:
    EVP_MD_CTX* ctx_;
};

} // namespace

std::string sha256_hex(std::string_view bytes)
{
    Digest d;
    d.update(bytes.data(), bytes.size());
    return d.hex();
}

std::string sha256_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError(fmt::format("cannot open {} for hashing", path.string()));
    Digest d;
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0)
            d.update(buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    return d.hex();
}

nlohmann::json make_manifest(const nlohmann::json& config, const std::vector<ManifestEntry>& inputs,
                             const std::vector<std::filesystem::path>& outputs, std::string_view command)
{
    nlohmann::json m;
    m["tool"] = "heliodac";
    m["command"] = command;
    m["config_sha256"] = sha256_hex(config.dump());
    m["inputs"] = nlohmann::json::array();
    for (const auto& e : inputs)
        m["inputs"].push_back({{"role", e.role}, {"path", e.path.string()}, {"sha256", sha256_file(e.path)}});
    m["outputs"] = nlohmann::json::array();
    for (const auto& p : outputs)
        m["outputs"].push_back({{"path", p.filename().string()}, {"sha256", sha256_file(p)}});
    return m;
}

void write_manifest(const std::filesystem::path& dir, const nlohmann::json& manifest)
{
    std::ofstream out(dir / "manifest.json");
    if (!out)
        throw Error(fmt::format("cannot write {}", (dir / "manifest.json").string()));
    out << manifest.dump(2) << '\n';
}

} // namespace heliodac
