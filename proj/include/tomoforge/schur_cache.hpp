// Copyright 2026 The tomoforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "schur.hpp"
#include "version.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>

namespace tomoforge {

inline nlohmann::json schur_to_json(const SchurDecomposition& sd) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["n"] = sd.n;
    j["d"] = sd.d;
    j["blocks"] = nlohmann::json::array();
    for (const auto& b : sd.blocks) {
        nlohmann::json jb;
        jb["parts"] = b.lambda.parts;
        jb["specht"] = b.specht;
        jb["weyl"] = b.weyl;
        jb["offset"] = b.offset;
        std::vector<double> re, im;
        re.reserve(static_cast<size_t>(b.isometry.size()));
        im.reserve(static_cast<size_t>(b.isometry.size()));
        for (long i = 0; i < b.isometry.rows(); ++i)
            for (long c = 0; c < b.isometry.cols(); ++c) {
                re.push_back(b.isometry(i, c).real());
                im.push_back(b.isometry(i, c).imag());
            }
        jb["re"] = std::move(re);
        jb["im"] = std::move(im);
        j["blocks"].push_back(std::move(jb));
    }
    return j;
}

inline SchurDecomposition schur_from_json(const nlohmann::json& j) {
    if (j.at("version").get<std::string>() != kVersion)
        throw validation_error("schur cache version mismatch");
    SchurDecomposition sd;
    sd.n = j.at("n").get<int>();
    sd.d = j.at("d").get<long>();
    const long t = RegisterShape::uniform(sd.n, sd.d).total();
    for (const auto& jb : j.at("blocks")) {
        SchurBlock b;
        b.lambda = YoungDiagram(jb.at("parts").get<std::vector<int>>());
        b.specht = jb.at("specht").get<long>();
        b.weyl = jb.at("weyl").get<long>();
        b.offset = jb.at("offset").get<long>();
        b.syts = enumerate_syt(b.lambda);
        const auto& re = jb.at("re");
        const auto& im = jb.at("im");
        b.isometry.resize(t, b.size());
        size_t k = 0;
        for (long i = 0; i < t; ++i)
            for (long c = 0; c < b.size(); ++c, ++k)
                b.isometry(i, c) = Complex(re.at(k).get<double>(), im.at(k).get<double>());
        sd.blocks.push_back(std::move(b));
    }
    sd.u_schur.resize(t, t);
    for (const auto& b : sd.blocks)
        sd.u_schur.block(b.offset, 0, b.size(), t) = b.isometry.adjoint();
    return sd;
}

/// Shared, memoized access to Schur decompositions. When TOMOFORGE_CACHE_DIR
/// is set, decompositions are also persisted to versioned JSON files there to
/// avoid recomputation across CLI runs; a version mismatch invalidates the
/// file and triggers a rebuild.
inline std::shared_ptr<const SchurDecomposition> get_schur(int n, long d) {
    static std::map<std::pair<int, long>, std::shared_ptr<const SchurDecomposition>> memo;
    static std::mutex mutex;
    const std::pair<int, long> key{n, d};
    {
        std::lock_guard lock(mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }

    std::shared_ptr<const SchurDecomposition> sd;
    const char* cache_dir = std::getenv("TOMOFORGE_CACHE_DIR");
    std::filesystem::path cache_file;
    if (cache_dir && *cache_dir) {
        cache_file = std::filesystem::path(cache_dir) /
                     ("schur_n" + std::to_string(n) + "_d" + std::to_string(d) + ".json");
        if (std::filesystem::exists(cache_file)) {
            try {
                std::ifstream in(cache_file);
                nlohmann::json j;
                in >> j;
                sd = std::make_shared<const SchurDecomposition>(schur_from_json(j));
            } catch (const std::exception&) {
                sd.reset(); // stale or corrupt cache: rebuild below
            }
        }
    }
    if (!sd) {
        sd = std::make_shared<const SchurDecomposition>(build_schur_transform(n, d));
        if (!cache_file.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(cache_file.parent_path(), ec);
            std::ofstream out(cache_file);
            out << schur_to_json(*sd);
        }
    }

    std::lock_guard lock(mutex);
    return memo.emplace(key, std::move(sd)).first->second;
}

} // namespace tomoforge
