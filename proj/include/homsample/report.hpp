#pragma once

#include "homsample/clustering.hpp"
#include "homsample/mcmc.hpp"
#include "homsample/network.hpp"
#include "homsample/observables.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>

namespace homsample::report {

inline constexpr int kSchemaVersion = 1;

// FNV-1a over the compact dump of `config` (object keys are sorted by nlohmann).
std::uint64_t config_hash(const nlohmann::json& config);
std::string hex(std::uint64_t value);

// {"schema_version", "command", "seed", "config", "config_hash"}.
nlohmann::json envelope(const std::string& command, std::uint64_t seed, const nlohmann::json& config);

nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const Vector& v);
nlohmann::json to_json(const RunReport& run);
nlohmann::json to_json(const ProfileGrid& profile);
nlohmann::json to_json(const Dendrogram& dendrogram);

// Infinite values are written as the string "inf" since JSON has no infinity.
nlohmann::json number(double value);

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& value);
void write_matrix_csv(const std::filesystem::path& path, const Matrix& m);
// Header "t,value"; one row per grid point.
void write_profile_csv(const std::filesystem::path& path, const ProfileGrid& profile);

}  // namespace homsample::report
