#include "homsample/report.hpp"

#include "homsample/errors.hpp"
#include "homsample/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace homsample::report {

std::uint64_t config_hash(const nlohmann::json& config) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex(std::uint64_t value) {
    std::ostringstream out;
    out << std::hex;
    out.width(16);
    out.fill('0');
    out << value;
    return out.str();
}

nlohmann::json envelope(const std::string& command, std::uint64_t seed, const nlohmann::json& config) {
    return {{"schema_version", kSchemaVersion},
            {"command", command},
            {"seed", seed},
            {"config", config},
            {"config_hash", hex(config_hash(config))}};
}

nlohmann::json number(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    return value;
}

nlohmann::json to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(number(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json to_json(const Vector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(number(v[i]));
    return out;
}

nlohmann::json to_json(const RunReport& run) {
    return {{"chain", to_string(run.kind)},
            {"seed", run.seed},
            {"burn_in", run.burn_in},
            {"steps", run.steps},
            {"thinning", run.thinning},
            {"observed", run.observed},
            {"proposals", run.proposals},
            {"accepted", run.accepted},
            {"acceptance_rate", run.acceptance_rate}};
}

nlohmann::json to_json(const ProfileGrid& profile) { return {{"t", profile.ts}, {"value", profile.values}}; }

nlohmann::json to_json(const Dendrogram& dendrogram) {
    nlohmann::json merges = nlohmann::json::array();
    for (const auto& m : dendrogram.merges) merges.push_back({{"height", number(m.height)}, {"left", m.left}, {"right", m.right}});
    nlohmann::json out = {{"leaves", dendrogram.leaves}, {"merges", merges}, {"newick", to_newick(dendrogram)}};
    if (dendrogram.appearance) {
        nlohmann::json heights = nlohmann::json::array();
        for (double h : *dendrogram.appearance) heights.push_back(number(h));
        out["appearance"] = heights;
    }
    return out;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << text;
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) { write_text(path, value.dump(2) + "\n"); }

void write_matrix_csv(const std::filesystem::path& path, const Matrix& m) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << io::format_double(m(i, j));
        out << '\n';
    }
    write_text(path, out.str());
}

void write_profile_csv(const std::filesystem::path& path, const ProfileGrid& profile) {
    std::ostringstream out;
    out << "t,value\n";
    for (std::size_t g = 0; g < profile.ts.size(); ++g)
        out << io::format_double(profile.ts[g]) << ',' << io::format_double(profile.values[g]) << '\n';
    write_text(path, out.str());
}

}  // namespace homsample::report
