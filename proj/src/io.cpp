#include "homsample/io.hpp"

#include "homsample/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace homsample::io {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    return out;
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::size_t parse_index(const std::string& token, std::size_t line) {
    std::size_t value = 0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size() || value == 0)
        throw ConfigError("line " + std::to_string(line) + ": bad 1-based index '" + token + "'");
    return value - 1;
}

double parse_real(const std::string& token, std::size_t line) {
    double value = 0.0;
    auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || end != token.data() + token.size())
        throw ConfigError("line " + std::to_string(line) + ": bad number '" + token + "'");
    return value;
}

struct EdgeLines {
    std::vector<WeightedEdge> edges;
    std::size_t declared_n = 0;
    std::size_t max_index = 0;
    bool any = false;
};

// Reads edge lines; `header` receives the first `key=value` line if given.
EdgeLines parse_edge_lines(std::istream& in, const std::string& header_key, std::size_t* header) {
    EdgeLines result;
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string body = trim(line.substr(1));
            if (body.rfind("n=", 0) == 0) result.declared_n = parse_index(body.substr(2), line_no) + 1;
            continue;
        }
        if (header && line.rfind(header_key + "=", 0) == 0) {
            *header = parse_index(line.substr(header_key.size() + 1), line_no) + 1;
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, w;
        if (!(fields >> a >> b >> w))
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'i j w'");
        WeightedEdge e{parse_index(a, line_no), parse_index(b, line_no), parse_real(w, line_no)};
        result.max_index = std::max({result.max_index, e.from, e.to});
        result.any = true;
        result.edges.push_back(e);
    }
    return result;
}

}  // namespace

std::string format_double(double value) {
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (std::isnan(value)) return "nan";
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    return std::string(buffer, end);
}

Network parse_network(std::istream& edges_in, std::istream* node_weights) {
    EdgeLines lines = parse_edge_lines(edges_in, "", nullptr);
    std::size_t n = lines.declared_n;
    if (lines.any) n = std::max(n, lines.max_index + 1);

    std::map<std::size_t, double> weights;
    if (node_weights) {
        std::string raw;
        std::size_t line_no = 0;
        while (std::getline(*node_weights, raw)) {
            ++line_no;
            std::string line = trim(raw);
            if (line.empty() || line[0] == '#') continue;
            std::istringstream fields(line);
            std::string a, w;
            if (!(fields >> a >> w))
                throw ConfigError("node weights line " + std::to_string(line_no) + ": expected 'i alpha'");
            const std::size_t i = parse_index(a, line_no);
            if (!weights.emplace(i, parse_real(w, line_no)).second)
                throw ConfigError("duplicate node weight for node " + std::to_string(i + 1));
        }
        if (!weights.empty()) n = std::max(n, weights.rbegin()->first + 1);
    }
    if (n == 0) throw ConfigError("network file has no edges and no declared node count");

    if (!node_weights) return Network(n, lines.edges);
    if (weights.size() != n) throw ConfigError("node-weight file must list every node exactly once");
    Vector alpha(static_cast<Eigen::Index>(n));
    for (const auto& [i, w] : weights) alpha[static_cast<Eigen::Index>(i)] = w;
    return Network(n, lines.edges, alpha);
}

Network read_network(const std::filesystem::path& edges, const std::filesystem::path& node_weights) {
    auto in = open_input(edges);
    if (node_weights.empty()) return parse_network(in);
    auto weights = open_input(node_weights);
    return parse_network(in, &weights);
}

void write_network(std::ostream& out, const Network& net) {
    out << "# n=" << net.size() << '\n';
    for (const auto& e : net.edges())
        out << e.from + 1 << '\t' << e.to + 1 << '\t' << format_double(e.weight) << '\n';
}

void write_node_weights(std::ostream& out, const Network& net) {
    for (std::size_t i = 0; i < net.size(); ++i) out << i + 1 << '\t' << format_double(net.alpha(i)) << '\n';
}

void write_network(const std::filesystem::path& edges, const Network& net,
                   const std::filesystem::path& node_weights) {
    auto out = open_output(edges);
    write_network(out, net);
    if (!node_weights.empty()) {
        auto w = open_output(node_weights);
        write_node_weights(w, net);
    }
}

Motif parse_motif(std::istream& in) {
    std::string first;
    std::streampos start = in.tellg();
    while (std::getline(in, first)) {
        first = trim(first);
        if (!first.empty() && first[0] != '#') break;
    }
    if (first.empty()) throw ConfigError("empty motif file");
    if (first.rfind("k=", 0) != 0) {
        if (first.find_first_of(" \t") != std::string::npos)
            throw ConfigError("motif file must start with 'k=<int>' or be a family token");
        return build_motif(first);
    }
    in.clear();
    in.seekg(start);
    std::size_t k = 0;
    EdgeLines lines = parse_edge_lines(in, "k", &k);
    if (k == 0) throw ConfigError("motif file lacks 'k=<int>' header");
    if (lines.any && lines.max_index >= k) throw ConfigError("motif edge index exceeds k");
    Matrix af = Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    for (const auto& e : lines.edges)
        af(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to)) = e.weight;
    return Motif(af);
}

Motif read_motif(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_motif(in);
}

Motif resolve_motif(const std::string& file_or_name) {
    if (std::filesystem::is_regular_file(file_or_name)) return read_motif(file_or_name);
    return build_motif(file_or_name);
}

Matrix parse_frequency_matrix(std::istream& in) {
    long long n = 0;
    if (!(in >> n) || n <= 0) throw ConfigError("frequency matrix must start with a positive size");
    Matrix m(n, n);
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            std::string token;
            if (!(in >> token)) throw ConfigError("frequency matrix is not square (too few entries)");
            const double v = parse_real(token, static_cast<std::size_t>(i + 2));
            if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("frequency matrix entries must be nonnegative");
            m(i, j) = v;
        }
    std::string extra;
    if (in >> extra) throw ConfigError("frequency matrix is not square (extra entries)");
    return m;
}

Matrix read_frequency_matrix(const std::filesystem::path& path) {
    auto in = open_input(path);
    return parse_frequency_matrix(in);
}

void write_frequency_matrix(std::ostream& out, const Matrix& m) {
    out << m.rows() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << format_double(m(i, j));
        out << '\n';
    }
}

}  // namespace homsample::io
