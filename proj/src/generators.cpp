#include "homsample/generators.hpp"

#include "homsample/errors.hpp"
#include "homsample/io.hpp"
#include "homsample/rng.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <vector>

namespace homsample {

namespace {

Vector uniform_alpha(std::size_t n) { return Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n)); }

void add_symmetric(std::vector<WeightedEdge>& edges, std::size_t a, std::size_t b, double w) {
    edges.push_back({a, b, w});
    if (a != b) edges.push_back({b, a, w});
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::stringstream in(text);
    for (std::string item; std::getline(in, item, sep);) parts.push_back(item);
    return parts;
}

std::size_t to_size(const std::string& text) {
    char* end = nullptr;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (end == text.c_str() || *end != '\0' || v < 0) throw ConfigError("expected a nonnegative integer, got '" + text + "'");
    return static_cast<std::size_t>(v);
}

double to_real(const std::string& text) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') throw ConfigError("expected a number, got '" + text + "'");
    return v;
}

}  // namespace

Network torus(std::size_t n) {
    if (n < 3) throw ConfigError("torus needs n >= 3");
    std::vector<WeightedEdge> edges;
    edges.reserve(4 * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            const std::size_t x = a * n + b;
            edges.push_back({x, ((a + 1) % n) * n + b, 1.0});
            edges.push_back({x, ((a + n - 1) % n) * n + b, 1.0});
            edges.push_back({x, a * n + (b + 1) % n, 1.0});
            edges.push_back({x, a * n + (b + n - 1) % n, 1.0});
        }
    return Network(n * n, edges, uniform_alpha(n * n));
}

Network torus_long_range(std::size_t n, double p, double decay, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("torus_long_range: p must lie in [0,1]");
    if (!(decay >= 0.0)) throw ConfigError("torus_long_range: decay exponent must be >= 0");
    Network base = torus(n);
    if (p == 0.0) return base;
    std::vector<WeightedEdge> edges = base.edges();
    Rng rng(seed);
    const std::size_t nodes = n * n;
    for (std::size_t x = 0; x < nodes; ++x)
        for (std::size_t y = x + 1; y < nodes; ++y) {
            if (base.weight(x, y) > 0.0) continue;
            const auto ax = static_cast<long>(x / n), bx = static_cast<long>(x % n);
            const auto ay = static_cast<long>(y / n), by = static_cast<long>(y % n);
            const double dist = static_cast<double>(std::labs(ax - ay) + std::labs(bx - by));
            if (rng.bernoulli(p * std::pow(dist, -decay))) add_symmetric(edges, x, y, 1.0);
        }
    return Network(nodes, edges, uniform_alpha(nodes));
}

Network sbm_gamma(const Network& base, std::size_t r, double sigma, std::uint64_t seed) {
    if (r < 1) throw ConfigError("sbm_gamma: r must be >= 1");
    if (!(sigma > 0.0)) throw ConfigError("sbm_gamma: sigma must be > 0");
    const std::size_t n = base.size(), big = n * r;
    Rng rng(seed);
    std::vector<WeightedEdge> edges;
    double top = 0.0;
    for (std::size_t x = 0; x < big; ++x)
        for (std::size_t y = 0; y < big; ++y) {
            const double a = base.weight(x / r, y / r);
            if (a <= 0.0) continue;
            const double v = rng.gamma(a * a / (sigma * sigma), a / (sigma * sigma));
            if (v > 0.0) {
                edges.push_back({x, y, v});
                top = std::max(top, v);
            }
        }
    if (!(top > 0.0)) throw NumericalError("sbm_gamma produced an all-zero matrix");
    for (auto& e : edges) e.weight = e.weight == top ? 1.0 : e.weight / top;
    Vector beta(static_cast<Eigen::Index>(big));
    for (std::size_t x = 0; x < big; ++x) beta[static_cast<Eigen::Index>(x)] = base.alpha(x / r) / static_cast<double>(r);
    beta /= beta.sum();
    return Network(big, edges, beta);
}

Network barbell(const Network& h1, const Network& h2, std::pair<std::size_t, std::size_t> bridge) {
    const std::size_t n1 = h1.size(), n2 = h2.size();
    if (bridge.first >= n1 || bridge.second >= n2) throw ConfigError("barbell: bridge endpoint out of range");
    std::vector<WeightedEdge> edges = h1.edges();
    for (const auto& e : h2.edges()) edges.push_back({e.from + n1, e.to + n1, e.weight});
    const std::size_t u = bridge.first, v = bridge.second + n1;
    std::erase_if(edges, [&](const WeightedEdge& e) { return (e.from == u && e.to == v) || (e.from == v && e.to == u); });
    add_symmetric(edges, u, v, 1.0);
    Vector alpha(static_cast<Eigen::Index>(n1 + n2));
    alpha << h1.alpha(), h2.alpha();
    return Network(n1 + n2, edges, alpha / alpha.sum());
}

Network erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
    if (n == 0) throw ConfigError("erdos_renyi needs n >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("erdos_renyi: p must lie in [0,1]");
    Rng rng(seed);
    std::vector<WeightedEdge> edges;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (rng.bernoulli(p)) add_symmetric(edges, x, y, 1.0);
    return Network(n, edges, uniform_alpha(n));
}

Network complete_graph(std::size_t n, bool loops) {
    if (n == 0) throw ConfigError("complete graph needs n >= 1");
    Matrix a = Matrix::Ones(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    if (!loops) a.diagonal().setZero();
    return Network(a, uniform_alpha(n));
}

WanNormalization parse_wan_normalization(const std::string& text) {
    if (text == "row_markov") return WanNormalization::RowMarkov;
    if (text == "global_max") return WanNormalization::GlobalMax;
    if (text == "log_double") return WanNormalization::LogDouble;
    throw ConfigError("unknown normalization '" + text + "' (row_markov, global_max, log_double)");
}

Network wan_from_matrix(const Matrix& counts, WanNormalization normalization) {
    if (counts.rows() != counts.cols() || counts.rows() == 0) throw ConfigError("frequency matrix must be square and nonempty");
    if ((counts.array() < 0.0).any() || !counts.allFinite()) throw ConfigError("frequency matrix entries must be finite and >= 0");
    Matrix a = counts;
    switch (normalization) {
        case WanNormalization::RowMarkov:
            for (Eigen::Index i = 0; i < a.rows(); ++i) {
                const double s = a.row(i).sum();
                if (s > 0.0) a.row(i) /= s;
            }
            break;
        case WanNormalization::GlobalMax:
            break;
        case WanNormalization::LogDouble:
            a = ((a.array() + 1.0).log() + 1.0).log().matrix();
            break;
    }
    if (normalization != WanNormalization::RowMarkov) {
        const double top = a.maxCoeff();
        if (!(top > 0.0)) throw ConfigError("frequency matrix is all zero");
        a /= top;
    }
    return Network(a, uniform_alpha(static_cast<std::size_t>(a.rows())));
}

Network wan_load(const std::filesystem::path& path, WanNormalization normalization) {
    return wan_from_matrix(io::read_frequency_matrix(path), normalization);
}

Matrix block_template(int which) {
    Matrix a(6, 6);
    if (which == 1) {
        a.setOnes();
        a.diagonal().setConstant(5.0);
    } else if (which == 2) {
        a << 1, 1, 1, 5, 5, 1,
             1, 1, 1, 1, 1, 5,
             5, 1, 1, 5, 1, 5,
             5, 1, 1, 1, 1, 2,
             1, 5, 1, 1, 1, 1,
             1, 1, 5, 10, 1, 1;
    } else {
        throw ConfigError("block template must be 1 or 2");
    }
    return a;
}

Network network_from_description(const std::string& text, std::uint64_t seed) {
    const auto parts = split(text, ':');
    const std::string& family = parts.empty() ? text : parts[0];
    auto need = [&](std::size_t count) {
        if (parts.size() != count) throw ConfigError("malformed network description '" + text + "'");
    };
    if (family == "torus") {
        need(2);
        return torus(to_size(parts[1]));
    }
    if (family == "torus_long_range") {
        need(4);
        return torus_long_range(to_size(parts[1]), to_real(parts[2]), to_real(parts[3]), seed);
    }
    if (family == "erdos_renyi") {
        need(3);
        return erdos_renyi(to_size(parts[1]), to_real(parts[2]), seed);
    }
    if (family == "complete") {
        need(2);
        return complete_graph(to_size(parts[1]));
    }
    if (family == "sbm_gamma") {
        need(4);
        const std::string& t = parts[1];
        if (t != "A1" && t != "A2") throw ConfigError("sbm_gamma template must be A1 or A2");
        const Network base(block_template(t == "A1" ? 1 : 2), uniform_alpha(6));
        return sbm_gamma(base, to_size(parts[2]), to_real(parts[3]), seed);
    }
    if (std::filesystem::exists(text)) return io::read_network(text);
    throw ConfigError("unknown network '" + text + "'");
}

}  // namespace homsample
