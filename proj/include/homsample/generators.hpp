#pragma once

#include "homsample/network.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>

namespace homsample {

// Periodic n x n nearest-neighbor grid on n^2 nodes; node (a,b) has index a*n + b.
Network torus(std::size_t n);

// Torus plus independent symmetric extra edges: a non-adjacent pair at
// coordinate distance d = |a-c| + |b-d| is joined with probability p * d^(-decay).
Network torus_long_range(std::size_t n, double p, double decay, std::uint64_t seed);

// Each positive template entry a becomes an r x r block of i.i.d.
// Gamma(shape a^2/sigma^2, rate a/sigma^2) draws; the result is scaled to max 1.
// Node x inherits template weight alpha(x / r) / r.
Network sbm_gamma(const Network& base, std::size_t r, double sigma, std::uint64_t seed);

// Disjoint union with a symmetric weight-1 bridge between h1's node `bridge.first`
// and h2's node `bridge.second`; node weights are concatenated and halved.
Network barbell(const Network& h1, const Network& h2, std::pair<std::size_t, std::size_t> bridge);

// Symmetric 0-1 graph without loops, uniform node weights.
Network erdos_renyi(std::size_t n, double p, std::uint64_t seed);
Network complete_graph(std::size_t n, bool loops = false);

enum class WanNormalization { RowMarkov, GlobalMax, LogDouble };
WanNormalization parse_wan_normalization(const std::string& text);

Network wan_from_matrix(const Matrix& counts, WanNormalization normalization);
Network wan_load(const std::filesystem::path& path, WanNormalization normalization);

// Builds a network from a short description: "torus:N", "torus_long_range:N:P:DECAY",
// "erdos_renyi:N:P", "complete:N", "sbm_gamma:TEMPLATE:R:SIGMA" where TEMPLATE is
// "A1" or "A2" (the two 6-node templates), or else a path to an edge-list file.
Network network_from_description(const std::string& text, std::uint64_t seed);

// 6-node templates for sbm_gamma: which = 1 has 5 on the diagonal and 1 elsewhere;
// which = 2 is the scrambled template with entries in {1, 2, 5, 10}.
Matrix block_template(int which);

}  // namespace homsample
