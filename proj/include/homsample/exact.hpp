#pragma once

#include "homsample/network.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace homsample {

using VertexMap = std::vector<std::size_t>;

inline constexpr double kDefaultEnumerationCap = 1e8;

// Unnormalized Gibbs weight prod A(x_i,x_j)^{A_F(i,j)} * prod alpha(x_i), with 0^0 = 1.
double gibbs_weight(const Motif& motif, const Network& net, std::span<const std::size_t> x);

// prod over (i,j) of A(x_i,x_j)^{A_H(i,j)}; alpha is not included.
double edge_product(const Motif& motif, const Network& net, std::span<const std::size_t> x);

// Calls visit(x, weight) for every vertex map of positive Gibbs weight, in
// lexicographic order of (x_0, ..., x_{k-1}). Throws ConfigError when n^k
// exceeds the cap.
void for_each_homomorphism(const Motif& motif, const Network& net,
                           const std::function<void(std::span<const std::size_t>, double)>& visit,
                           double cap = kDefaultEnumerationCap);

double hom_density(const Motif& motif, const Network& net, double cap = kDefaultEnumerationCap);

// Normalized law pi_{F->G}. Maps are encoded as x_0 + n x_1 + n^2 x_2 + ...
class ExactDistribution {
public:
    ExactDistribution(std::size_t n, std::size_t k, std::vector<std::uint64_t> codes,
                      std::vector<double> probabilities, double normalizer);

    std::size_t node_count() const { return n_; }
    std::size_t motif_size() const { return k_; }
    double normalizer() const { return z_; }
    std::size_t support_size() const { return codes_.size(); }

    const std::vector<std::uint64_t>& codes() const { return codes_; }
    const std::vector<double>& probabilities() const { return probs_; }

    double probability(std::span<const std::size_t> x) const;
    double probability_of_code(std::uint64_t code) const;
    std::uint64_t encode(std::span<const std::size_t> x) const;
    VertexMap decode(std::uint64_t code) const;

    // Law of x(node).
    Vector marginal(std::size_t node) const;

private:
    std::size_t n_, k_;
    std::vector<std::uint64_t> codes_;
    std::vector<double> probs_;
    double z_;
};

ExactDistribution exact_pi(const Motif& motif, const Network& net, double cap = kDefaultEnumerationCap);

double exact_conditional_density(const Motif& h, const Motif& f, const Network& net,
                                 double cap = kDefaultEnumerationCap);

// Values at each grid point t of P(min over H-edges of A^{A_H} >= t).
std::vector<double> exact_chd_profile(const Motif& h, const Motif& f, const Network& net,
                                      std::span<const double> grid, double cap = kDefaultEnumerationCap);

Matrix exact_macc(const Motif& f, const Network& net, double cap = kDefaultEnumerationCap);

// Law of (x(0), x(k-1)) under pi_{F->G}, returned with the network's alpha.
Network exact_motif_transform(const Motif& f, const Network& net, double cap = kDefaultEnumerationCap);

// Transform weighted by prod A^{A_H}, normalized to entry sum 1.
Network exact_motif_transform(const Motif& h, const Motif& f, const Network& net,
                              double cap = kDefaultEnumerationCap);

double tv_distance(std::span<const double> p, std::span<const double> q);
double tv_distance(const ExactDistribution& p, const ExactDistribution& q);

}  // namespace homsample
