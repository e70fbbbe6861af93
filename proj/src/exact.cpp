#include "homsample/exact.hpp"

#include "homsample/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace homsample {

namespace {

double power(double base, double exponent) {
    if (exponent == 0.0) return 1.0;
    if (exponent == 1.0) return base;
    return std::pow(base, exponent);
}

void check_cap(std::size_t n, std::size_t k, double cap) {
    if (std::pow(static_cast<double>(n), static_cast<double>(k)) > cap)
        throw ConfigError("enumeration cap exceeded: n^k = " + std::to_string(n) + "^" + std::to_string(k));
}

}  // namespace

double edge_product(const Motif& motif, const Network& net, std::span<const std::size_t> x) {
    double product = 1.0;
    for (std::size_t i = 0; i < motif.size(); ++i)
        for (std::size_t j = 0; j < motif.size(); ++j) {
            const double e = motif.weight(i, j);
            if (e != 0.0) product *= power(net.weight(x[i], x[j]), e);
        }
    return product;
}

double gibbs_weight(const Motif& motif, const Network& net, std::span<const std::size_t> x) {
    double w = edge_product(motif, net, x);
    for (std::size_t i = 0; i < motif.size(); ++i) w *= net.alpha(x[i]);
    return w;
}

void for_each_homomorphism(const Motif& motif, const Network& net,
                           const std::function<void(std::span<const std::size_t>, double)>& visit,
                           double cap) {
    const std::size_t k = motif.size();
    const std::size_t n = net.size();
    check_cap(n, k, cap);

    // For each depth, an earlier motif node whose placement restricts the
    // candidates to an out-list (anchor_out) or an in-list (anchor_in).
    std::vector<std::ptrdiff_t> anchor_out(k, -1), anchor_in(k, -1);
    for (std::size_t d = 0; d < k; ++d)
        for (std::size_t j = 0; j < d; ++j) {
            if (anchor_out[d] < 0 && motif.weight(j, d) > 0.0) anchor_out[d] = static_cast<std::ptrdiff_t>(j);
            if (anchor_in[d] < 0 && motif.weight(d, j) > 0.0) anchor_in[d] = static_cast<std::ptrdiff_t>(j);
        }

    VertexMap x(k, 0);
    std::vector<double> partial(k + 1, 1.0);

    auto factor_at = [&](std::size_t d, std::size_t c) {
        double w = net.alpha(c) * power(net.weight(c, c), motif.weight(d, d));
        for (std::size_t j = 0; j < d && w > 0.0; ++j) {
            const double out_e = motif.weight(j, d);
            const double in_e = motif.weight(d, j);
            if (out_e != 0.0) w *= power(net.weight(x[j], c), out_e);
            if (in_e != 0.0) w *= power(net.weight(c, x[j]), in_e);
        }
        return w;
    };

    auto descend = [&](auto&& self, std::size_t d) -> void {
        if (d == k) {
            visit(std::span<const std::size_t>(x), partial[k]);
            return;
        }
        auto try_node = [&](std::size_t c) {
            const double w = factor_at(d, c);
            if (w <= 0.0) return;
            x[d] = c;
            partial[d + 1] = partial[d] * w;
            self(self, d + 1);
        };
        if (anchor_out[d] >= 0) {
            for (const auto& nb : net.out(x[static_cast<std::size_t>(anchor_out[d])])) try_node(nb.node);
        } else if (anchor_in[d] >= 0) {
            for (const auto& nb : net.in(x[static_cast<std::size_t>(anchor_in[d])])) try_node(nb.node);
        } else {
            for (std::size_t c = 0; c < n; ++c) try_node(c);
        }
    };
    descend(descend, 0);
}

double hom_density(const Motif& motif, const Network& net, double cap) {
    double z = 0.0;
    for_each_homomorphism(motif, net, [&](std::span<const std::size_t>, double w) { z += w; }, cap);
    return z;
}

ExactDistribution::ExactDistribution(std::size_t n, std::size_t k, std::vector<std::uint64_t> codes,
                                     std::vector<double> probabilities, double normalizer)
    : n_(n), k_(k), codes_(std::move(codes)), probs_(std::move(probabilities)), z_(normalizer) {}

std::uint64_t ExactDistribution::encode(std::span<const std::size_t> x) const {
    std::uint64_t code = 0;
    for (std::size_t i = k_; i-- > 0;) code = code * n_ + x[i];
    return code;
}

VertexMap ExactDistribution::decode(std::uint64_t code) const {
    VertexMap x(k_);
    for (std::size_t i = 0; i < k_; ++i) {
        x[i] = static_cast<std::size_t>(code % n_);
        code /= n_;
    }
    return x;
}

double ExactDistribution::probability_of_code(std::uint64_t code) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return 0.0;
    return probs_[static_cast<std::size_t>(it - codes_.begin())];
}

double ExactDistribution::probability(std::span<const std::size_t> x) const {
    return probability_of_code(encode(x));
}

Vector ExactDistribution::marginal(std::size_t node) const {
    Vector m = Vector::Zero(static_cast<Eigen::Index>(n_));
    for (std::size_t s = 0; s < codes_.size(); ++s) {
        std::uint64_t code = codes_[s];
        for (std::size_t i = 0; i < node; ++i) code /= n_;
        m[static_cast<Eigen::Index>(code % n_)] += probs_[s];
    }
    return m;
}

ExactDistribution exact_pi(const Motif& motif, const Network& net, double cap) {
    std::vector<std::pair<std::uint64_t, double>> entries;
    double z = 0.0;
    const std::size_t n = net.size();
    for_each_homomorphism(
        motif, net,
        [&](std::span<const std::size_t> x, double w) {
            std::uint64_t code = 0;
            for (std::size_t i = x.size(); i-- > 0;) code = code * n + x[i];
            entries.emplace_back(code, w);
            z += w;
        },
        cap);
    if (!(z > 0.0)) throw NumericalError("no homomorphism exists: t(F,G) = 0");
    std::sort(entries.begin(), entries.end());
    std::vector<std::uint64_t> codes(entries.size());
    std::vector<double> probs(entries.size());
    for (std::size_t s = 0; s < entries.size(); ++s) {
        codes[s] = entries[s].first;
        probs[s] = entries[s].second / z;
    }
    return ExactDistribution(n, motif.size(), std::move(codes), std::move(probs), z);
}

double exact_conditional_density(const Motif& h, const Motif& f, const Network& net, double cap) {
    if (h.size() != f.size()) throw ConfigError("motifs H and F must have the same node count");
    double z = 0.0, joint = 0.0;
    for_each_homomorphism(
        f, net,
        [&](std::span<const std::size_t> x, double w) {
            z += w;
            joint += w * edge_product(h, net, x);
        },
        cap);
    return z > 0.0 ? joint / z : 0.0;
}

std::vector<double> exact_chd_profile(const Motif& h, const Motif& f, const Network& net,
                                      std::span<const double> grid, double cap) {
    if (h.size() != f.size()) throw ConfigError("motifs H and F must have the same node count");
    if (!std::is_sorted(grid.begin(), grid.end())) throw ConfigError("profile grid must be sorted");
    std::vector<double> mass(grid.size(), 0.0);
    double z = 0.0;
    const std::size_t k = f.size();
    for_each_homomorphism(
        f, net,
        [&](std::span<const std::size_t> x, double w) {
            z += w;
            double level = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if (h.weight(i, j) != 0.0)
                        level = std::min(level, power(net.weight(x[i], x[j]), h.weight(i, j)));
            for (std::size_t g = 0; g < grid.size() && grid[g] <= level; ++g) mass[g] += w;
        },
        cap);
    if (z > 0.0)
        for (auto& m : mass) m /= z;
    return mass;
}

Matrix exact_macc(const Motif& f, const Network& net, double cap) {
    const std::size_t k = f.size();
    const auto kk = static_cast<Eigen::Index>(k);
    Matrix sums = Matrix::Zero(kk, kk);
    double z = 0.0;
    for_each_homomorphism(
        f, net,
        [&](std::span<const std::size_t> x, double w) {
            z += w;
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = i; j < k; ++j)
                    if (f.weight(i, j) == 0.0)
                        sums(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) +=
                            w * net.weight(x[i], x[j]);
        },
        cap);
    Matrix macc = Matrix::Zero(kk, kk);
    if (!(z > 0.0)) return macc;
    for (Eigen::Index i = 0; i < kk; ++i)
        for (Eigen::Index j = i; j < kk; ++j) {
            const double value = f.weights()(i, j) > 0.0 ? 1.0 : sums(i, j) / z;
            macc(i, j) = value;
            macc(j, i) = value;
        }
    return macc;
}

Network exact_motif_transform(const Motif& h, const Motif& f, const Network& net, double cap) {
    if (f.size() < 2) throw ConfigError("motif transform needs k >= 2");
    if (h.size() != f.size()) throw ConfigError("motifs H and F must have the same node count");
    const auto n = static_cast<Eigen::Index>(net.size());
    const std::size_t last = f.size() - 1;
    Matrix mass = Matrix::Zero(n, n);
    double total = 0.0;
    for_each_homomorphism(
        f, net,
        [&](std::span<const std::size_t> x, double w) {
            const double v = w * edge_product(h, net, x);
            mass(static_cast<Eigen::Index>(x[0]), static_cast<Eigen::Index>(x[last])) += v;
            total += v;
        },
        cap);
    if (!(total > 0.0)) throw NumericalError("motif transform undefined: zero homomorphism mass");
    return Network(mass / total, net.alpha());
}

Network exact_motif_transform(const Motif& f, const Network& net, double cap) {
    return exact_motif_transform(empty_motif(f.size()), f, net, cap);
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw ConfigError("distributions must share a support universe");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

double tv_distance(const ExactDistribution& p, const ExactDistribution& q) {
    if (p.node_count() != q.node_count() || p.motif_size() != q.motif_size())
        throw ConfigError("distributions must share a support universe");
    const auto& pc = p.codes();
    const auto& qc = q.codes();
    const auto& pp = p.probabilities();
    const auto& qp = q.probabilities();
    double s = 0.0;
    std::size_t a = 0, b = 0;
    while (a < pc.size() || b < qc.size()) {
        if (b == qc.size() || (a < pc.size() && pc[a] < qc[b])) {
            s += pp[a++];
        } else if (a == pc.size() || qc[b] < pc[a]) {
            s += qp[b++];
        } else {
            s += std::abs(pp[a++] - qp[b++]);
        }
    }
    return 0.5 * s;
}

}  // namespace homsample
