#include "homsample/network.hpp"

#include "homsample/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <iostream>

namespace homsample {

namespace {

Vector uniform_alpha(std::size_t n) {
    return Vector::Constant(static_cast<Eigen::Index>(n), 1.0 / static_cast<double>(n));
}

std::vector<WeightedEdge> edges_of(const Matrix& a) {
    if (a.rows() != a.cols()) throw ConfigError("weight matrix must be square");
    std::vector<WeightedEdge> edges;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0.0)
                edges.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), a(i, j)});
    return edges;
}

void fill_csr(std::size_t n, const std::vector<WeightedEdge>& edges, bool by_source,
              std::vector<std::size_t>& offsets, std::vector<Neighbor>& nodes) {
    offsets.assign(n + 1, 0);
    for (const auto& e : edges) ++offsets[(by_source ? e.from : e.to) + 1];
    for (std::size_t i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
    nodes.resize(edges.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& e : edges) {
        const std::size_t row = by_source ? e.from : e.to;
        nodes[cursor[row]++] = {by_source ? e.to : e.from, e.weight};
    }
    for (std::size_t i = 0; i < n; ++i)
        std::sort(nodes.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
                  nodes.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]),
                  [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
}

}  // namespace

Network::Network(const Matrix& weights, Vector alpha) {
    build(static_cast<std::size_t>(weights.rows()), edges_of(weights), std::move(alpha));
}

Network::Network(const Matrix& weights)
    : Network(weights, uniform_alpha(static_cast<std::size_t>(weights.rows()))) {}

Network::Network(std::size_t n, const std::vector<WeightedEdge>& edges, Vector alpha) {
    build(n, edges, std::move(alpha));
}

Network::Network(std::size_t n, const std::vector<WeightedEdge>& edges)
    : Network(n, edges, uniform_alpha(n)) {}

void Network::build(std::size_t n, std::vector<WeightedEdge> edges, Vector alpha) {
    if (n == 0) throw ConfigError("network must have at least one node");
    if (static_cast<std::size_t>(alpha.size()) != n)
        throw ConfigError("node-weight vector length does not match node count");
    for (Eigen::Index i = 0; i < alpha.size(); ++i)
        if (!(alpha[i] > 0.0) || !std::isfinite(alpha[i]))
            throw ConfigError("node weights must be strictly positive and finite");
    const double total = alpha.sum();
    if (std::abs(total - 1.0) > 1e-9) {
        std::clog << "warning: node weights sum to " << total << "; renormalizing\n";
        renormalized_ = true;
    }
    alpha /= total;
    n_ = n;
    alpha_ = std::move(alpha);

    for (const auto& e : edges) {
        if (e.from >= n || e.to >= n) throw ConfigError("edge endpoint out of range");
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight))
            throw ConfigError("edge weights must be nonnegative and finite");
    }
    std::erase_if(edges, [](const WeightedEdge& e) { return e.weight == 0.0; });
    std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
        return a.from != b.from ? a.from < b.from : a.to < b.to;
    });
    for (std::size_t e = 1; e < edges.size(); ++e)
        if (edges[e].from == edges[e - 1].from && edges[e].to == edges[e - 1].to)
            throw ConfigError("duplicate edge in network input");

    fill_csr(n, edges, true, out_offsets_, out_nodes_);
    fill_csr(n, edges, false, in_offsets_, in_nodes_);

    max_weight_ = 0.0;
    for (const auto& e : edges) max_weight_ = std::max(max_weight_, e.weight);

    sym_offsets_.assign(n + 1, 0);
    sym_nodes_.clear();
    symmetric_ = true;
    for (std::size_t i = 0; i < n; ++i) {
        auto o = out(i);
        auto in_list = in(i);
        std::size_t a = 0, b = 0;
        while (a < o.size() || b < in_list.size()) {
            if (b == in_list.size() || (a < o.size() && o[a].node < in_list[b].node)) {
                sym_nodes_.push_back(o[a++]);
                symmetric_ = false;
            } else if (a == o.size() || in_list[b].node < o[a].node) {
                sym_nodes_.push_back(in_list[b++]);
                symmetric_ = false;
            } else {
                if (o[a].weight != in_list[b].weight) symmetric_ = false;
                sym_nodes_.push_back({o[a].node, std::max(o[a].weight, in_list[b].weight)});
                ++a;
                ++b;
            }
        }
        sym_offsets_[i + 1] = sym_nodes_.size();
    }

    if (n <= kDenseLimit) {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (const auto& e : edges)
            m(static_cast<Eigen::Index>(e.from), static_cast<Eigen::Index>(e.to)) = e.weight;
        dense_ = std::move(m);
    }
}

double Network::weight(std::size_t i, std::size_t j) const {
    if (dense_) return (*dense_)(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    auto row = out(i);
    auto it = std::lower_bound(row.begin(), row.end(), j,
                               [](const Neighbor& nb, std::size_t node) { return nb.node < node; });
    return (it != row.end() && it->node == j) ? it->weight : 0.0;
}

std::span<const Neighbor> Network::out(std::size_t i) const {
    return {out_nodes_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
}

std::span<const Neighbor> Network::in(std::size_t i) const {
    return {in_nodes_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
}

std::span<const Neighbor> Network::symmetric_neighbors(std::size_t i) const {
    return {sym_nodes_.data() + sym_offsets_[i], sym_offsets_[i + 1] - sym_offsets_[i]};
}

double Network::out_mass(std::size_t i) const {
    double s = 0.0;
    for (const auto& nb : out(i)) s += nb.weight;
    return s;
}

Matrix Network::dense() const {
    if (dense_) return *dense_;
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (const auto& nb : out(i))
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(nb.node)) = nb.weight;
    return m;
}

std::vector<WeightedEdge> Network::edges() const {
    std::vector<WeightedEdge> result;
    result.reserve(out_nodes_.size());
    for (std::size_t i = 0; i < n_; ++i)
        for (const auto& nb : out(i)) result.push_back({i, nb.node, nb.weight});
    return result;
}

std::size_t max_degree(const Network& net) {
    std::size_t best = 0;
    for (std::size_t a = 0; a < net.size(); ++a)
        best = std::max(best, net.symmetric_neighbors(a).size());
    return best;
}

std::optional<std::size_t> diameter(const Network& net) {
    const std::size_t n = net.size();
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    std::size_t longest = 0;
    std::vector<std::size_t> dist(n);
    std::deque<std::size_t> queue;
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), unseen);
        dist[s] = 0;
        queue.assign(1, s);
        std::size_t reached = 1;
        while (!queue.empty()) {
            const std::size_t u = queue.front();
            queue.pop_front();
            for (const auto& nb : net.out(u)) {
                if (dist[nb.node] != unseen) continue;
                dist[nb.node] = dist[u] + 1;
                longest = std::max(longest, dist[nb.node]);
                ++reached;
                queue.push_back(nb.node);
            }
        }
        if (reached < n) return std::nullopt;
    }
    return longest;
}

StructuralPredicates structural_predicates(const Network& net) {
    const std::size_t n = net.size();
    StructuralPredicates result{true, true, false};

    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const std::size_t u = stack.back();
        stack.pop_back();
        for (const auto& nb : net.symmetric_neighbors(u))
            if (!seen[nb.node]) {
                seen[nb.node] = 1;
                ++reached;
                stack.push_back(nb.node);
            }
    }
    result.irreducible = reached == n;

    for (std::size_t i = 0; i < n && result.bidirectional; ++i)
        for (const auto& nb : net.out(i))
            if (net.weight(nb.node, i) <= 0.0) {
                result.bidirectional = false;
                break;
            }

    // Two-coloring of the skeleton; a loop or a conflicting edge is an odd cycle.
    std::vector<int> color(n, -1);
    for (std::size_t s = 0; s < n && !result.skeleton_has_odd_cycle; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        stack.assign(1, s);
        while (!stack.empty() && !result.skeleton_has_odd_cycle) {
            const std::size_t u = stack.back();
            stack.pop_back();
            for (const auto& nb : net.out(u)) {
                if (net.weight(nb.node, u) <= 0.0) continue;
                if (color[nb.node] == -1) {
                    color[nb.node] = 1 - color[u];
                    stack.push_back(nb.node);
                } else if (color[nb.node] == color[u]) {
                    result.skeleton_has_odd_cycle = true;
                    break;
                }
            }
        }
    }
    return result;
}

Matrix skeleton(const Network& net) {
    const auto n = static_cast<Eigen::Index>(net.size());
    Matrix s = Matrix::Zero(n, n);
    for (std::size_t i = 0; i < net.size(); ++i)
        for (const auto& nb : net.out(i))
            if (net.weight(nb.node, i) > 0.0)
                s(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(nb.node)) = 1.0;
    return s;
}

}  // namespace homsample
