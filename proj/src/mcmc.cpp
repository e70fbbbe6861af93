#include "homsample/mcmc.hpp"

#include "homsample/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace homsample {

namespace {

double power(double base, double exponent) {
    if (exponent == 0.0) return 1.0;
    if (exponent == 1.0) return base;
    return std::pow(base, exponent);
}

// Index of the category selected by inverting the cumulative sum; strict
// inequality so that zero-weight categories are never returned.
std::size_t sample_index(std::span<const double> weights, double total, Rng& rng) {
    const double u = rng.uniform() * total;
    double running = 0.0;
    for (std::size_t idx = 0; idx < weights.size(); ++idx) {
        running += weights[idx];
        if (running > u) return idx;
    }
    // Rounding can leave u just above the final partial sum.
    for (std::size_t idx = weights.size(); idx-- > 0;)
        if (weights[idx] > 0.0) return idx;
    throw NumericalError("categorical sampling from an all-zero weight vector");
}

}  // namespace

const char* to_string(ChainKind kind) { return kind == ChainKind::Glauber ? "glauber" : "pivot"; }

ChainKind parse_chain_kind(const std::string& text) {
    if (text == "glauber") return ChainKind::Glauber;
    if (text == "pivot") return ChainKind::Pivot;
    throw ConfigError("unknown chain kind: " + text);
}

std::size_t default_burn_in(std::size_t n) {
    const double nn = static_cast<double>(n);
    return static_cast<std::size_t>(std::ceil(2.0 * nn * std::log(nn)));
}

GlauberKernel::GlauberKernel(const Motif& motif, const Network& net)
    : motif_(motif), net_(net), anchor_out_(motif.size(), -1), anchor_in_(motif.size(), -1),
      log_space_(motif.size() > 16) {
    const std::size_t k = motif.size();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            if (anchor_out_[i] < 0 && motif.weight(j, i) > 0.0) anchor_out_[i] = static_cast<std::ptrdiff_t>(j);
            if (anchor_in_[i] < 0 && motif.weight(i, j) > 0.0) anchor_in_[i] = static_cast<std::ptrdiff_t>(j);
        }
}

void GlauberKernel::conditional(std::span<const std::size_t> x, std::size_t i, std::vector<std::size_t>& nodes,
                                std::vector<double>& weights) const {
    nodes.clear();
    weights.clear();
    if (anchor_out_[i] >= 0) {
        for (const auto& nb : net_.out(x[static_cast<std::size_t>(anchor_out_[i])])) nodes.push_back(nb.node);
    } else if (anchor_in_[i] >= 0) {
        for (const auto& nb : net_.in(x[static_cast<std::size_t>(anchor_in_[i])])) nodes.push_back(nb.node);
    } else {
        nodes.resize(net_.size());
        for (std::size_t b = 0; b < nodes.size(); ++b) nodes[b] = b;
    }

    const std::size_t k = motif_.size();
    const double loop_e = motif_.weight(i, i);
    if (!log_space_) {
        for (std::size_t b : nodes) {
            double w = net_.alpha(b) * power(net_.weight(b, b), loop_e);
            for (std::size_t j = 0; j < k && w > 0.0; ++j) {
                if (j == i) continue;
                const double to_e = motif_.weight(j, i);
                const double from_e = motif_.weight(i, j);
                if (to_e != 0.0) w *= power(net_.weight(x[j], b), to_e);
                if (from_e != 0.0) w *= power(net_.weight(b, x[j]), from_e);
            }
            weights.push_back(w);
        }
        return;
    }

    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    auto log_term = [](double a, double e) { return e == 0.0 ? 0.0 : (a > 0.0 ? e * std::log(a) : kNegInf); };
    double top = kNegInf;
    for (std::size_t b : nodes) {
        double lw = std::log(net_.alpha(b)) + log_term(net_.weight(b, b), loop_e);
        for (std::size_t j = 0; j < k && lw > kNegInf; ++j) {
            if (j == i) continue;
            lw += log_term(net_.weight(x[j], b), motif_.weight(j, i));
            lw += log_term(net_.weight(b, x[j]), motif_.weight(i, j));
        }
        weights.push_back(lw);
        top = std::max(top, lw);
    }
    for (auto& w : weights) w = (w == kNegInf) ? 0.0 : std::exp(w - top);
}

double GlauberKernel::probability(std::span<const std::size_t> x, std::size_t i, std::size_t b) const {
    std::vector<std::size_t> nodes;
    std::vector<double> weights;
    conditional(x, i, nodes, weights);
    double total = 0.0, mass = 0.0;
    for (std::size_t c = 0; c < nodes.size(); ++c) {
        total += weights[c];
        if (nodes[c] == b) mass = weights[c];
    }
    return total > 0.0 ? mass / total : 0.0;
}

void GlauberKernel::step(std::span<std::size_t> x, Rng& rng) {
    const auto i = static_cast<std::size_t>(rng.below(motif_.size()));
    conditional(x, i, nodes_, weights_);
    double total = 0.0;
    for (double w : weights_) total += w;
    if (!(total > 0.0)) throw NumericalError("Glauber conditional has zero mass; state is not a homomorphism");
    x[i] = nodes_[sample_index(weights_, total, rng)];
}

void glauber_step(const Motif& motif, const Network& net, std::span<std::size_t> x, Rng& rng) {
    GlauberKernel kernel(motif, net);
    kernel.step(x, rng);
}

PivotTables::PivotTables(const Motif& motif, const Network& net) : motif_(motif), net_(net) {
    if (!motif.is_rooted_tree()) throw ConfigError("the pivot chain requires a rooted-tree motif");
    const std::size_t n = net.size();
    const std::size_t k = motif.size();
    for (std::size_t a = 0; a < n; ++a)
        if (!(net.out_mass(a) > 0.0))
            throw ConfigError("the pivot chain requires positive out-mass at every node (node " +
                              std::to_string(a + 1) + ")");

    row_sum_.assign(n, 0.0);
    offsets_.assign(n + 1, 0);
    for (std::size_t a = 0; a < n; ++a) {
        double running = 0.0;
        for (const auto& nb : net.symmetric_neighbors(a)) {
            running += nb.weight * net.alpha(nb.node);
            cumulative_.push_back(running);
        }
        row_sum_[a] = net.alpha(a) * running;
        offsets_[a + 1] = cumulative_.size();
    }

    messages_.assign(k, std::vector<double>(n, 1.0));
    for (std::size_t u = k; u-- > 0;) {
        const auto& kids = motif.children()[u];
        if (kids.empty()) continue;
        auto& m = messages_[u];
        for (std::size_t c = 0; c < n; ++c) {
            double product = 1.0;
            for (std::size_t v : kids) {
                const double e = motif.weight(u, v);
                double s = 0.0;
                for (const auto& nb : net.out(c)) s += power(nb.weight, e) * net.alpha(nb.node) * messages_[v][nb.node];
                product *= s;
            }
            m[c] = product;
        }
        const double top = *std::max_element(m.begin(), m.end());
        if (!(top > 0.0)) throw NumericalError("no homomorphism exists: t(F,G) = 0");
        for (auto& value : m) value /= top;
    }

    pi1_.resize(static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) pi1_[static_cast<Eigen::Index>(c)] = net.alpha(c) * messages_[0][c];
    const double total = pi1_.sum();
    if (!(total > 0.0)) throw NumericalError("no homomorphism exists: t(F,G) = 0");
    pi1_ /= total;
}

double PivotTables::proposal(std::size_t a, std::size_t b) const {
    const double w = std::max(net_.weight(a, b), net_.weight(b, a));
    return net_.alpha(a) * w * net_.alpha(b) / row_sum_[a];
}

std::size_t PivotTables::propose(std::size_t a, Rng& rng) const {
    const auto begin = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[a]);
    const auto end = cumulative_.begin() + static_cast<std::ptrdiff_t>(offsets_[a + 1]);
    const double u = rng.uniform() * *(end - 1);
    auto it = std::upper_bound(begin, end, u);
    if (it == end) --it;
    return net_.symmetric_neighbors(a)[static_cast<std::size_t>(it - begin)].node;
}

double PivotTables::acceptance(std::size_t a, std::size_t b) const {
    const double ratio = pi1_[static_cast<Eigen::Index>(b)] * row_sum_[a] /
                         (pi1_[static_cast<Eigen::Index>(a)] * row_sum_[b]);
    return std::min(1.0, ratio);
}

void PivotTables::resample_children(std::span<std::size_t> x, Rng& rng) const {
    thread_local std::vector<double> weights;
    for (std::size_t u = 1; u < motif_.size(); ++u) {
        const std::size_t p = motif_.parent(u);
        const double e = motif_.weight(p, u);
        const auto row = net_.out(x[p]);
        weights.resize(row.size());
        double total = 0.0;
        for (std::size_t idx = 0; idx < row.size(); ++idx) {
            const auto& nb = row[idx];
            weights[idx] = power(nb.weight, e) * net_.alpha(nb.node) * messages_[u][nb.node];
            total += weights[idx];
        }
        if (!(total > 0.0)) throw NumericalError("pivot child resampling found no admissible location");
        x[u] = row[sample_index(weights, total, rng)].node;
    }
}

bool pivot_step(const PivotTables& tables, std::span<std::size_t> x, Rng& rng) {
    const std::size_t a = x[0];
    const std::size_t b = tables.propose(a, rng);
    const double lambda = tables.acceptance(a, b);
    const bool accept = rng.uniform() < lambda;
    if (accept) x[0] = b;
    tables.resample_children(x, rng);
    return accept;
}

bool is_homomorphism(const Motif& motif, const Network& net, std::span<const std::size_t> x) {
    if (x.size() != motif.size()) return false;
    for (std::size_t i = 0; i < motif.size(); ++i) {
        if (x[i] >= net.size()) return false;
        for (std::size_t j = 0; j < motif.size(); ++j)
            if (motif.weight(i, j) > 0.0 && !(net.weight(x[i], x[j]) > 0.0)) return false;
    }
    return true;
}

VertexMap initial_hom(const Motif& motif, const Network& net, Rng& rng, std::size_t max_tries) {
    const std::size_t k = motif.size();
    const std::size_t n = net.size();
    std::vector<std::ptrdiff_t> anchor_out(k, -1), anchor_in(k, -1);
    std::vector<char> needs_out(k, 0), needs_in(k, 0);
    for (std::size_t d = 0; d < k; ++d)
        for (std::size_t j = 0; j < k; ++j) {
            if (j < d && anchor_out[d] < 0 && motif.weight(j, d) > 0.0) anchor_out[d] = static_cast<std::ptrdiff_t>(j);
            if (j < d && anchor_in[d] < 0 && motif.weight(d, j) > 0.0) anchor_in[d] = static_cast<std::ptrdiff_t>(j);
            if (j > d && motif.weight(d, j) > 0.0) needs_out[d] = 1;
            if (j > d && motif.weight(j, d) > 0.0) needs_in[d] = 1;
        }

    VertexMap x(k, 0);
    std::vector<std::size_t> nodes;
    std::vector<double> weights;
    for (std::size_t attempt = 0; attempt < max_tries; ++attempt) {
        bool ok = true;
        for (std::size_t d = 0; d < k && ok; ++d) {
            nodes.clear();
            if (anchor_out[d] >= 0) {
                for (const auto& nb : net.out(x[static_cast<std::size_t>(anchor_out[d])])) nodes.push_back(nb.node);
            } else if (anchor_in[d] >= 0) {
                for (const auto& nb : net.in(x[static_cast<std::size_t>(anchor_in[d])])) nodes.push_back(nb.node);
            } else {
                for (std::size_t c = 0; c < n; ++c) nodes.push_back(c);
            }
            weights.clear();
            double total = 0.0;
            for (std::size_t c : nodes) {
                double w = net.alpha(c) * power(net.weight(c, c), motif.weight(d, d));
                if (needs_out[d] && net.out(c).empty()) w = 0.0;
                if (needs_in[d] && net.in(c).empty()) w = 0.0;
                for (std::size_t j = 0; j < d && w > 0.0; ++j) {
                    if (motif.weight(j, d) != 0.0) w *= power(net.weight(x[j], c), motif.weight(j, d));
                    if (motif.weight(d, j) != 0.0) w *= power(net.weight(c, x[j]), motif.weight(d, j));
                }
                weights.push_back(w);
                total += w;
            }
            if (!(total > 0.0)) {
                ok = false;
                break;
            }
            x[d] = nodes[sample_index(weights, total, rng)];
        }
        if (ok && is_homomorphism(motif, net, x)) return x;
    }
    throw NumericalError("initialization failed; t(F,G) may be 0");
}

Chain::Chain(const Motif& motif, const Network& net, ChainKind kind, VertexMap initial)
    : kind_(kind), x_(std::move(initial)) {
    if (!is_homomorphism(motif, net, x_)) throw ConfigError("initial state is not a homomorphism");
    if (kind == ChainKind::Glauber)
        glauber_.emplace(motif, net);
    else
        tables_.emplace(motif, net);
}

void Chain::step(Rng& rng) {
    if (glauber_) {
        glauber_->step(x_, rng);
        return;
    }
    ++proposals_;
    if (pivot_step(*tables_, x_, rng)) ++accepted_;
}

RunReport run_chain(const ChainConfig& config, const Motif& motif, const Network& net,
                    std::span<Observer* const> observers) {
    if (config.steps == 0) throw ConfigError("steps must be at least 1");
    if (config.thinning == 0) throw ConfigError("thinning must be at least 1");
    Rng rng(config.seed);
    VertexMap start = initial_hom(motif, net, rng);
    Chain chain(motif, net, config.kind, start);
    const std::size_t burn = config.burn_in.value_or(default_burn_in(net.size()));
    for (std::size_t s = 0; s < burn; ++s) chain.step(rng);

    const std::size_t proposals_before = chain.proposals();
    const std::size_t accepted_before = chain.accepted();
    std::size_t observed = 0;
    for (std::size_t s = 1; s <= config.steps; ++s) {
        chain.step(rng);
        if (s % config.thinning != 0) continue;
        ++observed;
        for (Observer* obs : observers) obs->observe(chain.state());
    }

    RunReport report{};
    report.kind = config.kind;
    report.seed = config.seed;
    report.burn_in = burn;
    report.steps = config.steps;
    report.thinning = config.thinning;
    report.observed = observed;
    report.proposals = chain.proposals() - proposals_before;
    report.accepted = chain.accepted() - accepted_before;
    report.acceptance_rate = config.kind == ChainKind::Glauber || report.proposals == 0
                                 ? 1.0
                                 : static_cast<double>(report.accepted) / static_cast<double>(report.proposals);
    report.initial_state = std::move(start);
    report.final_state = chain.state();
    return report;
}

}  // namespace homsample
