#pragma once

#include "homsample/exact.hpp"
#include "homsample/network.hpp"
#include "homsample/rng.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace homsample {

enum class ChainKind { Glauber, Pivot };

const char* to_string(ChainKind kind);
ChainKind parse_chain_kind(const std::string& text);

// Receives every post-burn-in (thinned) state of a chain.
class Observer {
public:
    virtual ~Observer() = default;
    virtual void observe(std::span<const std::size_t> x) = 0;
};

struct ChainConfig {
    ChainKind kind = ChainKind::Glauber;
    std::uint64_t seed = 0;
    std::optional<std::size_t> burn_in;  // default: default_burn_in(n)
    std::size_t steps = 0;
    std::size_t thinning = 1;
};

// ceil(2 n log n), the default burn-in.
std::size_t default_burn_in(std::size_t n);

// Heat-bath update of one motif node. Holds a reference to the network, which
// must outlive it.
class GlauberKernel {
public:
    GlauberKernel(const Motif& motif, const Network& net);

    // Candidate nodes b and unnormalized weights of the conditional law of x(i).
    void conditional(std::span<const std::size_t> x, std::size_t i, std::vector<std::size_t>& nodes,
                     std::vector<double>& weights) const;

    // Probability of moving x(i) to b.
    double probability(std::span<const std::size_t> x, std::size_t i, std::size_t b) const;

    void step(std::span<std::size_t> x, Rng& rng);

private:
    Motif motif_;
    const Network& net_;
    std::vector<std::ptrdiff_t> anchor_out_, anchor_in_;
    bool log_space_;
    std::vector<std::size_t> nodes_;
    std::vector<double> weights_;
};

void glauber_step(const Motif& motif, const Network& net, std::span<std::size_t> x, Rng& rng);

// Proposal kernel, pivot marginal and subtree messages for a rooted-tree motif.
// Holds a reference to the network, which must outlive it.
class PivotTables {
public:
    PivotTables(const Motif& motif, const Network& net);

    const Motif& motif() const { return motif_; }
    const Network& network() const { return net_; }

    // Psi(a,b) = alpha(a) max(A(a,b),A(b,a)) alpha(b) / row sum.
    double proposal(std::size_t a, std::size_t b) const;
    std::size_t propose(std::size_t a, Rng& rng) const;
    double acceptance(std::size_t a, std::size_t b) const;

    // Law of x(0) under pi_{F->G}.
    const Vector& pivot_marginal() const { return pi1_; }

    // Message of motif node u evaluated at network node c, scaled to max 1.
    double message(std::size_t u, std::size_t c) const { return messages_[u][c]; }

    // Resamples every non-root node from its exact conditional law given its parent.
    void resample_children(std::span<std::size_t> x, Rng& rng) const;

private:
    Motif motif_;
    const Network& net_;
    std::vector<double> row_sum_;
    std::vector<std::size_t> offsets_;
    std::vector<double> cumulative_;
    std::vector<std::vector<double>> messages_;
    Vector pi1_;
};

// One pivot step; returns true when the root move is accepted.
bool pivot_step(const PivotTables& tables, std::span<std::size_t> x, Rng& rng);

// Sequential placement: each node is drawn from its conditional weights given
// the nodes already placed. Fails with NumericalError after max_tries.
VertexMap initial_hom(const Motif& motif, const Network& net, Rng& rng, std::size_t max_tries = 1000);

bool is_homomorphism(const Motif& motif, const Network& net, std::span<const std::size_t> x);

// A chain instance owning its state. The pivot kind builds its tables once.
class Chain {
public:
    Chain(const Motif& motif, const Network& net, ChainKind kind, VertexMap initial);

    void step(Rng& rng);
    const VertexMap& state() const { return x_; }
    ChainKind kind() const { return kind_; }
    std::size_t proposals() const { return proposals_; }
    std::size_t accepted() const { return accepted_; }
    const PivotTables* tables() const { return tables_ ? &*tables_ : nullptr; }

private:
    ChainKind kind_;
    VertexMap x_;
    std::optional<GlauberKernel> glauber_;
    std::optional<PivotTables> tables_;
    std::size_t proposals_ = 0, accepted_ = 0;
};

struct RunReport {
    ChainKind kind;
    std::uint64_t seed;
    std::size_t burn_in;
    std::size_t steps;
    std::size_t thinning;
    std::size_t observed;
    std::size_t proposals;
    std::size_t accepted;
    double acceptance_rate;  // 1 for Glauber
    VertexMap initial_state;
    VertexMap final_state;
};

RunReport run_chain(const ChainConfig& config, const Motif& motif, const Network& net,
                    std::span<Observer* const> observers);

}  // namespace homsample
