#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace homsample {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Neighbor {
    std::size_t node;
    double weight;
};

struct WeightedEdge {
    std::size_t from;
    std::size_t to;
    double weight;
};

// Weighted network (n, A, alpha). Positive entries of A are always indexed by
// sorted out- and in-neighbor lists. A dense copy of A is kept as well when
// n <= kDenseLimit, so weight() is O(1) there and a binary search otherwise.
// Immutable after construction.
class Network {
public:
    static constexpr std::size_t kDenseLimit = 4096;

    Network(const Matrix& weights, Vector alpha);
    explicit Network(const Matrix& weights);
    Network(std::size_t n, const std::vector<WeightedEdge>& edges, Vector alpha);
    Network(std::size_t n, const std::vector<WeightedEdge>& edges);

    std::size_t size() const { return n_; }
    bool is_dense() const { return dense_.has_value(); }

    double weight(std::size_t i, std::size_t j) const;
    double alpha(std::size_t i) const { return alpha_[static_cast<Eigen::Index>(i)]; }
    const Vector& alpha() const { return alpha_; }

    std::span<const Neighbor> out(std::size_t i) const;
    std::span<const Neighbor> in(std::size_t i) const;

    // Union of out- and in-neighbors with weight max(A(i,j), A(j,i)).
    std::span<const Neighbor> symmetric_neighbors(std::size_t i) const;

    std::size_t edge_count() const { return out_nodes_.size(); }
    double out_mass(std::size_t i) const;
    double max_weight() const { return max_weight_; }
    bool is_symmetric() const { return symmetric_; }
    bool alpha_was_renormalized() const { return renormalized_; }

    Matrix dense() const;
    std::vector<WeightedEdge> edges() const;

private:
    void build(std::size_t n, std::vector<WeightedEdge> edges, Vector alpha);

    std::size_t n_ = 0;
    Vector alpha_;
    std::optional<Matrix> dense_;
    std::vector<std::size_t> out_offsets_, in_offsets_, sym_offsets_;
    std::vector<Neighbor> out_nodes_, in_nodes_, sym_nodes_;
    double max_weight_ = 0.0;
    bool symmetric_ = true;
    bool renormalized_ = false;
};

enum class MotifKind { General, Simple, RootedTree };

// Motif F = ([k], A_F). Classification is computed on construction.
class Motif {
public:
    explicit Motif(Matrix weights, std::string name = {});

    std::size_t size() const { return k_; }
    double weight(std::size_t i, std::size_t j) const {
        return af_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    const Matrix& weights() const { return af_; }
    const std::string& name() const { return name_; }

    bool is_simple() const { return simple_; }
    bool is_rooted_tree() const { return tree_; }
    // Most specific class: rooted-tree before simple before general.
    MotifKind kind() const;

    // Parent of node i in a rooted-tree motif; parent(0) is unused.
    std::size_t parent(std::size_t i) const { return parents_.at(i); }
    const std::vector<std::vector<std::size_t>>& children() const { return children_; }

    // Sum of all motif weights (equals the edge count for 0-1 motifs).
    double total_weight() const { return af_.sum(); }

    // Entrywise sum H + F.
    Motif plus(const Motif& other) const;

private:
    std::size_t k_;
    Matrix af_;
    std::string name_;
    bool simple_ = false;
    bool tree_ = false;
    std::vector<std::size_t> parents_;
    std::vector<std::vector<std::size_t>> children_;
};

// Named families. Indices in the edge lists below are 0-based.
Motif singleton_motif();
Motif self_loop_motif();
Motif path_motif(std::size_t k);        // P_k: (0,1),(1,2),...,(k-2,k-1)
Motif cycle_motif(std::size_t k);       // C_k: P_k plus (k-1,0)
Motif star_motif(std::size_t leaves);   // S_d: center 0, leaves 1..d
Motif wedge_motif();                    // W_3 = S_2
Motif complete_motif(std::size_t q);    // K_q: (i,j) for i<j
Motif two_arm_motif(std::size_t arm1, std::size_t arm2);       // F_{k1,k2}
Motif closing_edge_motif(std::size_t arm1, std::size_t arm2);  // H_{k1,k2}: joins the two arm ends
Motif edge_on(std::size_t k, std::size_t i, std::size_t j);    // 1_{(i,j)} on k nodes
Motif empty_motif(std::size_t k);

// Parses "P_5", "F_3_4", "F_{3,4}", "H_0_0", "S_20", "K_7", "W_3", "C_3".
Motif build_motif(const std::string& description);

std::size_t max_degree(const Network& net);
std::size_t motif_max_degree(const Motif& motif);

// nullopt stands for an infinite diameter.
std::optional<std::size_t> diameter(const Network& net);

struct StructuralPredicates {
    bool irreducible;
    bool bidirectional;
    bool skeleton_has_odd_cycle;
};
StructuralPredicates structural_predicates(const Network& net);

// 0-1 symmetric adjacency with entry 1 iff min(A(i,j), A(j,i)) > 0.
Matrix skeleton(const Network& net);

}  // namespace homsample
