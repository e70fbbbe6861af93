#pragma once

#include "homsample/clustering.hpp"
#include "homsample/mcmc.hpp"
#include "homsample/network.hpp"
#include "homsample/observables.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace homsample {

struct KMeansResult {
    std::vector<std::size_t> labels;
    std::vector<Vector> centers;
    double inertia = 0.0;
};

// Lloyd iterations from k-means++ seeds; the restart with the least inertia wins.
KMeansResult kmeans(const std::vector<Vector>& points, std::size_t k, std::uint64_t seed,
                    std::size_t restarts = 10, std::size_t max_iterations = 100);

// Fraction of items whose labels agree under the best matching of label names.
double label_agreement(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

Matrix frobenius_distances(const std::vector<Matrix>& matrices);

struct MaccPipelineConfig {
    ChainKind kind = ChainKind::Pivot;
    std::uint64_t seed = 0;
    std::optional<std::size_t> steps;  // default ceil(2 n ln n) per network
    std::optional<std::size_t> burn_in;
    std::size_t clusters = 2;
    std::size_t threads = 1;
};

struct MaccPipelineResult {
    std::vector<Matrix> maccs;  // empty matrix for a failed network
    std::vector<std::optional<RunReport>> runs;
    std::vector<std::string> errors;  // empty string when the network succeeded
    std::vector<std::size_t> included;  // indices of networks that succeeded
    Matrix distances;  // over `included`
    Dendrogram dendrogram;
    std::vector<std::size_t> labels;  // k-means labels over `included`
};

MaccPipelineResult macc_pipeline(const std::vector<Network>& nets, const Motif& chain_motif,
                                 const MaccPipelineConfig& config);

struct MotifPair {
    Motif h;
    Motif f;
};

struct ProfilePipelineConfig {
    ChainKind kind = ChainKind::Pivot;
    std::uint64_t seed = 0;
    std::optional<std::size_t> steps;
    std::optional<std::size_t> burn_in;
    std::vector<double> grid = uniform_grid();
    std::size_t threads = 1;
};

struct ProfilePipelineResult {
    std::vector<std::vector<ProfileGrid>> profiles;  // [pair][network]
    std::vector<Matrix> distances;                   // [pair], L1 between profiles
    std::vector<std::vector<bool>> exact;            // computed without sampling
};

// Motifs with a single node are evaluated exactly; others by sampling with
// per-(pair, network) seeds.
ProfilePipelineResult profile_pipeline(const std::vector<Network>& nets, const std::vector<MotifPair>& pairs,
                                       const ProfilePipelineConfig& config);

// Nearest class by L1 distance to each class's mean profile.
std::vector<std::size_t> mean_profile_attribution(const std::vector<ProfileGrid>& references,
                                                  const std::vector<std::size_t>& reference_labels,
                                                  const std::vector<ProfileGrid>& queries);

enum class AttributionMethod { Chd00, Kl, Frobenius };
AttributionMethod parse_attribution_method(const std::string& text);
const char* to_string(AttributionMethod method);

// Mean over rows of KL(p_row || q_row) in nats; rows zero in both are skipped,
// a zero row on one side only is replaced by the uniform row.
double markov_kl(const Matrix& p, const Matrix& q);

// Exact L1 distance between the (self-loop | singleton) profiles of two networks.
double diagonal_profile_l1(const Network& a, const Network& b);

// Distance from item `query` to item `reference` for the chosen method; all
// inputs are row-normalized frequency matrices.
Matrix attribution_distances(const std::vector<Matrix>& row_markov, AttributionMethod method);

// Assigns each query the label of its nearest reference; ties go to the
// reference listed first.
std::vector<std::size_t> nearest_reference(const Matrix& distances, const std::vector<std::size_t>& references,
                                           const std::vector<std::size_t>& reference_labels,
                                           const std::vector<std::size_t>& queries);

struct AttributionConfig {
    AttributionMethod method = AttributionMethod::Chd00;
    std::size_t known_per_class = 4;
    std::size_t repetitions = 1000;
    std::uint64_t seed = 0;
};

struct AttributionReport {
    std::vector<std::string> classes;
    std::vector<double> class_accuracy;
    double overall = 0.0;
    std::size_t repetitions = 0;
};

// Random-split experiment: per repetition every class contributes
// `known_per_class` reference items and one unknown item.
AttributionReport attribution_experiment(const std::vector<Matrix>& counts, const std::vector<std::string>& labels,
                                         const AttributionConfig& config);

// Fixed split: references with labels, queries unlabeled. Returns predicted labels.
std::vector<std::string> attribute(const std::vector<Matrix>& reference_counts,
                                   const std::vector<std::string>& reference_labels,
                                   const std::vector<Matrix>& query_counts, AttributionMethod method);

}  // namespace homsample
