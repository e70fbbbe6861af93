#pragma once

#include "homsample/network.hpp"
#include "homsample/rng.hpp"

#include <string>

namespace homsample {

// Piecewise-constant kernel on [0,1]^2: block (a,b) has value values(a,b) and
// area measures(a) * measures(b).
struct StepKernel {
    Matrix values;
    Vector measures;

    std::size_t blocks() const { return static_cast<std::size_t>(measures.size()); }
};

StepKernel to_step_kernel(const Network& net);

// Symmetric graphon-valued kernel: measures from normalized uniform draws,
// values uniform on [0,1] with each entry zeroed with probability `zero_rate`.
StepKernel random_step_kernel(std::size_t blocks, Rng& rng, double zero_rate = 0.2);

// Relabeled kernel W^phi with W^phi(a,b) = W(phi(a), phi(b)) and measures moved along.
StepKernel permuted(const StepKernel& w, const std::vector<std::size_t>& phi);

// U - W on the common refinement of the two block partitions.
StepKernel difference(const StepKernel& u, const StepKernel& w);

inline constexpr std::size_t kMaxCutBlocks = 20;
inline constexpr std::size_t kMaxPermutationBlocks = 9;

// Exact cut norm: the optimum is attained on unions of blocks.
double cut_norm(const StepKernel& u);
double one_norm(const StepKernel& u);

// Unlabeled versions take the minimum over all block relabelings of w, which
// requires equal block counts.
double p_norm_dist(const StepKernel& u, const StepKernel& w, double p, bool labeled);
double cut_dist(const StepKernel& u, const StepKernel& w, bool labeled);
double filtration_dist(const StepKernel& u, const StepKernel& w, bool labeled);

// Homomorphism quantities of step kernels by plain enumeration of block tuples.
double kernel_hom_density(const Motif& f, const StepKernel& u);
double kernel_conditional_density(const Motif& h, const Motif& f, const StepKernel& u);
// Kernel U^F on the same blocks (integral 1).
StepKernel kernel_motif_transform(const Motif& f, const StepKernel& u);
// ||f(H,U|F) - f(H,W|F)||_1 over [0,1], exactly.
double kernel_profile_l1(const Motif& h, const Motif& f, const StepKernel& u, const StepKernel& w);

enum class StabilityKind { Counting, Conditional, Transform, Profile };

StabilityKind parse_stability_kind(const std::string& text);
const char* to_string(StabilityKind kind);

struct StabilityReport {
    StabilityKind kind;
    double lhs;
    double rhs;
    bool holds;
};

// Both sides computed exactly. Counting uses F only; the others use (H, F).
StabilityReport verify_stability(StabilityKind kind, const StepKernel& u, const StepKernel& w, const Motif& h,
                                 const Motif& f);

}  // namespace homsample
