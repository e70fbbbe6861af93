#pragma once

#include "homsample/exact.hpp"
#include "homsample/mcmc.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace homsample {

// TV distance to the stationary law after t = 0..horizon steps, estimated
// from independent replicas started at the same state. For the pivot chain
// the law of the root is tracked as well, against the pivot marginal.
struct MixingCurve {
    std::vector<double> tv;
    std::vector<double> tv_se;
    std::vector<double> marginal_tv;
    std::vector<double> marginal_se;
    std::size_t replicas = 0;
};

// Plug-in standard error of an empirical TV estimate:
// 0.5 * sum_x sqrt(p_x (1 - p_x) / R) over the empirical frequencies p_x.
double tv_standard_error(std::span<const double> empirical, std::size_t replicas);

// Replicas run in `threads` workers with per-replica seeds derived from `seed`,
// so the result does not depend on the thread count.
MixingCurve empirical_mixing(const Motif& motif, const Network& net, ChainKind kind, std::size_t horizon,
                             std::size_t replicas, const VertexMap& start, std::uint64_t seed,
                             std::size_t threads = 1);

// Least likely homomorphism under pi_{F->G} (first in code order on ties).
VertexMap worst_start(const ExactDistribution& pi);

// Exact TV curve of the Glauber chain by evolving the law over the support of pi.
std::vector<double> exact_glauber_tv_curve(const Motif& motif, const Network& net, const VertexMap& start,
                                           std::size_t horizon);

// Metropolis kernel of the root walk: proposal Psi, target `stationary`.
Matrix metropolis_kernel(const Network& net, const Vector& stationary);

// Smallest t with max_x TV(P^t(x,.), stationary) <= eps, or nullopt past max_steps.
std::optional<std::size_t> exact_mixing_time(const Matrix& kernel, const Vector& stationary, double eps,
                                             std::size_t max_steps = 100000);

struct SpectralGapReport {
    Vector eigenvalues;  // descending
    double lambda_star;
    double eps;
    double t_mix_lower;
    double t_mix_upper;
    std::optional<double> cubic_upper;  // simple graphs with alpha proportional to degree, n >= 13
};

// Bounds for the singleton-motif pivot chain (target alpha).
SpectralGapReport spectral_gap_bounds(const Network& net, double eps);
// Bounds for the pivot chain of a rooted-tree motif (target: its pivot marginal).
SpectralGapReport spectral_gap_bounds(const PivotTables& tables, double eps);

// log2(1/eps) (4/27 n^3 + 4/3 n^2 + 2/9 n - 296/27).
double cubic_meeting_bound(std::size_t n, double eps);

// ceil((q - D)/(q - 2D) * k * log(k / eps)); requires q > 2D.
std::size_t coloring_mixing_steps(std::size_t q, std::size_t max_degree, std::size_t k, double eps);

struct ConcentrationReport {
    std::size_t samples;
    double mean;
    double failure_probability;
    double delta;  // half-width achieving 1 - failure_probability
};

// Scalar McDiarmid-type bound 2 exp(-2 delta^2 N / (9 t_mix(1/4))).
double scalar_failure_bound(double delta, std::size_t samples, double t_mix_quarter);
// Vector bound 2 e^2 exp(-delta^2 N / 2) + eps.
double vector_failure_bound(double delta, std::size_t samples, double eps);

ConcentrationReport concentration_ci(std::span<const double> samples, double t_mix_quarter,
                                     double failure_probability);

// Each sample is one value of a function-valued observable (e.g. a profile on
// a grid); Euclidean norms must be at most 1. `eps` is the TV level the burn-in reached.
struct VectorConcentrationReport {
    std::size_t samples;
    Vector mean;
    double failure_probability;
    double delta;
};
VectorConcentrationReport concentration_ci(const std::vector<Vector>& samples, double eps,
                                           double failure_probability);

// min over pairs of star homomorphisms that agree at the center and differ in
// exactly one leaf of 1 - 2 D TV(mu_x, mu_x'), D = max degree of the motif.
double glauber_contraction_constant(const Motif& motif, const Network& net, double cap = 1e8);

}  // namespace homsample
