// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "homsample/clustering.hpp"
#include "homsample/diagnostics.hpp"
#include "homsample/errors.hpp"
#include "homsample/exact.hpp"
#include "homsample/generators.hpp"
#include "homsample/graphon.hpp"
#include "homsample/mcmc.hpp"
#include "homsample/observables.hpp"
#include "homsample/pipelines.hpp"
#include "homsample/report.hpp"
#include "homsample/rng.hpp"
#include "homsample/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace homsample;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

// Weighted network on n nodes whose skeleton is connected (a ring), symmetric in
// support, and contains the triangle 0-1-2. Weights need not be symmetric.
Network random_small_network(std::size_t n, Rng& rng) {
    const auto m = static_cast<Eigen::Index>(n);
    Matrix a = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i; j < m; ++j) {
            const bool forced = j == (i + 1) % m || (i == 0 && j == 2);
            if (forced || rng.bernoulli(0.4)) {
                a(i, j) = 0.1 + 0.9 * rng.uniform();
                a(j, i) = 0.1 + 0.9 * rng.uniform();
            }
        }
    a(m - 1, 0) = 0.1 + 0.9 * rng.uniform();
    a(0, m - 1) = 0.1 + 0.9 * rng.uniform();
    Vector alpha(m);
    for (Eigen::Index i = 0; i < m; ++i) alpha[i] = 0.2 + rng.uniform();
    return Network(a, alpha / alpha.sum());
}

Network random_symmetric(std::size_t n, Rng& rng, double density, bool positive_diagonal) {
    const auto m = static_cast<Eigen::Index>(n);
    Matrix a = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j)
            if (j == i + 1 || rng.bernoulli(density)) a(i, j) = a(j, i) = rng.uniform();
    for (Eigen::Index i = 0; i < m; ++i)
        if (positive_diagonal) a(i, i) = 0.2 + 0.8 * rng.uniform();
    Vector alpha(m);
    for (Eigen::Index i = 0; i < m; ++i) alpha[i] = 0.1 + rng.uniform();
    return Network(a, alpha / alpha.sum());
}

double max_abs(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

// ---------------------------------------------------------------------------

Verdict torus_densities() {
    const Network net = torus(50);
    struct Case {
        Motif h, f;
        double target;
    };
    const std::vector<Case> cases{{closing_edge_motif(3, 0), two_arm_motif(3, 0), 9.0 / 16},
                                  {closing_edge_motif(9, 0), two_arm_motif(9, 0), 3969.0 / 16384}};
    double worst = 0.0;
    std::string where;
    for (const auto& c : cases)
        for (ChainKind kind : {ChainKind::Glauber, ChainKind::Pivot})
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                ChdEstimator chd(c.h, net);
                Observer* obs[] = {&chd};
                run_chain({kind, seed, std::nullopt, 100000, 1}, c.f, net, obs);
                const double err = std::abs(chd.value() - c.target);
                if (err > worst) {
                    worst = err;
                    where = c.f.size() == 4 ? "F_3_0" : "F_9_0";
                    where += std::string("/") + to_string(kind) + "/seed " + std::to_string(seed);
                }
            }
    return {worst <= 0.01, "12 runs of 1e5 steps, max |error| " + fmt(worst) + " (" + where + "), tol 0.01"};
}

Verdict oracle_equivalence() {
    Rng rng(2024);
    struct Pair {
        Motif h, f;
    };
    const std::vector<Pair> motifs{{edge_on(3, 0, 2), path_motif(3)},
                                   {edge_on(4, 1, 2), star_motif(3)},
                                   {closing_edge_motif(1, 1), two_arm_motif(1, 1)}};
    const auto grid = uniform_grid(11);
    double worst = 0.0;
    std::string where;
    auto track = [&](double err, const std::string& label) {
        if (err > worst) {
            worst = err;
            where = label;
        }
    };
    for (std::size_t i = 0; i < 20; ++i) {
        const Network net = random_small_network(3 + rng.below(4), rng);
        for (const auto& [h, f] : motifs) {
            const double chd_exact = exact_conditional_density(h, f, net);
            const auto profile_exact = exact_chd_profile(h, f, net, grid);
            const Matrix macc_exact = exact_macc(f, net);
            const Matrix transform_exact = exact_motif_transform(f, net).dense();
            for (ChainKind kind : {ChainKind::Glauber, ChainKind::Pivot}) {
                ChdEstimator chd(h, net);
                ProfileEstimator profile(h, net, grid);
                MaccEstimator macc(f, net);
                TransformEstimator transform(empty_motif(f.size()), net);
                Observer* obs[] = {&chd, &profile, &macc, &transform};
                run_chain({kind, derive_seed(i, f.size()), std::nullopt, 200000, 1}, f, net, obs);
                const std::string label = "net " + std::to_string(i) + " k=" + std::to_string(f.size()) + " " +
                                          to_string(kind);
                track(std::abs(chd.value() - chd_exact), label + " chd");
                const auto p = profile.value().values;
                for (std::size_t g = 0; g < grid.size(); ++g) track(std::abs(p[g] - profile_exact[g]), label + " profile");
                track(max_abs(macc.value(), macc_exact), label + " macc");
                track(max_abs(transform.value().dense(), transform_exact), label + " transform");
            }
        }
    }
    return {worst <= 0.02, "20 nets x 3 motifs x 2 chains x 4 estimators, max-abs " + fmt(worst) + " (" + where +
                               "), tol 0.02"};
}

Verdict detailed_balance() {
    Rng rng(77);
    double worst = 0.0;
    std::size_t pairs = 0;
    const std::vector<Motif> motifs{path_motif(3), star_motif(3), two_arm_motif(1, 1), cycle_motif(3)};
    for (std::size_t inst = 0; inst < 10; ++inst) {
        const Network net = random_small_network(3 + rng.below(3), rng);
        const Motif& f = motifs[inst % motifs.size()];
        const ExactDistribution pi = exact_pi(f, net);
        const GlauberKernel kernel(f, net);
        const double k = static_cast<double>(f.size());
        for (std::size_t s = 0; s < pi.support_size(); ++s) {
            const VertexMap x = pi.decode(pi.codes()[s]);
            for (std::size_t i = 0; i < f.size(); ++i)
                for (std::size_t b = 0; b < net.size(); ++b) {
                    if (b == x[i]) continue;
                    VertexMap y = x;
                    y[i] = b;
                    const double forward = pi.probabilities()[s] * kernel.probability(x, i, b) / k;
                    const double backward = pi.probability(y) * kernel.probability(y, i, x[i]) / k;
                    const double scale = std::max(forward, backward);
                    if (scale > 0.0) worst = std::max(worst, std::abs(forward - backward) / scale);
                    ++pairs;
                }
        }
    }
    return {worst <= 1e-12, std::to_string(pairs) + " neighboring pairs on 10 instances, max relative error " +
                                fmt(worst) + ", tol 1e-12"};
}

Verdict pivot_marginal_identity() {
    Rng rng(5);
    const Network net = random_small_network(5, rng);
    const Motif f = path_motif(3);
    const VertexMap start = worst_start(exact_pi(f, net));
    const std::size_t horizon = 20;
    const MixingCurve curve = empirical_mixing(f, net, ChainKind::Pivot, horizon, 10000, start, 99);
    double worst = 0.0;
    for (std::size_t t = 1; t <= horizon; ++t) {
        const double gap = std::abs(curve.tv[t] - curve.marginal_tv[t]);
        const double band = 3.0 * std::hypot(curve.tv_se[t], curve.marginal_se[t]);
        worst = std::max(worst, gap / band);
    }
    return {worst <= 1.0, "P_3 on 5 nodes, 1e4 replicas, steps 1..20: max |TV - marginal TV| / (3 SE) = " +
                              fmt(worst)};
}

Verdict coloring_mixing() {
    const Motif f = path_motif(4);
    const std::size_t delta = motif_max_degree(f), q = 2 * delta + 3;
    const Network net = complete_graph(q);
    const double eps = 0.1;
    const std::size_t steps = coloring_mixing_steps(q, delta, f.size(), eps);
    const VertexMap start = worst_start(exact_pi(f, net));
    const MixingCurve curve = empirical_mixing(f, net, ChainKind::Glauber, steps, 100000, start, 31);
    const double exact = exact_glauber_tv_curve(f, net, start, steps).back();
    const double tv = curve.tv[steps], se = curve.tv_se[steps];
    return {tv <= eps + 3 * se && exact <= eps,
            "P_4 into K_" + std::to_string(q) + " at t = " + std::to_string(steps) + ": empirical TV " + fmt(tv) +
                " (SE " + fmt(se) + ", 1e5 replicas), exact TV " + fmt(exact) + ", eps 0.1"};
}

Verdict spectral_agreement() {
    Rng rng(6);
    double worst_density = 0.0, worst_transform = 0.0, worst_sum = 0.0;
    for (std::size_t n : {5, 30, 100, 200}) {
        const Network net = random_symmetric(n, rng, 0.3, false);
        for (std::size_t k = 2; k <= 12; ++k) {
            worst_density = std::max(worst_density, std::abs(path_hom_density(net, k) - path_hom_density_direct(net, k)));
            const Matrix spectral = path_transform(net, k).dense();
            worst_transform = std::max(worst_transform, max_abs(spectral, path_transform_direct(net, k)));
            worst_sum = std::max(worst_sum, std::abs(spectral.sum() - 1.0));
        }
    }
    double worst_eigen = 0.0;
    for (double eps : {0.01, 0.1})
        for (double s : {0.2, 0.5, 0.9}) {
            Matrix a(3, 3);
            a << 1, s, 0, s, 1, s, 0, s, 1;
            Vector alpha(3);
            alpha << (1 - eps) / 2, eps, (1 - eps) / 2;
            const Vector root = alpha.cwiseSqrt();
            const Matrix b = root.asDiagonal() * a * root.asDiagonal();
            Eigen::SelfAdjointEigenSolver<Matrix> solver(b);
            std::vector<double> generic(solver.eigenvalues().data(), solver.eigenvalues().data() + 3);
            const double disc = std::sqrt((3 * eps - 1) * (3 * eps - 1) + 16 * s * s * eps * (1 - eps));
            std::vector<double> formula{0.25 * (eps + 1 - disc), (1 - eps) / 2, 0.25 * (eps + 1 + disc)};
            std::sort(generic.begin(), generic.end());
            std::sort(formula.begin(), formula.end());
            const Vector ours = decompose(Network(a, alpha)).eigenvalues;
            for (int l = 0; l < 3; ++l) {
                worst_eigen = std::max(worst_eigen, std::abs(generic[static_cast<std::size_t>(l)] - formula[static_cast<std::size_t>(l)]));
                worst_eigen = std::max(worst_eigen, std::abs(ours[2 - l] - formula[static_cast<std::size_t>(l)]));
            }
        }
    return {worst_density <= 1e-9 && worst_transform <= 1e-9 && worst_sum <= 1e-10 && worst_eigen <= 1e-10,
            "n <= 200, k <= 12: density " + fmt(worst_density) + ", transform " + fmt(worst_transform) +
                ", sum-1 " + fmt(worst_sum) + "; eigenvalue grid " + fmt(worst_eigen)};
}

Verdict closure_convergence() {
    Rng rng(7);
    double worst = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        const Network net = random_symmetric(4 + rng.below(17), rng, 0.5, true);
        worst = std::max(worst, max_abs(path_transform(net, 50).dense(), transitive_closure(net).dense()));
    }
    // Two blocks of equal mass, both with self-weight 1: the top eigenvalue is
    // double and the closure keeps both blocks. Lowering one self-weight by eps
    // makes it simple and the closure collapses onto one block.
    const double eps = 1e-3;
    Vector alpha(2);
    alpha << 0.5, 0.5;
    const Matrix u = Matrix::Identity(2, 2);
    Matrix u_eps = u;
    u_eps(1, 1) = 1.0 - eps;
    const StepKernel ku{u, alpha}, kw{u_eps, alpha};
    const double input_gap = one_norm(difference(ku, kw));
    const Matrix cu = transitive_closure(Network(u, alpha)).dense(), cw = transitive_closure(Network(u_eps, alpha)).dense();
    const double closure_gap = (cu - cw).cwiseAbs().sum();
    return {worst <= 1e-6 && closure_gap >= 0.5 && input_gap <= eps,
            "10 nets at k = 50: max entry gap " + fmt(worst) + " (tol 1e-6); instability: input L1 " + fmt(input_gap) +
                ", closure L1 " + fmt(closure_gap)};
}

StepKernel perturbed(const StepKernel& u, double scale, Rng& rng) {
    StepKernel w = u;
    const Eigen::Index m = w.values.rows();
    for (Eigen::Index a = 0; a < m; ++a) {
        for (Eigen::Index b = a; b < m; ++b)
            w.values(a, b) = w.values(b, a) = std::clamp(u.values(a, b) + scale * (2 * rng.uniform() - 1), 0.0, 1.0);
        w.measures[a] = u.measures[a] * (1 + scale * (2 * rng.uniform() - 1));
    }
    w.measures /= w.measures.sum();
    return w;
}

Verdict stability_inequalities() {
    Rng rng(8);
    struct Pair {
        Motif h, f;
    };
    const std::vector<Pair> pairs{{closing_edge_motif(1, 1), two_arm_motif(1, 1)},
                                  {edge_on(4, 1, 2), star_motif(3)},
                                  {closing_edge_motif(2, 0), two_arm_motif(2, 0)},
                                  {edge_on(4, 0, 3), path_motif(4)}};
    const std::vector<Motif> counting{path_motif(3), cycle_motif(3), star_motif(3), path_motif(4), cycle_motif(4)};
    std::ostringstream summary;
    bool ok = true;
    for (StabilityKind kind :
         {StabilityKind::Counting, StabilityKind::Conditional, StabilityKind::Transform, StabilityKind::Profile}) {
        std::size_t violations = 0;
        double worst_ratio = 0.0;
        for (std::size_t trial = 0; trial < 200; ++trial) {
            const std::size_t m = 1 + rng.below(5);
            const Pair& pair = pairs[trial % pairs.size()];
            const Motif& f = kind == StabilityKind::Counting ? counting[trial % counting.size()] : pair.f;
            // Half the pairs are independent draws, half are small perturbations.
            const double scale = trial % 2 ? 0.3 / std::pow(10.0, static_cast<double>(trial % 3)) : 0.0;
            StepKernel u, w;
            for (;;) {
                u = random_step_kernel(m, rng);
                w = scale > 0.0 ? perturbed(u, scale, rng) : random_step_kernel(m, rng);
                if (kernel_hom_density(f, u) > 0.0 && kernel_hom_density(f, w) > 0.0) break;
            }
            const StabilityReport r = verify_stability(kind, u, w, pair.h, f);
            violations += !r.holds;
            if (r.rhs > 0.0) worst_ratio = std::max(worst_ratio, r.lhs / r.rhs);
        }
        ok = ok && violations == 0;
        summary << to_string(kind) << " " << violations << " violations (max lhs/rhs " << fmt(worst_ratio) << ") ";
    }
    return {ok, "200 pairs each, m <= 5: " + summary.str()};
}

Verdict metric_sandwich() {
    Rng rng(9);
    std::size_t violations = 0;
    for (std::size_t trial = 0; trial < 200; ++trial) {
        const std::size_t m = 1 + rng.below(5);
        const StepKernel u = random_step_kernel(m, rng), w = random_step_kernel(m, rng);
        for (bool labeled : {true, false}) {
            const double cut = cut_dist(u, w, labeled), filtration = filtration_dist(u, w, labeled),
                         l1 = p_norm_dist(u, w, 1.0, labeled);
            violations += !(cut <= filtration + 1e-12 && filtration <= l1 + 1e-12);
        }
    }
    return {violations == 0, "200 pairs, labeled and unlabeled: " + std::to_string(violations) + " violations"};
}

// Minimax path cost over all simple paths of the dissimilarity graph.
double brute_minimax(const Matrix& d, std::size_t a, std::size_t b) {
    const std::size_t n = static_cast<std::size_t>(d.rows());
    double best = kInfinity;
    std::vector<bool> used(n, false);
    std::function<void(std::size_t, double)> walk = [&](std::size_t at, double cost) {
        if (cost >= best) return;
        if (at == b) {
            best = cost;
            return;
        }
        used[at] = true;
        for (std::size_t next = 0; next < n; ++next) {
            const double edge = d(static_cast<Eigen::Index>(at), static_cast<Eigen::Index>(next));
            if (!used[next] && edge < kInfinity) walk(next, std::max(cost, edge));
        }
        used[at] = false;
    };
    walk(a, 0.0);
    return best;
}

Verdict clustering_checks() {
    Rng rng(10);
    std::size_t mismatches = 0, triples = 0, ultrametric_failures = 0;
    for (std::size_t i = 0; i < 50; ++i) {
        const std::size_t n = 2 + rng.below(7);
        const auto m = static_cast<Eigen::Index>(n);
        Matrix a = Matrix::Zero(m, m);
        for (Eigen::Index x = 0; x < m; ++x)
            for (Eigen::Index y = 0; y < m; ++y)
                if (rng.bernoulli(0.4)) a(x, y) = std::round(rng.uniform() * 8) / 8;
        const Network net(a);
        const Matrix d = dissimilarity(net);
        const Dendrogram tree = treegram(net);
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y) mismatches += tree.merge_height(x, y) != brute_minimax(d, x, y);
        const Matrix t = capacity(net);
        for (Eigen::Index x = 0; x < m; ++x)
            for (Eigen::Index y = 0; y < m; ++y)
                for (Eigen::Index z = 0; z < m; ++z) {
                    if (x == y || y == z || x == z) continue;
                    ++triples;
                    ultrametric_failures += t(x, z) < std::min(t(x, y), t(y, z));
                }
    }

    // Blow-ups of the 5x5 torus, plain and with long-range edges, bridged by one edge.
    const Network left = sbm_gamma(torus_long_range(5, 0.0, 0.0, 41), 5, 0.6, 42);
    const Network right = sbm_gamma(torus_long_range(5, 0.2, 0.0, 43), 5, 0.2, 44);
    const Network bell = barbell(left, right, {79, 52});
    const std::size_t n_left = left.size();
    // True when every cluster strictly below the final merge stays on one side.
    auto separates = [&](const Dendrogram& tree) {
        for (std::size_t m = 0; m + 1 < tree.merges.size(); ++m)
            for (const auto& cluster : tree.clusters_at(tree.merges[m].height)) {
                if (cluster.size() == bell.size()) continue;
                const bool has_left = cluster.front() < n_left, has_right = cluster.back() >= n_left;
                if (has_left && has_right) return false;
            }
        return true;
    };
    const bool transformed = separates(treegram(exact_motif_transform(cycle_motif(3), bell)));
    const bool raw = separates(treegram(bell));

    return {mismatches == 0 && ultrametric_failures == 0 && transformed && !raw,
            "50 nets: " + std::to_string(mismatches) + " minimax mismatches, " + std::to_string(ultrametric_failures) +
                "/" + std::to_string(triples) + " ultrametric failures; barbell separated after C_3 transform: " +
                (transformed ? "yes" : "no") + ", before: " + (raw ? "yes" : "no")};
}

std::vector<Matrix> style_counts(std::size_t per_class, Rng& rng, std::vector<std::string>& labels) {
    // Two word-transition templates; each item is 3000 sampled transitions.
    const Eigen::Index w = 8;
    std::vector<Matrix> templates(2, Matrix(w, w));
    for (std::size_t c = 0; c < 2; ++c)
        for (Eigen::Index a = 0; a < w; ++a) {
            for (Eigen::Index b = 0; b < w; ++b) templates[c](a, b) = 0.5 + rng.uniform();
            templates[c](a, c == 0 ? a : (a + 1) % w) += 4.0;
            templates[c].row(a) /= templates[c].row(a).sum();
        }
    std::vector<Matrix> out;
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < per_class; ++i) {
            Matrix counts = Matrix::Zero(w, w);
            Eigen::Index word = static_cast<Eigen::Index>(rng.below(w));
            for (int s = 0; s < 3000; ++s) {
                double u = rng.uniform();
                Eigen::Index next = 0;
                while (next + 1 < w && u >= templates[c](word, next)) u -= templates[c](word, next++);
                counts(word, next) += 1;
                word = next;
            }
            out.push_back(counts);
            labels.push_back(c == 0 ? "repeating" : "cycling");
        }
    return out;
}

Verdict pipeline_properties() {
    std::ostringstream detail;
    bool ok = true;

    std::vector<Network> nets;
    std::vector<std::size_t> truth;
    for (std::size_t i = 0; i < 10; ++i) {
        nets.push_back(sbm_gamma(Network(block_template(i < 5 ? 1 : 2)), 5, 0.5, derive_seed(11, i)));
        truth.push_back(i < 5 ? 0 : 1);
    }
    double worst_agreement = 1.0;
    MaccPipelineConfig macc_cfg;
    macc_cfg.steps = 20000;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        macc_cfg.seed = seed;
        const auto result = macc_pipeline(nets, path_motif(3), macc_cfg);
        worst_agreement = std::min(worst_agreement, label_agreement(result.labels, truth));
    }
    ok = ok && worst_agreement >= 0.9;
    detail << "SBM k-means agreement min over 10 seeds " << fmt(worst_agreement) << "; ";

    Rng rng(12);
    std::vector<std::string> labels;
    const auto counts = style_counts(10, rng, labels);
    for (auto method : {AttributionMethod::Chd00, AttributionMethod::Kl, AttributionMethod::Frobenius}) {
        AttributionConfig cfg;
        cfg.method = method;
        cfg.repetitions = 1000;
        cfg.seed = 13;
        const auto report = attribution_experiment(counts, labels, cfg);
        ok = ok && report.overall == 1.0;
        detail << to_string(method) << " " << fmt(100 * report.overall) << "% ";
    }

    // Determinism: same configuration, rerun and with more worker threads.
    macc_cfg.seed = 3;
    macc_cfg.steps = 5000;
    const auto first = macc_pipeline(nets, path_motif(3), macc_cfg);
    macc_cfg.threads = 3;
    const auto second = macc_pipeline(nets, path_motif(3), macc_cfg);
    bool identical = first.labels == second.labels && first.distances == second.distances &&
                     report::to_json(first.dendrogram) == report::to_json(second.dendrogram);
    for (std::size_t i = 0; i < nets.size(); ++i) identical = identical && first.maccs[i] == second.maccs[i];

    ProfilePipelineConfig profile_cfg;
    profile_cfg.seed = 4;
    profile_cfg.steps = 3000;
    const std::vector<MotifPair> pairs{{self_loop_motif(), singleton_motif()}, {edge_on(3, 0, 2), path_motif(3)}};
    const std::vector<Network> few(nets.begin(), nets.begin() + 4);
    const auto p1 = profile_pipeline(few, pairs, profile_cfg);
    profile_cfg.threads = 2;
    const auto p2 = profile_pipeline(few, pairs, profile_cfg);
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        identical = identical && p1.distances[p] == p2.distances[p];
        for (std::size_t i = 0; i < few.size(); ++i) identical = identical && p1.profiles[p][i].values == p2.profiles[p][i].values;
    }

    AttributionConfig att;
    att.repetitions = 200;
    att.seed = 14;
    const auto a1 = attribution_experiment(counts, labels, att), a2 = attribution_experiment(counts, labels, att);
    identical = identical && a1.class_accuracy == a2.class_accuracy;

    ok = ok && identical;
    detail << "; bit-exact reruns: " << (identical ? "yes" : "no");
    return {ok, detail.str()};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"torus conditional densities", torus_densities},
        {"oracle equivalence", oracle_equivalence},
        {"Glauber detailed balance", detailed_balance},
        {"pivot marginal identity", pivot_marginal_identity},
        {"coloring mixing bound", coloring_mixing},
        {"spectral agreement", spectral_agreement},
        {"transitive closure", closure_convergence},
        {"stability inequalities", stability_inequalities},
        {"metric sandwich", metric_sandwich},
        {"clustering", clustering_checks},
        {"pipelines and determinism", pipeline_properties},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !v.pass;
        std::printf("%s %2zu %s: %s [%.1fs]\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.c_str(),
                    seconds);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
