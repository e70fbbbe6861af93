#include "homsample/diagnostics.hpp"

#include "homsample/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>
#include <unordered_map>

namespace homsample {

namespace {

// Empirical frequencies of a sample of codes, as sorted (code, frequency) pairs.
std::vector<std::pair<std::uint64_t, double>> frequencies(std::vector<std::uint64_t> codes) {
    std::sort(codes.begin(), codes.end());
    std::vector<std::pair<std::uint64_t, double>> result;
    const double inv = 1.0 / static_cast<double>(codes.size());
    for (std::size_t s = 0; s < codes.size();) {
        std::size_t e = s;
        while (e < codes.size() && codes[e] == codes[s]) ++e;
        result.emplace_back(codes[s], static_cast<double>(e - s) * inv);
        s = e;
    }
    return result;
}

double tv_against(const std::vector<std::pair<std::uint64_t, double>>& empirical, const ExactDistribution& pi) {
    const auto& codes = pi.codes();
    const auto& probs = pi.probabilities();
    double s = 0.0;
    std::size_t a = 0, b = 0;
    while (a < empirical.size() || b < codes.size()) {
        if (b == codes.size() || (a < empirical.size() && empirical[a].first < codes[b])) {
            s += empirical[a++].second;
        } else if (a == empirical.size() || codes[b] < empirical[a].first) {
            s += probs[b++];
        } else {
            s += std::abs(empirical[a++].second - probs[b++]);
        }
    }
    return 0.5 * s;
}

void check_irreducible(const Network& net) {
    if (!structural_predicates(net).irreducible) throw ConfigError("network is reducible");
}

SpectralGapReport gap_report(const Network& net, const Vector& stationary, double eps) {
    if (!(eps > 0.0 && eps < 0.5)) throw ConfigError("eps must lie in (0, 1/2)");
    check_irreducible(net);
    if (!(stationary.minCoeff() > 0.0)) throw ConfigError("stationary law must be positive everywhere");
    const Matrix p = metropolis_kernel(net, stationary);
    const Vector root = stationary.cwiseSqrt();
    Matrix s = root.asDiagonal() * p * root.cwiseInverse().asDiagonal();
    s = 0.5 * (s + s.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("eigensolver failed");
    Vector values = solver.eigenvalues().reverse();

    SpectralGapReport report{};
    report.eigenvalues = values;
    report.eps = eps;
    double star = 0.0;
    for (Eigen::Index i = 1; i < values.size(); ++i) star = std::max(star, std::abs(values[i]));
    report.lambda_star = star;
    const double gap = 1.0 - star;
    report.t_mix_lower = star * std::log(1.0 / (2.0 * eps)) / gap;
    report.t_mix_upper = std::log(1.0 / (stationary.minCoeff() * eps)) / gap;

    const std::size_t n = net.size();
    bool simple = n >= 13 && net.is_symmetric();
    for (std::size_t a = 0; a < n && simple; ++a)
        for (const auto& nb : net.out(a))
            if (nb.node == a || nb.weight != 1.0) simple = false;
    if (simple) {
        const double total_degree = static_cast<double>(net.edge_count());
        for (std::size_t a = 0; a < n && simple; ++a) {
            const double expected = static_cast<double>(net.out(a).size()) / total_degree;
            if (std::abs(stationary[static_cast<Eigen::Index>(a)] - expected) > 1e-9) simple = false;
        }
    }
    if (simple) report.cubic_upper = cubic_meeting_bound(n, eps);
    return report;
}

}  // namespace

double tv_standard_error(std::span<const double> empirical, std::size_t replicas) {
    double s = 0.0;
    for (double p : empirical) s += std::sqrt(p * (1.0 - p) / static_cast<double>(replicas));
    return 0.5 * s;
}

MixingCurve empirical_mixing(const Motif& motif, const Network& net, ChainKind kind, std::size_t horizon,
                             std::size_t replicas, const VertexMap& start, std::uint64_t seed, std::size_t threads) {
    if (replicas == 0) throw ConfigError("at least one replica is required");
    if (!is_homomorphism(motif, net, start)) throw ConfigError("start state is not a homomorphism");
    const ExactDistribution pi = exact_pi(motif, net);
    std::optional<PivotTables> tables;
    if (kind == ChainKind::Pivot) tables.emplace(motif, net);

    const std::size_t steps = horizon + 1;
    std::vector<std::uint64_t> codes(steps * replicas);
    std::vector<std::size_t> roots(steps * replicas);

    auto worker = [&](std::size_t first, std::size_t last) {
        std::optional<GlauberKernel> glauber;
        if (kind == ChainKind::Glauber) glauber.emplace(motif, net);
        VertexMap x;
        for (std::size_t r = first; r < last; ++r) {
            Rng rng(derive_seed(seed, r));
            x = start;
            for (std::size_t t = 0; t < steps; ++t) {
                if (t > 0) {
                    if (glauber)
                        glauber->step(x, rng);
                    else
                        pivot_step(*tables, x, rng);
                }
                codes[t * replicas + r] = pi.encode(x);
                roots[t * replicas + r] = x[0];
            }
        }
    };
    threads = std::max<std::size_t>(1, std::min(threads, replicas));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back(worker, w * replicas / threads, (w + 1) * replicas / threads);
    for (auto& th : pool) th.join();

    MixingCurve curve;
    curve.replicas = replicas;
    const std::size_t n = net.size();
    for (std::size_t t = 0; t < steps; ++t) {
        std::vector<std::uint64_t> slice(codes.begin() + static_cast<std::ptrdiff_t>(t * replicas),
                                         codes.begin() + static_cast<std::ptrdiff_t>((t + 1) * replicas));
        const auto freq = frequencies(std::move(slice));
        std::vector<double> p;
        p.reserve(freq.size());
        for (const auto& [code, f] : freq) p.push_back(f);
        curve.tv.push_back(tv_against(freq, pi));
        curve.tv_se.push_back(tv_standard_error(p, replicas));
        if (!tables) continue;
        std::vector<double> marginal(n, 0.0);
        for (std::size_t r = 0; r < replicas; ++r) marginal[roots[t * replicas + r]] += 1.0 / static_cast<double>(replicas);
        double tv = 0.0;
        for (std::size_t c = 0; c < n; ++c) tv += std::abs(marginal[c] - tables->pivot_marginal()[static_cast<Eigen::Index>(c)]);
        curve.marginal_tv.push_back(0.5 * tv);
        curve.marginal_se.push_back(tv_standard_error(marginal, replicas));
    }
    return curve;
}

VertexMap worst_start(const ExactDistribution& pi) {
    const auto& probs = pi.probabilities();
    const auto it = std::min_element(probs.begin(), probs.end());
    return pi.decode(pi.codes()[static_cast<std::size_t>(it - probs.begin())]);
}

std::vector<double> exact_glauber_tv_curve(const Motif& motif, const Network& net, const VertexMap& start,
                                           std::size_t horizon) {
    const ExactDistribution pi = exact_pi(motif, net);
    const auto& codes = pi.codes();
    const std::size_t states = codes.size();
    const std::size_t k = motif.size();
    auto index_of = [&](std::uint64_t code) {
        return static_cast<std::size_t>(std::lower_bound(codes.begin(), codes.end(), code) - codes.begin());
    };

    GlauberKernel kernel(motif, net);
    std::vector<std::vector<std::pair<std::size_t, double>>> moves(states);
    std::vector<std::size_t> nodes;
    std::vector<double> weights;
    for (std::size_t s = 0; s < states; ++s) {
        VertexMap x = pi.decode(codes[s]);
        for (std::size_t i = 0; i < k; ++i) {
            kernel.conditional(x, i, nodes, weights);
            double total = 0.0;
            for (double w : weights) total += w;
            const std::size_t keep = x[i];
            for (std::size_t c = 0; c < nodes.size(); ++c) {
                if (weights[c] <= 0.0) continue;
                x[i] = nodes[c];
                moves[s].emplace_back(index_of(pi.encode(x)), weights[c] / (total * static_cast<double>(k)));
            }
            x[i] = keep;
        }
    }

    std::vector<double> law(states, 0.0), next(states);
    law[index_of(pi.encode(start))] = 1.0;
    std::vector<double> curve;
    const auto& probs = pi.probabilities();
    for (std::size_t t = 0; t <= horizon; ++t) {
        curve.push_back(tv_distance(law, probs));
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t s = 0; s < states; ++s)
            if (law[s] != 0.0)
                for (const auto& [target, p] : moves[s]) next[target] += law[s] * p;
        law.swap(next);
    }
    return curve;
}

Matrix metropolis_kernel(const Network& net, const Vector& stationary) {
    const std::size_t n = net.size();
    const auto nn = static_cast<Eigen::Index>(n);
    std::vector<double> row_sum(n, 0.0);
    for (std::size_t a = 0; a < n; ++a) {
        for (const auto& nb : net.symmetric_neighbors(a)) row_sum[a] += nb.weight * net.alpha(nb.node);
        row_sum[a] *= net.alpha(a);
        if (!(row_sum[a] > 0.0)) throw ConfigError("proposal kernel has an empty row");
    }
    Matrix p = Matrix::Zero(nn, nn);
    for (std::size_t a = 0; a < n; ++a) {
        const auto ia = static_cast<Eigen::Index>(a);
        double moved = 0.0;
        for (const auto& nb : net.symmetric_neighbors(a)) {
            if (nb.node == a) continue;
            const auto ib = static_cast<Eigen::Index>(nb.node);
            const double common = net.alpha(a) * nb.weight * net.alpha(nb.node);
            const double forward = common / row_sum[a];
            const double backward = common / row_sum[nb.node];
            const double accept = std::min(1.0, stationary[ib] * backward / (stationary[ia] * forward));
            p(ia, ib) = forward * accept;
            moved += p(ia, ib);
        }
        p(ia, ia) = 1.0 - moved;
    }
    return p;
}

std::optional<std::size_t> exact_mixing_time(const Matrix& kernel, const Vector& stationary, double eps,
                                             std::size_t max_steps) {
    const Eigen::Index n = kernel.rows();
    Matrix power = Matrix::Identity(n, n);
    for (std::size_t t = 0; t <= max_steps; ++t) {
        double worst = 0.0;
        for (Eigen::Index x = 0; x < n; ++x)
            worst = std::max(worst, 0.5 * (power.row(x).transpose() - stationary).cwiseAbs().sum());
        if (worst <= eps) return t;
        power = (power * kernel).eval();
    }
    return std::nullopt;
}

SpectralGapReport spectral_gap_bounds(const Network& net, double eps) { return gap_report(net, net.alpha(), eps); }

SpectralGapReport spectral_gap_bounds(const PivotTables& tables, double eps) {
    return gap_report(tables.network(), tables.pivot_marginal(), eps);
}

double cubic_meeting_bound(std::size_t n, double eps) {
    const double x = static_cast<double>(n);
    return std::log2(1.0 / eps) *
           (4.0 / 27.0 * x * x * x + 4.0 / 3.0 * x * x + 2.0 / 9.0 * x - 296.0 / 27.0);
}

std::size_t coloring_mixing_steps(std::size_t q, std::size_t max_degree, std::size_t k, double eps) {
    if (q <= 2 * max_degree) throw ConfigError("coloring bound requires q > 2 * max degree");
    if (!(eps > 0.0 && eps < 1.0)) throw ConfigError("eps must lie in (0, 1)");
    const double ratio = static_cast<double>(q - max_degree) / static_cast<double>(q - 2 * max_degree);
    const double kk = static_cast<double>(k);
    return static_cast<std::size_t>(std::ceil(ratio * kk * std::log(kk / eps)));
}

double scalar_failure_bound(double delta, std::size_t samples, double t_mix_quarter) {
    return 2.0 * std::exp(-2.0 * delta * delta * static_cast<double>(samples) / (9.0 * t_mix_quarter));
}

double vector_failure_bound(double delta, std::size_t samples, double eps) {
    return 2.0 * std::exp(2.0) * std::exp(-delta * delta * static_cast<double>(samples) / 2.0) + eps;
}

ConcentrationReport concentration_ci(std::span<const double> samples, double t_mix_quarter,
                                     double failure_probability) {
    if (samples.empty()) throw ConfigError("no samples");
    if (!(failure_probability > 0.0 && failure_probability < 1.0))
        throw ConfigError("failure probability must lie in (0, 1)");
    if (!(t_mix_quarter >= 1.0)) throw ConfigError("t_mix(1/4) must be at least 1");
    double sum = 0.0;
    for (double g : samples) {
        if (std::abs(g) > 1.0) throw ConfigError("observable is not scaled into [-1, 1]");
        sum += g;
    }
    const auto count = static_cast<double>(samples.size());
    ConcentrationReport report{};
    report.samples = samples.size();
    report.mean = sum / count;
    report.failure_probability = failure_probability;
    report.delta = std::sqrt(9.0 * t_mix_quarter * std::log(2.0 / failure_probability) / (2.0 * count));
    return report;
}

VectorConcentrationReport concentration_ci(const std::vector<Vector>& samples, double eps,
                                           double failure_probability) {
    if (samples.empty()) throw ConfigError("no samples");
    if (!(failure_probability > eps)) throw ConfigError("failure probability must exceed the burn-in TV level");
    Vector sum = Vector::Zero(samples.front().size());
    for (const auto& g : samples) {
        if (g.size() != sum.size()) throw ConfigError("samples have different dimensions");
        if (g.norm() > 1.0 + 1e-12) throw ConfigError("observable is not scaled into the unit ball");
        sum += g;
    }
    const auto count = static_cast<double>(samples.size());
    VectorConcentrationReport report{};
    report.samples = samples.size();
    report.mean = sum / count;
    report.failure_probability = failure_probability;
    report.delta = std::sqrt(2.0 * std::log(2.0 * std::exp(2.0) / (failure_probability - eps)) / count);
    return report;
}

double glauber_contraction_constant(const Motif& motif, const Network& net, double cap) {
    const std::size_t d = motif_max_degree(motif);
    if (d == 0) return 1.0;
    const std::size_t n = net.size();
    double best = std::numeric_limits<double>::infinity();

    for (std::size_t a = 0; a < n; ++a) {
        const auto row = net.out(a);
        const std::size_t deg = row.size();
        const double tuples = std::pow(static_cast<double>(deg), static_cast<double>(d));
        if (tuples * static_cast<double>(n) * static_cast<double>(d * deg) > cap)
            throw ConfigError("star-pair enumeration cap exceeded");
        const auto count = static_cast<std::size_t>(tuples);

        // Conditional law of the center for every leaf tuple (indices into row).
        std::vector<std::vector<double>> laws(count, std::vector<double>(n));
        std::vector<std::size_t> digits(d);
        for (std::size_t t = 0; t < count; ++t) {
            std::size_t rest = t;
            for (std::size_t j = 0; j < d; ++j) {
                digits[j] = rest % deg;
                rest /= deg;
            }
            double total = 0.0;
            for (std::size_t b = 0; b < n; ++b) {
                double w = net.alpha(b);
                for (std::size_t j = 0; j < d && w > 0.0; ++j) w *= net.weight(b, row[digits[j]].node);
                laws[t][b] = w;
                total += w;
            }
            for (auto& w : laws[t]) w /= total;
        }

        std::size_t stride = 1;
        for (std::size_t j = 0; j < d; ++j, stride *= deg)
            for (std::size_t t = 0; t < count; ++t) {
                const std::size_t digit = (t / stride) % deg;
                for (std::size_t alt = digit + 1; alt < deg; ++alt) {
                    const std::size_t other = t + (alt - digit) * stride;
                    const double tv = tv_distance(laws[t], laws[other]);
                    best = std::min(best, 1.0 - 2.0 * static_cast<double>(d) * tv);
                }
            }
    }
    return std::isfinite(best) ? best : 1.0;
}

}  // namespace homsample
