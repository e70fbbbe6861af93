#include "homsample/pipelines.hpp"

#include "homsample/errors.hpp"
#include "homsample/exact.hpp"
#include "homsample/generators.hpp"
#include "homsample/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <thread>

namespace homsample {

namespace {

// Runs task(i) for i in [0, count) on up to `threads` workers. Results must be
// written to per-index slots, which keeps the output independent of scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& task) {
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) task(i);
        });
    for (auto& t : pool) t.join();
}

std::size_t default_steps(std::size_t n) {
    const double v = 2.0 * static_cast<double>(n) * std::log(static_cast<double>(n));
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(v)));
}

Vector flatten(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

std::vector<std::size_t> nearest_centers(const std::vector<Vector>& points, const std::vector<Vector>& centers,
                                         double& inertia) {
    std::vector<std::size_t> labels(points.size());
    inertia = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double d = (points[i] - centers[c]).squaredNorm();
            if (d < best) {
                best = d;
                labels[i] = c;
            }
        }
        inertia += best;
    }
    return labels;
}

Matrix row_markov(const Matrix& counts) {
    Matrix a = counts;
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        const double s = a.row(i).sum();
        if (s > 0.0) a.row(i) /= s;
    }
    return a;
}

}  // namespace

KMeansResult kmeans(const std::vector<Vector>& points, std::size_t k, std::uint64_t seed, std::size_t restarts,
                    std::size_t max_iterations) {
    if (k == 0 || k > points.size()) throw ConfigError("k-means needs 1 <= k <= number of points");
    KMeansResult best;
    best.inertia = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < restarts; ++r) {
        Rng rng(derive_seed(seed, r));
        std::vector<Vector> centers{points[rng.below(points.size())]};
        std::vector<double> d2(points.size());
        while (centers.size() < k) {
            double total = 0.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                d2[i] = std::numeric_limits<double>::infinity();
                for (const auto& c : centers) d2[i] = std::min(d2[i], (points[i] - c).squaredNorm());
                total += d2[i];
            }
            std::size_t pick = 0;
            if (total > 0.0) {
                double u = rng.uniform() * total;
                while (pick + 1 < points.size() && u >= d2[pick]) u -= d2[pick++];
            } else {
                pick = rng.below(points.size());
            }
            centers.push_back(points[pick]);
        }
        double inertia = 0.0;
        std::vector<std::size_t> labels = nearest_centers(points, centers, inertia);
        for (std::size_t it = 0; it < max_iterations; ++it) {
            std::vector<Vector> sums(k, Vector::Zero(points[0].size()));
            std::vector<std::size_t> sizes(k, 0);
            for (std::size_t i = 0; i < points.size(); ++i) {
                sums[labels[i]] += points[i];
                ++sizes[labels[i]];
            }
            for (std::size_t c = 0; c < k; ++c)
                if (sizes[c] > 0) centers[c] = sums[c] / static_cast<double>(sizes[c]);
            auto next = nearest_centers(points, centers, inertia);
            if (next == labels) break;
            labels = std::move(next);
        }
        if (inertia < best.inertia) best = {labels, centers, inertia};
    }
    return best;
}

double label_agreement(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) throw ConfigError("label vectors differ in length");
    if (a.empty()) return 1.0;
    std::vector<std::size_t> names_a = a, names_b = b;
    std::sort(names_a.begin(), names_a.end());
    names_a.erase(std::unique(names_a.begin(), names_a.end()), names_a.end());
    std::sort(names_b.begin(), names_b.end());
    names_b.erase(std::unique(names_b.begin(), names_b.end()), names_b.end());
    if (names_b.size() > 8) throw ConfigError("label agreement supports at most 8 labels");
    // Map each label of `a` to a distinct label of `b` (or to none).
    while (names_b.size() < names_a.size()) names_b.push_back(std::numeric_limits<std::size_t>::max() - names_b.size());
    std::size_t best = 0;
    std::vector<std::size_t> perm(names_b.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::map<std::size_t, std::size_t> match;
        for (std::size_t i = 0; i < names_a.size(); ++i) match[names_a[i]] = names_b[perm[i]];
        std::size_t hits = 0;
        for (std::size_t i = 0; i < a.size(); ++i) hits += match[a[i]] == b[i];
        best = std::max(best, hits);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<double>(best) / static_cast<double>(a.size());
}

Matrix frobenius_distances(const std::vector<Matrix>& matrices) {
    const auto m = static_cast<Eigen::Index>(matrices.size());
    Matrix d = Matrix::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const auto& x = matrices[static_cast<std::size_t>(i)];
            const auto& y = matrices[static_cast<std::size_t>(j)];
            if (x.rows() != y.rows() || x.cols() != y.cols()) throw ConfigError("matrices differ in shape");
            d(i, j) = d(j, i) = (x - y).norm();
        }
    return d;
}

MaccPipelineResult macc_pipeline(const std::vector<Network>& nets, const Motif& chain_motif,
                                 const MaccPipelineConfig& config) {
    if (nets.size() < 2) throw ConfigError("MACC pipeline needs at least two networks");
    MaccPipelineResult result;
    result.maccs.resize(nets.size());
    result.runs.resize(nets.size());
    result.errors.resize(nets.size());
    parallel_for(nets.size(), config.threads, [&](std::size_t i) {
        try {
            ChainConfig chain;
            chain.kind = config.kind;
            chain.seed = derive_seed(config.seed, i);
            chain.burn_in = config.burn_in;
            chain.steps = config.steps.value_or(default_steps(nets[i].size()));
            MaccEstimator macc(chain_motif, nets[i]);
            Observer* observers[] = {&macc};
            result.runs[i] = run_chain(chain, chain_motif, nets[i], observers);
            result.maccs[i] = macc.value();
        } catch (const std::exception& e) {
            result.errors[i] = e.what();
        }
    });
    std::vector<Matrix> good;
    for (std::size_t i = 0; i < nets.size(); ++i)
        if (result.errors[i].empty()) {
            result.included.push_back(i);
            good.push_back(result.maccs[i]);
        }
    if (good.empty()) throw NumericalError("every chain in the MACC pipeline failed");
    result.distances = frobenius_distances(good);
    result.dendrogram = single_linkage(result.distances);
    std::vector<Vector> points;
    for (const auto& m : good) points.push_back(flatten(m));
    result.labels = kmeans(points, std::min(config.clusters, points.size()), config.seed).labels;
    return result;
}

ProfilePipelineResult profile_pipeline(const std::vector<Network>& nets, const std::vector<MotifPair>& pairs,
                                       const ProfilePipelineConfig& config) {
    for (const auto& p : pairs)
        if (p.h.size() != p.f.size()) throw ConfigError("motif pair (H, F) must have the same node count");
    ProfilePipelineResult result;
    result.profiles.assign(pairs.size(), std::vector<ProfileGrid>(nets.size()));
    result.exact.assign(pairs.size(), std::vector<bool>(nets.size(), false));
    const std::size_t tasks = pairs.size() * nets.size();
    parallel_for(tasks, config.threads, [&](std::size_t task) {
        const std::size_t p = task / nets.size(), i = task % nets.size();
        const auto& [h, f] = pairs[p];
        if (f.size() == 1) {
            result.profiles[p][i] = {config.grid, exact_chd_profile(h, f, nets[i], config.grid)};
            result.exact[p][i] = true;
            return;
        }
        ChainConfig chain;
        chain.kind = config.kind;
        chain.seed = derive_seed(config.seed, task);
        chain.burn_in = config.burn_in;
        chain.steps = config.steps.value_or(default_steps(nets[i].size()));
        ProfileEstimator profile(h, nets[i], config.grid);
        Observer* observers[] = {&profile};
        run_chain(chain, f, nets[i], observers);
        result.profiles[p][i] = profile.value();
    });
    for (const auto& row : result.profiles) {
        const auto m = static_cast<Eigen::Index>(row.size());
        Matrix d = Matrix::Zero(m, m);
        for (Eigen::Index a = 0; a < m; ++a)
            for (Eigen::Index b = a + 1; b < m; ++b)
                d(a, b) = d(b, a) = profile_l1_distance(row[static_cast<std::size_t>(a)], row[static_cast<std::size_t>(b)]);
        result.distances.push_back(d);
    }
    return result;
}

std::vector<std::size_t> mean_profile_attribution(const std::vector<ProfileGrid>& references,
                                                  const std::vector<std::size_t>& reference_labels,
                                                  const std::vector<ProfileGrid>& queries) {
    if (references.size() != reference_labels.size() || references.empty())
        throw ConfigError("each reference profile needs exactly one label");
    std::map<std::size_t, ProfileGrid> means;
    std::map<std::size_t, std::size_t> counts;
    for (std::size_t r = 0; r < references.size(); ++r) {
        auto [it, fresh] = means.try_emplace(reference_labels[r], references[r]);
        if (!fresh)
            for (std::size_t g = 0; g < it->second.values.size(); ++g) it->second.values[g] += references[r].values[g];
        ++counts[reference_labels[r]];
    }
    for (auto& [label, mean] : means)
        for (double& v : mean.values) v /= static_cast<double>(counts[label]);
    std::vector<std::size_t> predicted;
    for (const auto& q : queries) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t label = means.begin()->first;
        for (const auto& [l, mean] : means) {
            const double d = profile_l1_distance(q, mean);
            if (d < best) {
                best = d;
                label = l;
            }
        }
        predicted.push_back(label);
    }
    return predicted;
}

AttributionMethod parse_attribution_method(const std::string& text) {
    if (text == "chd00") return AttributionMethod::Chd00;
    if (text == "kl") return AttributionMethod::Kl;
    if (text == "frobenius") return AttributionMethod::Frobenius;
    throw ConfigError("unknown attribution method '" + text + "' (chd00, kl, frobenius)");
}

const char* to_string(AttributionMethod method) {
    switch (method) {
        case AttributionMethod::Chd00: return "chd00";
        case AttributionMethod::Kl: return "kl";
        case AttributionMethod::Frobenius: return "frobenius";
    }
    return "?";
}

double markov_kl(const Matrix& p, const Matrix& q) {
    if (p.rows() != q.rows() || p.cols() != q.cols()) throw ConfigError("KL: matrices differ in shape");
    const double uniform = 1.0 / static_cast<double>(p.cols());
    double total = 0.0;
    std::size_t rows = 0;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
        const bool p_zero = p.row(i).sum() <= 0.0, q_zero = q.row(i).sum() <= 0.0;
        if (p_zero && q_zero) continue;
        double kl = 0.0;
        for (Eigen::Index j = 0; j < p.cols(); ++j) {
            const double a = p_zero ? uniform : p(i, j);
            const double b = q_zero ? uniform : q(i, j);
            if (a <= 0.0) continue;
            if (b <= 0.0) {
                kl = std::numeric_limits<double>::infinity();
                break;
            }
            kl += a * std::log(a / b);
        }
        total += kl;
        ++rows;
    }
    return rows ? total / static_cast<double>(rows) : 0.0;
}

double diagonal_profile_l1(const Network& a, const Network& b) {
    // Profile t -> sum of alpha(x) over x with A(x,x) >= t, integrated over [0,1].
    std::vector<std::pair<double, double>> atoms;
    for (std::size_t x = 0; x < a.size(); ++x) atoms.emplace_back(std::min(a.weight(x, x), 1.0), a.alpha(x));
    for (std::size_t x = 0; x < b.size(); ++x) atoms.emplace_back(std::min(b.weight(x, x), 1.0), -b.alpha(x));
    std::sort(atoms.begin(), atoms.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
    double total = 0.0, difference = 0.0, level = 1.0;
    for (const auto& [cut, w] : atoms) {
        total += (level - cut) * std::abs(difference);
        level = cut;
        difference += w;
    }
    return total + level * std::abs(difference);
}

Matrix attribution_distances(const std::vector<Matrix>& row_markov_matrices, AttributionMethod method) {
    const auto m = static_cast<Eigen::Index>(row_markov_matrices.size());
    Matrix d = Matrix::Zero(m, m);
    std::vector<Network> nets;
    if (method == AttributionMethod::Chd00)
        for (const auto& a : row_markov_matrices) nets.emplace_back(a);
    for (Eigen::Index i = 0; i < m; ++i)
        for (Eigen::Index j = 0; j < m; ++j) {
            if (i == j) continue;
            const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
            switch (method) {
                case AttributionMethod::Chd00: d(i, j) = diagonal_profile_l1(nets[si], nets[sj]); break;
                case AttributionMethod::Kl: d(i, j) = markov_kl(row_markov_matrices[si], row_markov_matrices[sj]); break;
                case AttributionMethod::Frobenius:
                    d(i, j) = (row_markov_matrices[si] - row_markov_matrices[sj]).norm();
                    break;
            }
        }
    return d;
}

std::vector<std::size_t> nearest_reference(const Matrix& distances, const std::vector<std::size_t>& references,
                                           const std::vector<std::size_t>& reference_labels,
                                           const std::vector<std::size_t>& queries) {
    if (references.empty() || references.size() != reference_labels.size())
        throw ConfigError("each reference needs exactly one label");
    std::vector<std::size_t> predicted;
    for (std::size_t q : queries) {
        std::size_t best = 0;
        for (std::size_t r = 1; r < references.size(); ++r)
            if (distances(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(references[r])) <
                distances(static_cast<Eigen::Index>(q), static_cast<Eigen::Index>(references[best])))
                best = r;
        predicted.push_back(reference_labels[best]);
    }
    return predicted;
}

AttributionReport attribution_experiment(const std::vector<Matrix>& counts, const std::vector<std::string>& labels,
                                         const AttributionConfig& config) {
    if (counts.size() != labels.size()) throw ConfigError("each matrix needs exactly one label");
    if (config.known_per_class == 0 || config.repetitions == 0)
        throw ConfigError("attribution needs known_per_class >= 1 and repetitions >= 1");
    AttributionReport report;
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto it = std::find(report.classes.begin(), report.classes.end(), labels[i]);
        if (it == report.classes.end()) {
            report.classes.push_back(labels[i]);
            members.emplace_back();
            it = report.classes.end() - 1;
        }
        members[static_cast<std::size_t>(it - report.classes.begin())].push_back(i);
    }
    for (std::size_t c = 0; c < members.size(); ++c)
        if (members[c].size() < config.known_per_class + 1)
            throw ConfigError("class '" + report.classes[c] + "' has too few items for the requested split");

    std::vector<Matrix> normalized;
    for (const auto& m : counts) normalized.push_back(row_markov(m));
    const Matrix distances = attribution_distances(normalized, config.method);

    Rng rng(config.seed);
    std::vector<std::size_t> correct(members.size(), 0);
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
        std::vector<std::size_t> references, reference_labels, queries;
        for (std::size_t c = 0; c < members.size(); ++c) {
            std::vector<std::size_t> pool = members[c];
            // Partial Fisher-Yates: the first known+1 entries form the draw.
            for (std::size_t s = 0; s <= config.known_per_class; ++s)
                std::swap(pool[s], pool[s + rng.below(pool.size() - s)]);
            for (std::size_t s = 0; s < config.known_per_class; ++s) {
                references.push_back(pool[s]);
                reference_labels.push_back(c);
            }
            queries.push_back(pool[config.known_per_class]);
        }
        const auto predicted = nearest_reference(distances, references, reference_labels, queries);
        for (std::size_t c = 0; c < members.size(); ++c) correct[c] += predicted[c] == c;
    }
    double sum = 0.0;
    for (std::size_t c = 0; c < members.size(); ++c) {
        report.class_accuracy.push_back(static_cast<double>(correct[c]) / static_cast<double>(config.repetitions));
        sum += report.class_accuracy.back();
    }
    report.overall = sum / static_cast<double>(members.size());
    report.repetitions = config.repetitions;
    return report;
}

std::vector<std::string> attribute(const std::vector<Matrix>& reference_counts,
                                   const std::vector<std::string>& reference_labels,
                                   const std::vector<Matrix>& query_counts, AttributionMethod method) {
    if (reference_counts.size() != reference_labels.size() || reference_counts.empty())
        throw ConfigError("each reference matrix needs exactly one label");
    std::vector<Matrix> all;
    for (const auto& m : reference_counts) all.push_back(row_markov(m));
    for (const auto& m : query_counts) all.push_back(row_markov(m));
    const Matrix distances = attribution_distances(all, method);
    std::vector<std::size_t> references(reference_counts.size()), labels(reference_counts.size()), queries;
    std::iota(references.begin(), references.end(), 0);
    std::iota(labels.begin(), labels.end(), 0);
    for (std::size_t q = 0; q < query_counts.size(); ++q) queries.push_back(reference_counts.size() + q);
    std::vector<std::string> out;
    for (std::size_t r : nearest_reference(distances, references, labels, queries)) out.push_back(reference_labels[r]);
    return out;
}

}  // namespace homsample
