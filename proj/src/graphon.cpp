#include "homsample/graphon.hpp"

#include "homsample/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

namespace homsample {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void require_valid(const StepKernel& u) {
    if (u.values.rows() != u.values.cols() || u.values.rows() != u.measures.size())
        throw ConfigError("step kernel: values must be m x m with m measures");
    if (u.blocks() == 0) throw ConfigError("step kernel needs at least one block");
    if ((u.measures.array() <= 0.0).any()) throw ConfigError("step kernel measures must be positive");
    if (std::abs(u.measures.sum() - 1.0) > 1e-9) throw ConfigError("step kernel measures must sum to 1");
}

void require_graphon(const StepKernel& u) {
    if ((u.values.array() < 0.0).any() || (u.values.array() > 1.0).any())
        throw ConfigError("graphon-valued kernel required: values must lie in [0,1]");
}

struct Refinement {
    Vector measures;
    std::vector<std::size_t> left, right;  // source block of each refined interval
};

Refinement refine(const Vector& mu, const Vector& nu) {
    Refinement r;
    std::vector<double> pieces;
    std::size_t a = 0, b = 0;
    double ca = mu[0], cb = nu[0], pos = 0.0;
    const std::size_t m = static_cast<std::size_t>(mu.size()), p = static_cast<std::size_t>(nu.size());
    while (a < m && b < p) {
        const double next = std::min(ca, cb);
        if (next - pos > 1e-15) {
            pieces.push_back(next - pos);
            r.left.push_back(a);
            r.right.push_back(b);
        }
        pos = next;
        // Advance whichever boundary was reached; both on a tie.
        const bool step_a = ca <= next + 1e-15, step_b = cb <= next + 1e-15;
        if (step_a && ++a < m) ca += mu[idx(a)];
        if (step_b && ++b < p) cb += nu[idx(b)];
    }
    r.measures = Eigen::Map<Vector>(pieces.data(), static_cast<Index>(pieces.size()));
    r.measures /= r.measures.sum();
    return r;
}

std::vector<std::vector<std::size_t>> relabelings(const StepKernel& u, const StepKernel& w, bool labeled) {
    if (labeled) return {{}};
    if (u.blocks() != w.blocks()) throw ConfigError("unlabeled distances need equal block counts");
    if (u.blocks() > kMaxPermutationBlocks) throw ConfigError("unlabeled distances are limited to 9 blocks");
    std::vector<std::size_t> phi(w.blocks());
    std::iota(phi.begin(), phi.end(), 0);
    std::vector<std::vector<std::size_t>> all;
    do all.push_back(phi);
    while (std::next_permutation(phi.begin(), phi.end()));
    return all;
}

template <typename Distance>
double minimize_over_relabelings(const StepKernel& u, const StepKernel& w, bool labeled, Distance distance) {
    require_valid(u);
    require_valid(w);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& phi : relabelings(u, w, labeled)) best = std::min(best, distance(phi.empty() ? w : permuted(w, phi)));
    return best;
}

StepKernel threshold(const StepKernel& u, double level) {
    StepKernel out = u;
    out.values = (u.values.array() >= level).cast<double>().matrix();
    return out;
}

// Calls visit(blocks, weight) for each tuple of blocks with weight
// prod U^{A_F} * prod measures, skipping zeros.
template <typename Visit>
void enumerate_tuples(const Motif& f, const StepKernel& u, Visit&& visit) {
    const std::size_t k = f.size(), m = u.blocks();
    if (std::pow(static_cast<double>(m), static_cast<double>(k)) > 1e8)
        throw ConfigError("step-kernel enumeration exceeds 1e8 tuples");
    std::vector<std::size_t> x(k, 0);
    while (true) {
        double w = 1.0;
        for (std::size_t i = 0; i < k && w > 0.0; ++i) {
            w *= u.measures[idx(x[i])];
            for (std::size_t j = 0; j < k; ++j) {
                const double e = f.weight(i, j);
                if (e != 0.0) w *= std::pow(u.values(idx(x[i]), idx(x[j])), e);
            }
        }
        if (w > 0.0) visit(x, w);
        std::size_t pos = 0;
        while (pos < k && ++x[pos] == m) x[pos++] = 0;
        if (pos == k) break;
    }
}

double min_edge_level(const Motif& h, const StepKernel& u, const std::vector<std::size_t>& x) {
    double level = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j) {
            const double e = h.weight(i, j);
            if (e != 0.0) level = std::min(level, std::pow(u.values(idx(x[i]), idx(x[j])), e));
        }
    return level;
}

// (cutoff, probability) pairs describing t -> P(level >= t) on [0,1].
std::vector<std::pair<double, double>> profile_atoms(const Motif& h, const Motif& f, const StepKernel& u) {
    std::vector<std::pair<double, double>> atoms;
    double total = 0.0;
    enumerate_tuples(f, u, [&](const std::vector<std::size_t>& x, double w) {
        atoms.emplace_back(std::min(min_edge_level(h, u, x), 1.0), w);
        total += w;
    });
    if (!(total > 0.0)) throw NumericalError("t(F,U) = 0");
    for (auto& atom : atoms) atom.second /= total;
    return atoms;
}

void require_simple(const Motif& motif, const char* role) {
    if (!motif.is_simple())
        throw ConfigError(std::string("stability hypothesis violated: ") + role + " must be a simple motif");
}

}  // namespace

StepKernel to_step_kernel(const Network& net) { return StepKernel{net.dense(), net.alpha()}; }

StepKernel random_step_kernel(std::size_t blocks, Rng& rng, double zero_rate) {
    if (blocks == 0) throw ConfigError("step kernel needs at least one block");
    const Index m = idx(blocks);
    StepKernel out{Matrix(m, m), Vector(m)};
    for (Index a = 0; a < m; ++a) out.measures[a] = 0.05 + rng.uniform();
    out.measures /= out.measures.sum();
    for (Index a = 0; a < m; ++a)
        for (Index b = a; b < m; ++b) {
            const double v = rng.bernoulli(zero_rate) ? 0.0 : rng.uniform();
            out.values(a, b) = out.values(b, a) = v;
        }
    return out;
}

StepKernel permuted(const StepKernel& w, const std::vector<std::size_t>& phi) {
    const std::size_t m = w.blocks();
    if (phi.size() != m) throw ConfigError("relabeling has the wrong length");
    StepKernel out{Matrix(idx(m), idx(m)), Vector(idx(m))};
    for (std::size_t a = 0; a < m; ++a) {
        out.measures[idx(a)] = w.measures[idx(phi[a])];
        for (std::size_t b = 0; b < m; ++b) out.values(idx(a), idx(b)) = w.values(idx(phi[a]), idx(phi[b]));
    }
    return out;
}

StepKernel difference(const StepKernel& u, const StepKernel& w) {
    const Refinement r = refine(u.measures, w.measures);
    const Index m = r.measures.size();
    StepKernel out{Matrix(m, m), r.measures};
    for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b)
            out.values(a, b) = u.values(idx(r.left[static_cast<std::size_t>(a)]), idx(r.left[static_cast<std::size_t>(b)])) -
                               w.values(idx(r.right[static_cast<std::size_t>(a)]), idx(r.right[static_cast<std::size_t>(b)]));
    return out;
}

double cut_norm(const StepKernel& u) {
    const std::size_t m = u.blocks();
    if (m > kMaxCutBlocks) throw ConfigError("exact cut norm is limited to 20 blocks");
    // Row subsets S in Gray-code order; column sums s_c = sum_{r in S} U(r,c) mu_r mu_c.
    // For fixed S the best column set takes all positive (or all negative) s_c.
    Matrix weighted = u.measures.asDiagonal() * u.values * u.measures.asDiagonal();
    Vector s = Vector::Zero(idx(m));
    std::vector<bool> in(m, false);
    double best = 0.0;
    const std::uint64_t total = std::uint64_t{1} << m;
    for (std::uint64_t g = 1; g < total; ++g) {
        const auto r = static_cast<std::size_t>(std::countr_zero(g));
        in[r] = !in[r];
        if (in[r])
            s += weighted.row(idx(r)).transpose();
        else
            s -= weighted.row(idx(r)).transpose();
        double pos = 0.0, neg = 0.0;
        for (Index c = 0; c < s.size(); ++c) (s[c] > 0.0 ? pos : neg) += s[c];
        best = std::max({best, pos, -neg});
    }
    return best;
}

double one_norm(const StepKernel& u) {
    return (u.measures.asDiagonal() * u.values.cwiseAbs() * u.measures.asDiagonal()).sum();
}

double p_norm_dist(const StepKernel& u, const StepKernel& w, double p, bool labeled) {
    if (!(p >= 1.0)) throw ConfigError("p-distance needs p >= 1");
    return minimize_over_relabelings(u, w, labeled, [&](const StepKernel& v) {
        const StepKernel d = difference(u, v);
        if (std::isinf(p)) return d.values.cwiseAbs().maxCoeff();
        const Matrix powered = d.values.cwiseAbs().array().pow(p).matrix();
        return std::pow((d.measures.asDiagonal() * powered * d.measures.asDiagonal()).sum(), 1.0 / p);
    });
}

double cut_dist(const StepKernel& u, const StepKernel& w, bool labeled) {
    return minimize_over_relabelings(u, w, labeled, [&](const StepKernel& v) { return cut_norm(difference(u, v)); });
}

double filtration_dist(const StepKernel& u, const StepKernel& w, bool labeled) {
    require_graphon(u);
    require_graphon(w);
    std::vector<double> levels(u.values.data(), u.values.data() + u.values.size());
    levels.insert(levels.end(), w.values.data(), w.values.data() + w.values.size());
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    return minimize_over_relabelings(u, w, labeled, [&](const StepKernel& v) {
        // On (v_{i-1}, v_i] the level sets are those of threshold v_i.
        double total = 0.0, previous = 0.0;
        for (double level : levels) {
            if (level <= 0.0) continue;
            total += (level - previous) * cut_norm(difference(threshold(u, level), threshold(v, level)));
            previous = level;
        }
        return total;
    });
}

double kernel_hom_density(const Motif& f, const StepKernel& u) {
    require_valid(u);
    double t = 0.0;
    enumerate_tuples(f, u, [&](const std::vector<std::size_t>&, double w) { t += w; });
    return t;
}

double kernel_conditional_density(const Motif& h, const Motif& f, const StepKernel& u) {
    const double base = kernel_hom_density(f, u);
    return base > 0.0 ? kernel_hom_density(h.plus(f), u) / base : 0.0;
}

StepKernel kernel_motif_transform(const Motif& f, const StepKernel& u) {
    require_valid(u);
    const std::size_t k = f.size();
    StepKernel out{Matrix::Zero(u.values.rows(), u.values.cols()), u.measures};
    double total = 0.0;
    enumerate_tuples(f, u, [&](const std::vector<std::size_t>& x, double w) {
        out.values(idx(x[0]), idx(x[k - 1])) += w;
        total += w;
    });
    if (!(total > 0.0)) throw NumericalError("t(F,U) = 0");
    for (Index a = 0; a < out.values.rows(); ++a)
        for (Index b = 0; b < out.values.cols(); ++b)
            out.values(a, b) /= total * u.measures[a] * u.measures[b];
    return out;
}

double kernel_profile_l1(const Motif& h, const Motif& f, const StepKernel& u, const StepKernel& w) {
    require_valid(u);
    require_valid(w);
    auto pu = profile_atoms(h, f, u), pw = profile_atoms(h, f, w);
    // Both profiles are step functions of t; integrate |difference| between
    // consecutive cutoffs, walking the atoms from the top level down.
    std::vector<double> cuts{0.0, 1.0};
    for (const auto& [c, p] : pu) cuts.push_back(c);
    for (const auto& [c, p] : pw) cuts.push_back(c);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto by_cut = [](const auto& a, const auto& b) { return a.first > b.first; };
    std::sort(pu.begin(), pu.end(), by_cut);
    std::sort(pw.begin(), pw.end(), by_cut);
    std::size_t iu = 0, iw = 0;
    double fu = 0.0, fw = 0.0, total = 0.0;
    for (std::size_t c = cuts.size() - 1; c > 0; --c) {
        const double hi = cuts[c], lo = cuts[c - 1];
        if (hi <= 0.0) break;
        // On (lo, hi] the profile counts atoms with cutoff >= hi.
        while (iu < pu.size() && pu[iu].first >= hi) fu += pu[iu++].second;
        while (iw < pw.size() && pw[iw].first >= hi) fw += pw[iw++].second;
        total += (hi - std::max(lo, 0.0)) * std::abs(fu - fw);
    }
    return total;
}

StabilityKind parse_stability_kind(const std::string& text) {
    if (text == "counting") return StabilityKind::Counting;
    if (text == "conditional") return StabilityKind::Conditional;
    if (text == "transform") return StabilityKind::Transform;
    if (text == "profile") return StabilityKind::Profile;
    throw ConfigError("unknown stability kind '" + text + "'");
}

const char* to_string(StabilityKind kind) {
    switch (kind) {
        case StabilityKind::Counting: return "counting";
        case StabilityKind::Conditional: return "conditional";
        case StabilityKind::Transform: return "transform";
        case StabilityKind::Profile: return "profile";
    }
    return "?";
}

StabilityReport verify_stability(StabilityKind kind, const StepKernel& u, const StepKernel& w, const Motif& h,
                                 const Motif& f) {
    require_valid(u);
    require_valid(w);
    require_graphon(u);
    require_graphon(w);
    const bool same_blocks = u.blocks() == w.blocks() && u.blocks() <= kMaxPermutationBlocks;
    const double edges_f = f.total_weight();
    StabilityReport report{kind, 0.0, 0.0, false};

    switch (kind) {
        case StabilityKind::Counting: {
            require_simple(f, "F");
            report.lhs = std::abs(kernel_hom_density(f, u) - kernel_hom_density(f, w));
            report.rhs = edges_f * cut_dist(u, w, !same_blocks);
            break;
        }
        case StabilityKind::Conditional: {
            require_simple(h.plus(f), "H+F");
            const double tu = kernel_hom_density(f, u), tw = kernel_hom_density(f, w);
            if (!(std::max(tu, tw) > 0.0)) throw NumericalError("t(F,U) = t(F,W) = 0");
            report.lhs = std::abs(kernel_conditional_density(h, f, u) - kernel_conditional_density(h, f, w));
            report.rhs = 2.0 * h.total_weight() * cut_dist(u, w, !same_blocks) / std::max(tu, tw);
            break;
        }
        case StabilityKind::Transform: {
            require_simple(f, "F");
            const double tu = kernel_hom_density(f, u), tw = kernel_hom_density(f, w);
            report.lhs = cut_dist(kernel_motif_transform(f, u), kernel_motif_transform(f, w), true);
            report.rhs = (1.0 + 1.0 / std::max(tu, tw)) * edges_f * cut_dist(u, w, true);
            break;
        }
        case StabilityKind::Profile: {
            require_simple(h, "H");
            require_simple(f, "F");
            require_simple(h.plus(f), "H+F");
            const double tu = kernel_hom_density(f, u), tw = kernel_hom_density(f, w);
            if (!(std::max(tu, tw) > 0.0)) throw NumericalError("t(F,U) = t(F,W) = 0");
            report.lhs = kernel_profile_l1(h, f, u, w);
            // The same relabeling is used for both distances on the right.
            report.rhs = minimize_over_relabelings(u, w, !same_blocks, [&](const StepKernel& v) {
                const StepKernel d = difference(u, v);
                return 2.0 * edges_f * cut_norm(d) + h.total_weight() * one_norm(d);
            }) / std::max(tu, tw);
            break;
        }
    }
    report.holds = report.lhs <= report.rhs + 1e-12;
    return report;
}

}  // namespace homsample
