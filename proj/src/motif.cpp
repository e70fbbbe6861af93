#include "homsample/network.hpp"

#include "homsample/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace homsample {

Motif::Motif(Matrix weights, std::string name) : af_(std::move(weights)), name_(std::move(name)) {
    if (af_.rows() != af_.cols() || af_.rows() == 0)
        throw ConfigError("motif weight matrix must be square and nonempty");
    k_ = static_cast<std::size_t>(af_.rows());
    for (Eigen::Index i = 0; i < af_.rows(); ++i)
        for (Eigen::Index j = 0; j < af_.cols(); ++j)
            if (!(af_(i, j) >= 0.0) || !std::isfinite(af_(i, j)))
                throw ConfigError("motif weights must be nonnegative and finite");

    simple_ = true;
    for (std::size_t i = 0; i < k_ && simple_; ++i) {
        if (weight(i, i) != 0.0) simple_ = false;
        for (std::size_t j = 0; j < k_; ++j) {
            const double w = weight(i, j);
            if (w != 0.0 && w != 1.0) simple_ = false;
            if (i < j && w + weight(j, i) > 1.0) simple_ = false;
        }
    }

    tree_ = true;
    parents_.assign(k_, 0);
    children_.assign(k_, {});
    for (std::size_t i = 0; i < k_ && tree_; ++i) {
        std::size_t incoming = 0;
        for (std::size_t j = 0; j < k_; ++j) {
            if (weight(j, i) <= 0.0) continue;
            ++incoming;
            if (j >= i) tree_ = false;
            parents_[i] = j;
        }
        if (i == 0 ? incoming != 0 : incoming != 1) tree_ = false;
    }
    if (tree_) {
        for (std::size_t i = 1; i < k_; ++i) children_[parents_[i]].push_back(i);
    } else {
        children_.assign(k_, {});
    }
}

MotifKind Motif::kind() const {
    if (tree_) return MotifKind::RootedTree;
    if (simple_) return MotifKind::Simple;
    return MotifKind::General;
}

Motif Motif::plus(const Motif& other) const {
    if (other.size() != k_) throw ConfigError("motifs must have the same node count");
    return Motif(af_ + other.af_);
}

namespace {

Matrix zeros(std::size_t k) {
    return Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
}

void set_edge(Matrix& m, std::size_t i, std::size_t j) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
}

std::string label(const char* family, std::size_t a) {
    return std::string(family) + "_" + std::to_string(a);
}

std::string label(const char* family, std::size_t a, std::size_t b) {
    return std::string(family) + "_" + std::to_string(a) + "_" + std::to_string(b);
}

}  // namespace

Motif singleton_motif() { return Motif(zeros(1), "F_0_0"); }

Motif self_loop_motif() {
    Matrix m = zeros(1);
    set_edge(m, 0, 0);
    return Motif(m, "H_0_0");
}

Motif path_motif(std::size_t k) {
    if (k == 0) throw ConfigError("path motif needs k >= 1");
    Matrix m = zeros(k);
    for (std::size_t i = 0; i + 1 < k; ++i) set_edge(m, i, i + 1);
    return Motif(m, label("P", k));
}

Motif cycle_motif(std::size_t k) {
    if (k < 3) throw ConfigError("cycle motif needs k >= 3");
    Matrix m = zeros(k);
    for (std::size_t i = 0; i + 1 < k; ++i) set_edge(m, i, i + 1);
    set_edge(m, k - 1, 0);
    return Motif(m, label("C", k));
}

Motif star_motif(std::size_t leaves) {
    Matrix m = zeros(leaves + 1);
    for (std::size_t j = 1; j <= leaves; ++j) set_edge(m, 0, j);
    return Motif(m, label("S", leaves));
}

Motif wedge_motif() {
    Matrix m = zeros(3);
    set_edge(m, 0, 1);
    set_edge(m, 0, 2);
    return Motif(m, "W_3");
}

Motif complete_motif(std::size_t q) {
    if (q == 0) throw ConfigError("complete motif needs q >= 1");
    Matrix m = zeros(q);
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = i + 1; j < q; ++j) set_edge(m, i, j);
    return Motif(m, label("K", q));
}

Motif two_arm_motif(std::size_t arm1, std::size_t arm2) {
    const std::size_t k = arm1 + arm2 + 1;
    Matrix m = zeros(k);
    for (std::size_t i = 0; i < arm1; ++i) set_edge(m, i, i + 1);
    std::size_t prev = 0;
    for (std::size_t i = arm1 + 1; i < k; ++i) {
        set_edge(m, prev, i);
        prev = i;
    }
    return Motif(m, label("F", arm1, arm2));
}

Motif closing_edge_motif(std::size_t arm1, std::size_t arm2) {
    const std::size_t k = arm1 + arm2 + 1;
    Matrix m = zeros(k);
    const std::size_t end2 = arm2 == 0 ? 0 : arm1 + arm2;
    set_edge(m, arm1, end2);
    return Motif(m, label("H", arm1, arm2));
}

Motif edge_on(std::size_t k, std::size_t i, std::size_t j) {
    if (i >= k || j >= k) throw ConfigError("edge endpoint outside motif");
    Matrix m = zeros(k);
    set_edge(m, i, j);
    return Motif(m);
}

Motif empty_motif(std::size_t k) { return Motif(zeros(k)); }

Motif build_motif(const std::string& description) {
    std::string family;
    std::vector<std::size_t> params;
    std::size_t pos = 0;
    while (pos < description.size() && std::isalpha(static_cast<unsigned char>(description[pos])))
        family += description[pos++];
    while (pos < description.size()) {
        const char c = description[pos];
        if (c == '_' || c == ',' || c == '{' || c == '}' || c == ' ') {
            ++pos;
            continue;
        }
        std::size_t value = 0;
        auto [end, ec] = std::from_chars(description.data() + pos,
                                         description.data() + description.size(), value);
        if (ec != std::errc()) throw ConfigError("malformed motif description: " + description);
        params.push_back(value);
        pos = static_cast<std::size_t>(end - description.data());
    }

    auto want = [&](std::size_t count) {
        if (params.size() != count) throw ConfigError("malformed motif description: " + description);
    };
    if (family == "P") { want(1); return path_motif(params[0]); }
    if (family == "C") { want(1); return cycle_motif(params[0]); }
    if (family == "S") { want(1); return star_motif(params[0]); }
    if (family == "K") { want(1); return complete_motif(params[0]); }
    if (family == "W") {
        want(1);
        if (params[0] != 3) throw ConfigError("only W_3 is defined");
        return wedge_motif();
    }
    if (family == "F") { want(2); return two_arm_motif(params[0], params[1]); }
    if (family == "H") {
        want(2);
        if (params[0] == 0 && params[1] == 0) return self_loop_motif();
        return closing_edge_motif(params[0], params[1]);
    }
    throw ConfigError("unknown motif family: " + description);
}

std::size_t motif_max_degree(const Motif& motif) {
    std::size_t best = 0;
    for (std::size_t i = 0; i < motif.size(); ++i) {
        std::size_t d = 0;
        for (std::size_t j = 0; j < motif.size(); ++j)
            if (j != i && motif.weight(i, j) + motif.weight(j, i) > 0.0) ++d;
        best = std::max(best, d);
    }
    return best;
}

}  // namespace homsample
