#include "homsample/clustering.hpp"

#include "homsample/errors.hpp"
#include "homsample/io.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace homsample {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t a) {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

Matrix symmetrized(const Network& net) {
    Matrix a = net.dense();
    return a.cwiseMax(a.transpose());
}

}  // namespace

Matrix dissimilarity(const Network& net) {
    const Matrix a = symmetrized(net);
    const double top = a.maxCoeff();
    const Eigen::Index n = a.rows();
    Matrix d(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            d(i, j) = i == j ? 0.0 : (a(i, j) > 0.0 ? top - a(i, j) : kInfinity);
    return d;
}

Matrix apsp(const Matrix& d) {
    if (d.rows() != d.cols()) throw ConfigError("distance matrix must be square");
    Matrix m = d;
    const Eigen::Index n = m.rows();
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ik = m(i, k);
            if (ik == kInfinity) continue;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double via = ik + m(k, j);
                if (via < m(i, j)) m(i, j) = via;
            }
        }
    return m;
}

Dendrogram single_linkage(const Matrix& metric) {
    if (metric.rows() != metric.cols()) throw ConfigError("metric must be square");
    const auto n = static_cast<std::size_t>(metric.rows());
    struct Pair {
        double d;
        std::size_t a, b;
    };
    std::vector<Pair> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            const double d = std::min(metric(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)),
                                      metric(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)));
            if (d < kInfinity) pairs.push_back({d, a, b});
        }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) { return x.d < y.d; });

    Dendrogram result;
    result.leaves = n;
    DisjointSets sets(n);
    std::vector<std::size_t> cluster_of(n);  // current cluster id keyed by set representative
    std::iota(cluster_of.begin(), cluster_of.end(), 0);
    std::vector<std::size_t> smallest(n);
    std::iota(smallest.begin(), smallest.end(), 0);

    auto join = [&](std::size_t ra, std::size_t rb, double height) {
        std::size_t ca = cluster_of[ra], cb = cluster_of[rb];
        if (smallest[rb] < smallest[ra]) std::swap(ca, cb);
        const std::size_t low = std::min(smallest[ra], smallest[rb]);
        sets.unite(ra, rb);
        const std::size_t root = sets.find(ra);
        cluster_of[root] = n + result.merges.size();
        smallest[root] = low;
        result.merges.push_back({height, ca, cb});
    };

    for (std::size_t s = 0; s < pairs.size();) {
        std::size_t e = s;
        while (e < pairs.size() && pairs[e].d == pairs[s].d) ++e;
        // Ties at one height: join in order of the smaller cluster's least leaf.
        std::vector<std::pair<std::size_t, std::size_t>> links;
        for (std::size_t p = s; p < e; ++p) {
            std::size_t ra = sets.find(pairs[p].a), rb = sets.find(pairs[p].b);
            if (ra != rb) links.emplace_back(pairs[p].a, pairs[p].b);
        }
        std::sort(links.begin(), links.end(), [&](const auto& x, const auto& y) {
            auto key = [&](const auto& l) {
                const std::size_t sa = smallest[sets.find(l.first)], sb = smallest[sets.find(l.second)];
                return std::make_pair(std::min(sa, sb), std::max(sa, sb));
            };
            return key(x) < key(y);
        });
        for (const auto& [a, b] : links) {
            const std::size_t ra = sets.find(a), rb = sets.find(b);
            if (ra != rb) join(ra, rb, pairs[s].d);
        }
        s = e;
    }

    // Components never connected merge at infinity, by smallest leaf.
    std::vector<std::size_t> roots;
    for (std::size_t a = 0; a < n; ++a)
        if (sets.find(a) == a) roots.push_back(a);
    std::sort(roots.begin(), roots.end(), [&](std::size_t x, std::size_t y) { return smallest[x] < smallest[y]; });
    for (std::size_t r = 1; r < roots.size(); ++r) join(sets.find(roots[0]), roots[r], kInfinity);
    return result;
}

std::vector<std::vector<std::size_t>> Dendrogram::clusters_at(double height) const {
    DisjointSets sets(leaves);
    std::vector<std::size_t> representative(leaves + merges.size());
    std::iota(representative.begin(), representative.begin() + static_cast<std::ptrdiff_t>(leaves), 0);
    for (std::size_t m = 0; m < merges.size(); ++m) {
        representative[leaves + m] = representative[merges[m].left];
        if (merges[m].height <= height) sets.unite(representative[merges[m].left], representative[merges[m].right]);
    }
    std::vector<std::vector<std::size_t>> groups;
    std::vector<std::ptrdiff_t> slot(leaves, -1);
    for (std::size_t a = 0; a < leaves; ++a) {
        const std::size_t r = sets.find(a);
        if (slot[r] < 0) {
            slot[r] = static_cast<std::ptrdiff_t>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(a);
    }
    return groups;
}

double Dendrogram::merge_height(std::size_t a, std::size_t b) const {
    if (a == b) return 0.0;
    std::vector<std::vector<std::size_t>> members(leaves + merges.size());
    for (std::size_t x = 0; x < leaves; ++x) members[x] = {x};
    for (std::size_t m = 0; m < merges.size(); ++m) {
        auto& merged = members[leaves + m];
        merged = members[merges[m].left];
        merged.insert(merged.end(), members[merges[m].right].begin(), members[merges[m].right].end());
        const bool has_a = std::find(merged.begin(), merged.end(), a) != merged.end();
        const bool has_b = std::find(merged.begin(), merged.end(), b) != merged.end();
        if (has_a && has_b) return merges[m].height;
    }
    return kInfinity;
}

Dendrogram treegram(const Network& net) {
    Dendrogram result = single_linkage(apsp(dissimilarity(net)));
    const double top = symmetrized(net).maxCoeff();
    std::vector<double> appearance(net.size());
    for (std::size_t x = 0; x < net.size(); ++x) appearance[x] = top - net.weight(x, x);
    result.appearance = std::move(appearance);
    return result;
}

Matrix capacity(const Network& net) {
    Matrix t = symmetrized(net);
    const Eigen::Index n = t.rows();
    for (Eigen::Index i = 0; i < n; ++i) t(i, i) = kInfinity;
    for (Eigen::Index k = 0; k < n; ++k)
        for (Eigen::Index i = 0; i < n; ++i) {
            const double ik = t(i, k);
            if (ik <= 0.0) continue;
            for (Eigen::Index j = 0; j < n; ++j) {
                const double via = std::min(ik, t(k, j));
                if (via > t(i, j)) t(i, j) = via;
            }
        }
    for (Eigen::Index i = 0; i < n; ++i) t(i, i) = net.weight(static_cast<std::size_t>(i), static_cast<std::size_t>(i));
    return t;
}

std::string to_newick(const Dendrogram& dendrogram) {
    const std::size_t n = dendrogram.leaves;
    const auto& merges = dendrogram.merges;
    // Children lists with same-height chains flattened into one multi-way node.
    std::vector<std::vector<std::size_t>> children(n + merges.size());
    std::vector<std::size_t> smallest(n + merges.size());
    std::iota(smallest.begin(), smallest.begin() + static_cast<std::ptrdiff_t>(n), 0);
    auto height_of = [&](std::size_t c) { return c < n ? -1.0 : merges[c - n].height; };
    for (std::size_t m = 0; m < merges.size(); ++m) {
        const std::size_t id = n + m;
        for (std::size_t c : {merges[m].left, merges[m].right}) {
            if (c >= n && height_of(c) == merges[m].height)
                children[id].insert(children[id].end(), children[c].begin(), children[c].end());
            else
                children[id].push_back(c);
        }
        smallest[id] = std::min(smallest[merges[m].left], smallest[merges[m].right]);
        std::sort(children[id].begin(), children[id].end(),
                  [&](std::size_t a, std::size_t b) { return smallest[a] < smallest[b]; });
    }
    auto render = [&](auto&& self, std::size_t c) -> std::string {
        if (c < n) return std::to_string(c + 1);
        std::string text = "(";
        for (std::size_t idx = 0; idx < children[c].size(); ++idx) {
            if (idx) text += ",";
            text += self(self, children[c][idx]);
        }
        return text + ")" + io::format_double(merges[c - n].height);
    };
    if (n == 0) return ";";
    const std::size_t root = merges.empty() ? 0 : n + merges.size() - 1;
    return render(render, root) + ";";
}

void write_merge_csv(std::ostream& out, const Dendrogram& dendrogram) {
    out << "height,left,right\n";
    for (const auto& m : dendrogram.merges) out << io::format_double(m.height) << ',' << m.left << ',' << m.right << '\n';
}

}  // namespace homsample
