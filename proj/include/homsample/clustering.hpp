#pragma once

#include "homsample/network.hpp"

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace homsample {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Binary merge record. Leaves are clusters 0..n-1; merge m creates cluster n+m.
// Merges sharing a height form one multi-way event in the newick output.
struct Merge {
    double height;
    std::size_t left;
    std::size_t right;
};

struct Dendrogram {
    std::size_t leaves = 0;
    std::vector<Merge> merges;                    // nondecreasing heights; infinite heights last
    std::optional<std::vector<double>> appearance;  // treegram leaf heights

    // Members of every cluster present at level h (merges with height <= h applied),
    // each sorted, ordered by smallest member.
    std::vector<std::vector<std::size_t>> clusters_at(double height) const;

    // Height at which leaves a and b first share a cluster.
    double merge_height(std::size_t a, std::size_t b) const;
};

// max(A) - A(x,y) on the max-symmetrized weights; infinity where both
// directions are zero; 0 on the diagonal.
Matrix dissimilarity(const Network& net);

// Floyd–Warshall closure of a nonnegative, zero-diagonal matrix.
Matrix apsp(const Matrix& d);

Dendrogram single_linkage(const Matrix& metric);

// Single-linkage dendrogram of the dissimilarity metric, with leaf x appearing
// at height max(A) - A(x,x).
Dendrogram treegram(const Network& net);

// Widest-path (bottleneck) values on the max-symmetrized weights; diagonal A(x,x).
Matrix capacity(const Network& net);

// Newick text; labels are 1-based leaf indices, branch lengths are omitted and
// internal nodes carry their height as a label.
std::string to_newick(const Dendrogram& dendrogram);
// CSV with header `height,left,right` (cluster ids as in Merge).
void write_merge_csv(std::ostream& out, const Dendrogram& dendrogram);

}  // namespace homsample
