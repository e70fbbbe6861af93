#pragma once

#include "homsample/network.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>

namespace homsample::io {

// Edge-list text: one `i<TAB>j<TAB>w` line per positive entry, 1-based.
// Lines starting with '#' are comments, except `# n=<int>` which fixes the
// node count (needed for trailing isolated nodes). Without it n is the
// largest index seen, or the node-weight file's length if larger.
Network read_network(const std::filesystem::path& edges,
                     const std::filesystem::path& node_weights = {});
Network parse_network(std::istream& edges, std::istream* node_weights = nullptr);

// Writes the `# n=` header and the edge lines with round-trip precision.
void write_network(std::ostream& out, const Network& net);
void write_node_weights(std::ostream& out, const Network& net);
void write_network(const std::filesystem::path& edges, const Network& net,
                   const std::filesystem::path& node_weights = {});

// A motif file holds `k=<int>` followed by edge lines, or a single family token.
Motif read_motif(const std::filesystem::path& path);
Motif parse_motif(std::istream& in);
// Accepts a path to an existing file or a family token such as "P_3".
Motif resolve_motif(const std::string& file_or_name);

// Frequency matrix: first line n, then n rows of n nonnegative numbers.
Matrix read_frequency_matrix(const std::filesystem::path& path);
Matrix parse_frequency_matrix(std::istream& in);
void write_frequency_matrix(std::ostream& out, const Matrix& m);

// Shortest decimal text that parses back to the same double; "inf" for infinity.
std::string format_double(double value);

}  // namespace homsample::io
