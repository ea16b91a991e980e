#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lsh/hypergraph.hpp"

namespace lsh {

/// Text format: `#` comment lines, a header line `nodes=N max_order=K`, then
/// one hyperedge per line as comma-separated 0-based indices.
///
/// Duplicate hyperedges are collapsed and order-1 hyperedges dropped, each
/// with a warning; orders above K are a hard error. Parse followed by
/// serialize is byte-identical modulo comment stripping and edge sorting.
Hypergraph parse_hypergraph(std::istream& in, std::vector<std::string>* warnings = nullptr);
Hypergraph read_hypergraph(const std::string& path, std::vector<std::string>* warnings = nullptr);

void serialize_hypergraph(const Hypergraph& h, std::ostream& out);
void write_hypergraph(const Hypergraph& h, const std::string& path);

} // namespace lsh
