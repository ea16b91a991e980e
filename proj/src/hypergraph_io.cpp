#include "lsh/hypergraph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lsh {

namespace {

void warn(std::vector<std::string>* warnings, std::string msg) {
    if (warnings) warnings->push_back(std::move(msg));
}

std::string strip(const std::string& line) {
    auto begin = line.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = line.find_last_not_of(" \t\r\n");
    return line.substr(begin, end - begin + 1);
}

int parse_int(const std::string& token, const std::string& context) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        throw DataError("hypergraph file: bad integer '" + token + "' in " + context);
    return value;
}

std::string format_edge(const Edge& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(e[i]);
    }
    return s;
}

} // namespace

Hypergraph parse_hypergraph(std::istream& in, std::vector<std::string>* warnings) {
    std::string line;
    int n_nodes = -1, max_order = -1;
    bool have_header = false;
    std::vector<Edge> edges;

    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty() || body[0] == '#') continue;

        if (!have_header) {
            std::istringstream hs(body);
            std::string tok;
            while (hs >> tok) {
                if (tok.rfind("nodes=", 0) == 0)
                    n_nodes = parse_int(tok.substr(6), "header");
                else if (tok.rfind("max_order=", 0) == 0)
                    max_order = parse_int(tok.substr(10), "header");
                else
                    throw DataError("hypergraph file: unexpected header token '" + tok + "'");
            }
            if (n_nodes < 0 || max_order < 0)
                throw DataError("hypergraph file: header must be 'nodes=N max_order=K'");
            have_header = true;
            continue;
        }

        Edge e;
        std::istringstream es(body);
        std::string token;
        while (std::getline(es, token, ','))
            e.push_back(parse_int(strip(token), "line " + std::to_string(line_no)));

        std::sort(e.begin(), e.end());
        const auto last = std::unique(e.begin(), e.end());
        if (last != e.end()) {
            warn(warnings, "line " + std::to_string(line_no) + ": repeated node index collapsed");
            e.erase(last, e.end());
        }
        if (e.size() < 2) {
            warn(warnings, "line " + std::to_string(line_no) + ": order-1 hyperedge dropped");
            continue;
        }
        edges.push_back(std::move(e));
    }

    if (!have_header) throw DataError("hypergraph file: missing header line");

    Hypergraph h(n_nodes, max_order);
    for (Edge& e : edges) {
        Edge copy = e;
        if (!h.add_edge(std::move(e)))
            warn(warnings, "duplicate hyperedge {" + format_edge(copy) + "} collapsed");
    }
    return h;
}

Hypergraph read_hypergraph(const std::string& path, std::vector<std::string>* warnings) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open hypergraph file '" + path + "'");
    return parse_hypergraph(in, warnings);
}

void serialize_hypergraph(const Hypergraph& h, std::ostream& out) {
    out << "nodes=" << h.n_nodes() << " max_order=" << h.max_order() << "\n";
    for (const Edge& e : h.edges()) out << format_edge(e) << "\n";
}

void write_hypergraph(const Hypergraph& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write hypergraph file '" + path + "'");
    serialize_hypergraph(h, out);
}

} // namespace lsh
