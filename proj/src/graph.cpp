#include "maslov/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "maslov/error.hpp"

namespace maslov {

std::size_t Graph::index_of(const std::string& name) const {
    auto it = std::find(nodes.begin(), nodes.end(), name);
    if (it == nodes.end()) throw DomainError("unknown node '" + name + "'");
    return static_cast<std::size_t>(it - nodes.begin());
}

Graph read_edge_list(std::istream& in) {
    Graph g;
    std::unordered_map<std::string, std::size_t> index;
    auto intern = [&](const std::string& name) {
        auto [it, inserted] = index.emplace(name, g.nodes.size());
        if (inserted) g.nodes.push_back(name);
        return it->second;
    };

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string src, dst, weight, extra;
        if (!(ls >> src) || src.front() == '#') continue;
        if (!(ls >> dst >> weight)) throw ParseError("expected 'src dst weight'", lineno);
        if (ls >> extra) throw ParseError("trailing token '" + extra + "'", lineno);
        double w = 0.0;
        try {
            w = parse_ext(weight);
        } catch (const ParseError& e) {
            throw ParseError(e.what(), lineno);
        }
        if (!std::isfinite(w)) throw ParseError("edge weight must be finite", lineno);
        const std::size_t s = intern(src);
        const std::size_t d = intern(dst);
        g.edges.push_back({s, d, w});
    }
    if (g.nodes.empty()) throw ParseError("edge list is empty", 0);
    return g;
}

SemiringMatrix transition_matrix(const Graph& g) {
    const Semiring s = Semiring::min_plus();
    SemiringMatrix h(g.nodes.size(), g.nodes.size(), s);
    for (const Edge& e : g.edges) h(e.dst, e.src) = s.add(h(e.dst, e.src), e.weight);
    return h;
}

SemiringMatrix source_column(const Graph& g, std::size_t source) {
    SemiringMatrix f(g.nodes.size(), 1, Semiring::min_plus());
    f(source, 0) = 0.0;
    return f;
}

std::vector<double> shortest_distances(const Graph& g, std::size_t source, BellmanMethod method) {
    const SemiringMatrix x = solve_bellman(transition_matrix(g), source_column(g, source), method);
    return {x.entries().begin(), x.entries().end()};
}

void write_distances_csv(std::ostream& out, const Graph& g, const std::vector<double>& dist, int digits) {
    out << "node,distance\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) out << g.nodes[i] << ',' << format_ext(dist[i], digits) << '\n';
}

}  // namespace maslov
