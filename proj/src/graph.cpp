#include "bootperc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bootperc {

Graph Graph::from_edges(std::size_t n,
                        std::span<const std::pair<std::uint32_t, std::uint32_t>> edges) {
    std::vector<std::uint64_t> deg(n + 1, 0);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v)
            throw std::invalid_argument("self-loop not allowed");
        ++deg[u + 1];
        ++deg[v + 1];
    }
    Graph g;
    g.offsets_.resize(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i)
        g.offsets_[i] = g.offsets_[i - 1] + deg[i];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (auto [u, v] : edges) {
        g.adj_[cursor[u]++] = v;
        g.adj_[cursor[v]++] = u;
    }
    for (std::size_t v = 0; v < n; ++v) {
        auto b = g.adj_.begin() + g.offsets_[v];
        auto e = g.adj_.begin() + g.offsets_[v + 1];
        std::sort(b, e);
        if (std::adjacent_find(b, e) != e)
            throw std::invalid_argument("duplicate edge");
    }
    return g;
}

Graph Graph::from_upper_rows(std::vector<std::vector<std::uint32_t>> rows) {
    const std::size_t n = rows.size();
    std::vector<std::uint64_t> deg(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        deg[i] += rows[i].size();
        for (std::uint32_t j : rows[i]) {
            if (j <= i || j >= n)
                throw std::invalid_argument("upper row entry out of range");
            ++deg[j];
        }
    }
    Graph g;
    g.offsets_.resize(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        g.offsets_[i + 1] = g.offsets_[i] + deg[i];
    g.adj_.resize(g.offsets_[n]);
    std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t j : rows[i]) {
            g.adj_[cursor[i]++] = j;
            g.adj_[cursor[j]++] = static_cast<std::uint32_t>(i);
        }
    for (std::size_t v = 0; v < n; ++v) {
        auto b = g.adj_.begin() + g.offsets_[v];
        auto e = g.adj_.begin() + g.offsets_[v + 1];
        std::sort(b, e);
        if (std::adjacent_find(b, e) != e)
            throw std::invalid_argument("duplicate edge");
    }
    return g;
}

bool Graph::has_edge(std::uint32_t u, std::uint32_t v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::edge_list() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    out.reserve(num_edges());
    for (std::uint32_t u = 0; u < num_vertices(); ++u)
        for (std::uint32_t v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

Graph induced_subgraph(const Graph& g, std::span<const std::uint32_t> s) {
    const std::size_t n = g.num_vertices();
    constexpr std::uint32_t absent = UINT32_MAX;
    std::vector<std::uint32_t> remap(n, absent);
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] >= n)
            throw std::out_of_range("induced_subgraph: vertex id out of range");
        if (k > 0 && s[k] <= s[k - 1])
            throw std::invalid_argument("induced_subgraph: ids must be sorted unique");
        remap[s[k]] = static_cast<std::uint32_t>(k);
    }
    std::vector<std::vector<std::uint32_t>> rows(s.size());
    for (std::size_t k = 0; k < s.size(); ++k)
        for (std::uint32_t w : g.neighbors(s[k])) {
            std::uint32_t t = remap[w];
            if (t != absent && t > k) rows[k].push_back(t);
        }
    return Graph::from_upper_rows(std::move(rows));
}

void validate(const Graph& g) {
    const std::size_t n = g.num_vertices();
    for (std::uint32_t v = 0; v < n; ++v) {
        auto nb = g.neighbors(v);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            if (nb[k] >= n) throw std::logic_error("graph: neighbor out of range");
            if (nb[k] == v) throw std::logic_error("graph: self-loop");
            if (k > 0 && nb[k] <= nb[k - 1])
                throw std::logic_error("graph: neighbors not sorted unique");
            if (!g.has_edge(nb[k], v))
                throw std::logic_error("graph: asymmetric adjacency");
        }
    }
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    out << "# n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
    for (std::uint32_t u = 0; u < g.num_vertices(); ++u)
        for (std::uint32_t v : g.neighbors(u))
            if (u < v) out << u << ' ' << v << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

Graph load_edge_list(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open: " + path);
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("empty edge list file: " + path);
    std::size_t n = 0, m = 0;
    if (std::sscanf(header.c_str(), "# n=%zu m=%zu", &n, &m) != 2)
        throw std::runtime_error("bad edge list header: " + header);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(m);
    std::uint32_t u, v;
    while (in >> u >> v)
        edges.emplace_back(u, v);
    if (!in.eof())
        throw std::runtime_error("malformed edge list: " + path);
    if (edges.size() != m)
        throw std::runtime_error("edge count does not match header: " + path);
    return Graph::from_edges(n, edges);
}

} // namespace bootperc
