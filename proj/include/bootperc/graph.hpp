#ifndef BOOTPERC_GRAPH_HPP
#define BOOTPERC_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bootperc {

// Immutable undirected simple graph in compressed adjacency form.
// Neighbor lists are sorted ascending; no self-loops, no duplicates.
class Graph {
public:
    Graph() = default;

    // edges as unordered pairs; duplicates and self-loops are rejected.
    static Graph from_edges(std::size_t n,
                            std::span<const std::pair<std::uint32_t, std::uint32_t>> edges);

    // rows[i] holds the neighbors j > i (any order, no duplicates).
    static Graph from_upper_rows(std::vector<std::vector<std::uint32_t>> rows);

    std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t num_edges() const { return adj_.size() / 2; }

    std::span<const std::uint32_t> neighbors(std::uint32_t v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    std::size_t degree(std::uint32_t v) const { return offsets_[v + 1] - offsets_[v]; }

    bool has_edge(std::uint32_t u, std::uint32_t v) const;

    // all edges as (u,v) with u < v, lexicographic order
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_list() const;

private:
    std::vector<std::uint64_t> offsets_; // size n+1
    std::vector<std::uint32_t> adj_;     // size 2m
};

// Order-preserving relabel of the vertices in s (sorted unique ids) to
// 0..|s|-1, keeping the edges with both endpoints in s.
Graph induced_subgraph(const Graph& g, std::span<const std::uint32_t> s);

// Throws std::logic_error if symmetry/simplicity/sortedness fails.
void validate(const Graph& g);

// Text edge list: header "# n=<n> m=<m>", then one "u v" per line, u < v.
void save_edge_list(const Graph& g, const std::string& path);
Graph load_edge_list(const std::string& path);

} // namespace bootperc

#endif
