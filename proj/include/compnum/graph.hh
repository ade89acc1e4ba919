#ifndef COMPNUM_GUARD_GRAPH_HH
#define COMPNUM_GUARD_GRAPH_HH 1

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace compnum
{
    using VertexId = std::string;
    using VertexIndex = std::size_t;

    /// An edge or arc given by vertex indices. For undirected edges first < second.
    using IndexPair = std::pair<VertexIndex, VertexIndex>;

    /**
     * Vertex bookkeeping shared by Graph and Digraph: a list of ids in creation
     * order and the reverse lookup.
     */
    class VertexSet
    {
    private:
        std::vector<VertexId> _ids;
        std::unordered_map<VertexId, VertexIndex> _index;

    public:
        VertexSet() = default;
        explicit VertexSet(std::vector<VertexId> ids);

        auto size() const -> std::size_t { return _ids.size(); }
        auto ids() const -> const std::vector<VertexId> & { return _ids; }
        auto id(VertexIndex v) const -> const VertexId & { return _ids.at(v); }
        auto find(const VertexId & id) const -> std::optional<VertexIndex>;

        /// Throws GraphError naming the id if it is not present.
        auto index(const VertexId & id) const -> VertexIndex;
    };

    /**
     * Immutable simple undirected graph. Vertices are iterated in insertion
     * order; neighbour lists are sorted by index.
     */
    class Graph
    {
    private:
        VertexSet _vertices;
        std::vector<IndexPair> _edges;
        std::vector<std::vector<VertexIndex>> _adjacency;

    public:
        Graph() = default;

        /// Throws GraphError on self-loops, duplicate edges or undeclared endpoints.
        Graph(std::vector<VertexId> vertices, const std::vector<std::pair<VertexId, VertexId>> & edges);

        static auto from_indices(std::vector<VertexId> vertices, std::vector<IndexPair> edges) -> Graph;

        auto order() const -> std::size_t { return _vertices.size(); }
        auto size() const -> std::size_t { return _edges.size(); }

        auto vertices() const -> const VertexSet & { return _vertices; }
        auto ids() const -> const std::vector<VertexId> & { return _vertices.ids(); }
        auto id(VertexIndex v) const -> const VertexId & { return _vertices.id(v); }
        auto index(const VertexId & id) const -> VertexIndex { return _vertices.index(id); }

        /// Sorted by (first, second), with first < second.
        auto edges() const -> const std::vector<IndexPair> & { return _edges; }
        auto neighbours(VertexIndex v) const -> std::span<const VertexIndex> { return _adjacency.at(v); }
        auto degree(VertexIndex v) const -> std::size_t { return _adjacency.at(v).size(); }
        auto adjacent(VertexIndex u, VertexIndex v) const -> bool;
    };

    /// Immutable digraph without self-arcs.
    class Digraph
    {
    private:
        VertexSet _vertices;
        std::vector<IndexPair> _arcs;
        std::vector<std::vector<VertexIndex>> _out, _in;

    public:
        Digraph() = default;

        /// Throws GraphError on self-arcs, duplicate arcs or undeclared endpoints.
        Digraph(std::vector<VertexId> vertices, const std::vector<std::pair<VertexId, VertexId>> & arcs);

        static auto from_indices(std::vector<VertexId> vertices, std::vector<IndexPair> arcs) -> Digraph;

        auto order() const -> std::size_t { return _vertices.size(); }
        auto size() const -> std::size_t { return _arcs.size(); }

        auto vertices() const -> const VertexSet & { return _vertices; }
        auto ids() const -> const std::vector<VertexId> & { return _vertices.ids(); }
        auto id(VertexIndex v) const -> const VertexId & { return _vertices.id(v); }
        auto index(const VertexId & id) const -> VertexIndex { return _vertices.index(id); }

        /// Sorted by (tail, head).
        auto arcs() const -> const std::vector<IndexPair> & { return _arcs; }
        auto out_neighbours(VertexIndex v) const -> std::span<const VertexIndex> { return _out.at(v); }
        auto in_neighbours(VertexIndex v) const -> std::span<const VertexIndex> { return _in.at(v); }
        auto has_arc(VertexIndex tail, VertexIndex head) const -> bool;
    };

    /// Either a topological order or, when the digraph has a directed cycle,
    /// that cycle (v0 -> v1 -> ... -> v0, starting at its smallest index).
    struct OrderingResult
    {
        std::optional<std::vector<VertexIndex>> ordering;
        std::vector<VertexIndex> cycle;

        auto acyclic() const -> bool { return ordering.has_value(); }
    };

    struct Triangle
    {
        std::array<VertexIndex, 3> members; // ascending
    };

    /// Edge {u,v} iff u and v share an out-neighbour. Vertex set is that of the digraph.
    auto competition_graph(const Digraph & digraph) -> Graph;

    /// Kahn's algorithm with smallest-index-first tie breaking.
    auto acyclic_ordering(const Digraph & digraph) -> OrderingResult;

    /// True if every arc points forward in the given sequence, which must be a permutation of the vertices.
    auto is_acyclic_ordering(const Digraph & digraph, std::span<const VertexIndex> ordering) -> bool;

    /// Ids of the tails of arcs into v. Throws GraphError for an unknown vertex.
    auto in_neighbourhood(const Digraph & digraph, const VertexId & v) -> std::vector<VertexId>;

    auto triangles(const Graph & graph) -> std::vector<Triangle>;
    auto per_vertex_triangle_counts(const Graph & graph) -> std::vector<std::size_t>;
    auto count_triangles(const Graph & graph) -> std::size_t;

    /// Vertices keep the relative order they have in the host. Throws GraphError for unknown ids.
    auto induced_subgraph(const Graph & graph, const std::vector<VertexId> & subset) -> Graph;
    auto induced_subgraph(const Graph & graph, std::span<const VertexIndex> subset) -> Graph;

    /// Appends k degree-0 vertices named "<prefix>/0", "<prefix>/1", ..., skipping names already in use.
    auto add_isolated(const Graph & graph, std::size_t k, const std::string & prefix = "iso") -> Graph;

    /// Apply a bijection on ids. The vertex order is preserved.
    auto relabel(const Graph & graph, const std::vector<VertexId> & new_ids) -> Graph;

    /// Graph with the same ids and vertex set but vertex order permuted: position i takes old vertex perm[i].
    auto permute_vertices(const Graph & graph, std::span<const VertexIndex> perm) -> Graph;

    auto same_graph(const Graph & a, const Graph & b) -> bool;

    /// Maximal cliques by Bron-Kerbosch with pivoting; each ascending, the list sorted.
    /// Isolated vertices appear as singleton cliques.
    auto maximal_cliques(const Graph & graph) -> std::vector<std::vector<VertexIndex>>;

    /// True if every edge lies in exactly one maximal clique.
    auto has_unique_clique_cover(const Graph & graph) -> bool;
}

#endif
