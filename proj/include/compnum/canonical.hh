#ifndef COMPNUM_GUARD_CANONICAL_HH
#define COMPNUM_GUARD_CANONICAL_HH 1

#include <compnum/graph.hh>

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace compnum
{
    /// Canonical labelling is exact but exponential in the worst case; graphs
    /// with more vertices than this are refused.
    inline constexpr std::size_t max_canonical_order = 16;

    /**
     * A canonical label: the graph6 encoding of the graph relabelled by its
     * canonical labelling. Two graphs are isomorphic iff their forms are equal.
     */
    class CanonicalForm
    {
    private:
        std::string _graph6;

    public:
        CanonicalForm() = default;
        explicit CanonicalForm(std::string graph6) :
            _graph6(std::move(graph6))
        {
        }

        auto graph6() const -> const std::string & { return _graph6; }

        auto operator<=>(const CanonicalForm &) const = default;
    };

    /// Adjacency rows of at most max_canonical_order vertices: bit j of row i set iff i ~ j.
    using SmallAdjacency = std::vector<std::uint32_t>;

    auto small_adjacency(const Graph & graph) -> SmallAdjacency;

    /// labelling[v] is the canonical position of vertex v.
    auto canonical_labelling(const SmallAdjacency & rows) -> std::vector<unsigned>;
    auto canonical_form(const SmallAdjacency & rows) -> CanonicalForm;

    /// Throws SizeError for graphs above max_canonical_order vertices.
    auto canonical_form(const Graph & graph) -> CanonicalForm;
    auto is_isomorphic(const Graph & first, const Graph & second) -> bool;

    auto to_graph6(const SmallAdjacency & rows) -> std::string;

    /// Vertices are named "0", "1", ... in graph6 order. Throws ParseError.
    auto graph_from_graph6(const std::string & code) -> Graph;
}

#endif
