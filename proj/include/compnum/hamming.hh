#ifndef COMPNUM_GUARD_HAMMING_HH
#define COMPNUM_GUARD_HAMMING_HH 1

#include <compnum/graph.hh>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace compnum
{
    /// Largest vertex count hamming_graph will build.
    inline constexpr std::uint64_t max_hamming_order = 1'000'000;

    /// A tuple in [q]^n, entries 1-based. Rendered as "x1.x2...xn".
    class HammingVertex
    {
    private:
        std::vector<unsigned> _coordinates;

    public:
        /// Throws PreconditionError for an empty tuple or an entry outside 1..q.
        HammingVertex(std::vector<unsigned> coordinates, unsigned q);

        auto dimension() const -> std::size_t { return _coordinates.size(); }
        auto coordinates() const -> const std::vector<unsigned> & { return _coordinates; }
        auto operator[](std::size_t i) const -> unsigned { return _coordinates[i]; }

        auto id() const -> VertexId;

        /// Throws ParseError if the id is not a dotted tuple over 1..q.
        static auto parse(const VertexId & id, unsigned q) -> HammingVertex;

        auto operator<=>(const HammingVertex &) const = default;
    };

    auto hamming_distance(const HammingVertex & x, const HammingVertex & y) -> std::size_t;

    /// q^n, throwing SizeError once it exceeds max_hamming_order.
    auto hamming_order(unsigned n, unsigned q) -> std::uint64_t;

    /// Position of a vertex in lexicographic order, which is its index in hamming_graph(n, q).
    auto hamming_index(const HammingVertex & x, unsigned q) -> VertexIndex;
    auto hamming_vertex(VertexIndex index, unsigned n, unsigned q) -> HammingVertex;

    /// Vertices in lexicographic tuple order. Throws SizeError if q^n > max_hamming_order.
    auto hamming_graph(unsigned n, unsigned q) -> Graph;

    /// Vertex set checked to be pairwise adjacent in its host.
    class Clique
    {
    private:
        std::vector<VertexIndex> _members; // ascending

    public:
        /// Throws PreconditionError if some pair is non-adjacent or a member is repeated.
        Clique(const Graph & host, std::vector<VertexIndex> members);

        auto members() const -> const std::vector<VertexIndex> & { return _members; }
        auto size() const -> std::size_t { return _members.size(); }
        auto contains(VertexIndex v) const -> bool;

        auto operator<=>(const Clique &) const = default;
    };

    class CliqueFamily
    {
    private:
        std::shared_ptr<const Graph> _host;
        std::vector<Clique> _cliques;

    public:
        /// Every clique must already have been checked against this host.
        CliqueFamily(std::shared_ptr<const Graph> host, std::vector<Clique> cliques);

        auto host() const -> const Graph & { return *_host; }
        auto host_ptr() const -> const std::shared_ptr<const Graph> & { return _host; }
        auto cliques() const -> const std::vector<Clique> & { return _cliques; }
        auto size() const -> std::size_t { return _cliques.size(); }

        /// For each edge (in host edge order), the indices of the family members covering it.
        auto coverage() const -> std::vector<std::vector<std::size_t>>;
    };

    /// S_j(p): the q vertices agreeing with p off coordinate j (1-based). Throws PreconditionError.
    auto maximal_clique(const Graph & host, unsigned n, unsigned q, unsigned j, const std::vector<unsigned> & p) -> Clique;

    /// All S_j(p), ordered by j then p lexicographically. Needs n >= 2, q >= 2.
    auto maximal_clique_family(unsigned n, unsigned q) -> CliqueFamily;

    /// The family member containing a clique of size >= 2. Throws PreconditionError.
    auto containing_maximal_clique(const Graph & host, unsigned n, unsigned q, const std::vector<VertexIndex> & clique) -> Clique;

    /// True if the id set is exactly some S_j(p) of H(n,q).
    auto is_hamming_maximal_clique(const std::vector<VertexId> & members, unsigned n, unsigned q) -> bool;

    /// What is known about k(H(n,q)).
    struct KnownCompetitionNumber
    {
        std::optional<std::uint64_t> value;

        /// When value is unknown and 4 <= q <= n: k(H(n,q)) <= bound_offset + k(H(q,q)).
        std::optional<std::uint64_t> bound_offset;

        auto describe(unsigned n, unsigned q) const -> std::string;
    };

    /// Throws std::overflow_error if the exact value does not fit in 64 bits.
    auto known_competition_number(unsigned n, unsigned q) -> KnownCompetitionNumber;

    /// (n-q) q^(n-1) + base, the value reached by lifting a k(H(q,q)) = base witness up to dimension n.
    auto lifted_competition_bound(unsigned n, unsigned q, std::uint64_t base) -> std::uint64_t;
}

#endif
