#ifndef COMPNUM_GUARD_WITNESS_HH
#define COMPNUM_GUARD_WITNESS_HH 1

#include <compnum/graph.hh>
#include <compnum/graph_io.hh>
#include <compnum/hamming.hh>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace compnum
{
    struct HammingTarget
    {
        unsigned n, q;

        auto operator==(const HammingTarget &) const -> bool = default;
    };

    using WitnessTarget = std::variant<HammingTarget, Graph>;

    /**
     * A proof that target plus k isolated vertices is the competition graph of
     * an acyclic digraph. The digraph is given by each vertex's in-neighbourhood
     * (its predators); ordering lists every vertex, target vertices and the k
     * extra ones, with all arcs pointing forward.
     */
    struct WitnessCertificate
    {
        WitnessTarget target;
        std::size_t k = 0;
        std::vector<VertexId> ordering;
        std::map<VertexId, std::vector<VertexId>> prey_map;
    };

    struct VerificationReport
    {
        bool passed = false;
        bool competition_graph_matches = false;
        bool acyclic = false;
        bool normalized = false;
        std::size_t empty_prey_count = 0;

        /// k + |V| - |F| when the target has a unique maximal clique cover F.
        std::optional<std::int64_t> expected_empty_prey_count;
        std::vector<std::string> diagnostics;
    };

    struct VerifyOptions
    {
        /// Also require every nonempty in-neighbourhood to be a maximal clique
        /// of size >= 2, pairwise distinct, with the expected number of empty ones.
        bool require_normalized = false;
    };

    auto target_graph(const WitnessTarget & target) -> Graph;
    auto describe_target(const WitnessTarget & target) -> std::string;

    /// Vertices are the target's in order followed by the extra vertices in
    /// ordering order; arcs come from prey_map. Throws PreconditionError when
    /// ids do not resolve, the ordering is not a permutation of V + k extra
    /// vertices, or a prey list repeats a member.
    auto certificate_digraph(const WitnessCertificate & cert) -> Digraph;

    /// Ordering defaults to acyclic_ordering of the digraph; throws PreconditionError if cyclic.
    auto certificate_from_digraph(WitnessTarget target, const Digraph & digraph,
        std::optional<std::vector<VertexId>> ordering = std::nullopt) -> WitnessCertificate;

    auto verify_certificate(const WitnessCertificate & cert, const VerifyOptions & options = {}) -> VerificationReport;

    /**
     * Rewrites a witness for G so that every nonempty in-neighbourhood is a member
     * of the cover, all of them distinct, leaving exactly k + |V(G)| - |F|
     * vertices without in-neighbours. Requires every edge of G in exactly one
     * member of the cover, C(D) = G plus k isolated vertices, and D acyclic;
     * throws PreconditionError otherwise.
     */
    auto normalize_witness(const Graph & graph, const CliqueFamily & cover, const Digraph & digraph, std::size_t k)
        -> Digraph;

    /// One step of the dimension lift: a normalized witness for H(n-1,q) with
    /// q <= n-1 becomes one for H(n,q) with k = (n-q) q^(n-1) + k(H(q,q)).
    auto lift_witness(const WitnessCertificate & base) -> WitnessCertificate;

    /// Lifts a witness for H(q,q) up to H(n,q), normalizing it first if needed.
    auto build_witness(unsigned n, unsigned q, const WitnessCertificate & base) -> WitnessCertificate;

    /**
     * {"target": {"hamming": [n, q]} | {"graph": ...}, "k": int, "ordering": [...],
     * "prey_map": {"id": [...]}}. Every ordering vertex gets a prey_map entry.
     */
    auto certificate_to_json(const WitnessCertificate & cert) -> Json;

    /// Missing prey_map entries read as empty. Throws ParseError.
    auto certificate_from_json(const Json & json) -> WitnessCertificate;

    /// The witness digraph in DOT, arcs from predator to prey.
    auto certificate_to_dot(const WitnessCertificate & cert) -> std::string;
}

#endif
