#ifndef COMPNUM_GUARD_SOLVER_HH
#define COMPNUM_GUARD_SOLVER_HH 1

#include <compnum/graph.hh>
#include <compnum/hamming.hh>
#include <compnum/witness.hh>

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace compnum
{
    /// Largest graph the exact searches accept; vertex sets are held in 64-bit masks.
    inline constexpr std::size_t max_solver_order = 64;

    struct SolveOptions
    {
        std::optional<std::size_t> max_k;
        std::optional<std::uint64_t> node_limit;
        std::optional<std::chrono::milliseconds> time_limit;

        /// Use the prefix-count search when every edge lies in exactly one maximal clique.
        bool require_unique_cover = true;
        bool use_shortcuts = true;

        /// Fix the first vertex of the ordering; only sound for vertex-transitive targets.
        bool symmetry_breaking = true;
    };

    enum class FeasibilityStatus
    {
        feasible,
        infeasible,
        budget
    };

    struct FeasibilityResult
    {
        FeasibilityStatus status = FeasibilityStatus::budget;
        std::optional<WitnessCertificate> certificate;
        std::uint64_t nodes = 0;
        bool timed_out = false;
    };

    enum class SolveStatus
    {
        exact,
        bracketed,
        timeout
    };

    /// How a value of k was ruled out.
    struct Exhaustion
    {
        std::size_t k;
        std::string method; // "search" or "formula"
        std::uint64_t nodes = 0;
    };

    struct SolveResult
    {
        SolveStatus status = SolveStatus::bracketed;

        /// Exact value, or the bracket [lower, upper] when the search ran out of budget.
        std::size_t k = 0, lower = 0, upper = 0;
        std::optional<WitnessCertificate> certificate;
        std::vector<Exhaustion> infeasibility_proof;
        std::string method;
        std::uint64_t nodes = 0;
    };

    auto status_name(FeasibilityStatus status) -> std::string;
    auto status_name(SolveStatus status) -> std::string;

    struct ChordalityResult
    {
        bool chordal = false;

        /// When chordal: each vertex's later neighbours form a clique.
        std::vector<VertexIndex> elimination_ordering;
    };

    /// Maximum cardinality search, then a check of the reversed visit order.
    auto is_chordal(const Graph & graph) -> ChordalityResult;
    auto is_perfect_elimination_ordering(const Graph & graph, std::span<const VertexIndex> ordering) -> bool;

    /// 0 when edgeless, 1 when chordal without isolated vertices, |E| - |V| + 2
    /// when connected, triangle-free and nontrivial; otherwise nothing.
    auto formula_shortcut(const Graph & graph) -> std::optional<std::size_t>;

    /// For each left vertex, the right vertex it is matched to. Kuhn's augmenting paths.
    auto max_bipartite_matching(const std::vector<std::vector<std::size_t>> & left_adjacency, std::size_t right_size)
        -> std::vector<std::optional<std::size_t>>;

    /**
     * With the graph vertices in the given order followed by k isolated slots,
     * every member of the cover can get its own later slot iff, for each
     * i < |V|, the first i vertices contain at least i + 1 - (|V| + k - |F|)
     * members. Returns the first prefix length that fails, or nothing.
     */
    auto prefix_bound_violation(const Graph & graph, const CliqueFamily & cover, std::span<const VertexIndex> ordering,
        std::size_t k) -> std::optional<std::size_t>;

    /// Certificate for a fixed vertex ordering of a unique-cover graph, if the
    /// prefix bound allows one. Slots are assigned by bipartite matching.
    auto certificate_for_ordering(const WitnessTarget & target, const CliqueFamily & cover,
        std::span<const VertexIndex> ordering, std::size_t k) -> std::optional<WitnessCertificate>;

    /**
     * Decides whether the graph plus k isolated vertices is a competition graph
     * of an acyclic digraph whose nonempty in-neighbourhoods are distinct cover
     * members. The cover must put every edge in exactly one member.
     */
    auto feasible_k(const Graph & graph, const CliqueFamily & cover, std::size_t k, const SolveOptions & options = {})
        -> FeasibilityResult;

    /// The same search over an arbitrary graph, allowing any maximal clique of the vertices placed so far as an in-neighbourhood.
    auto feasible_k_general(const Graph & graph, std::size_t k, const SolveOptions & options = {}) -> FeasibilityResult;

    auto exact_competition_number(const Graph & graph, const SolveOptions & options = {}) -> SolveResult;

    /// feasible_k on H(n,q) with its maximal clique family; certificates name the target as a Hamming graph.
    auto hamming_feasibility(unsigned n, unsigned q, std::size_t k, const SolveOptions & options = {}) -> FeasibilityResult;

    auto solve_result_to_json(const SolveResult & result) -> Json;
    auto feasibility_to_json(const FeasibilityResult & result, std::size_t k) -> Json;
}

#endif
