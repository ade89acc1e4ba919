#ifndef COMPNUM_GUARD_CENSUS_HH
#define COMPNUM_GUARD_CENSUS_HH 1

#include <compnum/canonical.hh>
#include <compnum/graph.hh>
#include <compnum/graph_io.hh>

#include <chrono>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace compnum
{
    /// Hosts are enumerated with 64-bit vertex masks.
    inline constexpr std::size_t max_census_host_order = 64;

    struct CensusOptions
    {
        bool prune = true;
        unsigned jobs = 1;

        /// Refuse hosts with more than this many m-subsets.
        std::uint64_t max_subsets = 100'000'000;

        /// Group extremal subsets into isomorphism classes (needs m <= 16).
        bool classify = true;

        /// Keep every extremal subset in the report, not just class representatives.
        bool keep_subsets = false;
    };

    struct ExtremalClass
    {
        CanonicalForm form;
        std::vector<VertexId> representative;

        /// Edges of the induced subgraph on the representative left out of this class's graph.
        std::vector<std::pair<VertexId, VertexId>> dropped_edges;

        /// Extremal subsets for induced classes; (subset, removed edge set) pairs otherwise.
        std::uint64_t multiplicity = 0;
    };

    struct CensusReport
    {
        std::string host;
        std::size_t subset_size = 0;
        std::size_t max_triangles = 0;

        /**
         * Classes of subgraphs with max_triangles triangles on subset_size
         * vertices: induced subgraphs on extremal subsets with any set of
         * triangle-free edges removed. Sorted by form.
         */
        std::vector<ExtremalClass> extremal_classes;

        /// Classes of the induced subgraphs alone.
        std::vector<ExtremalClass> induced_classes;

        /// Every extremal subset as host indices, when keep_subsets is set. Sorted.
        std::vector<std::vector<VertexIndex>> extremal_subsets;
        std::uint64_t extremal_subset_count = 0;

        /// Leaves reached plus subsets skipped in pruned branches; always C(|V|, m).
        std::uint64_t subsets_examined = 0;
        std::size_t shards = 1;
        std::chrono::duration<double> elapsed{};
    };

    /// C(n, r), throwing std::overflow_error beyond 64 bits.
    auto binomial(std::uint64_t n, std::uint64_t r) -> std::uint64_t;

    /// Throws SizeError above the subset cap or host size, PreconditionError if m > |V|.
    auto max_triangle_census(const Graph & host, std::size_t m, const CensusOptions & options = {},
        const std::string & host_tag = "graph") -> CensusReport;

    auto census_report_to_json(const CensusReport & report) -> Json;

    struct PatternGraphs
    {
        Graph h1, h2, h3;
        CanonicalForm h1_form, h2_form, h3_form;
    };

    /// H1 = H(2,3); H2 and H3 come from the censuses of H(3,3) at 10 and 11
    /// vertices. Throws Error when those censuses do not show exactly two and one classes.
    auto derive_patterns(unsigned jobs = 1) -> PatternGraphs;
    auto patterns_to_json(const PatternGraphs & patterns) -> Json;

    struct CheckItem
    {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    struct CheckReport
    {
        std::string name;
        bool passed = false;
        std::vector<CheckItem> items;
        Json details = Json::object();
    };

    auto check_report_to_json(const CheckReport & report) -> Json;

    /// Census of H(3,3) at 10 vertices: maximum 6, classes exactly H1 plus an isolated vertex and H2.
    auto verify_lemma3(unsigned jobs = 1) -> CheckReport;

    /**
     * On H(3,3): (i) 10-vertex extremal subgraphs that reach 7 triangles with one
     * more vertex are all H2; (ii) 11-vertex subgraphs with 7 triangles form one
     * class, H3; (iii) no 11-subset inducing H3 reaches 8 triangles with one more vertex.
     */
    auto verify_lower_bound_chain(unsigned jobs = 1) -> CheckReport;

    /// Sum of per-vertex triangle counts equals three times the triangle count, computed separately.
    auto handshake_audit(const Graph & graph) -> bool;
}

#endif
