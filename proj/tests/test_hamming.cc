#include "support.hh"

#include <compnum/errors.hh>
#include <compnum/hamming.hh>

#include <doctest.h>

#include <bit>
#include <functional>
#include <queue>

using namespace compnum;
using namespace compnum::testing;

using std::vector;

namespace
{
    auto ids_of(const Graph & host, const Clique & c) -> vector<VertexId>
    {
        vector<VertexId> result;
        for (auto v : c.members())
            result.push_back(host.id(v));
        return result;
    }

    auto eccentricity(const Graph & g, VertexIndex source) -> std::size_t
    {
        vector<std::size_t> dist(g.order(), SIZE_MAX);
        std::queue<VertexIndex> queue;
        dist[source] = 0;
        queue.push(source);
        std::size_t furthest = 0;
        while (! queue.empty()) {
            auto u = queue.front();
            queue.pop();
            furthest = std::max(furthest, dist[u]);
            for (auto w : g.neighbours(u))
                if (dist[w] == SIZE_MAX) {
                    dist[w] = dist[u] + 1;
                    queue.push(w);
                }
        }
        return furthest;
    }

    /// Smallest number of cliques covering every edge, by trying all families in increasing size.
    auto minimum_edge_clique_cover(const Graph & g, std::size_t give_up_at) -> std::size_t
    {
        vector<std::uint64_t> clique_edges;
        auto n = g.order();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            if (std::popcount(mask) < 2)
                continue;
            vector<VertexIndex> members;
            for (VertexIndex v = 0; v < n; ++v)
                if (mask >> v & 1)
                    members.push_back(v);
            bool clique = true;
            for (std::size_t i = 0; i < members.size() && clique; ++i)
                for (std::size_t j = i + 1; j < members.size() && clique; ++j)
                    clique = g.adjacent(members[i], members[j]);
            if (! clique)
                continue;
            std::uint64_t covered = 0;
            for (std::size_t e = 0; e < g.size(); ++e)
                if (mask >> g.edges()[e].first & 1 && mask >> g.edges()[e].second & 1)
                    covered |= std::uint64_t{1} << e;
            clique_edges.push_back(covered);
        }
        auto all = g.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.size()) - 1;

        std::function<bool(std::size_t, std::size_t, std::uint64_t)> search = [&](std::size_t from, std::size_t left,
                                                                                   std::uint64_t covered) {
            if (covered == all)
                return true;
            if (left == 0)
                return false;
            for (auto i = from; i < clique_edges.size(); ++i)
                if (search(i + 1, left - 1, covered | clique_edges[i]))
                    return true;
            return false;
        };
        for (std::size_t size = 0; size < give_up_at; ++size)
            if (search(0, size, 0))
                return size;
        return give_up_at;
    }
}

TEST_CASE("hamming graph sizes")
{
    auto h23 = hamming_graph(2, 3);
    CHECK(h23.order() == 9);
    CHECK(h23.size() == 18);
    CHECK(h23.id(0) == "1.1");
    CHECK(h23.id(8) == "3.3");
    auto h31 = hamming_graph(3, 1);
    CHECK(h31.order() == 1);
    CHECK(h31.size() == 0);
    auto h33 = hamming_graph(3, 3);
    CHECK(h33.order() == 27);
    CHECK(h33.size() == 81);

    for (unsigned n = 1; n <= 4; ++n)
        for (unsigned q = 1; q <= 5; ++q) {
            auto g = hamming_graph(n, q);
            CAPTURE(n);
            CAPTURE(q);
            REQUIRE(g.order() == hamming_order(n, q));
            REQUIRE(2 * g.size() == n * (q - 1) * hamming_order(n, q));
            for (VertexIndex v = 0; v < g.order(); ++v)
                REQUIRE(hamming_index(hamming_vertex(v, n, q), q) == v);
        }
}

TEST_CASE("hamming graph size guard")
{
    CHECK_NOTHROW(hamming_order(6, 10));
    CHECK_THROWS_WITH_AS(hamming_graph(7, 10), doctest::Contains("10000000"), SizeError);
    CHECK_THROWS_AS(hamming_graph(0, 3), PreconditionError);
}

TEST_CASE("hamming diameter equals n")
{
    for (auto [n, q] : vector<std::pair<unsigned, unsigned>>{{2, 3}, {3, 3}, {3, 2}}) {
        auto g = hamming_graph(n, q);
        std::size_t diameter = 0;
        for (VertexIndex v = 0; v < g.order(); ++v)
            diameter = std::max(diameter, eccentricity(g, v));
        CHECK(diameter == n);
    }
}

TEST_CASE("hamming distance")
{
    CHECK(hamming_distance(HammingVertex({1, 1, 1}, 3), HammingVertex({1, 1, 1}, 3)) == 0);
    CHECK(hamming_distance(HammingVertex({1, 1}, 3), HammingVertex({2, 1}, 3)) == 1);
    CHECK(hamming_distance(HammingVertex({1, 2, 3}, 3), HammingVertex({3, 2, 1}, 3)) == 2);
    CHECK_THROWS_AS(hamming_distance(HammingVertex({1, 2}, 3), HammingVertex({1, 2, 3}, 3)), PreconditionError);
    CHECK_THROWS_AS(HammingVertex({1, 4}, 3), PreconditionError);
    CHECK(HammingVertex::parse("2.3.1", 3) == HammingVertex({2, 3, 1}, 3));
    CHECK_THROWS_AS(HammingVertex::parse("2..1", 3), ParseError);
    CHECK_THROWS_AS(HammingVertex::parse("2.4", 3), ParseError);
}

TEST_CASE("maximal clique S_j(p)")
{
    auto h23 = hamming_graph(2, 3);
    CHECK(ids_of(h23, maximal_clique(h23, 2, 3, 1, {2})) == vector<VertexId>{"1.2", "2.2", "3.2"});
    CHECK(ids_of(h23, maximal_clique(h23, 2, 3, 2, {2})) == vector<VertexId>{"2.1", "2.2", "2.3"});
    auto h33 = hamming_graph(3, 3);
    CHECK(ids_of(h33, maximal_clique(h33, 3, 3, 2, {1, 3})) == vector<VertexId>{"1.1.3", "1.2.3", "1.3.3"});
    CHECK_THROWS_AS(maximal_clique(h23, 2, 3, 0, {1}), PreconditionError);
    CHECK_THROWS_AS(maximal_clique(h23, 2, 3, 3, {1}), PreconditionError);
    CHECK_THROWS_AS(maximal_clique(h23, 2, 3, 1, {4}), PreconditionError);
    CHECK_THROWS_AS(maximal_clique(h23, 2, 3, 1, {1, 1}), PreconditionError);
}

TEST_CASE("maximal clique family examples")
{
    CHECK(maximal_clique_family(2, 3).size() == 6);
    CHECK(maximal_clique_family(3, 3).size() == 27);
    auto f22 = maximal_clique_family(2, 2);
    CHECK(f22.size() == 4);
    for (auto & c : f22.cliques())
        CHECK(c.size() == 2);
    CHECK_THROWS_AS(maximal_clique_family(1, 3), PreconditionError);
}

TEST_CASE("maximal clique family covers each edge exactly once")
{
    for (unsigned n = 2; n <= 4; ++n)
        for (unsigned q = 2; q <= 4; ++q) {
            auto f = maximal_clique_family(n, q);
            auto & host = f.host();
            CAPTURE(n);
            CAPTURE(q);
            REQUIRE(f.size() == n * hamming_order(n - 1, q));
            for (auto & c : f.cliques()) {
                REQUIRE(c.size() == q);
                REQUIRE(is_hamming_maximal_clique(ids_of(host, c), n, q));
            }
            auto coverage = f.coverage();
            for (std::size_t e = 0; e < host.size(); ++e) {
                REQUIRE(coverage[e].size() == 1);
                auto [u, v] = host.edges()[e];
                REQUIRE(containing_maximal_clique(host, n, q, {u, v}) == f.cliques()[coverage[e].front()]);
            }
            // The maximal cliques of the graph are exactly the family.
            auto cliques = maximal_cliques(host);
            REQUIRE(cliques.size() == f.size());
        }
}

TEST_CASE("containing maximal clique")
{
    auto h23 = hamming_graph(2, 3);
    auto c = containing_maximal_clique(h23, 2, 3, {h23.index("1.1"), h23.index("2.1")});
    CHECK(ids_of(h23, c) == vector<VertexId>{"1.1", "2.1", "3.1"});
    auto h33 = hamming_graph(3, 3);
    vector<VertexIndex> row{h33.index("1.1.1"), h33.index("1.1.2"), h33.index("1.1.3")};
    CHECK(containing_maximal_clique(h33, 3, 3, row).members() == row);
    CHECK_THROWS_AS(containing_maximal_clique(h23, 2, 3, {0}), PreconditionError);
    CHECK_THROWS_AS(containing_maximal_clique(h23, 2, 3, {h23.index("1.1"), h23.index("2.2")}), PreconditionError);
}

TEST_CASE("no smaller edge clique cover exists for small cases")
{
    CHECK(minimum_edge_clique_cover(hamming_graph(2, 2), 5) == 4);
    CHECK(minimum_edge_clique_cover(hamming_graph(2, 3), 7) == 6);
}

TEST_CASE("known competition numbers")
{
    CHECK(*known_competition_number(4, 3).value == 33);
    CHECK(*known_competition_number(5, 2).value == 50);
    CHECK(*known_competition_number(1, 7).value == 1);
    CHECK(*known_competition_number(3, 1).value == 0);
    CHECK(*known_competition_number(2, 9).value == 2);
    CHECK(*known_competition_number(3, 8).value == 6);
    for (unsigned n = 3; n <= 12; ++n) {
        std::uint64_t power = 1;
        for (unsigned i = 1; i < n; ++i)
            power *= 3;
        CHECK(*known_competition_number(n, 3).value == (n - 3) * power + 6);
        CHECK(lifted_competition_bound(n, 3, 6) == (n - 3) * power + 6);
    }

    auto open = known_competition_number(5, 4);
    CHECK_FALSE(open.value);
    REQUIRE(open.bound_offset);
    CHECK(*open.bound_offset == 256);
    auto wide = known_competition_number(4, 6);
    CHECK_FALSE(wide.value);
    CHECK_FALSE(wide.bound_offset);
}
