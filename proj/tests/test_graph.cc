#include "support.hh"

#include <compnum/errors.hh>
#include <compnum/graph.hh>
#include <compnum/hamming.hh>

#include <doctest.h>

#include <numeric>

using namespace compnum;
using namespace compnum::testing;

using std::pair;
using std::string;
using std::vector;

TEST_CASE("graph construction rejects malformed input")
{
    CHECK_THROWS_AS(Graph({"a", "a"}, {}), GraphError);
    CHECK_THROWS_AS(Graph({"a", "b"}, {{"a", "a"}}), GraphError);
    CHECK_THROWS_AS(Graph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), GraphError);
    CHECK_THROWS_WITH_AS(Graph({"a", "b"}, {{"a", "c"}}), doctest::Contains("'c'"), GraphError);
    CHECK_THROWS_AS(Digraph({"a"}, {{"a", "a"}}), GraphError);
    CHECK_NOTHROW(Digraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}));
}

TEST_CASE("vertex order is insertion order")
{
    Graph g({"z", "a", "m"}, {{"m", "z"}});
    CHECK(g.ids() == vector<VertexId>{"z", "a", "m"});
    CHECK(g.index("m") == 2);
    CHECK(g.adjacent(0, 2));
    CHECK_FALSE(g.adjacent(0, 1));
}

TEST_CASE("competition graph examples")
{
    SUBCASE("two predators, one prey")
    {
        auto c = competition_graph(Digraph({"u", "v", "x"}, {{"u", "x"}, {"v", "x"}}));
        CHECK(c.order() == 3);
        CHECK(edge_set(c) == std::set<pair<VertexId, VertexId>>{{"u", "v"}});
    }
    SUBCASE("no arcs")
    {
        auto c = competition_graph(Digraph({"a", "b", "c"}, {}));
        CHECK(c.order() == 3);
        CHECK(c.size() == 0);
    }
    SUBCASE("three predators give a triangle")
    {
        auto c = competition_graph(Digraph({"a", "b", "c", "z"}, {{"a", "z"}, {"b", "z"}, {"c", "z"}}));
        CHECK(edge_set(c) == std::set<pair<VertexId, VertexId>>{{"a", "b"}, {"a", "c"}, {"b", "c"}});
        CHECK(c.degree(c.index("z")) == 0);
    }
}

TEST_CASE("competition graph agrees with the pairwise oracle on random digraphs")
{
    std::mt19937_64 rng(test_seed());
    for (int trial = 0; trial < 1000; ++trial) {
        auto d = random_digraph(rng, 12, trial % 2 == 0);
        auto c = competition_graph(d);
        CAPTURE(trial);
        REQUIRE(c.ids() == d.ids());
        REQUIRE(edge_set(c) == pairwise_competition_edges(d));
    }
}

TEST_CASE("acyclic ordering examples")
{
    auto path = acyclic_ordering(Digraph({"a", "b", "c"}, {{"b", "c"}, {"a", "b"}}));
    REQUIRE(path.acyclic());
    CHECK(*path.ordering == vector<VertexIndex>{0, 1, 2});

    auto two_cycle = acyclic_ordering(Digraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}));
    CHECK_FALSE(two_cycle.acyclic());
    CHECK(two_cycle.cycle == vector<VertexIndex>{0, 1});

    auto arcless = acyclic_ordering(Digraph({"b", "a"}, {}));
    REQUIRE(arcless.acyclic());
    CHECK(*arcless.ordering == vector<VertexIndex>{0, 1});
}

TEST_CASE("acyclic ordering succeeds exactly on acyclic digraphs")
{
    std::mt19937_64 rng(test_seed() + 1);
    for (int trial = 0; trial < 500; ++trial) {
        bool acyclic = trial % 2 == 0;
        auto d = random_digraph(rng, 12, acyclic);
        auto result = acyclic_ordering(d);
        CAPTURE(trial);
        if (acyclic)
            REQUIRE(result.acyclic());
        if (result.acyclic()) {
            REQUIRE(result.ordering->size() == d.order());
            REQUIRE(is_acyclic_ordering(d, *result.ordering));
        }
        else {
            auto & cycle = result.cycle;
            REQUIRE(cycle.size() >= 2);
            for (std::size_t i = 0; i < cycle.size(); ++i)
                REQUIRE(d.has_arc(cycle[i], cycle[(i + 1) % cycle.size()]));
        }
    }
}

TEST_CASE("in-neighbourhood examples")
{
    Digraph d({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}});
    CHECK(in_neighbourhood(d, "c") == vector<VertexId>{"a", "b"});
    CHECK(in_neighbourhood(d, "a").empty());
    CHECK(in_neighbourhood(Digraph({"a", "b"}, {{"a", "b"}, {"b", "a"}}), "a") == vector<VertexId>{"b"});
    CHECK_THROWS_WITH_AS(in_neighbourhood(d, "q"), doctest::Contains("'q'"), GraphError);
}

TEST_CASE("triangle examples")
{
    auto k3 = complete_graph(3);
    CHECK(count_triangles(k3) == 1);
    CHECK(per_vertex_triangle_counts(k3) == vector<std::size_t>{1, 1, 1});
    CHECK(count_triangles(cycle_graph(4)) == 0);
    CHECK(count_triangles(hamming_graph(2, 3)) == 6);
    CHECK(count_triangles(complete_graph(6)) == 20);
}

TEST_CASE("triangle handshake on random graphs")
{
    std::mt19937_64 rng(test_seed() + 2);
    for (int trial = 0; trial < 300; ++trial) {
        auto g = random_graph(rng, 1 + trial % 14, 0.1 + 0.002 * trial);
        auto list = triangles(g);
        auto counts = per_vertex_triangle_counts(g);
        REQUIRE(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == 3 * list.size());
        std::set<std::array<VertexIndex, 3>> distinct;
        for (auto & t : list) {
            REQUIRE(g.adjacent(t.members[0], t.members[1]));
            REQUIRE(g.adjacent(t.members[0], t.members[2]));
            REQUIRE(g.adjacent(t.members[1], t.members[2]));
            distinct.insert(t.members);
        }
        REQUIRE(distinct.size() == list.size());
    }
}

TEST_CASE("induced subgraph")
{
    auto h = hamming_graph(2, 3);
    CHECK(same_graph(induced_subgraph(h, h.ids()), h));
    CHECK(induced_subgraph(h, vector<VertexId>{}).order() == 0);

    auto row = induced_subgraph(h, vector<VertexId>{"1.1", "1.2", "1.3"});
    CHECK(row.order() == 3);
    CHECK(row.size() == 3);
    CHECK_THROWS_AS(induced_subgraph(h, vector<VertexId>{"1.1", "9.9"}), GraphError);

    std::mt19937_64 rng(test_seed() + 3);
    for (int trial = 0; trial < 100; ++trial) {
        auto g = random_graph(rng, 10, 0.4);
        auto perm = random_permutation(rng, 10);
        auto t_size = std::uniform_int_distribution<std::size_t>(0, 10)(rng);
        auto s_size = std::uniform_int_distribution<std::size_t>(0, t_size)(rng);
        vector<VertexIndex> t(perm.begin(), perm.begin() + t_size), s(perm.begin(), perm.begin() + s_size);
        auto es = edge_set(induced_subgraph(g, s)), et = edge_set(induced_subgraph(g, t));
        REQUIRE(std::includes(et.begin(), et.end(), es.begin(), es.end()));
    }
}

TEST_CASE("add isolated vertices")
{
    auto k3 = complete_graph(3);
    CHECK(same_graph(add_isolated(k3, 0), k3));
    auto padded = add_isolated(k3, 1);
    CHECK(padded.order() == 4);
    CHECK(padded.size() == 3);
    auto empty = add_isolated(Graph(), 3);
    CHECK(empty.order() == 3);
    CHECK(empty.size() == 0);
    CHECK(same_graph(add_isolated(Graph(), 3), empty));
}

TEST_CASE("maximal cliques and unique cover")
{
    auto h = hamming_graph(2, 3);
    CHECK(maximal_cliques(h).size() == 6);
    CHECK(has_unique_clique_cover(h));
    CHECK(has_unique_clique_cover(cycle_graph(5)));
    // Two triangles sharing an edge: the shared edge lies in both.
    Graph diamond({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}, {"b", "d"}, {"c", "d"}});
    CHECK(maximal_cliques(diamond).size() == 2);
    CHECK_FALSE(has_unique_clique_cover(diamond));
}
