#ifndef COMPNUM_GUARD_TESTS_SUPPORT_HH
#define COMPNUM_GUARD_TESTS_SUPPORT_HH 1

#include <compnum/graph.hh>
#include <compnum/hamming.hh>

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace compnum::testing
{
    /// COMPNUM_SEED overrides the fixed default so failures can be replayed.
    inline auto test_seed() -> std::uint64_t
    {
        if (auto env = std::getenv("COMPNUM_SEED"); env && *env)
            return std::stoull(env);
        return 20250101;
    }

    inline auto numbered_ids(std::size_t n, const std::string & prefix = "v") -> std::vector<VertexId>
    {
        std::vector<VertexId> ids;
        for (std::size_t i = 0; i < n; ++i)
            ids.push_back(prefix + std::to_string(i));
        return ids;
    }

    inline auto random_digraph(std::mt19937_64 & rng, std::size_t max_order, bool acyclic) -> Digraph
    {
        auto n = std::uniform_int_distribution<std::size_t>(1, max_order)(rng);
        auto density = std::uniform_real_distribution<double>(0.05, 0.6)(rng);
        std::bernoulli_distribution arc(density);
        auto ids = numbered_ids(n);
        std::vector<std::pair<VertexId, VertexId>> arcs;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = 0; v < n; ++v)
                if (u != v && (! acyclic || u < v) && arc(rng))
                    arcs.emplace_back(ids[u], ids[v]);
        std::shuffle(ids.begin(), ids.end(), rng);
        return Digraph(ids, arcs);
    }

    inline auto random_graph(std::mt19937_64 & rng, std::size_t n, double density) -> Graph
    {
        std::bernoulli_distribution edge(density);
        auto ids = numbered_ids(n);
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (edge(rng))
                    edges.emplace_back(ids[u], ids[v]);
        return Graph(ids, edges);
    }

    /// A random spanning tree plus random extra edges.
    inline auto random_connected_graph(std::mt19937_64 & rng, std::size_t n, double extra_density) -> Graph
    {
        auto ids = numbered_ids(n);
        std::set<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t v = 1; v < n; ++v) {
            auto parent = std::uniform_int_distribution<std::size_t>(0, v - 1)(rng);
            edges.emplace(parent, v);
        }
        std::bernoulli_distribution extra(extra_density);
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v)
                if (extra(rng))
                    edges.emplace(u, v);
        std::vector<std::pair<VertexId, VertexId>> named;
        for (auto [u, v] : edges)
            named.emplace_back(ids[u], ids[v]);
        return Graph(ids, named);
    }

    inline auto random_permutation(std::mt19937_64 & rng, std::size_t n) -> std::vector<VertexIndex>
    {
        std::vector<VertexIndex> perm(n);
        for (std::size_t i = 0; i < n; ++i)
            perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        return perm;
    }

    inline auto path_graph(std::size_t n) -> Graph
    {
        auto ids = numbered_ids(n);
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (std::size_t i = 0; i + 1 < n; ++i)
            edges.emplace_back(ids[i], ids[i + 1]);
        return Graph(ids, edges);
    }

    inline auto cycle_graph(std::size_t n) -> Graph
    {
        auto ids = numbered_ids(n);
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (std::size_t i = 0; i < n; ++i)
            edges.emplace_back(ids[i], ids[(i + 1) % n]);
        return Graph(ids, edges);
    }

    inline auto complete_graph(std::size_t n) -> Graph
    {
        auto ids = numbered_ids(n);
        std::vector<std::pair<VertexId, VertexId>> edges;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                edges.emplace_back(ids[i], ids[j]);
        return Graph(ids, edges);
    }

    inline auto edge_set(const Graph & graph) -> std::set<std::pair<VertexId, VertexId>>
    {
        std::set<std::pair<VertexId, VertexId>> result;
        for (auto [u, v] : graph.edges()) {
            auto a = graph.id(u), b = graph.id(v);
            result.emplace(std::min(a, b), std::max(a, b));
        }
        return result;
    }

    /// Competition graph by testing every pair for a shared prey.
    inline auto pairwise_competition_edges(const Digraph & digraph) -> std::set<std::pair<VertexId, VertexId>>
    {
        std::set<std::pair<VertexId, VertexId>> result;
        for (std::size_t u = 0; u < digraph.order(); ++u)
            for (std::size_t v = u + 1; v < digraph.order(); ++v)
                for (std::size_t w = 0; w < digraph.order(); ++w)
                    if (digraph.has_arc(u, w) && digraph.has_arc(v, w)) {
                        auto a = digraph.id(u), b = digraph.id(v);
                        result.emplace(std::min(a, b), std::max(a, b));
                        break;
                    }
        return result;
    }

    /// The maximal cliques of a graph as a cover.
    inline auto maximal_clique_cover(const Graph & g) -> CliqueFamily
    {
        auto host = std::make_shared<const Graph>(g);
        std::vector<Clique> cliques;
        for (auto & c : maximal_cliques(g))
            cliques.emplace_back(*host, c);
        return CliqueFamily(host, std::move(cliques));
    }

    struct RandomWitness
    {
        Digraph digraph;
        std::size_t k = 0;
    };

    /**
     * An arbitrary, usually far from normal, witness for a unique-cover graph:
     * each maximal clique is split into random sub-cliques covering its edges,
     * sometimes repeated, each preying on a random later vertex or a new isolated one.
     */
    inline auto random_witness(std::mt19937_64 & rng, const Graph & g) -> RandomWitness
    {
        auto cover = maximal_clique_cover(g);
        auto order = random_permutation(rng, g.order());
        std::vector<std::size_t> position(g.order());
        for (std::size_t i = 0; i < order.size(); ++i)
            position[order[i]] = i;

        std::vector<std::vector<VertexIndex>> pieces;
        std::bernoulli_distribution coin(0.5);
        for (auto & c : cover.cliques()) {
            auto & m = c.members();
            if (m.size() == 2 || coin(rng))
                pieces.push_back(m);
            else
                for (std::size_t i = 0; i < m.size(); ++i)
                    for (std::size_t j = i + 1; j < m.size(); ++j)
                        pieces.push_back({m[i], m[j]});
            if (coin(rng))
                pieces.push_back(m);
        }
        std::shuffle(pieces.begin(), pieces.end(), rng);

        std::vector<VertexId> vertices = g.ids();
        std::vector<std::pair<VertexId, VertexId>> arcs;
        std::vector<bool> used(g.order(), false);
        std::size_t k = 0;
        for (auto & piece : pieces) {
            std::size_t last = 0;
            for (auto v : piece)
                last = std::max(last, position[v]);
            std::vector<VertexIndex> later;
            for (auto i = last + 1; i < order.size(); ++i)
                if (! used[order[i]])
                    later.push_back(order[i]);
            VertexId prey;
            if (! later.empty() && coin(rng)) {
                auto v = later[std::uniform_int_distribution<std::size_t>(0, later.size() - 1)(rng)];
                used[v] = true;
                prey = g.id(v);
            }
            else {
                prey = "z" + std::to_string(k++);
                vertices.push_back(prey);
            }
            for (auto v : piece)
                arcs.emplace_back(g.id(v), prey);
        }
        for (int extra = std::uniform_int_distribution<int>(0, 2)(rng); extra > 0; --extra)
            vertices.push_back("z" + std::to_string(k++));
        return {Digraph(vertices, arcs), k};
    }
}

#endif
