#include <compnum/errors.hh>
#include <compnum/graph.hh>

#include <algorithm>
#include <functional>
#include <queue>
#include <set>
#include <string>

using std::optional;
using std::pair;
using std::span;
using std::string;
using std::to_string;
using std::vector;

namespace compnum
{
    VertexSet::VertexSet(vector<VertexId> ids) :
        _ids(std::move(ids))
    {
        _index.reserve(_ids.size());
        for (VertexIndex v = 0; v < _ids.size(); ++v)
            if (! _index.emplace(_ids[v], v).second)
                throw GraphError("duplicate vertex id '" + _ids[v] + "'");
    }

    auto VertexSet::find(const VertexId & id) const -> optional<VertexIndex>
    {
        auto i = _index.find(id);
        if (i == _index.end())
            return std::nullopt;
        return i->second;
    }

    auto VertexSet::index(const VertexId & id) const -> VertexIndex
    {
        auto v = find(id);
        if (! v)
            throw GraphError("unknown vertex '" + id + "'");
        return *v;
    }

    namespace
    {
        auto resolve_pairs(const VertexSet & vertices, const vector<pair<VertexId, VertexId>> & pairs,
            const char * what) -> vector<IndexPair>
        {
            vector<IndexPair> result;
            result.reserve(pairs.size());
            for (auto & [a, b] : pairs) {
                auto u = vertices.find(a), v = vertices.find(b);
                if (! u || ! v)
                    throw GraphError(string(what) + " {" + a + "," + b + "} has an undeclared endpoint '" + (u ? b : a) + "'");
                result.emplace_back(*u, *v);
            }
            return result;
        }
    }

    Graph::Graph(vector<VertexId> vertices, const vector<pair<VertexId, VertexId>> & edges)
    {
        VertexSet vs(std::move(vertices));
        auto indexed = resolve_pairs(vs, edges, "edge");
        *this = from_indices(vs.ids(), std::move(indexed));
    }

    auto Graph::from_indices(vector<VertexId> vertices, vector<IndexPair> edges) -> Graph
    {
        Graph result;
        result._vertices = VertexSet(std::move(vertices));
        auto n = result._vertices.size();
        for (auto & [u, v] : edges) {
            if (u >= n || v >= n)
                throw GraphError("edge endpoint index out of range");
            if (u == v)
                throw GraphError("self-loop at '" + result._vertices.id(u) + "'");
            if (u > v)
                std::swap(u, v);
        }
        std::sort(edges.begin(), edges.end());
        auto dup = std::adjacent_find(edges.begin(), edges.end());
        if (dup != edges.end())
            throw GraphError("duplicate edge {" + result._vertices.id(dup->first) + "," + result._vertices.id(dup->second) + "}");

        result._edges = std::move(edges);
        result._adjacency.assign(n, {});
        for (auto & [u, v] : result._edges) {
            result._adjacency[u].push_back(v);
            result._adjacency[v].push_back(u);
        }
        for (auto & a : result._adjacency)
            std::sort(a.begin(), a.end());
        return result;
    }

    auto Graph::adjacent(VertexIndex u, VertexIndex v) const -> bool
    {
        auto & a = _adjacency.at(u);
        return std::binary_search(a.begin(), a.end(), v);
    }

    Digraph::Digraph(vector<VertexId> vertices, const vector<pair<VertexId, VertexId>> & arcs)
    {
        VertexSet vs(std::move(vertices));
        auto indexed = resolve_pairs(vs, arcs, "arc");
        *this = from_indices(vs.ids(), std::move(indexed));
    }

    auto Digraph::from_indices(vector<VertexId> vertices, vector<IndexPair> arcs) -> Digraph
    {
        Digraph result;
        result._vertices = VertexSet(std::move(vertices));
        auto n = result._vertices.size();
        for (auto & [u, v] : arcs) {
            if (u >= n || v >= n)
                throw GraphError("arc endpoint index out of range");
            if (u == v)
                throw GraphError("self-arc at '" + result._vertices.id(u) + "'");
        }
        std::sort(arcs.begin(), arcs.end());
        auto dup = std::adjacent_find(arcs.begin(), arcs.end());
        if (dup != arcs.end())
            throw GraphError("duplicate arc (" + result._vertices.id(dup->first) + "," + result._vertices.id(dup->second) + ")");

        result._arcs = std::move(arcs);
        result._out.assign(n, {});
        result._in.assign(n, {});
        for (auto & [u, v] : result._arcs) {
            result._out[u].push_back(v);
            result._in[v].push_back(u);
        }
        for (auto & a : result._in)
            std::sort(a.begin(), a.end());
        return result;
    }

    auto Digraph::has_arc(VertexIndex tail, VertexIndex head) const -> bool
    {
        auto & a = _out.at(tail);
        return std::binary_search(a.begin(), a.end(), head);
    }

    auto competition_graph(const Digraph & digraph) -> Graph
    {
        vector<IndexPair> edges;
        for (VertexIndex x = 0; x < digraph.order(); ++x) {
            auto prey_of = digraph.in_neighbours(x);
            for (std::size_t i = 0; i < prey_of.size(); ++i)
                for (std::size_t j = i + 1; j < prey_of.size(); ++j)
                    edges.emplace_back(prey_of[i], prey_of[j]);
        }
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        return Graph::from_indices(digraph.ids(), std::move(edges));
    }

    auto acyclic_ordering(const Digraph & digraph) -> OrderingResult
    {
        auto n = digraph.order();
        vector<std::size_t> in_degree(n);
        for (VertexIndex v = 0; v < n; ++v)
            in_degree[v] = digraph.in_neighbours(v).size();

        std::priority_queue<VertexIndex, vector<VertexIndex>, std::greater<>> ready;
        for (VertexIndex v = 0; v < n; ++v)
            if (0 == in_degree[v])
                ready.push(v);

        vector<VertexIndex> order;
        order.reserve(n);
        while (! ready.empty()) {
            auto v = ready.top();
            ready.pop();
            order.push_back(v);
            for (auto w : digraph.out_neighbours(v))
                if (0 == --in_degree[w])
                    ready.push(w);
        }

        OrderingResult result;
        if (order.size() == n) {
            result.ordering = std::move(order);
            return result;
        }

        // every leftover vertex has an in-arc from another leftover vertex, so walking
        // backwards along such arcs must revisit something
        VertexIndex start = n;
        for (VertexIndex v = 0; v < n; ++v)
            if (in_degree[v] > 0) {
                start = v;
                break;
            }

        vector<VertexIndex> walk;
        vector<std::size_t> seen_at(n, n);
        auto v = start;
        while (seen_at[v] == n) {
            seen_at[v] = walk.size();
            walk.push_back(v);
            for (auto u : digraph.in_neighbours(v))
                if (in_degree[u] > 0) {
                    v = u;
                    break;
                }
        }

        vector<VertexIndex> cycle(walk.begin() + seen_at[v], walk.end());
        std::reverse(cycle.begin(), cycle.end());
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        result.cycle = std::move(cycle);
        return result;
    }

    auto is_acyclic_ordering(const Digraph & digraph, span<const VertexIndex> ordering) -> bool
    {
        auto n = digraph.order();
        if (ordering.size() != n)
            return false;
        vector<std::size_t> position(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            if (ordering[i] >= n || position[ordering[i]] != n)
                return false;
            position[ordering[i]] = i;
        }
        return std::all_of(digraph.arcs().begin(), digraph.arcs().end(),
            [&](const IndexPair & a) { return position[a.first] < position[a.second]; });
    }

    auto in_neighbourhood(const Digraph & digraph, const VertexId & v) -> vector<VertexId>
    {
        vector<VertexId> result;
        for (auto u : digraph.in_neighbours(digraph.index(v)))
            result.push_back(digraph.id(u));
        return result;
    }

    namespace
    {
        template <typename Callback_>
        auto for_each_triangle(const Graph & graph, Callback_ && callback) -> void
        {
            vector<VertexIndex> common;
            for (VertexIndex u = 0; u < graph.order(); ++u) {
                auto nu = graph.neighbours(u);
                for (auto v : nu) {
                    if (v <= u)
                        continue;
                    auto nv = graph.neighbours(v);
                    common.clear();
                    std::set_intersection(std::upper_bound(nu.begin(), nu.end(), v), nu.end(),
                        std::upper_bound(nv.begin(), nv.end(), v), nv.end(), std::back_inserter(common));
                    for (auto w : common)
                        callback(Triangle{{u, v, w}});
                }
            }
        }
    }

    auto triangles(const Graph & graph) -> vector<Triangle>
    {
        vector<Triangle> result;
        for_each_triangle(graph, [&](const Triangle & t) { result.push_back(t); });
        return result;
    }

    auto per_vertex_triangle_counts(const Graph & graph) -> vector<std::size_t>
    {
        vector<std::size_t> result(graph.order(), 0);
        for_each_triangle(graph, [&](const Triangle & t) {
            for (auto v : t.members)
                ++result[v];
        });
        return result;
    }

    auto count_triangles(const Graph & graph) -> std::size_t
    {
        std::size_t result = 0;
        for_each_triangle(graph, [&](const Triangle &) { ++result; });
        return result;
    }

    auto induced_subgraph(const Graph & graph, const vector<VertexId> & subset) -> Graph
    {
        vector<VertexIndex> indices;
        indices.reserve(subset.size());
        for (auto & id : subset)
            indices.push_back(graph.index(id));
        return induced_subgraph(graph, indices);
    }

    auto induced_subgraph(const Graph & graph, span<const VertexIndex> subset) -> Graph
    {
        auto n = graph.order();
        vector<bool> chosen(n, false);
        for (auto v : subset) {
            if (v >= n)
                throw GraphError("induced subgraph vertex index out of range");
            chosen[v] = true;
        }

        vector<std::size_t> new_index(n, n);
        vector<VertexId> ids;
        for (VertexIndex v = 0; v < n; ++v)
            if (chosen[v]) {
                new_index[v] = ids.size();
                ids.push_back(graph.id(v));
            }

        vector<IndexPair> edges;
        for (auto & [u, v] : graph.edges())
            if (chosen[u] && chosen[v])
                edges.emplace_back(new_index[u], new_index[v]);
        return Graph::from_indices(std::move(ids), std::move(edges));
    }

    auto add_isolated(const Graph & graph, std::size_t k, const string & prefix) -> Graph
    {
        auto ids = graph.ids();
        for (std::size_t i = 0, added = 0; added < k; ++i) {
            auto candidate = prefix + "/" + to_string(i);
            if (graph.vertices().find(candidate))
                continue;
            ids.push_back(std::move(candidate));
            ++added;
        }
        return Graph::from_indices(std::move(ids), graph.edges());
    }

    auto relabel(const Graph & graph, const vector<VertexId> & new_ids) -> Graph
    {
        if (new_ids.size() != graph.order())
            throw PreconditionError("relabel needs one new id per vertex");
        return Graph::from_indices(new_ids, graph.edges());
    }

    auto permute_vertices(const Graph & graph, span<const VertexIndex> perm) -> Graph
    {
        auto n = graph.order();
        if (perm.size() != n)
            throw PreconditionError("permutation has the wrong length");
        vector<std::size_t> position(n, n);
        vector<VertexId> ids;
        for (std::size_t i = 0; i < n; ++i) {
            if (perm[i] >= n || position[perm[i]] != n)
                throw PreconditionError("not a permutation");
            position[perm[i]] = i;
            ids.push_back(graph.id(perm[i]));
        }
        vector<IndexPair> edges;
        for (auto & [u, v] : graph.edges())
            edges.emplace_back(position[u], position[v]);
        return Graph::from_indices(std::move(ids), std::move(edges));
    }

    auto same_graph(const Graph & a, const Graph & b) -> bool
    {
        if (a.order() != b.order() || a.size() != b.size())
            return false;
        for (auto & id : a.ids())
            if (! b.vertices().find(id))
                return false;
        std::set<pair<VertexId, VertexId>> ea, eb;
        auto key = [](const VertexId & x, const VertexId & y) { return x < y ? pair{x, y} : pair{y, x}; };
        for (auto & [u, v] : a.edges())
            ea.insert(key(a.id(u), a.id(v)));
        for (auto & [u, v] : b.edges())
            eb.insert(key(b.id(u), b.id(v)));
        return ea == eb;
    }

    namespace
    {
        auto bron_kerbosch(const Graph & graph, vector<VertexIndex> & current, vector<VertexIndex> candidates,
            vector<VertexIndex> excluded, vector<vector<VertexIndex>> & out) -> void
        {
            if (candidates.empty()) {
                if (excluded.empty()) {
                    auto clique = current;
                    std::sort(clique.begin(), clique.end());
                    out.push_back(std::move(clique));
                }
                return;
            }

            auto intersect = [&](const vector<VertexIndex> & set, VertexIndex v) {
                vector<VertexIndex> result;
                auto nv = graph.neighbours(v);
                std::set_intersection(set.begin(), set.end(), nv.begin(), nv.end(), std::back_inserter(result));
                return result;
            };

            VertexIndex pivot = candidates.front();
            std::size_t best = 0;
            for (auto * pool : {&candidates, &excluded})
                for (auto u : *pool) {
                    auto hits = intersect(candidates, u).size();
                    if (hits > best) {
                        best = hits;
                        pivot = u;
                    }
                }

            vector<VertexIndex> branch;
            auto np = graph.neighbours(pivot);
            std::set_difference(candidates.begin(), candidates.end(), np.begin(), np.end(), std::back_inserter(branch));
            for (auto v : branch) {
                current.push_back(v);
                bron_kerbosch(graph, current, intersect(candidates, v), intersect(excluded, v), out);
                current.pop_back();
                candidates.erase(std::lower_bound(candidates.begin(), candidates.end(), v));
                excluded.insert(std::lower_bound(excluded.begin(), excluded.end(), v), v);
            }
        }
    }

    auto maximal_cliques(const Graph & graph) -> vector<vector<VertexIndex>>
    {
        vector<vector<VertexIndex>> result;
        vector<VertexIndex> current, all(graph.order());
        for (VertexIndex v = 0; v < graph.order(); ++v)
            all[v] = v;
        bron_kerbosch(graph, current, std::move(all), {}, result);
        std::sort(result.begin(), result.end());
        return result;
    }

    auto has_unique_clique_cover(const Graph & graph) -> bool
    {
        vector<std::size_t> hits(graph.size(), 0);
        auto & edges = graph.edges();
        for (auto & c : maximal_cliques(graph))
            for (std::size_t i = 0; i < c.size(); ++i)
                for (std::size_t j = i + 1; j < c.size(); ++j) {
                    auto e = std::lower_bound(edges.begin(), edges.end(), IndexPair{c[i], c[j]}) - edges.begin();
                    if (++hits[e] > 1)
                        return false;
                }
        return true;
    }
}
