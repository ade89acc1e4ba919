#include <compnum/errors.hh>
#include <compnum/solver.hh>

#include <algorithm>
#include <bit>
#include <cstring>
#include <functional>
#include <numeric>
#include <queue>
#include <tuple>
#include <unordered_set>

using std::optional;
using std::size_t;
using std::string;
using std::to_string;
using std::uint64_t;
using std::vector;

namespace compnum
{
    namespace
    {
        auto bit(VertexIndex v) -> uint64_t
        {
            return uint64_t{1} << v;
        }

        class Budget
        {
        private:
            const SolveOptions & _options;
            std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();

        public:
            uint64_t nodes = 0;
            bool exhausted = false, timed_out = false;

            explicit Budget(const SolveOptions & options) :
                _options(options)
            {
            }

            /// Counts a node; false once either limit is hit.
            auto tick() -> bool
            {
                if (exhausted)
                    return false;
                ++nodes;
                if (_options.node_limit && nodes > *_options.node_limit)
                    exhausted = true;
                else if (_options.time_limit && (nodes & 1023) == 0 &&
                    std::chrono::steady_clock::now() - _start > *_options.time_limit) {
                    exhausted = true;
                    timed_out = true;
                }
                return ! exhausted;
            }
        };

        enum class Outcome
        {
            found,
            failed,
            budget
        };

        auto check_order(const Graph & graph) -> void
        {
            if (graph.order() > max_solver_order)
                throw SizeError("exact search handles at most " + to_string(max_solver_order) + " vertices, graph has " +
                    to_string(graph.order()));
        }

        auto isolated_ids(const WitnessTarget & target, const Graph & graph, size_t k) -> vector<VertexId>
        {
            if (auto h = std::get_if<HammingTarget>(&target)) {
                vector<VertexId> ids;
                for (size_t i = 0; i < k; ++i)
                    ids.push_back("iso/" + to_string(h->n) + "/" + to_string(i));
                return ids;
            }
            auto extended = add_isolated(graph, k);
            return {extended.ids().begin() + graph.order(), extended.ids().end()};
        }

        /// Cover members as vertex masks over the graph's indices; checks the unique-cover hypothesis.
        auto cover_masks(const Graph & graph, const CliqueFamily & cover) -> vector<uint64_t>
        {
            auto & host = cover.host();
            if (host.order() != graph.order())
                throw PreconditionError("cover is over a graph with " + to_string(host.order()) + " vertices, expected " +
                    to_string(graph.order()));
            vector<VertexIndex> to_graph(host.order());
            for (VertexIndex v = 0; v < host.order(); ++v)
                to_graph[v] = graph.index(host.id(v));

            vector<uint64_t> masks;
            vector<size_t> owners(graph.size(), 0);
            for (auto & c : cover.cliques()) {
                if (c.size() < 2)
                    throw PreconditionError("cover members must have at least two vertices");
                uint64_t mask = 0;
                vector<VertexIndex> members;
                for (auto v : c.members()) {
                    members.push_back(to_graph[v]);
                    mask |= bit(to_graph[v]);
                }
                std::sort(members.begin(), members.end());
                Clique(graph, members);
                for (size_t i = 0; i < members.size(); ++i)
                    for (size_t j = i + 1; j < members.size(); ++j) {
                        auto e = std::lower_bound(graph.edges().begin(), graph.edges().end(), IndexPair{members[i], members[j]});
                        if (++owners[e - graph.edges().begin()] > 1)
                            throw PreconditionError("edge {" + graph.id(members[i]) + "," + graph.id(members[j]) +
                                "} lies in two cover members");
                    }
                masks.push_back(mask);
            }
            for (size_t e = 0; e < graph.size(); ++e)
                if (owners[e] == 0)
                    throw PreconditionError("edge {" + graph.id(graph.edges()[e].first) + "," + graph.id(graph.edges()[e].second) +
                        "} is not covered");
            return masks;
        }

        auto certificate_from_slots(const WitnessTarget & target, const Graph & graph, std::span<const VertexIndex> ordering,
            size_t k, const vector<optional<uint64_t>> & slot_prey) -> WitnessCertificate
        {
            WitnessCertificate cert;
            cert.target = target;
            cert.k = k;
            auto extra = isolated_ids(target, graph, k);
            for (auto v : ordering)
                cert.ordering.push_back(graph.id(v));
            cert.ordering.insert(cert.ordering.end(), extra.begin(), extra.end());
            for (size_t slot = 0; slot < cert.ordering.size(); ++slot) {
                auto & preds = cert.prey_map[cert.ordering[slot]];
                if (slot_prey[slot])
                    for (auto m = *slot_prey[slot]; m; m &= m - 1)
                        preds.push_back(graph.id(std::countr_zero(m)));
                std::sort(preds.begin(), preds.end());
            }
            return cert;
        }

        auto assert_sound(const WitnessCertificate & cert) -> void
        {
            auto report = verify_certificate(cert);
            if (! report.passed)
                throw Error("solver produced a certificate that does not verify: " +
                    (report.diagnostics.empty() ? string("?") : report.diagnostics.front()));
        }

        auto slot_assignment(const vector<uint64_t> & masks, std::span<const VertexIndex> ordering, size_t k)
            -> optional<vector<optional<uint64_t>>>
        {
            auto n = ordering.size();
            vector<size_t> position(n);
            for (size_t i = 0; i < n; ++i)
                position[ordering[i]] = i;

            vector<vector<size_t>> available;
            for (auto m : masks) {
                size_t complete = 0;
                for (auto r = m; r; r &= r - 1)
                    complete = std::max(complete, position[std::countr_zero(r)] + 1);
                vector<size_t> slots(n + k - complete);
                std::iota(slots.begin(), slots.end(), complete);
                available.push_back(std::move(slots));
            }
            auto matching = max_bipartite_matching(available, n + k);
            vector<optional<uint64_t>> slot_prey(n + k);
            for (size_t c = 0; c < masks.size(); ++c) {
                if (! matching[c])
                    return std::nullopt;
                slot_prey[*matching[c]] = masks[c];
            }
            return slot_prey;
        }

        /// Search over vertex orderings of a unique-cover graph, keeping every prefix feasible.
        class CoverSearch
        {
        private:
            size_t _n;
            vector<uint64_t> _masks;
            vector<vector<size_t>> _containing;
            std::int64_t _d;
            std::unordered_set<uint64_t> _dead;
            Budget & _budget;
            uint64_t _full;

            // vertices in at most k members; only these can come last
            uint64_t _may_be_last = 0;

            static constexpr size_t max_dead_states = size_t{1} << 23;

            auto gain(uint64_t placed, VertexIndex v) const -> size_t
            {
                size_t g = 0;
                for (auto c : _containing[v])
                    if ((_masks[c] & ~placed) == bit(v))
                        ++g;
                return g;
            }

            auto dfs(uint64_t placed, size_t count, size_t complete) -> Outcome
            {
                if (placed == _full)
                    return Outcome::found;
                if (! _budget.tick())
                    return Outcome::budget;

                vector<std::pair<size_t, VertexIndex>> candidates;
                for (VertexIndex v = 0; v < _n; ++v)
                    if (! (placed & bit(v)))
                        candidates.emplace_back(gain(placed, v), v);
                std::sort(candidates.begin(), candidates.end(),
                    [](auto & a, auto & b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });

                for (auto [g, v] : candidates) {
                    auto next = placed | bit(v);
                    if (count + 1 < _n && std::int64_t(complete + g) < std::int64_t(count + 2) - _d)
                        continue;
                    if (count + 1 < _n && ! (_may_be_last & ~next))
                        continue;
                    if (_dead.contains(next))
                        continue;
                    ordering.push_back(v);
                    auto outcome = dfs(next, count + 1, complete + g);
                    if (outcome != Outcome::failed)
                        return outcome;
                    ordering.pop_back();
                }
                if (_dead.size() >= max_dead_states)
                    _dead.clear();
                _dead.insert(placed);
                return Outcome::failed;
            }

        public:
            vector<VertexIndex> ordering;

            CoverSearch(size_t n, vector<uint64_t> masks, size_t k, Budget & budget) :
                _n(n),
                _masks(std::move(masks)),
                _containing(n),
                _d(std::int64_t(n + k) - std::int64_t(_masks.size())),
                _budget(budget),
                _full(n == 64 ? ~uint64_t{0} : bit(n) - 1)
            {
                for (size_t c = 0; c < _masks.size(); ++c)
                    for (auto m = _masks[c]; m; m &= m - 1)
                        _containing[std::countr_zero(m)].push_back(c);
                for (VertexIndex v = 0; v < n; ++v)
                    if (_containing[v].size() <= k)
                        _may_be_last |= bit(v);
            }

            auto run(optional<VertexIndex> root) -> Outcome
            {
                if (_d < 0)
                    return Outcome::failed;
                if (_n == 0)
                    return Outcome::found;
                if ((_d < 1 && ! _masks.empty()) || ! _may_be_last)
                    return Outcome::failed;
                if (root && _n > 1 && ! (_may_be_last & ~bit(*root)))
                    return Outcome::failed;
                if (! root)
                    return dfs(0, 0, 0);
                if (! _budget.tick())
                    return Outcome::budget;
                ordering.push_back(*root);
                auto outcome = dfs(bit(*root), 1, gain(0, *root));
                if (outcome != Outcome::found)
                    ordering.pop_back();
                return outcome;
            }
        };

        auto cover_feasibility(const WitnessTarget & target, const Graph & graph, const CliqueFamily & cover, size_t k,
            optional<VertexIndex> root, const SolveOptions & options, Budget & budget) -> FeasibilityResult
        {
            check_order(graph);
            auto masks = cover_masks(graph, cover);
            FeasibilityResult result;
            CoverSearch search(graph.order(), masks, k, budget);
            auto start_nodes = budget.nodes;
            auto outcome = search.run(root);
            result.nodes = budget.nodes - start_nodes;
            result.timed_out = budget.timed_out;
            switch (outcome) {
            case Outcome::found: {
                auto slots = slot_assignment(masks, search.ordering, k);
                if (! slots)
                    throw Error("prefix-feasible ordering has no slot assignment");
                result.certificate = certificate_from_slots(target, graph, search.ordering, k, *slots);
                assert_sound(*result.certificate);
                result.status = FeasibilityStatus::feasible;
                break;
            }
            case Outcome::failed: result.status = FeasibilityStatus::infeasible; break;
            case Outcome::budget: result.status = FeasibilityStatus::budget; break;
            }
            (void)options;
            return result;
        }

        using EdgeSet = vector<uint64_t>;

        /// Search for arbitrary graphs: each placed vertex takes a maximal clique of
        /// the earlier vertices (or nothing), the k trailing slots take maximal cliques of G.
        class GeneralSearch
        {
        private:
            const Graph & _graph;
            size_t _n, _words;
            vector<uint64_t> _adjacency;
            vector<uint64_t> _cliques; // maximal cliques of G with at least two vertices
            vector<EdgeSet> _clique_edges;
            size_t _max_clique_edges = 1;
            size_t _k;
            Budget & _budget;
            std::unordered_set<string> _dead;
            uint64_t _full;

            auto edges_of(uint64_t clique) const -> EdgeSet
            {
                EdgeSet result(_words, 0);
                auto & edges = _graph.edges();
                for (auto a = clique; a; a &= a - 1) {
                    auto u = VertexIndex(std::countr_zero(a));
                    for (auto b = clique & ~(bit(u + 1) - 1) & ~bit(u); b; b &= b - 1) {
                        auto v = VertexIndex(std::countr_zero(b));
                        auto e = size_t(std::lower_bound(edges.begin(), edges.end(), IndexPair{u, v}) - edges.begin());
                        result[e / 64] |= bit(e % 64);
                    }
                }
                return result;
            }

            static auto new_edges(const EdgeSet & covered, const EdgeSet & add) -> size_t
            {
                size_t count = 0;
                for (size_t w = 0; w < covered.size(); ++w)
                    count += std::popcount(add[w] & ~covered[w]);
                return count;
            }

            static auto merge(EdgeSet covered, const EdgeSet & add) -> EdgeSet
            {
                for (size_t w = 0; w < covered.size(); ++w)
                    covered[w] |= add[w];
                return covered;
            }

            auto uncovered_count(const EdgeSet & covered) const -> size_t
            {
                size_t count = 0;
                for (auto w : covered)
                    count += std::popcount(w);
                return _graph.size() - count;
            }

            auto bron_kerbosch(uint64_t r, uint64_t p, uint64_t x, vector<uint64_t> & out) const -> void
            {
                if (! p && ! x) {
                    if (std::popcount(r) >= 2)
                        out.push_back(r);
                    return;
                }
                VertexIndex pivot = std::countr_zero(p | x);
                int best = -1;
                for (auto m = p | x; m; m &= m - 1) {
                    auto u = VertexIndex(std::countr_zero(m));
                    int c = std::popcount(p & _adjacency[u]);
                    if (c > best) {
                        best = c;
                        pivot = u;
                    }
                }
                for (auto m = p & ~_adjacency[pivot]; m; m &= m - 1) {
                    auto v = VertexIndex(std::countr_zero(m));
                    bron_kerbosch(r | bit(v), p & _adjacency[v], x & _adjacency[v], out);
                    p &= ~bit(v);
                    x |= bit(v);
                }
            }

            auto maximal_cliques_within(uint64_t within) const -> vector<uint64_t>
            {
                vector<uint64_t> out;
                bron_kerbosch(0, within, 0, out);
                std::sort(out.begin(), out.end());
                return out;
            }

            auto key(uint64_t placed, const EdgeSet & covered) const -> string
            {
                string k(sizeof(uint64_t) * (1 + covered.size()), '\0');
                std::memcpy(k.data(), &placed, sizeof(uint64_t));
                std::memcpy(k.data() + sizeof(uint64_t), covered.data(), sizeof(uint64_t) * covered.size());
                return k;
            }

            auto final_cover(const EdgeSet & covered, size_t remaining) -> Outcome
            {
                auto uncovered = uncovered_count(covered);
                if (uncovered == 0)
                    return Outcome::found;
                if (remaining == 0 || (uncovered + _max_clique_edges - 1) / _max_clique_edges > remaining)
                    return Outcome::failed;
                if (! _budget.tick())
                    return Outcome::budget;

                size_t first = 0;
                while ((covered[first / 64] >> (first % 64)) & 1)
                    ++first;
                auto [u, v] = _graph.edges()[first];
                vector<std::pair<size_t, size_t>> options;
                for (size_t c = 0; c < _cliques.size(); ++c)
                    if ((_cliques[c] & bit(u)) && (_cliques[c] & bit(v)))
                        options.emplace_back(new_edges(covered, _clique_edges[c]), c);
                std::sort(options.begin(), options.end(),
                    [](auto & a, auto & b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
                for (auto [gain, c] : options) {
                    trailing.push_back(_cliques[c]);
                    auto outcome = final_cover(merge(covered, _clique_edges[c]), remaining - 1);
                    if (outcome != Outcome::failed)
                        return outcome;
                    trailing.pop_back();
                }
                return Outcome::failed;
            }

            auto dfs(uint64_t placed, size_t count, const EdgeSet & covered) -> Outcome
            {
                if (placed == _full)
                    return final_cover(covered, _k);
                auto uncovered = uncovered_count(covered);
                // every unplaced vertex but a first one can still take a clique
                auto slots = _n - count + _k - (count == 0 ? 1 : 0);
                if ((uncovered + _max_clique_edges - 1) / _max_clique_edges > slots)
                    return Outcome::failed;
                auto state = key(placed, covered);
                if (_dead.contains(state))
                    return Outcome::failed;
                if (! _budget.tick())
                    return Outcome::budget;

                auto cliques = maximal_cliques_within(placed);
                vector<std::tuple<size_t, uint64_t, EdgeSet>> choices;
                for (auto c : cliques) {
                    auto edges = edges_of(c);
                    if (auto gain = new_edges(covered, edges))
                        choices.emplace_back(gain, c, std::move(edges));
                }
                std::sort(choices.begin(), choices.end(), [](auto & a, auto & b) {
                    return std::get<0>(a) != std::get<0>(b) ? std::get<0>(a) > std::get<0>(b) : std::get<1>(a) < std::get<1>(b);
                });

                for (VertexIndex v = 0; v < _n; ++v) {
                    if (placed & bit(v))
                        continue;
                    ordering.push_back(v);
                    for (auto & [gain, c, edges] : choices) {
                        prey.push_back(c);
                        auto outcome = dfs(placed | bit(v), count + 1, merge(covered, edges));
                        if (outcome != Outcome::failed)
                            return outcome;
                        prey.pop_back();
                    }
                    prey.push_back(0);
                    auto outcome = dfs(placed | bit(v), count + 1, covered);
                    if (outcome != Outcome::failed)
                        return outcome;
                    prey.pop_back();
                    ordering.pop_back();
                }
                _dead.insert(std::move(state));
                return Outcome::failed;
            }

        public:
            vector<VertexIndex> ordering;
            vector<uint64_t> prey, trailing;

            GeneralSearch(const Graph & graph, size_t k, Budget & budget) :
                _graph(graph),
                _n(graph.order()),
                _words((graph.size() + 63) / 64),
                _adjacency(graph.order(), 0),
                _k(k),
                _budget(budget),
                _full(graph.order() == 64 ? ~uint64_t{0} : bit(graph.order()) - 1)
            {
                for (auto & [u, v] : graph.edges()) {
                    _adjacency[u] |= bit(v);
                    _adjacency[v] |= bit(u);
                }
                _cliques = maximal_cliques_within(_full);
                for (auto c : _cliques) {
                    _clique_edges.push_back(edges_of(c));
                    _max_clique_edges = std::max<size_t>(_max_clique_edges, std::popcount(c) * (std::popcount(c) - 1) / 2);
                }
            }

            auto run() -> Outcome
            {
                return dfs(0, 0, EdgeSet(_words, 0));
            }
        };

        auto trivial_certificate(const Graph & graph) -> WitnessCertificate
        {
            vector<uint64_t> cliques;
            for (auto & c : maximal_cliques(graph))
                if (c.size() >= 2) {
                    uint64_t m = 0;
                    for (auto v : c)
                        m |= bit(v);
                    cliques.push_back(m);
                }
            vector<VertexIndex> ordering(graph.order());
            std::iota(ordering.begin(), ordering.end(), 0);
            vector<optional<uint64_t>> slots(graph.order());
            for (auto c : cliques)
                slots.push_back(c);
            auto cert = certificate_from_slots(graph, graph, ordering, cliques.size(), slots);
            assert_sound(cert);
            return cert;
        }

        auto breadth_first_ordering(const Graph & graph) -> vector<VertexIndex>
        {
            vector<VertexIndex> order;
            vector<bool> seen(graph.order(), false);
            for (VertexIndex s = 0; s < graph.order(); ++s) {
                if (seen[s])
                    continue;
                std::queue<VertexIndex> queue;
                queue.push(s);
                seen[s] = true;
                while (! queue.empty()) {
                    auto v = queue.front();
                    queue.pop();
                    order.push_back(v);
                    for (auto w : graph.neighbours(v))
                        if (! seen[w]) {
                            seen[w] = true;
                            queue.push(w);
                        }
                }
            }
            return order;
        }

        /// Direct certificates for the closed-form cases.
        auto shortcut_certificate(const Graph & graph, size_t k) -> optional<WitnessCertificate>
        {
            if (graph.size() == 0) {
                vector<VertexIndex> ordering(graph.order());
                std::iota(ordering.begin(), ordering.end(), 0);
                return certificate_from_slots(graph, graph, ordering, 0, vector<optional<uint64_t>>(graph.order()));
            }
            auto chordal = is_chordal(graph);
            if (chordal.chordal && k == 1) {
                // reverse elimination order; each vertex's closed later neighbourhood preys on the next one
                auto & peo = chordal.elimination_ordering;
                vector<size_t> position(graph.order());
                for (size_t i = 0; i < peo.size(); ++i)
                    position[peo[i]] = i;
                vector<VertexIndex> ordering(peo.rbegin(), peo.rend());
                vector<optional<uint64_t>> slots(graph.order() + 1);
                for (size_t i = 0; i < peo.size(); ++i) {
                    uint64_t clique = bit(peo[i]);
                    for (auto w : graph.neighbours(peo[i]))
                        if (position[w] > i)
                            clique |= bit(w);
                    if (std::popcount(clique) < 2)
                        continue;
                    // slot of peo[i-1] in the reversed ordering, or the isolated vertex
                    slots[i == 0 ? graph.order() : graph.order() - i] = clique;
                }
                return certificate_from_slots(graph, graph, ordering, 1, slots);
            }
            auto masks = vector<uint64_t>{};
            for (auto & [u, v] : graph.edges())
                masks.push_back(bit(u) | bit(v));
            auto ordering = breadth_first_ordering(graph);
            if (auto slots = slot_assignment(masks, ordering, k))
                return certificate_from_slots(graph, graph, ordering, k, *slots);
            return std::nullopt;
        }

        auto general_feasibility(const Graph & graph, size_t k, Budget & budget) -> FeasibilityResult
        {
            check_order(graph);
            FeasibilityResult result;
            GeneralSearch search(graph, k, budget);
            auto start_nodes = budget.nodes;
            auto outcome = search.run();
            result.nodes = budget.nodes - start_nodes;
            result.timed_out = budget.timed_out;
            if (outcome == Outcome::found) {
                vector<optional<uint64_t>> slots;
                for (auto p : search.prey)
                    slots.push_back(p ? optional<uint64_t>(p) : std::nullopt);
                for (size_t i = 0; i < k; ++i)
                    slots.push_back(i < search.trailing.size() ? optional<uint64_t>(search.trailing[i]) : std::nullopt);
                result.certificate = certificate_from_slots(graph, graph, search.ordering, k, slots);
                assert_sound(*result.certificate);
                result.status = FeasibilityStatus::feasible;
            }
            else
                result.status = outcome == Outcome::failed ? FeasibilityStatus::infeasible : FeasibilityStatus::budget;
            return result;
        }

        auto unique_cover_family(const Graph & graph) -> CliqueFamily
        {
            auto host = std::make_shared<const Graph>(graph);
            vector<Clique> members;
            for (auto & c : maximal_cliques(graph))
                if (c.size() >= 2)
                    members.emplace_back(graph, c);
            return CliqueFamily(host, std::move(members));
        }
    }

    auto status_name(FeasibilityStatus status) -> string
    {
        switch (status) {
        case FeasibilityStatus::feasible: return "feasible";
        case FeasibilityStatus::infeasible: return "infeasible";
        case FeasibilityStatus::budget: return "budget";
        }
        return "?";
    }

    auto status_name(SolveStatus status) -> string
    {
        switch (status) {
        case SolveStatus::exact: return "exact";
        case SolveStatus::bracketed: return "bracketed";
        case SolveStatus::timeout: return "timeout";
        }
        return "?";
    }

    auto is_chordal(const Graph & graph) -> ChordalityResult
    {
        auto n = graph.order();
        vector<size_t> weight(n, 0);
        vector<bool> visited(n, false);
        vector<VertexIndex> visit;
        for (size_t step = 0; step < n; ++step) {
            optional<VertexIndex> best;
            for (VertexIndex v = 0; v < n; ++v)
                if (! visited[v] && (! best || weight[v] > weight[*best]))
                    best = v;
            visited[*best] = true;
            visit.push_back(*best);
            for (auto w : graph.neighbours(*best))
                if (! visited[w])
                    ++weight[w];
        }
        vector<VertexIndex> ordering(visit.rbegin(), visit.rend());
        ChordalityResult result;
        result.chordal = is_perfect_elimination_ordering(graph, ordering);
        if (result.chordal)
            result.elimination_ordering = std::move(ordering);
        return result;
    }

    auto is_perfect_elimination_ordering(const Graph & graph, std::span<const VertexIndex> ordering) -> bool
    {
        if (ordering.size() != graph.order())
            return false;
        vector<size_t> position(graph.order(), graph.order());
        for (size_t i = 0; i < ordering.size(); ++i) {
            if (ordering[i] >= graph.order() || position[ordering[i]] != graph.order())
                return false;
            position[ordering[i]] = i;
        }
        for (auto v : ordering) {
            vector<VertexIndex> later;
            for (auto w : graph.neighbours(v))
                if (position[w] > position[v])
                    later.push_back(w);
            for (size_t i = 0; i < later.size(); ++i)
                for (size_t j = i + 1; j < later.size(); ++j)
                    if (! graph.adjacent(later[i], later[j]))
                        return false;
        }
        return true;
    }

    auto formula_shortcut(const Graph & graph) -> optional<size_t>
    {
        if (graph.size() == 0)
            return 0;
        bool has_isolated = false;
        for (VertexIndex v = 0; v < graph.order(); ++v)
            has_isolated = has_isolated || graph.degree(v) == 0;
        if (! has_isolated && is_chordal(graph).chordal)
            return 1;
        if (! has_isolated && graph.order() >= 2 && count_triangles(graph) == 0) {
            vector<bool> seen(graph.order(), false);
            vector<VertexIndex> stack{0};
            seen[0] = true;
            size_t reached = 1;
            while (! stack.empty()) {
                auto v = stack.back();
                stack.pop_back();
                for (auto w : graph.neighbours(v))
                    if (! seen[w]) {
                        seen[w] = true;
                        ++reached;
                        stack.push_back(w);
                    }
            }
            if (reached == graph.order())
                return graph.size() + 2 - graph.order();
        }
        return std::nullopt;
    }

    auto max_bipartite_matching(const vector<vector<size_t>> & left_adjacency, size_t right_size)
        -> vector<optional<size_t>>
    {
        vector<optional<size_t>> left_match(left_adjacency.size());
        vector<optional<size_t>> right_match(right_size);
        vector<size_t> seen(right_size, 0);
        size_t round = 0;

        std::function<bool(size_t)> augment = [&](size_t u) -> bool {
            for (auto r : left_adjacency[u]) {
                if (r >= right_size)
                    throw PreconditionError("bipartite edge to right vertex " + to_string(r) + " out of range");
                if (seen[r] == round)
                    continue;
                seen[r] = round;
                if (! right_match[r] || augment(*right_match[r])) {
                    right_match[r] = u;
                    left_match[u] = r;
                    return true;
                }
            }
            return false;
        };
        for (size_t u = 0; u < left_adjacency.size(); ++u) {
            ++round;
            augment(u);
        }
        return left_match;
    }

    auto prefix_bound_violation(const Graph & graph, const CliqueFamily & cover, std::span<const VertexIndex> ordering,
        size_t k) -> optional<size_t>
    {
        if (ordering.size() != graph.order())
            throw PreconditionError("ordering must list every vertex once");
        auto & host = cover.host();
        vector<size_t> position(graph.order(), graph.order());
        for (size_t i = 0; i < ordering.size(); ++i)
            position[ordering[i]] = i;

        // completions[i] = members whose last vertex sits at position i
        vector<size_t> completions(graph.order() + 1, 0);
        for (auto & c : cover.cliques()) {
            size_t last = 0;
            for (auto v : c.members())
                last = std::max(last, position[graph.index(host.id(v))]);
            ++completions[last];
        }
        auto d = std::int64_t(graph.order() + k) - std::int64_t(cover.size());
        if (d < 0)
            return 0;
        std::int64_t complete = 0;
        for (size_t i = 0; i < graph.order(); ++i) {
            if (complete < std::int64_t(i) + 1 - d)
                return i;
            complete += completions[i];
        }
        return std::nullopt;
    }

    auto certificate_for_ordering(const WitnessTarget & target, const CliqueFamily & cover,
        std::span<const VertexIndex> ordering, size_t k) -> optional<WitnessCertificate>
    {
        auto graph = target_graph(target);
        check_order(graph);
        auto masks = cover_masks(graph, cover);
        auto slots = slot_assignment(masks, ordering, k);
        if (! slots)
            return std::nullopt;
        auto cert = certificate_from_slots(target, graph, ordering, k, *slots);
        assert_sound(cert);
        return cert;
    }

    auto feasible_k(const Graph & graph, const CliqueFamily & cover, size_t k, const SolveOptions & options)
        -> FeasibilityResult
    {
        Budget budget(options);
        return cover_feasibility(graph, graph, cover, k, std::nullopt, options, budget);
    }

    auto feasible_k_general(const Graph & graph, size_t k, const SolveOptions & options) -> FeasibilityResult
    {
        Budget budget(options);
        return general_feasibility(graph, k, budget);
    }

    auto exact_competition_number(const Graph & graph, const SolveOptions & options) -> SolveResult
    {
        check_order(graph);
        SolveResult result;

        if (options.use_shortcuts)
            if (auto k = formula_shortcut(graph)) {
                result.status = SolveStatus::exact;
                result.k = result.lower = result.upper = *k;
                result.method = "formula";
                result.certificate = shortcut_certificate(graph, *k);
                if (! result.certificate)
                    throw Error("no certificate for the closed-form value " + to_string(*k));
                assert_sound(*result.certificate);
                if (*k > 0)
                    result.infeasibility_proof.push_back({*k - 1, "formula", 0});
                return result;
            }

        auto fallback = trivial_certificate(graph);
        auto upper = fallback.k;
        auto limit = options.max_k ? std::min(*options.max_k, upper) : upper;
        bool unique = options.require_unique_cover && has_unique_clique_cover(graph);
        optional<CliqueFamily> family;
        if (unique)
            family = unique_cover_family(graph);
        result.method = unique ? "unique-cover search" : "general search";

        Budget budget(options);
        for (size_t k = 0; k <= limit; ++k) {
            auto probe = unique ? cover_feasibility(graph, graph, *family, k, std::nullopt, options, budget)
                                : general_feasibility(graph, k, budget);
            result.nodes = budget.nodes;
            if (probe.status == FeasibilityStatus::feasible) {
                result.status = SolveStatus::exact;
                result.k = result.lower = result.upper = k;
                result.certificate = std::move(probe.certificate);
                return result;
            }
            if (probe.status == FeasibilityStatus::budget) {
                result.status = probe.timed_out ? SolveStatus::timeout : SolveStatus::bracketed;
                result.lower = k;
                result.k = result.upper = upper;
                result.certificate = std::move(fallback);
                return result;
            }
            result.infeasibility_proof.push_back({k, "search", probe.nodes});
        }

        // max_k reached below the trivial bound
        result.status = SolveStatus::bracketed;
        result.lower = limit + 1;
        result.k = result.upper = upper;
        result.certificate = std::move(fallback);
        return result;
    }

    auto hamming_feasibility(unsigned n, unsigned q, size_t k, const SolveOptions & options) -> FeasibilityResult
    {
        if (n < 2 || q < 2)
            throw PreconditionError("hamming_feasibility needs n >= 2 and q >= 2");
        if (hamming_order(n, q) > max_solver_order)
            throw SizeError("H(" + to_string(n) + "," + to_string(q) + ") has more than " + to_string(max_solver_order) +
                " vertices");
        auto family = maximal_clique_family(n, q);
        Budget budget(options);
        optional<VertexIndex> root;
        if (options.symmetry_breaking)
            root = 0; // (1,...,1); H(n,q) is vertex-transitive
        return cover_feasibility(HammingTarget{n, q}, family.host(), family, k, root, options, budget);
    }

    auto solve_result_to_json(const SolveResult & result) -> Json
    {
        Json proof = Json::array();
        for (auto & e : result.infeasibility_proof)
            proof.push_back({{"k", e.k}, {"method", e.method}, {"nodes", e.nodes}});
        Json json{{"status", status_name(result.status)}, {"k", result.k}, {"lower", result.lower}, {"upper", result.upper},
            {"method", result.method}, {"nodes", result.nodes}, {"infeasibility_proof", proof}};
        json["certificate"] = result.certificate ? certificate_to_json(*result.certificate) : Json(nullptr);
        return json;
    }

    auto feasibility_to_json(const FeasibilityResult & result, size_t k) -> Json
    {
        Json json{{"status", status_name(result.status)}, {"k", k}, {"nodes", result.nodes}, {"timed_out", result.timed_out}};
        json["certificate"] = result.certificate ? certificate_to_json(*result.certificate) : Json(nullptr);
        return json;
    }
}
