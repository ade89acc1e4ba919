#include <compnum/errors.hh>
#include <compnum/witness.hh>

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

using std::map;
using std::optional;
using std::pair;
using std::set;
using std::string;
using std::to_string;
using std::vector;

namespace compnum
{
    namespace
    {
        constexpr std::size_t max_listed_diagnostics = 20;

        auto edge_text(const string & a, const string & b) -> string
        {
            return "{" + (a < b ? a + "," + b : b + "," + a) + "}";
        }

        auto list_edges(const char * label, const Graph & ids_from, const vector<IndexPair> & edges) -> string
        {
            vector<string> texts;
            for (auto & [u, v] : edges)
                texts.push_back(edge_text(ids_from.id(u), ids_from.id(v)));
            std::sort(texts.begin(), texts.end());
            string result = label;
            for (std::size_t i = 0; i < texts.size() && i < max_listed_diagnostics; ++i)
                result += (i == 0 ? " " : ",") + texts[i];
            if (texts.size() > max_listed_diagnostics)
                result += ", ... (" + to_string(texts.size()) + " in total)";
            return result;
        }

        /// Edges of C(D) against those of G plus isolated vertices, when D's first |V(G)| vertices are G's in order.
        auto compare_with_target(const Graph & target, const Graph & competition, vector<string> & diagnostics) -> bool
        {
            vector<IndexPair> missing, extra;
            std::set_difference(target.edges().begin(), target.edges().end(), competition.edges().begin(),
                competition.edges().end(), std::back_inserter(missing));
            std::set_difference(competition.edges().begin(), competition.edges().end(), target.edges().begin(),
                target.edges().end(), std::back_inserter(extra));
            if (! missing.empty())
                diagnostics.push_back(list_edges("missing edges", competition, missing));
            if (! extra.empty())
                diagnostics.push_back(list_edges("extra edges", competition, extra));
            return missing.empty() && extra.empty();
        }

        auto is_maximal_clique_of(const Graph & graph, const vector<VertexIndex> & members) -> bool
        {
            if (members.size() < 2)
                return false;
            for (std::size_t i = 0; i < members.size(); ++i)
                for (std::size_t j = i + 1; j < members.size(); ++j)
                    if (! graph.adjacent(members[i], members[j]))
                        return false;
            auto common_neighbours = vector<VertexIndex>(graph.neighbours(members[0]).begin(), graph.neighbours(members[0]).end());
            for (std::size_t i = 1; i < members.size(); ++i) {
                vector<VertexIndex> next;
                auto n = graph.neighbours(members[i]);
                std::set_intersection(common_neighbours.begin(), common_neighbours.end(), n.begin(), n.end(),
                    std::back_inserter(next));
                common_neighbours = std::move(next);
            }
            return common_neighbours.empty();
        }

        auto checked_offset(const HammingTarget & h) -> std::int64_t
        {
            // (n - q) q^(n-1), possibly negative
            std::int64_t power = 1;
            for (unsigned i = 0; i + 1 < h.n; ++i)
                power *= h.q;
            return (std::int64_t(h.n) - std::int64_t(h.q)) * power;
        }

        /// Target vertices are flagged; the rest of the ordering are the extra isolated vertices.
        struct Layout
        {
            Graph target;
            vector<VertexId> extra; // in ordering order
        };

        auto layout_of(const WitnessCertificate & cert) -> Layout
        {
            Layout layout{target_graph(cert.target), {}};
            auto & target = layout.target;

            std::unordered_map<VertexId, bool> seen;
            std::size_t target_seen = 0;
            for (auto & id : cert.ordering) {
                if (! seen.emplace(id, true).second)
                    throw PreconditionError("ordering lists '" + id + "' twice");
                if (target.vertices().find(id))
                    ++target_seen;
                else
                    layout.extra.push_back(id);
            }
            if (target_seen != target.order()) {
                for (auto & id : target.ids())
                    if (! seen.contains(id))
                        throw PreconditionError("ordering is missing target vertex '" + id + "'");
            }
            if (layout.extra.size() != cert.k)
                throw PreconditionError("ordering has " + to_string(layout.extra.size()) + " vertices outside the target, but k = " +
                    to_string(cert.k));
            for (auto & [v, preds] : cert.prey_map) {
                if (! seen.contains(v))
                    throw PreconditionError("prey_map key '" + v + "' is not in the ordering");
                set<VertexId> distinct;
                for (auto & u : preds) {
                    if (! seen.contains(u))
                        throw PreconditionError("prey_map['" + v + "'] refers to unknown vertex '" + u + "'");
                    if (u == v)
                        throw PreconditionError("prey_map['" + v + "'] contains the vertex itself");
                    if (! distinct.insert(u).second)
                        throw PreconditionError("prey_map['" + v + "'] repeats '" + u + "'");
                }
            }
            return layout;
        }

        auto digraph_of(const WitnessCertificate & cert, const Layout & layout) -> Digraph
        {
            auto ids = layout.target.ids();
            ids.insert(ids.end(), layout.extra.begin(), layout.extra.end());
            vector<pair<VertexId, VertexId>> arcs;
            for (auto & [v, preds] : cert.prey_map)
                for (auto & u : preds)
                    arcs.emplace_back(u, v);
            return Digraph(std::move(ids), arcs);
        }

        auto unique_cover_size(const Graph & graph) -> optional<std::size_t>
        {
            if (! has_unique_clique_cover(graph))
                return std::nullopt;
            auto cliques = maximal_cliques(graph);
            return std::count_if(cliques.begin(), cliques.end(), [](auto & c) { return c.size() >= 2; });
        }
    }

    auto target_graph(const WitnessTarget & target) -> Graph
    {
        if (auto h = std::get_if<HammingTarget>(&target))
            return hamming_graph(h->n, h->q);
        return std::get<Graph>(target);
    }

    auto describe_target(const WitnessTarget & target) -> string
    {
        if (auto h = std::get_if<HammingTarget>(&target))
            return "H(" + to_string(h->n) + "," + to_string(h->q) + ")";
        auto & g = std::get<Graph>(target);
        return "graph on " + to_string(g.order()) + " vertices and " + to_string(g.size()) + " edges";
    }

    auto certificate_digraph(const WitnessCertificate & cert) -> Digraph
    {
        return digraph_of(cert, layout_of(cert));
    }

    auto certificate_from_digraph(WitnessTarget target, const Digraph & digraph, optional<vector<VertexId>> ordering)
        -> WitnessCertificate
    {
        auto graph = target_graph(target);
        WitnessCertificate cert;
        if (digraph.order() < graph.order())
            throw PreconditionError("digraph has fewer vertices than the target");
        cert.k = digraph.order() - graph.order();
        if (ordering)
            cert.ordering = std::move(*ordering);
        else {
            auto order = acyclic_ordering(digraph);
            if (! order.acyclic())
                throw PreconditionError("witness digraph has a directed cycle through '" + digraph.id(order.cycle.front()) + "'");
            for (auto v : *order.ordering)
                cert.ordering.push_back(digraph.id(v));
        }
        for (VertexIndex v = 0; v < digraph.order(); ++v) {
            auto & preds = cert.prey_map[digraph.id(v)];
            for (auto u : digraph.in_neighbours(v))
                preds.push_back(digraph.id(u));
            std::sort(preds.begin(), preds.end());
        }
        cert.target = std::move(target);
        return cert;
    }

    auto verify_certificate(const WitnessCertificate & cert, const VerifyOptions & options) -> VerificationReport
    {
        VerificationReport report;
        auto layout = layout_of(cert);
        auto digraph = digraph_of(cert, layout);
        auto & target = layout.target;

        // acyclicity against the stated ordering
        vector<VertexIndex> ordering;
        for (auto & id : cert.ordering)
            ordering.push_back(digraph.index(id));
        report.acyclic = is_acyclic_ordering(digraph, ordering);
        if (! report.acyclic) {
            vector<std::size_t> position(digraph.order());
            for (std::size_t i = 0; i < ordering.size(); ++i)
                position[ordering[i]] = i;
            for (auto & [u, v] : digraph.arcs())
                if (position[u] >= position[v]) {
                    report.diagnostics.push_back("arc (" + digraph.id(u) + "," + digraph.id(v) + ") points backwards in the ordering");
                    break;
                }
            auto order = acyclic_ordering(digraph);
            if (! order.acyclic()) {
                string text = "directed cycle";
                for (auto v : order.cycle)
                    text += " " + digraph.id(v);
                report.diagnostics.push_back(text);
            }
        }

        auto competition = competition_graph(digraph);
        report.competition_graph_matches = compare_with_target(target, competition, report.diagnostics);

        std::size_t nonempty = 0;
        bool all_normal = true;
        set<vector<VertexIndex>> distinct;
        for (VertexIndex v = 0; v < digraph.order(); ++v) {
            auto preds = digraph.in_neighbours(v);
            if (preds.empty()) {
                ++report.empty_prey_count;
                continue;
            }
            ++nonempty;
            vector<VertexIndex> members(preds.begin(), preds.end());
            distinct.insert(members);
            bool normal;
            if (auto h = std::get_if<HammingTarget>(&cert.target)) {
                vector<VertexId> ids;
                for (auto u : members)
                    ids.push_back(digraph.id(u));
                normal = is_hamming_maximal_clique(ids, h->n, h->q);
            }
            else
                normal = std::all_of(members.begin(), members.end(), [&](VertexIndex u) { return u < target.order(); }) &&
                    is_maximal_clique_of(target, members);
            all_normal = all_normal && normal;
        }
        report.normalized = all_normal;

        if (auto h = std::get_if<HammingTarget>(&cert.target)) {
            if (h->n >= 2 && h->q >= 2)
                report.expected_empty_prey_count = std::int64_t(cert.k) - checked_offset(*h);
        }
        else if (auto f = unique_cover_size(target))
            report.expected_empty_prey_count = std::int64_t(cert.k + target.order()) - std::int64_t(*f);

        report.passed = report.acyclic && report.competition_graph_matches;
        if (options.require_normalized) {
            if (! report.normalized)
                report.diagnostics.push_back("some nonempty in-neighbourhood is not a maximal clique of the target");
            if (distinct.size() != nonempty)
                report.diagnostics.push_back("two vertices share the same nonempty in-neighbourhood");
            if (! report.expected_empty_prey_count)
                report.diagnostics.push_back("target has no unique maximal clique cover, so normal form is undefined");
            else if (std::int64_t(report.empty_prey_count) != *report.expected_empty_prey_count)
                report.diagnostics.push_back("empty in-neighbourhood count " + to_string(report.empty_prey_count) +
                    " differs from the expected " + to_string(*report.expected_empty_prey_count));
            report.passed = report.passed && report.normalized && distinct.size() == nonempty &&
                report.expected_empty_prey_count &&
                std::int64_t(report.empty_prey_count) == *report.expected_empty_prey_count;
        }
        report.passed = report.passed && report.diagnostics.empty();
        return report;
    }

    auto normalize_witness(const Graph & graph, const CliqueFamily & cover, const Digraph & digraph, std::size_t k) -> Digraph
    {
        // map the cover onto this graph's indices
        auto & host = cover.host();
        vector<vector<VertexIndex>> members;
        for (auto & c : cover.cliques()) {
            vector<VertexIndex> m;
            for (auto v : c.members()) {
                auto mapped = graph.vertices().find(host.id(v));
                if (! mapped)
                    throw PreconditionError("cover refers to vertex '" + host.id(v) + "' outside the graph");
                m.push_back(*mapped);
            }
            std::sort(m.begin(), m.end());
            Clique(graph, m);
            members.push_back(std::move(m));
        }

        // each edge in exactly one member
        auto & edges = graph.edges();
        vector<std::size_t> owner(edges.size(), members.size());
        for (std::size_t c = 0; c < members.size(); ++c)
            for (std::size_t i = 0; i < members[c].size(); ++i)
                for (std::size_t j = i + 1; j < members[c].size(); ++j) {
                    auto e = std::lower_bound(edges.begin(), edges.end(), IndexPair{members[c][i], members[c][j]}) - edges.begin();
                    if (owner[e] != members.size())
                        throw PreconditionError("edge " + edge_text(graph.id(members[c][i]), graph.id(members[c][j])) +
                            " lies in two members of the cover");
                    owner[e] = c;
                }
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (owner[e] == members.size())
                throw PreconditionError("edge " + edge_text(graph.id(edges[e].first), graph.id(edges[e].second)) +
                    " is not covered");

        // work in an index space where graph vertices come first
        if (digraph.order() != graph.order() + k)
            throw PreconditionError("digraph has " + to_string(digraph.order()) + " vertices, expected " +
                to_string(graph.order()) + " + " + to_string(k));
        vector<VertexIndex> to_local(digraph.order());
        vector<VertexId> local_ids = graph.ids();
        for (auto & id : graph.ids())
            if (! digraph.vertices().find(id))
                throw PreconditionError("digraph is missing graph vertex '" + id + "'");
        for (VertexIndex v = 0; v < digraph.order(); ++v) {
            if (auto g = graph.vertices().find(digraph.id(v)))
                to_local[v] = *g;
            else {
                to_local[v] = local_ids.size();
                local_ids.push_back(digraph.id(v));
            }
        }
        auto n = local_ids.size();
        vector<vector<VertexIndex>> preds(n);
        for (auto & [u, v] : digraph.arcs())
            preds[to_local[v]].push_back(to_local[u]);
        for (auto & p : preds)
            std::sort(p.begin(), p.end());

        auto rebuild = [&]() {
            vector<IndexPair> arcs;
            for (VertexIndex v = 0; v < n; ++v)
                for (auto u : preds[v])
                    arcs.emplace_back(u, v);
            return Digraph::from_indices(local_ids, std::move(arcs));
        };

        auto local = rebuild();
        {
            vector<string> diff;
            if (! compare_with_target(graph, competition_graph(local), diff)) {
                string text = "competition graph of the digraph is not the graph plus isolated vertices:";
                for (auto & d : diff)
                    text += " " + d + ";";
                throw PreconditionError(text);
            }
        }
        auto order = acyclic_ordering(local);
        if (! order.acyclic())
            throw PreconditionError("digraph has a directed cycle through '" + local_ids[order.cycle.front()] + "'");
        vector<std::size_t> position(n);
        for (std::size_t i = 0; i < n; ++i)
            position[(*order.ordering)[i]] = i;

        auto member_of_edge = [&](VertexIndex a, VertexIndex b) {
            auto e = std::lower_bound(edges.begin(), edges.end(), IndexPair{std::min(a, b), std::max(a, b)}) - edges.begin();
            return owner[e];
        };

        // pass one: push every non-member in-neighbourhood onto a member. The
        // acyclic ordering stays valid because the new prey comes after all of S.
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto v_star : *order.ordering) {
                auto & here = preds[v_star];
                if (here.empty())
                    continue;
                if (here.size() == 1) {
                    here.clear();
                    changed = true;
                    continue;
                }
                auto & s = members[member_of_edge(here[0], here[1])];
                if (here == s)
                    continue;

                vector<VertexIndex> by_position = s;
                std::sort(by_position.begin(), by_position.end(),
                    [&](VertexIndex a, VertexIndex b) { return position[a] > position[b]; });
                auto last = by_position[0], second_last = by_position[1];

                optional<VertexIndex> prey;
                for (auto x : *order.ordering) {
                    auto & p = preds[x];
                    if (std::binary_search(p.begin(), p.end(), last) && std::binary_search(p.begin(), p.end(), second_last)) {
                        prey = x;
                        break;
                    }
                }
                if (! prey)
                    throw Error("normalization lost the edge " + edge_text(local_ids[last], local_ids[second_last]));
                here.clear();
                preds[*prey] = s;
                changed = true;
            }
        }

        // pass two: one prey per member
        set<vector<VertexIndex>> used;
        for (auto v : *order.ordering)
            if (! preds[v].empty() && ! used.insert(preds[v]).second)
                preds[v].clear();

        auto result = rebuild();
        std::size_t empty = 0;
        for (VertexIndex v = 0; v < n; ++v)
            if (preds[v].empty())
                ++empty;
        vector<string> diff;
        if (! compare_with_target(graph, competition_graph(result), diff) || ! is_acyclic_ordering(result, *order.ordering) ||
            empty != k + graph.order() - members.size())
            throw Error("normalization broke an invariant");
        return result;
    }

    auto lift_witness(const WitnessCertificate & base) -> WitnessCertificate
    {
        auto hamming = std::get_if<HammingTarget>(&base.target);
        if (! hamming)
            throw PreconditionError("lifting needs a certificate for a Hamming graph");
        auto q = hamming->q, n = hamming->n + 1;
        if (q < 2 || q > n - 1)
            throw PreconditionError("lifting H(" + to_string(n - 1) + "," + to_string(q) + ") needs 2 <= q <= " + to_string(n - 1));

        auto report = verify_certificate(base, VerifyOptions{.require_normalized = true});
        if (! report.passed) {
            string text = "base witness for H(" + to_string(n - 1) + "," + to_string(q) + ") is not a normalized witness:";
            for (auto & d : report.diagnostics)
                text += " " + d + ";";
            throw PreconditionError(text);
        }

        auto base_offset = checked_offset(*hamming);
        if (std::int64_t(base.k) < base_offset)
            throw PreconditionError("base k = " + to_string(base.k) + " is below (n-1-q) q^(n-2) = " + to_string(base_offset));
        std::size_t kqq = base.k - base_offset;
        if (report.empty_prey_count != kqq)
            throw PreconditionError("base has " + to_string(report.empty_prey_count) + " vertices without in-neighbours, expected " +
                to_string(kqq));

        auto base_graph = hamming_graph(n - 1, q);
        vector<VertexId> isolated, sources;
        for (auto & id : base.ordering) {
            if (! base_graph.vertices().find(id))
                isolated.push_back(id);
            auto p = base.prey_map.find(id);
            if (p == base.prey_map.end() || p->second.empty())
                sources.push_back(id);
        }
        if (sources.size() != kqq || isolated.size() < kqq)
            throw PreconditionError("base witness does not have k(H(q,q)) rewirable vertices");

        // J: the first kqq isolated vertices; the l-th one of copy i merges into
        // the l-th source (W) of copy i-1
        std::unordered_map<VertexId, std::size_t> j_position;
        for (std::size_t l = 0; l < kqq; ++l)
            j_position.emplace(isolated[l], l);

        using CopyVertex = pair<unsigned, VertexId>;
        auto representative = [&](CopyVertex v) {
            while (v.first > 1) {
                auto j = j_position.find(v.second);
                if (j == j_position.end())
                    break;
                v = {v.first - 1, sources[j->second]};
            }
            return v;
        };

        map<CopyVertex, VertexId> name;
        vector<VertexId> ids;
        std::size_t next_isolated = 0;
        auto iso_name = [&]() { return "iso/" + to_string(n) + "/" + to_string(next_isolated++); };
        for (unsigned i = 1; i <= q; ++i)
            for (auto & id : base.ordering) {
                CopyVertex v{i, id};
                if (representative(v) != v)
                    continue;
                VertexId lifted = base_graph.vertices().find(id) ? id + "." + to_string(i) : iso_name();
                name.emplace(v, lifted);
                ids.push_back(std::move(lifted));
            }
        if (ids.size() != q * base.ordering.size() - (q - 1) * kqq)
            throw Error("lift produced the wrong number of copied vertices");

        vector<pair<VertexId, VertexId>> arcs;
        for (unsigned i = 1; i <= q; ++i)
            for (auto & [prey, preds] : base.prey_map)
                for (auto & predator : preds)
                    arcs.emplace_back(predator + "." + to_string(i), name.at(representative({i, prey})));

        // sinks preying on the cliques along the new coordinate
        auto patterns = hamming_order(n - 1, q);
        for (VertexIndex p = 0; p < patterns; ++p) {
            auto sink = iso_name();
            auto prefix = hamming_vertex(p, n - 1, q).id();
            for (unsigned value = 1; value <= q; ++value)
                arcs.emplace_back(prefix + "." + to_string(value), sink);
            ids.push_back(std::move(sink));
        }

        auto total = ids.size();
        auto order_target = hamming_order(n, q);
        auto digraph = Digraph(std::move(ids), arcs);
        auto cert = certificate_from_digraph(HammingTarget{n, q}, digraph);

        if (cert.k != lifted_competition_bound(n, q, kqq) || total != order_target + cert.k)
            throw Error("lifted witness has k = " + to_string(cert.k) + ", expected " + to_string(lifted_competition_bound(n, q, kqq)));
        auto check = verify_certificate(cert, VerifyOptions{.require_normalized = true});
        if (! check.passed)
            throw Error("lifted witness failed verification: " + (check.diagnostics.empty() ? string("?") : check.diagnostics.front()));
        return cert;
    }

    auto build_witness(unsigned n, unsigned q, const WitnessCertificate & base) -> WitnessCertificate
    {
        if (q < 2 || q > n)
            throw PreconditionError("build_witness needs 2 <= q <= n");
        auto hamming = std::get_if<HammingTarget>(&base.target);
        if (! hamming || hamming->n != q || hamming->q != q)
            throw PreconditionError("base witness must be for H(" + to_string(q) + "," + to_string(q) + ")");

        auto report = verify_certificate(base);
        if (! report.passed)
            throw PreconditionError("base witness does not verify: " +
                (report.diagnostics.empty() ? string("?") : report.diagnostics.front()));

        WitnessCertificate current = base;
        if (! verify_certificate(base, VerifyOptions{.require_normalized = true}).passed) {
            auto family = maximal_clique_family(q, q);
            auto normal = normalize_witness(family.host(), family, certificate_digraph(base), base.k);
            current = certificate_from_digraph(base.target, normal);
        }

        for (unsigned dimension = q; dimension < n; ++dimension)
            current = lift_witness(current);
        return current;
    }

    auto certificate_to_json(const WitnessCertificate & cert) -> Json
    {
        Json target;
        if (auto h = std::get_if<HammingTarget>(&cert.target))
            target["hamming"] = Json::array({h->n, h->q});
        else
            target["graph"] = graph_to_json(std::get<Graph>(cert.target));

        Json prey = Json::object();
        for (auto & id : cert.ordering) {
            auto p = cert.prey_map.find(id);
            auto list = p == cert.prey_map.end() ? vector<VertexId>{} : p->second;
            std::sort(list.begin(), list.end());
            prey[id] = list;
        }
        return Json{{"target", target}, {"k", cert.k}, {"ordering", cert.ordering}, {"prey_map", prey}};
    }

    auto certificate_from_json(const Json & json) -> WitnessCertificate
    {
        if (! json.is_object())
            throw ParseError("certificate must be a JSON object");
        for (auto field : {"target", "k", "ordering", "prey_map"})
            if (! json.contains(field))
                throw ParseError(string("certificate is missing '") + field + "'");

        WitnessCertificate cert;
        auto & target = json["target"];
        if (target.is_object() && target.contains("hamming")) {
            auto & h = target["hamming"];
            if (! h.is_array() || h.size() != 2 || ! h[0].is_number_unsigned() || ! h[1].is_number_unsigned())
                throw ParseError("target.hamming must be [n, q]");
            cert.target = HammingTarget{h[0].get<unsigned>(), h[1].get<unsigned>()};
        }
        else if (target.is_object() && target.contains("graph"))
            cert.target = graph_from_json(target["graph"]);
        else
            throw ParseError("target must be {\"hamming\": [n, q]} or {\"graph\": ...}");

        if (! json["k"].is_number_unsigned())
            throw ParseError("k must be a non-negative integer");
        cert.k = json["k"].get<std::size_t>();

        if (! json["ordering"].is_array())
            throw ParseError("ordering must be an array of ids");
        for (std::size_t i = 0; i < json["ordering"].size(); ++i) {
            if (! json["ordering"][i].is_string())
                throw ParseError("ordering[" + to_string(i) + "] is not a string");
            cert.ordering.push_back(json["ordering"][i].get<string>());
        }

        if (! json["prey_map"].is_object())
            throw ParseError("prey_map must be an object");
        for (auto & [id, list] : json["prey_map"].items()) {
            if (! list.is_array())
                throw ParseError("prey_map['" + id + "'] must be an array");
            auto & preds = cert.prey_map[id];
            for (std::size_t i = 0; i < list.size(); ++i) {
                if (! list[i].is_string())
                    throw ParseError("prey_map['" + id + "'][" + to_string(i) + "] is not a string");
                preds.push_back(list[i].get<string>());
            }
        }
        return cert;
    }

    auto certificate_to_dot(const WitnessCertificate & cert) -> string
    {
        auto digraph = certificate_digraph(cert);
        return digraph_to_dot(digraph, "witness");
    }
}
