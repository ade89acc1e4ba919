#include <compnum/census.hh>
#include <compnum/errors.hh>
#include <compnum/hamming.hh>

#include <algorithm>
#include <atomic>
#include <bit>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>

using std::pair;
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

        auto indices_of(uint64_t mask) -> vector<VertexIndex>
        {
            vector<VertexIndex> result;
            for (; mask; mask &= mask - 1)
                result.push_back(std::countr_zero(mask));
            return result;
        }

        struct Host
        {
            size_t n = 0;
            vector<uint64_t> triangles;
            vector<vector<uint64_t>> pairs; // pairs[v]: the other two vertices of each triangle through v

            explicit Host(const Graph & graph) :
                n(graph.order()),
                pairs(graph.order())
            {
                for (auto & t : compnum::triangles(graph)) {
                    auto [a, b, c] = t.members;
                    triangles.push_back(bit(a) | bit(b) | bit(c));
                    pairs[a].push_back(bit(b) | bit(c));
                    pairs[b].push_back(bit(a) | bit(c));
                    pairs[c].push_back(bit(a) | bit(b));
                }
            }

            auto count_within(uint64_t mask) const -> size_t
            {
                size_t count = 0;
                for (auto t : triangles)
                    if ((t & mask) == t)
                        ++count;
                return count;
            }
        };

        enum class Mode
        {
            find_max,
            collect,
            unpruned
        };

        class Enumerator
        {
        private:
            const Host & _host;
            size_t _m;
            Mode _mode;
            std::atomic<std::int64_t> & _best;
            std::int64_t _target;
            uint64_t _full;
            vector<size_t> _scratch;

            auto added(VertexIndex v, uint64_t chosen) const -> size_t
            {
                size_t count = 0;
                for (auto p : _host.pairs[v])
                    if ((p & chosen) == p)
                        ++count;
                return count;
            }

            /// Most triangles that r more vertices from the candidates could add.
            auto bound(uint64_t chosen, uint64_t candidates, size_t r) -> size_t
            {
                auto available = chosen | candidates;
                std::fill(_scratch.begin(), _scratch.end(), 0);
                size_t touching = 0;
                for (auto t : _host.triangles)
                    if ((t & available) == t && (t & candidates)) {
                        ++touching;
                        for (auto m = t & candidates; m; m &= m - 1)
                            ++_scratch[std::countr_zero(m)];
                    }
                std::partial_sort(_scratch.begin(), _scratch.begin() + std::min(r, _scratch.size()), _scratch.end(),
                    std::greater<>());
                size_t top = 0;
                for (size_t i = 0; i < r && i < _scratch.size(); ++i)
                    top += _scratch[i];
                return std::min(touching, top);
            }

            auto raise_best(std::int64_t value) -> void
            {
                auto current = _best.load();
                while (value > current && ! _best.compare_exchange_weak(current, value))
                    ;
            }

        public:
            uint64_t examined = 0;
            std::int64_t local_best = -1;
            vector<uint64_t> found;

            Enumerator(const Host & host, size_t m, Mode mode, std::atomic<std::int64_t> & best, std::int64_t target) :
                _host(host),
                _m(m),
                _mode(mode),
                _best(best),
                _target(target),
                _full(host.n == 64 ? ~uint64_t{0} : bit(host.n) - 1),
                _scratch(host.n)
            {
            }

            auto dfs(VertexIndex start, uint64_t chosen, size_t size, size_t count) -> void
            {
                if (size == _m) {
                    ++examined;
                    auto t = std::int64_t(count);
                    switch (_mode) {
                    case Mode::find_max: raise_best(t); break;
                    case Mode::collect:
                        if (t == _target)
                            found.push_back(chosen);
                        break;
                    case Mode::unpruned:
                        if (t > local_best) {
                            local_best = t;
                            found.clear();
                        }
                        if (t == local_best)
                            found.push_back(chosen);
                        break;
                    }
                    return;
                }
                auto r = _m - size;
                if (_host.n < start + r)
                    return;

                if (_mode != Mode::unpruned) {
                    auto candidates = _full & ~(bit(start) - 1);
                    auto limit = std::int64_t(count + bound(chosen, candidates, r));
                    if (_mode == Mode::find_max ? limit <= _best.load() : limit < _target) {
                        examined += binomial(_host.n - start, r);
                        return;
                    }
                }

                for (VertexIndex v = start; v + r <= _host.n; ++v)
                    dfs(v + 1, chosen | bit(v), size + 1, count + added(v, chosen));
            }
        };

        struct Shard
        {
            uint64_t chosen;
            VertexIndex start;
            size_t size, count;
        };

        auto make_shards(const Host & host, size_t m) -> vector<Shard>
        {
            vector<Shard> shards;
            if (m < 2) {
                shards.push_back({0, 0, 0, 0});
                return shards;
            }
            for (VertexIndex a = 0; a < host.n; ++a)
                for (VertexIndex b = a + 1; b < host.n; ++b)
                    if (host.n - b - 1 >= m - 2)
                        shards.push_back({bit(a) | bit(b), b + 1, 2, 0});
            return shards;
        }

        struct PassResult
        {
            uint64_t examined = 0;
            std::int64_t best = -1;
            vector<uint64_t> found;
        };

        auto run_pass(const Host & host, size_t m, Mode mode, std::int64_t target, unsigned jobs, const vector<Shard> & shards)
            -> PassResult
        {
            std::atomic<std::int64_t> best{-1};
            vector<Enumerator> results;
            results.reserve(shards.size());
            for (size_t i = 0; i < shards.size(); ++i)
                results.emplace_back(host, m, mode, best, target);

            std::atomic<size_t> next{0};
            auto worker = [&]() {
                for (size_t i; (i = next++) < shards.size();)
                    results[i].dfs(shards[i].start, shards[i].chosen, shards[i].size, shards[i].count);
            };
            vector<std::thread> threads;
            for (unsigned j = 1; j < std::max(1u, jobs); ++j)
                threads.emplace_back(worker);
            worker();
            for (auto & t : threads)
                t.join();

            // merge in shard order so the result does not depend on scheduling
            PassResult merged;
            merged.best = best.load();
            for (auto & r : results) {
                merged.examined += r.examined;
                merged.best = std::max(merged.best, r.local_best);
            }
            for (auto & r : results)
                if (mode == Mode::collect || r.local_best == merged.best)
                    merged.found.insert(merged.found.end(), r.found.begin(), r.found.end());
            return merged;
        }

        auto triangle_free_edges(const Graph & graph) -> vector<IndexPair>
        {
            vector<bool> in_triangle(graph.size(), false);
            auto & edges = graph.edges();
            auto mark = [&](VertexIndex a, VertexIndex b) {
                in_triangle[std::lower_bound(edges.begin(), edges.end(), IndexPair{a, b}) - edges.begin()] = true;
            };
            for (auto & t : triangles(graph)) {
                auto [a, b, c] = t.members;
                mark(a, b);
                mark(a, c);
                mark(b, c);
            }
            vector<IndexPair> result;
            for (size_t e = 0; e < edges.size(); ++e)
                if (! in_triangle[e])
                    result.push_back(edges[e]);
            return result;
        }

        auto without_edges(const Graph & graph, const vector<IndexPair> & removed) -> Graph
        {
            vector<IndexPair> kept;
            std::set_difference(graph.edges().begin(), graph.edges().end(), removed.begin(), removed.end(),
                std::back_inserter(kept));
            return Graph::from_indices(graph.ids(), std::move(kept));
        }

        constexpr size_t max_droppable_edges = 16;

        auto classes_to_json(const vector<ExtremalClass> & classes) -> Json
        {
            Json result = Json::array();
            for (auto & c : classes) {
                Json dropped = Json::array();
                for (auto & [a, b] : c.dropped_edges)
                    dropped.push_back({a, b});
                result.push_back({{"graph6", c.form.graph6()}, {"representative", c.representative},
                    {"dropped_edges", dropped}, {"multiplicity", c.multiplicity}});
            }
            return result;
        }

        auto class_graph(const Graph & host, const ExtremalClass & c) -> Graph
        {
            auto induced = induced_subgraph(host, c.representative);
            vector<IndexPair> removed;
            for (auto & [a, b] : c.dropped_edges) {
                auto u = induced.index(a), v = induced.index(b);
                removed.emplace_back(std::min(u, v), std::max(u, v));
            }
            std::sort(removed.begin(), removed.end());
            return without_edges(induced, removed);
        }

        auto item(CheckReport & report, string name, bool passed, string detail) -> void
        {
            report.items.push_back({std::move(name), passed, std::move(detail)});
        }

        auto finish(CheckReport & report) -> CheckReport &
        {
            report.passed = ! report.items.empty() &&
                std::all_of(report.items.begin(), report.items.end(), [](auto & i) { return i.passed; });
            return report;
        }

        auto h3_census(unsigned jobs, size_t m) -> CensusReport
        {
            CensusOptions options;
            options.jobs = jobs;
            options.keep_subsets = true;
            return max_triangle_census(hamming_graph(3, 3), m, options, "hamming:3,3");
        }

        auto patterns_from(const CensusReport & ten, const CensusReport & eleven) -> PatternGraphs
        {
            auto host = hamming_graph(3, 3);
            PatternGraphs patterns;
            patterns.h1 = hamming_graph(2, 3);
            patterns.h1_form = canonical_form(patterns.h1);
            auto h1_plus = canonical_form(add_isolated(patterns.h1, 1));

            if (ten.max_triangles != 6 || ten.extremal_classes.size() != 2)
                throw Error("census of H(3,3) at 10 vertices found " + to_string(ten.extremal_classes.size()) +
                    " classes with " + to_string(ten.max_triangles) + " triangles; expected two with 6");
            auto other = std::find_if(ten.extremal_classes.begin(), ten.extremal_classes.end(),
                [&](auto & c) { return c.form != h1_plus; });
            if (std::count_if(ten.extremal_classes.begin(), ten.extremal_classes.end(), [&](auto & c) { return c.form == h1_plus; }) != 1)
                throw Error("census of H(3,3) at 10 vertices has no class isomorphic to H(2,3) plus an isolated vertex");
            patterns.h2 = class_graph(host, *other);
            patterns.h2_form = other->form;

            if (eleven.max_triangles != 7 || eleven.extremal_classes.size() != 1)
                throw Error("census of H(3,3) at 11 vertices found " + to_string(eleven.extremal_classes.size()) +
                    " classes with " + to_string(eleven.max_triangles) + " triangles; expected one with 7");
            patterns.h3 = class_graph(host, eleven.extremal_classes.front());
            patterns.h3_form = eleven.extremal_classes.front().form;
            return patterns;
        }
    }

    auto binomial(uint64_t n, uint64_t r) -> uint64_t
    {
        if (r > n)
            return 0;
        r = std::min(r, n - r);
        // exact at every step: result * (n - i) is divisible by i + 1
        unsigned __int128 result = 1;
        for (uint64_t i = 0; i < r; ++i) {
            result = result * (n - i) / (i + 1);
            if (result > std::numeric_limits<uint64_t>::max())
                throw std::overflow_error("binomial coefficient exceeds 64 bits");
        }
        return uint64_t(result);
    }

    auto max_triangle_census(const Graph & host_graph, size_t m, const CensusOptions & options, const string & host_tag)
        -> CensusReport
    {
        auto start_time = std::chrono::steady_clock::now();
        if (host_graph.order() > max_census_host_order)
            throw SizeError("census hosts are limited to " + to_string(max_census_host_order) + " vertices");
        if (m > host_graph.order())
            throw PreconditionError("subset size " + to_string(m) + " exceeds the host's " + to_string(host_graph.order()) +
                " vertices");
        auto total = binomial(host_graph.order(), m);
        if (total > options.max_subsets)
            throw SizeError("C(" + to_string(host_graph.order()) + "," + to_string(m) + ") = " + to_string(total) +
                " subsets exceeds the cap of " + to_string(options.max_subsets) + "; raise max_subsets to proceed");
        if (options.classify && m > max_canonical_order)
            throw SizeError("classification needs subsets of at most " + to_string(max_canonical_order) +
                " vertices; disable it for larger m");

        Host host(host_graph);
        auto shards = make_shards(host, m);
        PassResult pass;
        if (options.prune) {
            auto first = run_pass(host, m, Mode::find_max, 0, options.jobs, shards);
            if (first.examined != total)
                throw Error("census accounting mismatch in the first pass");
            pass = run_pass(host, m, Mode::collect, first.best, options.jobs, shards);
            pass.best = first.best;
        }
        else
            pass = run_pass(host, m, Mode::unpruned, 0, options.jobs, shards);
        if (pass.examined != total)
            throw Error("census examined " + to_string(pass.examined) + " subsets, expected " + to_string(total));

        CensusReport report;
        report.host = host_tag;
        report.subset_size = m;
        report.max_triangles = size_t(pass.best);
        report.subsets_examined = pass.examined;
        report.shards = shards.size();
        report.extremal_subset_count = pass.found.size();

        vector<vector<VertexIndex>> subsets;
        for (auto mask : pass.found)
            subsets.push_back(indices_of(mask));
        std::sort(subsets.begin(), subsets.end());

        if (options.classify) {
            std::map<CanonicalForm, ExtremalClass> induced;
            for (auto & s : subsets) {
                auto graph = induced_subgraph(host_graph, std::span<const VertexIndex>(s));
                if (count_triangles(graph) != report.max_triangles)
                    throw Error("extremal subset does not have the maximum triangle count");
                auto form = canonical_form(graph);
                auto [it, fresh] = induced.try_emplace(form);
                if (fresh) {
                    it->second.form = form;
                    it->second.representative = graph.ids();
                }
                ++it->second.multiplicity;
            }

            std::map<CanonicalForm, ExtremalClass> spanning;
            for (auto & [form, c] : induced) {
                report.induced_classes.push_back(c);
                auto graph = induced_subgraph(host_graph, c.representative);
                auto droppable = triangle_free_edges(graph);
                if (droppable.size() > max_droppable_edges)
                    throw SizeError("extremal subgraph has " + to_string(droppable.size()) +
                        " edges outside triangles; too many to classify its subgraphs");
                for (uint64_t choice = 0; choice < (uint64_t{1} << droppable.size()); ++choice) {
                    vector<IndexPair> removed;
                    for (auto c2 = choice; c2; c2 &= c2 - 1)
                        removed.push_back(droppable[std::countr_zero(c2)]);
                    auto variant = canonical_form(without_edges(graph, removed));
                    auto [it, fresh] = spanning.try_emplace(variant);
                    if (fresh) {
                        it->second.form = variant;
                        it->second.representative = c.representative;
                        for (auto & [a, b] : removed)
                            it->second.dropped_edges.emplace_back(graph.id(a), graph.id(b));
                    }
                    it->second.multiplicity += c.multiplicity;
                }
            }
            for (auto & [form, c] : spanning)
                report.extremal_classes.push_back(c);
        }

        if (options.keep_subsets)
            report.extremal_subsets = std::move(subsets);
        report.elapsed = std::chrono::steady_clock::now() - start_time;
        return report;
    }

    auto census_report_to_json(const CensusReport & report) -> Json
    {
        Json json{{"host", report.host}, {"subset_size", report.subset_size}, {"max_triangles", report.max_triangles},
            {"extremal_classes", classes_to_json(report.extremal_classes)},
            {"induced_classes", classes_to_json(report.induced_classes)},
            {"extremal_subset_count", report.extremal_subset_count}, {"subsets_examined", report.subsets_examined},
            {"shards", report.shards}, {"elapsed_seconds", report.elapsed.count()}};
        return json;
    }

    auto derive_patterns(unsigned jobs) -> PatternGraphs
    {
        return patterns_from(h3_census(jobs, 10), h3_census(jobs, 11));
    }

    auto patterns_to_json(const PatternGraphs & patterns) -> Json
    {
        auto entry = [](const Graph & g, const CanonicalForm & form) {
            return Json{{"graph", graph_to_json(g)}, {"graph6", form.graph6()}, {"vertices", g.order()}, {"edges", g.size()},
                {"triangles", count_triangles(g)}};
        };
        return Json{{"H1", entry(patterns.h1, patterns.h1_form)}, {"H2", entry(patterns.h2, patterns.h2_form)},
            {"H3", entry(patterns.h3, patterns.h3_form)}};
    }

    auto check_report_to_json(const CheckReport & report) -> Json
    {
        Json items = Json::array();
        for (auto & i : report.items)
            items.push_back({{"name", i.name}, {"passed", i.passed}, {"detail", i.detail}});
        return Json{{"name", report.name}, {"passed", report.passed}, {"checks", items}, {"details", report.details}};
    }

    auto verify_lemma3(unsigned jobs) -> CheckReport
    {
        CheckReport report;
        report.name = "lemma3";
        auto census = h3_census(jobs, 10);
        report.details["census"] = census_report_to_json(census);

        item(report, "max_triangles", census.max_triangles == 6, "max triangles over 10-vertex subsets: " + to_string(census.max_triangles));
        item(report, "subsets_examined", census.subsets_examined == binomial(27, 10),
            to_string(census.subsets_examined) + " of C(27,10) = " + to_string(binomial(27, 10)));

        auto h1_plus = canonical_form(add_isolated(hamming_graph(2, 3), 1));
        auto & classes = census.extremal_classes;
        item(report, "class_count", classes.size() == 2, to_string(classes.size()) + " extremal classes");
        auto with_isolated = std::find_if(classes.begin(), classes.end(), [&](auto & c) { return c.form == h1_plus; });
        item(report, "h1_plus_isolated", with_isolated != classes.end() && with_isolated->multiplicity > 0,
            with_isolated == classes.end() ? "no class isomorphic to H(2,3) plus an isolated vertex"
                                           : "multiplicity " + to_string(with_isolated->multiplicity));

        auto host = hamming_graph(3, 3);
        bool other_ok = false;
        string other_detail = "missing";
        for (auto & c : classes)
            if (c.form != h1_plus) {
                auto g = class_graph(host, c);
                other_ok = g.order() == 10 && count_triangles(g) == 6;
                other_detail = "H2: " + to_string(g.order()) + " vertices, " + to_string(g.size()) + " edges, " +
                    to_string(count_triangles(g)) + " triangles, graph6 " + c.form.graph6();
            }
        item(report, "h2", other_ok, other_detail);
        return finish(report);
    }

    auto verify_lower_bound_chain(unsigned jobs) -> CheckReport
    {
        CheckReport report;
        report.name = "thm5-chain";
        auto ten = h3_census(jobs, 10);
        auto eleven = h3_census(jobs, 11);
        auto patterns = patterns_from(ten, eleven);
        auto graph = hamming_graph(3, 3);
        Host host(graph);

        // (i) which 10-vertex extremal subgraphs extend to 7 triangles
        uint64_t reaching = 0, from_h2 = 0, variants_checked = 0;
        size_t most = 0;
        for (auto & subset : ten.extremal_subsets) {
            uint64_t chosen = 0;
            for (auto v : subset)
                chosen |= bit(v);
            auto induced = induced_subgraph(graph, std::span<const VertexIndex>(subset));
            auto droppable = triangle_free_edges(induced);
            for (uint64_t choice = 0; choice < (uint64_t{1} << droppable.size()); ++choice) {
                vector<IndexPair> removed;
                vector<uint64_t> removed_masks;
                for (auto c = choice; c; c &= c - 1) {
                    auto [a, b] = droppable[std::countr_zero(c)];
                    removed.emplace_back(a, b);
                    removed_masks.push_back(bit(subset[a]) | bit(subset[b]));
                }
                ++variants_checked;
                bool is_h2 = canonical_form(without_edges(induced, removed)) == patterns.h2_form;
                for (VertexIndex v = 0; v < host.n; ++v) {
                    if (chosen & bit(v))
                        continue;
                    size_t count = 0;
                    for (auto t : host.triangles)
                        if ((t & (chosen | bit(v))) == t &&
                            std::none_of(removed_masks.begin(), removed_masks.end(), [&](uint64_t e) { return (t & e) == e; }))
                            ++count;
                    most = std::max(most, count);
                    if (count >= 7) {
                        ++reaching;
                        if (is_h2)
                            ++from_h2;
                    }
                }
            }
        }
        item(report, "i_only_h2_extends", reaching > 0 && reaching == from_h2 && most == 7,
            to_string(reaching) + " one-vertex extensions of " + to_string(variants_checked) +
                " extremal 10-vertex subgraphs reach 7 triangles, " + to_string(from_h2) + " of them from H2; maximum " +
                to_string(most));

        // (ii) one class at 11 vertices, containing an induced H2
        bool contains_h2 = false;
        for (VertexIndex drop = 0; drop < patterns.h3.order() && ! contains_h2; ++drop) {
            vector<VertexIndex> rest;
            for (VertexIndex v = 0; v < patterns.h3.order(); ++v)
                if (v != drop)
                    rest.push_back(v);
            contains_h2 = canonical_form(induced_subgraph(patterns.h3, std::span<const VertexIndex>(rest))) == patterns.h2_form;
        }
        item(report, "ii_single_class_h3",
            eleven.max_triangles == 7 && eleven.extremal_classes.size() == 1 && eleven.induced_classes.size() == 1 &&
                eleven.extremal_classes.front().form == patterns.h3_form && contains_h2,
            to_string(eleven.extremal_subset_count) + " subsets with " + to_string(eleven.max_triangles) + " triangles in " +
                to_string(eleven.extremal_classes.size()) + " class(es); H3 graph6 " + patterns.h3_form.graph6() +
                (contains_h2 ? ", contains an induced H2" : ", no induced H2"));

        // (iii) no one-vertex extension of an H3 embedding gains a triangle
        uint64_t embeddings = 0, extensions = 0;
        size_t largest = 0;
        for (auto & subset : eleven.extremal_subsets) {
            if (canonical_form(induced_subgraph(graph, std::span<const VertexIndex>(subset))) != patterns.h3_form)
                continue;
            ++embeddings;
            uint64_t chosen = 0;
            for (auto v : subset)
                chosen |= bit(v);
            for (VertexIndex v = 0; v < host.n; ++v)
                if (! (chosen & bit(v))) {
                    ++extensions;
                    largest = std::max(largest, host.count_within(chosen | bit(v)));
                }
        }
        item(report, "iii_no_extension_reaches_8", embeddings > 0 && extensions == embeddings * 16 && largest <= 7,
            to_string(embeddings) + " H3 embeddings, " + to_string(extensions) + " extensions, at most " + to_string(largest) +
                " triangles");

        report.details["census10"] = census_report_to_json(ten);
        report.details["census11"] = census_report_to_json(eleven);
        report.details["patterns"] = patterns_to_json(patterns);
        return finish(report);
    }

    auto handshake_audit(const Graph & graph) -> bool
    {
        size_t per_vertex_sum = 0;
        for (VertexIndex v = 0; v < graph.order(); ++v) {
            auto n = graph.neighbours(v);
            for (size_t i = 0; i < n.size(); ++i)
                for (size_t j = i + 1; j < n.size(); ++j)
                    if (graph.adjacent(n[i], n[j]))
                        ++per_vertex_sum;
        }
        return per_vertex_sum == 3 * triangles(graph).size();
    }
}
