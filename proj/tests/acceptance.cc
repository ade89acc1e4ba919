#include "support.hh"

#include <compnum/census.hh>
#include <compnum/errors.hh>
#include <compnum/reproduce.hh>
#include <compnum/solver.hh>

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace compnum;
using namespace compnum::testing;

using std::string;
using std::vector;

namespace
{
    struct Outcome
    {
        bool passed = true;
        std::ostringstream detail;

        auto require(bool condition, const string & what) -> void
        {
            if (! condition) {
                if (! passed)
                    detail << "; ";
                else
                    detail.str("");
                passed = false;
                detail << what;
            }
        }

        auto note(const string & what) -> void
        {
            if (passed)
                detail << (detail.tellp() > 0 ? "; " : "") << what;
        }
    };

    struct Criterion
    {
        int number;
        string name;
        double seconds_limit;
        std::function<void(Outcome &)> body;
    };

    unsigned census_jobs = 1;
    std::uint64_t seed = 0;

    auto criterion1(Outcome & o) -> void
    {
        SolveOptions options;
        options.use_shortcuts = false;
        auto result = exact_competition_number(hamming_graph(2, 3), options);
        o.require(result.status == SolveStatus::exact, "status " + status_name(result.status));
        o.require(result.k == 2, "k = " + std::to_string(result.k) + ", expected 2");
        o.require(result.certificate && verify_certificate(*result.certificate).passed, "certificate does not verify");
        auto below = feasible_k(hamming_graph(2, 3), maximal_clique_family(2, 3), 1);
        o.require(below.status == FeasibilityStatus::infeasible, "k = 1 is " + status_name(below.status));
        o.note("k(H(2,3)) = 2, k = 1 refuted in " + std::to_string(below.nodes) + " nodes");
    }

    auto criterion2(Outcome & o) -> void
    {
        auto cert = load_golden_certificate(3, 3);
        auto r = verify_certificate(cert, VerifyOptions{.require_normalized = true});
        o.require(cert.k == 6, "golden k = " + std::to_string(cert.k));
        o.require(r.passed, r.diagnostics.empty() ? "verification failed" : r.diagnostics.front());
        o.require(r.empty_prey_count == 6, "empty in-neighbourhoods " + std::to_string(r.empty_prey_count) + ", expected 6");
        o.require(r.expected_empty_prey_count == 6, "expected count is not 6 - (3-3)*9");
        o.note("k = 6, 6 empty in-neighbourhoods");
    }

    auto criterion3(Outcome & o) -> void
    {
        auto base = load_golden_certificate(3, 3);
        string values;
        for (unsigned n = 4; n <= 7; ++n) {
            auto start = std::chrono::steady_clock::now();
            auto cert = build_witness(n, 3, base);
            auto r = verify_certificate(cert, VerifyOptions{.require_normalized = true});
            double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            auto expected = *known_competition_number(n, 3).value;
            auto name = "H(" + std::to_string(n) + ",3)";
            o.require(r.passed, name + " certificate does not verify");
            o.require(cert.k == expected, name + " k = " + std::to_string(cert.k) + ", known " + std::to_string(expected));
            o.require(cert.ordering.size() == hamming_order(n, 3) + expected, name + " has the wrong vertex count");
            if (n <= 5)
                o.require(seconds < 60.0, name + " took " + std::to_string(seconds) + " s");
            std::uint64_t power = 1;
            for (unsigned i = 1; i < n; ++i)
                power *= 3;
            o.require(expected == (n - 3) * power + 6, name + " known value disagrees with the formula");
            values += (values.empty() ? "k = " : ", ") + std::to_string(cert.k);
        }
        auto h43 = build_witness(4, 3, base);
        auto h53 = build_witness(5, 3, base);
        o.require(h43.k == 33 && h43.ordering.size() == 114, "H(4,3) is not k = 33 on 114 vertices");
        o.require(h53.k == 168, "H(5,3) is not k = 168");
        o.note(values + " for n = 4..7");
    }

    auto criterion4(Outcome & o) -> void
    {
        for (auto [n, q] : vector<std::pair<unsigned, unsigned>>{{2, 2}, {2, 3}, {3, 3}, {4, 3}, {3, 2}}) {
            auto report = clique_family_report(n, q);
            for (auto & item : report.items)
                o.require(item.passed, report.name + " " + item.name + ": " + item.detail);
        }
        o.note("5 cases");
    }

    auto criterion5(Outcome & o) -> void
    {
        CensusOptions options;
        options.jobs = census_jobs;
        auto report = max_triangle_census(hamming_graph(3, 3), 10, options, "hamming:3,3");
        o.require(report.max_triangles == 6, "max triangles " + std::to_string(report.max_triangles));
        o.require(report.subsets_examined == 8'436'285, "examined " + std::to_string(report.subsets_examined));
        o.require(report.extremal_classes.size() == 2, std::to_string(report.extremal_classes.size()) + " classes");
        auto h1_plus = canonical_form(add_isolated(hamming_graph(2, 3), 1));
        bool has_h1 = std::any_of(report.extremal_classes.begin(), report.extremal_classes.end(),
            [&](auto & c) { return c.form == h1_plus; });
        o.require(has_h1, "no class isomorphic to H(2,3) plus an isolated vertex");
        auto lemma = verify_lemma3(census_jobs);
        o.require(lemma.passed, "lemma check report failed");
        o.note("max 6 over 8436285 subsets, 2 classes, " + std::to_string(census_jobs) + " job(s)");
    }

    auto criterion6(Outcome & o) -> void
    {
        auto chain = verify_lower_bound_chain(census_jobs);
        for (auto & item : chain.items)
            o.require(item.passed, item.name + ": " + item.detail);
        o.require(chain.items.size() == 3, std::to_string(chain.items.size()) + " sub-checks");
        o.note("3 sub-checks");
    }

    auto criterion7(Outcome & o) -> void
    {
        o.require(formula_shortcut(cycle_graph(4)) == 2, "C_4");
        o.require(formula_shortcut(hamming_graph(2, 2)) == 2, "H(2,2)");
        for (std::size_t n = 2; n <= 6; ++n)
            o.require(formula_shortcut(complete_graph(n)) == 1, "K_" + std::to_string(n));
        for (std::size_t n = 0; n <= 6; ++n)
            o.require(formula_shortcut(Graph(numbered_ids(n), {})) == 0, "edgeless on " + std::to_string(n));

        std::mt19937_64 rng(seed);
        for (int t = 0; t < 100; ++t)
            o.require(formula_shortcut(random_connected_graph(rng, 2 + t % 15, 0.0)) == 1, "tree " + std::to_string(t));

        SolveOptions search;
        search.use_shortcuts = false;
        int fired = 0, trials = 0;
        while (fired < 200 && trials < 20000) {
            ++trials;
            auto n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
            auto g = random_connected_graph(rng, n, std::uniform_real_distribution<double>(0.0, 0.7)(rng));
            auto shortcut = formula_shortcut(g);
            if (! shortcut)
                continue;
            ++fired;
            auto result = exact_competition_number(g, search);
            o.require(result.status == SolveStatus::exact && result.k == *shortcut,
                "search disagrees with the closed form on trial " + std::to_string(trials));
        }
        o.require(fired == 200, "only " + std::to_string(fired) + " graphs had a closed form");
        o.note("200 graphs agree (seed " + std::to_string(seed) + ")");
    }

    auto criterion8(Outcome & o) -> void
    {
        std::mt19937_64 rng(seed);
        vector<Graph> generated;
        for (int t = 0; t < 1000; ++t) {
            auto d = random_digraph(rng, 12, t % 2 == 0);
            auto c = competition_graph(d);
            o.require(edge_set(c) == pairwise_competition_edges(d), "operator disagrees with oracle on digraph " + std::to_string(t));
            generated.push_back(c);
        }

        for (unsigned n = 1; n <= 4; ++n)
            for (unsigned q = 1; q <= 4; ++q)
                generated.push_back(hamming_graph(n, q));
        for (int t = 0; t < 200; ++t)
            generated.push_back(random_graph(rng, 2 + t % 20, 0.4));
        for (auto & g : generated)
            o.require(handshake_audit(g), "handshake audit failed");

        Graph k3({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "c"}});
        Digraph d({"a", "b", "c", "z1", "z2", "z3"}, {{"a", "z1"}, {"b", "z1"}, {"b", "z2"}, {"c", "z2"}, {"a", "z3"}, {"c", "z3"}});
        auto normal = normalize_witness(k3, maximal_clique_cover(k3), d, 3);
        std::size_t empty = 0;
        for (VertexIndex v = 0; v < normal.order(); ++v)
            empty += normal.in_neighbours(v).empty();
        o.require(empty == 5, "triangle example leaves " + std::to_string(empty) + " empty, expected 5");

        vector<Graph> unique{hamming_graph(2, 3), hamming_graph(3, 2), hamming_graph(2, 4), cycle_graph(5), k3};
        std::size_t witnesses = 0;
        for (auto & g : unique) {
            auto cover = maximal_clique_cover(g);
            for (int t = 0; t < 40; ++t, ++witnesses) {
                auto w = random_witness(rng, g);
                auto once = normalize_witness(g, cover, w.digraph, w.k);
                auto twice = normalize_witness(g, cover, once, w.k);
                o.require(dump_json(digraph_to_json(once)) == dump_json(digraph_to_json(twice)), "normalization is not idempotent");
                o.require(edge_set(competition_graph(once)) == edge_set(competition_graph(w.digraph)),
                    "normalization changed the competition graph");
                std::size_t e = 0;
                for (VertexIndex v = 0; v < once.order(); ++v)
                    e += once.in_neighbours(v).empty();
                o.require(e == w.k + g.order() - cover.size(), "empty count differs from k + |V| - |F|");
            }
        }

        vector<WitnessCertificate> certs;
        for (unsigned q = 2; q <= 6; ++q)
            certs.push_back(load_golden_certificate(2, q));
        certs.push_back(load_golden_certificate(3, 3));
        certs.push_back(build_witness(5, 3, certs.back()));
        for (auto & cert : certs) {
            auto text = dump_json(certificate_to_json(cert));
            auto again = dump_json(certificate_to_json(certificate_from_json(parse_json_text(text, "round trip"))));
            o.require(text == again, describe_target(cert.target) + " certificate JSON is not byte stable");
        }
        o.note("1000 digraphs, " + std::to_string(generated.size()) + " handshake audits, " + std::to_string(witnesses) +
            " normalizations, " + std::to_string(certs.size()) + " round trips");
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Acceptance checks"};
    vector<int> only;
    seed = test_seed();
    app.add_option("--only", only, "Run just these criteria")->check(CLI::Range(1, 8));
    app.add_option("--seed", seed, "Seed for the randomized criteria")->capture_default_str();
    app.add_option("--jobs", census_jobs, "Census shards")->check(CLI::Range(1, 1024))->capture_default_str();
    CLI11_PARSE(app, argc, argv);

    // Time limits are the targets for each criterion; the census targets are the single-threaded ones.
    vector<Criterion> criteria{
        {1, "exact k(H(2,3)) = 2 with k = 1 refuted", 10.0, criterion1},
        {2, "golden H(3,3) witness at k = 6", 1.0, criterion2},
        {3, "lifted witnesses for H(n,3), n = 4..7", 240.0, criterion3},
        {4, "maximal clique family invariants", 10.0, criterion4},
        {5, "triangle census of H(3,3) at 10 vertices", 300.0, criterion5},
        {6, "census chain on H(3,3) at 10 and 11 vertices", 600.0, criterion6},
        {7, "closed forms agree with search", 60.0, criterion7},
        {8, "property suites", 60.0, criterion8},
    };

    int failures = 0;
    for (auto & c : criteria) {
        if (! only.empty() && std::find(only.begin(), only.end(), c.number) == only.end())
            continue;
        Outcome outcome;
        auto start = std::chrono::steady_clock::now();
        try {
            c.body(outcome);
        }
        catch (const std::exception & e) {
            outcome.require(false, string("threw: ") + e.what());
        }
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream timing;
        timing << std::fixed << std::setprecision(2) << seconds << " s, limit " << c.seconds_limit << " s";
        outcome.require(seconds < c.seconds_limit, "over time");
        failures += ! outcome.passed;
        std::cout << (outcome.passed ? "PASS" : "FAIL") << " " << c.number << " " << c.name << " [" << timing.str() << "]: "
                  << outcome.detail.str() << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
