#include <compnum/errors.hh>
#include <compnum/reproduce.hh>
#include <compnum/solver.hh>

#include <cstdlib>
#include <filesystem>

using std::string;
using std::to_string;
using std::vector;

namespace compnum
{
    namespace
    {
        auto item(CheckReport & report, string name, bool passed, string detail) -> void
        {
            report.items.push_back({std::move(name), passed, std::move(detail)});
        }

        auto finish(CheckReport report) -> CheckReport
        {
            report.passed = ! report.items.empty() &&
                std::all_of(report.items.begin(), report.items.end(), [](auto & i) { return i.passed; });
            return report;
        }

        auto hamming_name(unsigned n, unsigned q) -> string
        {
            return "H(" + to_string(n) + "," + to_string(q) + ")";
        }

        auto first_diagnostic(const VerificationReport & r) -> string
        {
            return r.diagnostics.empty() ? "" : ": " + r.diagnostics.front();
        }

        auto theorem1(const PaperCheckOptions & options) -> vector<CheckReport>
        {
            vector<CheckReport> reports;
            vector<unsigned> qs = options.q ? vector<unsigned>{*options.q} : vector<unsigned>{3};
            for (auto q : qs) {
                CheckReport report;
                report.name = "thm1 " + hamming_name(2, q);
                SolveOptions solve;
                solve.use_shortcuts = false;
                auto result = exact_competition_number(hamming_graph(2, q), solve);
                item(report, "exact", result.status == SolveStatus::exact && result.k == 2,
                    "k = " + to_string(result.k) + " (" + status_name(result.status) + ", " + result.method + ")");
                if (result.certificate) {
                    auto v = verify_certificate(*result.certificate);
                    item(report, "certificate_verifies", v.passed, "empty in-neighbourhoods: " + to_string(v.empty_prey_count) + first_diagnostic(v));
                }
                auto below = hamming_feasibility(2, q, 1);
                item(report, "k1_infeasible", below.status == FeasibilityStatus::infeasible,
                    "k = 1: " + status_name(below.status) + " after " + to_string(below.nodes) + " nodes");
                report.details = solve_result_to_json(result);
                reports.push_back(finish(std::move(report)));
            }
            return reports;
        }

        auto theorem2() -> vector<CheckReport>
        {
            CheckReport report;
            report.name = "thm2 H(3,3)";
            auto cert = load_golden_certificate(3, 3);
            auto v = verify_certificate(cert, VerifyOptions{.require_normalized = true});
            item(report, "golden_verifies", v.passed && cert.k == 6, "k = " + to_string(cert.k) + first_diagnostic(v));
            item(report, "empty_prey_count", v.empty_prey_count == 6 && v.expected_empty_prey_count == 6,
                to_string(v.empty_prey_count) + " vertices without in-neighbours, expected 6 - (3-3)*9 = 6");
            auto below = hamming_feasibility(3, 3, 5);
            item(report, "k5_infeasible", below.status == FeasibilityStatus::infeasible,
                "k = 5: " + status_name(below.status) + " after " + to_string(below.nodes) + " nodes");
            return {finish(std::move(report))};
        }

        auto construction(unsigned n, unsigned q, const string & tag) -> CheckReport
        {
            CheckReport report;
            report.name = tag + " " + hamming_name(n, q);
            auto base = load_golden_certificate(q, q);
            auto cert = build_witness(n, q, base);
            auto v = verify_certificate(cert, VerifyOptions{.require_normalized = true});
            auto expected = lifted_competition_bound(n, q, base.k);
            item(report, "verifies", v.passed, "k = " + to_string(cert.k) + ", " + to_string(cert.ordering.size()) + " vertices" +
                first_diagnostic(v));
            item(report, "k_matches_bound", cert.k == expected, "expected (n-q) q^(n-1) + k(H(q,q)) = " + to_string(expected));
            item(report, "vertex_count", cert.ordering.size() == hamming_order(n, q) + cert.k,
                to_string(cert.ordering.size()) + " = " + to_string(hamming_order(n, q)) + " + " + to_string(cert.k));
            auto known = known_competition_number(n, q);
            if (known.value)
                item(report, "matches_known_value", *known.value == cert.k, known.describe(n, q));
            report.details["k"] = cert.k;
            report.details["vertices"] = cert.ordering.size();
            return finish(std::move(report));
        }

        auto theorem3(const PaperCheckOptions & options) -> vector<CheckReport>
        {
            vector<CheckReport> reports;
            auto ns = options.n ? vector<unsigned>{*options.n} : options.n_values;
            for (auto n : ns) {
                if (n < 3)
                    throw PreconditionError("thm3 needs n >= 3");
                reports.push_back(construction(n, 3, "thm3"));
            }
            return reports;
        }

        auto theorem4(const PaperCheckOptions & options) -> vector<CheckReport>
        {
            vector<CheckReport> reports;
            auto ns = options.n ? vector<unsigned>{*options.n} : options.n_values;
            auto qs = options.q ? vector<unsigned>{*options.q} : vector<unsigned>{2, 3};
            for (auto q : qs)
                for (auto n : ns) {
                    if (q > n)
                        throw PreconditionError("thm4 needs q <= n");
                    reports.push_back(construction(n, q, "thm4"));
                }
            return reports;
        }

        auto lemma1(const PaperCheckOptions & options) -> vector<CheckReport>
        {
            vector<std::pair<unsigned, unsigned>> cases{{2, 2}, {2, 3}, {3, 3}, {4, 3}, {3, 2}};
            if (options.n || options.q)
                cases = {{options.n.value_or(3), options.q.value_or(3)}};
            vector<CheckReport> reports;
            for (auto [n, q] : cases)
                reports.push_back(clique_family_report(n, q));
            return reports;
        }
    }

    auto data_directory() -> string
    {
        if (auto env = std::getenv("COMPNUM_DATA_DIR"); env && *env)
            return env;
        return COMPNUM_DATA_DIR;
    }

    auto golden_certificate_path(unsigned n, unsigned q) -> string
    {
        return data_directory() + "/golden/hamming_" + to_string(n) + "_" + to_string(q) + ".json";
    }

    auto load_golden_certificate(unsigned n, unsigned q) -> WitnessCertificate
    {
        auto path = golden_certificate_path(n, q);
        if (! std::filesystem::exists(path))
            throw Error("no shipped witness for " + hamming_name(n, q) + " (looked for " + path + ")");
        auto cert = certificate_from_json(parse_json_text(read_text_file(path), path));
        auto v = verify_certificate(cert);
        if (! v.passed)
            throw Error("shipped witness " + path + " does not verify" + first_diagnostic(v));
        return cert;
    }

    auto paper_targets() -> const vector<string> &
    {
        static const vector<string> targets{"thm1", "thm2", "thm3", "thm4", "lemma1", "lemma3", "thm5-chain"};
        return targets;
    }

    auto verify_paper(const string & target, const PaperCheckOptions & options) -> vector<CheckReport>
    {
        if (target == "thm1")
            return theorem1(options);
        if (target == "thm2")
            return theorem2();
        if (target == "thm3")
            return theorem3(options);
        if (target == "thm4")
            return theorem4(options);
        if (target == "lemma1")
            return lemma1(options);
        if (target == "lemma3")
            return {verify_lemma3(options.jobs)};
        if (target == "thm5-chain")
            return {verify_lower_bound_chain(options.jobs)};
        string known;
        for (auto & t : paper_targets())
            known += (known.empty() ? "" : ", ") + t;
        throw PreconditionError("unknown target '" + target + "'; expected one of " + known);
    }

    auto clique_family_report(unsigned n, unsigned q) -> CheckReport
    {
        CheckReport report;
        report.name = "lemma1 " + hamming_name(n, q);
        auto family = maximal_clique_family(n, q);
        auto & host = family.host();

        std::uint64_t expected_members = n;
        for (unsigned i = 1; i < n; ++i)
            expected_members *= q;
        item(report, "member_count", family.size() == expected_members,
            "|F| = " + to_string(family.size()) + ", n q^(n-1) = " + to_string(expected_members));

        bool sizes = std::all_of(family.cliques().begin(), family.cliques().end(), [&](auto & c) { return c.size() == q; });
        item(report, "member_size", sizes, "every member has " + to_string(q) + " vertices");

        auto expected_edges = std::uint64_t(n) * (q - 1) * hamming_order(n, q) / 2;
        item(report, "edge_count", host.size() == expected_edges,
            to_string(host.size()) + " edges, n(q-1)q^n/2 = " + to_string(expected_edges));

        auto coverage = family.coverage();
        std::size_t uncovered = 0, multiply = 0;
        for (auto & owners : coverage) {
            uncovered += owners.empty();
            multiply += owners.size() > 1;
        }
        item(report, "exact_cover", uncovered == 0 && multiply == 0,
            to_string(uncovered) + " uncovered edges, " + to_string(multiply) + " edges in two or more members");

        std::size_t disagreements = 0;
        for (std::size_t e = 0; e < host.size(); ++e) {
            auto [u, v] = host.edges()[e];
            auto containing = containing_maximal_clique(host, n, q, {u, v});
            bool agrees = coverage[e].size() == 1 && family.cliques()[coverage[e].front()] == containing;
            disagreements += ! agrees;
        }
        item(report, "containing_clique", disagreements == 0,
            to_string(disagreements) + " edges where the containing clique disagrees with membership");
        report.details["members"] = family.size();
        report.details["edges"] = host.size();
        return finish(std::move(report));
    }
}
