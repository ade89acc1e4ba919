#include <compnum/canonical.hh>
#include <compnum/census.hh>
#include <compnum/errors.hh>
#include <compnum/graph_io.hh>
#include <compnum/hamming.hh>
#include <compnum/reproduce.hh>
#include <compnum/solver.hh>
#include <compnum/witness.hh>

#include <CLI11.hpp>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace compnum;

using std::optional;
using std::string;
using std::vector;

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_usage = 1,
        exit_budget = 2,
        exit_verification = 3
    };

    auto sha256_hex(const string & data) -> string
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int length = 0;
        if (! EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr))
            throw Error("SHA-256 digest failed");
        std::ostringstream out;
        for (unsigned i = 0; i < length; ++i)
            out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
        return out.str();
    }

    /// Records what a run read, wrote and how long each stage took.
    class RunManifest
    {
    private:
        Json _json;
        std::chrono::steady_clock::time_point _start = std::chrono::steady_clock::now();

    public:
        explicit RunManifest(int argc, char ** argv)
        {
            _json["command_line"] = vector<string>(argv, argv + argc);
            _json["options"] = Json::object();
            _json["inputs"] = Json::array();
            _json["outputs"] = Json::array();
            _json["stages"] = Json::array();
            _json["versions"] = {{"compnum", COMPNUM_VERSION}, {"nlohmann_json", "3.11.3"}, {"cli11", CLI11_VERSION},
                {"openssl", OPENSSL_VERSION_TEXT}};
        }

        auto option(const string & name, Json value) -> void { _json["options"][name] = std::move(value); }

        auto read_input(const string & path) -> string
        {
            auto text = read_text_file(path);
            _json["inputs"].push_back({{"path", path}, {"sha256", sha256_hex(text)}});
            return text;
        }

        auto write_output(const string & path, const string & text) -> void
        {
            write_text_file(path, text);
            _json["outputs"].push_back({{"path", path}, {"sha256", sha256_hex(text)}});
        }

        template <typename F>
        auto stage(const string & name, F && f) -> decltype(f())
        {
            auto begin = std::chrono::steady_clock::now();
            auto record = [&]() {
                _json["stages"].push_back(
                    {{"name", name}, {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count()}});
            };
            if constexpr (std::is_void_v<decltype(f())>) {
                f();
                record();
            }
            else {
                auto result = f();
                record();
                return result;
            }
        }

        auto finish(int exit_code) -> Json
        {
            _json["exit_code"] = exit_code;
            _json["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - _start).count();
            return _json;
        }
    };

    struct Context
    {
        RunManifest manifest;
        optional<string> manifest_path;

        /// Writes to the file if given, else stdout.
        auto emit(const string & text, const optional<string> & path) -> void
        {
            if (path)
                manifest.write_output(*path, text);
            else
                std::cout << text;
        }

        auto emit_json(const Json & json, const optional<string> & path) -> void { emit(dump_json(json), path); }
    };

    auto default_jobs() -> unsigned
    {
        if (auto env = std::getenv("COMPNUM_JOBS"); env && *env) {
            try {
                auto value = std::stoul(env);
                if (value >= 1 && value <= 1024)
                    return unsigned(value);
            }
            catch (const std::exception &) {
            }
            throw ParseError(string("COMPNUM_JOBS must be a positive integer, got '") + env + "'");
        }
        return 1;
    }

    auto looks_like_dot(const string & path, const string & text) -> bool
    {
        auto extension = std::filesystem::path(path).extension().string();
        if (extension == ".dot" || extension == ".gv")
            return true;
        auto first = text.find_first_not_of(" \t\r\n");
        return first != string::npos && text[first] != '{' && text[first] != '[';
    }

    auto read_graph(Context & ctx, const string & path) -> Graph
    {
        auto text = ctx.manifest.read_input(path);
        if (looks_like_dot(path, text)) {
            auto parsed = graph_or_digraph_from_dot(text);
            if (! std::holds_alternative<Graph>(parsed))
                throw ParseError(path + ": expected an undirected graph, found a digraph");
            return std::get<Graph>(parsed);
        }
        return graph_from_json(parse_json_text(text, path));
    }

    auto read_digraph(Context & ctx, const string & path) -> Digraph
    {
        auto text = ctx.manifest.read_input(path);
        if (looks_like_dot(path, text)) {
            auto parsed = graph_or_digraph_from_dot(text);
            if (! std::holds_alternative<Digraph>(parsed))
                throw ParseError(path + ": expected a digraph, found an undirected graph");
            return std::get<Digraph>(parsed);
        }
        return digraph_from_json(parse_json_text(text, path));
    }

    auto read_certificate(Context & ctx, const string & path) -> WitnessCertificate
    {
        return certificate_from_json(parse_json_text(ctx.manifest.read_input(path), path));
    }

    auto cover_to_json(unsigned n, unsigned q, const CliqueFamily & family) -> Json
    {
        Json cliques = Json::array();
        for (auto & c : family.cliques()) {
            vector<string> ids;
            for (auto v : c.members())
                ids.push_back(family.host().id(v));
            cliques.push_back(ids);
        }
        return Json{{"n", n}, {"q", q}, {"cliques", cliques}};
    }

    auto cover_from_json(const Graph & graph, const Json & json) -> CliqueFamily
    {
        if (! json.is_object() || ! json.contains("cliques") || ! json["cliques"].is_array())
            throw ParseError("cover must be {\"cliques\": [[ids], ...]}");
        auto host = std::make_shared<const Graph>(graph);
        vector<Clique> cliques;
        for (std::size_t i = 0; i < json["cliques"].size(); ++i) {
            auto & entry = json["cliques"][i];
            if (! entry.is_array())
                throw ParseError("cliques[" + std::to_string(i) + "] must be an array of vertex ids");
            vector<VertexIndex> members;
            for (auto & id : entry) {
                if (! id.is_string())
                    throw ParseError("cliques[" + std::to_string(i) + "] contains a non-string id");
                members.push_back(graph.index(id.get<string>()));
            }
            cliques.emplace_back(*host, std::move(members));
        }
        return CliqueFamily(host, std::move(cliques));
    }

    auto verification_to_json(const VerificationReport & r) -> Json
    {
        Json json{{"passed", r.passed}, {"competition_graph_matches", r.competition_graph_matches}, {"acyclic", r.acyclic},
            {"normalized", r.normalized}, {"empty_prey_count", r.empty_prey_count}, {"diagnostics", r.diagnostics}};
        json["expected_empty_prey_count"] = r.expected_empty_prey_count ? Json(*r.expected_empty_prey_count) : Json(nullptr);
        return json;
    }

    auto parse_host(Context & ctx, const string & spec, string & tag) -> Graph
    {
        if (spec.rfind("hamming:", 0) == 0) {
            unsigned n = 0, q = 0;
            char comma = 0;
            std::istringstream in(spec.substr(8));
            if (! (in >> n >> comma >> q) || comma != ',' || ! in.eof())
                throw ParseError("host '" + spec + "' must look like hamming:<n>,<q>");
            tag = spec;
            return hamming_graph(n, q);
        }
        tag = spec;
        return read_graph(ctx, spec);
    }

    /// Records every option of the subcommand chain in the manifest, keyed by subcommand path.
    auto record_options(RunManifest & manifest, const CLI::App * app, const string & prefix) -> void
    {
        for (auto * option : app->get_options())
            if (option->count() > 0 && option->get_name() != "--help" && option->get_name() != "--manifest")
                manifest.option(prefix + option->get_name(),
                    option->results().size() == 1 ? Json(option->results().front()) : Json(option->results()));
        for (auto * sub : app->get_subcommands())
            record_options(manifest, sub, prefix + sub->get_name() + " ");
    }
}

auto main(int argc, char ** argv) -> int
{
    CLI::App app{"Competition numbers of graphs, with a focus on Hamming graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", COMPNUM_VERSION);
    Context ctx{RunManifest(argc, argv), std::nullopt};
    app.add_option("--manifest", ctx.manifest_path, "Write a run manifest (JSON) to this file");

    std::function<int()> action;
    optional<string> output;
    string format = "json";

    auto add_output = [&](CLI::App * sub) { sub->add_option("-o,--output", output, "Output file (default stdout)"); };
    auto add_format = [&](CLI::App * sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "dot"}));
    };

    unsigned n = 0, q = 0;
    std::size_t k = 0;
    optional<unsigned> jobs_option;
    auto resolved_jobs = [&]() { return jobs_option ? *jobs_option : default_jobs(); };
    string input, second_input, cover_path;
    optional<string> base_path, certificate_path;
    optional<std::size_t> max_k;
    optional<std::uint64_t> node_limit;
    optional<double> time_limit;
    bool flag_a = false, flag_b = false;

    // hamming
    auto * hamming = app.add_subcommand("hamming", "Hamming graph utilities");
    hamming->require_subcommand(1);
    {
        auto * gen = hamming->add_subcommand("gen", "Write H(n,q)");
        gen->add_option("n", n)->required();
        gen->add_option("q", q)->required();
        add_output(gen);
        add_format(gen);
        gen->callback([&]() {
            action = [&]() {
                auto g = ctx.manifest.stage("generate", [&]() { return hamming_graph(n, q); });
                ctx.emit(format == "dot" ? graph_to_dot(g, "H") : dump_json(graph_to_json(g)), output);
                return int(exit_ok);
            };
        });

        auto * cover = hamming->add_subcommand("cover", "Write the maximal clique family F(n,q)");
        cover->add_option("n", n)->required();
        cover->add_option("q", q)->required();
        add_output(cover);
        cover->callback([&]() {
            action = [&]() {
                auto family = ctx.manifest.stage("family", [&]() { return maximal_clique_family(n, q); });
                ctx.emit_json(cover_to_json(n, q, family), output);
                return int(exit_ok);
            };
        });

        auto * known = hamming->add_subcommand("known", "Known value or bound of k(H(n,q))");
        known->add_option("n", n)->required();
        known->add_option("q", q)->required();
        add_output(known);
        known->callback([&]() {
            action = [&]() {
                auto value = known_competition_number(n, q);
                Json json{{"n", n}, {"q", q}, {"description", value.describe(n, q)}};
                json["value"] = value.value ? Json(*value.value) : Json(nullptr);
                json["bound_offset"] = value.bound_offset ? Json(*value.bound_offset) : Json(nullptr);
                ctx.emit_json(json, output);
                return int(exit_ok);
            };
        });
    }

    // witness
    auto * witness = app.add_subcommand("witness", "Build, verify and normalize witness certificates");
    witness->require_subcommand(1);
    {
        auto * build = witness->add_subcommand("build", "Lift a base witness for H(q,q) to H(n,q)");
        build->add_option("n", n)->required();
        build->add_option("q", q)->required();
        build->add_option("--base", base_path, "Base certificate for H(q,q) (default: shipped witness)");
        add_output(build);
        add_format(build);
        build->callback([&]() {
            action = [&]() {
                auto base = base_path ? read_certificate(ctx, *base_path) : load_golden_certificate(q, q);
                auto cert = ctx.manifest.stage("build", [&]() { return build_witness(n, q, base); });
                auto report = ctx.manifest.stage("verify", [&]() { return verify_certificate(cert, VerifyOptions{.require_normalized = true}); });
                if (! report.passed)
                    throw Error("built witness failed verification");
                ctx.emit(format == "dot" ? certificate_to_dot(cert) : dump_json(certificate_to_json(cert)), output);
                std::cerr << describe_target(cert.target) << ": k = " << cert.k << ", " << cert.ordering.size() << " vertices\n";
                return int(exit_ok);
            };
        });

        auto * verify = witness->add_subcommand("verify", "Check a certificate");
        verify->add_option("file", input)->required();
        verify->add_flag("--require-normalized", flag_a, "Also require normal form");
        add_output(verify);
        verify->callback([&]() {
            action = [&]() {
                auto cert = read_certificate(ctx, input);
                auto report = ctx.manifest.stage("verify", [&]() { return verify_certificate(cert, VerifyOptions{.require_normalized = flag_a}); });
                auto json = verification_to_json(report);
                json["target"] = describe_target(cert.target);
                json["k"] = cert.k;
                ctx.emit_json(json, output);
                return int(report.passed ? exit_ok : exit_verification);
            };
        });

        auto * normalize = witness->add_subcommand("normalize", "Rewrite a witness digraph into normal form");
        normalize->add_option("graph", input)->required();
        normalize->add_option("digraph", second_input)->required();
        normalize->add_option("--cover", cover_path, "Edge clique cover JSON")->required();
        normalize->add_option("-k", k, "Number of isolated vertices")->required();
        add_output(normalize);
        add_format(normalize);
        normalize->callback([&]() {
            action = [&]() {
                auto graph = read_graph(ctx, input);
                auto digraph = read_digraph(ctx, second_input);
                auto cover = cover_from_json(graph, parse_json_text(ctx.manifest.read_input(cover_path), cover_path));
                auto result = ctx.manifest.stage("normalize", [&]() { return normalize_witness(graph, cover, digraph, k); });
                ctx.emit(format == "dot" ? digraph_to_dot(result) : dump_json(digraph_to_json(result)), output);
                return int(exit_ok);
            };
        });
    }

    // solve
    auto * solve = app.add_subcommand("solve", "Exact competition numbers");
    solve->require_subcommand(1);
    auto budget_options = [&](CLI::App * sub) {
        sub->add_option("--node-limit", node_limit, "Search node budget")->check(CLI::PositiveNumber);
        sub->add_option("--time-limit", time_limit, "Wall-clock budget in seconds")->check(CLI::PositiveNumber);
        sub->add_option("--certificate", certificate_path, "Also write the bare certificate here");
    };
    auto make_options = [&]() {
        SolveOptions options;
        options.max_k = max_k;
        options.node_limit = node_limit;
        if (time_limit)
            options.time_limit = std::chrono::milliseconds(std::int64_t(*time_limit * 1000));
        return options;
    };
    {
        auto * exact = solve->add_subcommand("exact", "Compute k(G) for a graph file");
        exact->add_option("graph", input)->required();
        exact->add_option("--max-k", max_k, "Largest k to try");
        exact->add_flag("--no-shortcuts", flag_a, "Skip the closed-form cases");
        exact->add_flag("--general", flag_b, "Use the general search even for unique-cover graphs");
        budget_options(exact);
        add_output(exact);
        exact->callback([&]() {
            action = [&]() {
                auto graph = read_graph(ctx, input);
                auto options = make_options();
                options.use_shortcuts = ! flag_a;
                options.require_unique_cover = ! flag_b;
                auto result = ctx.manifest.stage("solve", [&]() { return exact_competition_number(graph, options); });
                ctx.emit_json(solve_result_to_json(result), output);
                if (certificate_path && result.certificate)
                    ctx.manifest.write_output(*certificate_path, dump_json(certificate_to_json(*result.certificate)));
                return int(result.status == SolveStatus::exact ? exit_ok : exit_budget);
            };
        });

        auto * ham = solve->add_subcommand("hamming", "Decide whether H(n,q) plus k isolated vertices is a competition graph");
        ham->add_option("n", n)->required();
        ham->add_option("q", q)->required();
        ham->add_option("--k", k, "Number of isolated vertices")->required();
        ham->add_flag("--no-symmetry", flag_a, "Do not fix the first vertex");
        budget_options(ham);
        add_output(ham);
        ham->callback([&]() {
            action = [&]() {
                auto options = make_options();
                options.symmetry_breaking = ! flag_a;
                auto result = ctx.manifest.stage("search", [&]() { return hamming_feasibility(n, q, k, options); });
                ctx.emit_json(feasibility_to_json(result, k), output);
                if (certificate_path && result.certificate)
                    ctx.manifest.write_output(*certificate_path, dump_json(certificate_to_json(*result.certificate)));
                return int(result.status == FeasibilityStatus::budget ? exit_budget : exit_ok);
            };
        });
    }

    // census
    auto * census = app.add_subcommand("census", "Triangle census over vertex subsets");
    census->require_subcommand(1);
    {
        auto * run = census->add_subcommand("run", "Maximum triangle count over m-subsets of a host");
        string host_spec = "hamming:3,3";
        std::size_t size = 0;
        std::uint64_t max_subsets = CensusOptions{}.max_subsets;
        run->add_option("--host", host_spec, "hamming:<n>,<q> or a graph file")->capture_default_str();
        run->add_option("--size", size, "Subset size m")->required();
        run->add_flag("--classify", flag_a, "Group extremal subsets into isomorphism classes");
        run->add_flag("--no-prune", flag_b, "Enumerate every subset without bounding");
        run->add_option("--jobs", jobs_option, "Parallel shards (default: COMPNUM_JOBS or 1)")->check(CLI::Range(1, 1024));
        run->add_option("--max-subsets", max_subsets, "Refuse hosts with more subsets than this")->capture_default_str();
        add_output(run);
        run->callback([&, host_spec = &host_spec, size = &size, max_subsets = &max_subsets]() {
            action = [&, host_spec, size, max_subsets]() {
                string tag;
                auto host = parse_host(ctx, *host_spec, tag);
                CensusOptions options;
                options.classify = flag_a;
                options.prune = ! flag_b;
                options.jobs = resolved_jobs();
                options.max_subsets = *max_subsets;
                auto report = ctx.manifest.stage("census", [&]() { return max_triangle_census(host, *size, options, tag); });
                ctx.emit_json(census_report_to_json(report), output);
                return int(exit_ok);
            };
        });

        auto * patterns = census->add_subcommand("patterns", "Derive the pattern graphs H1, H2, H3");
        patterns->add_option("--jobs", jobs_option, "Parallel shards")->check(CLI::Range(1, 1024));
        add_output(patterns);
        patterns->callback([&]() {
            action = [&]() {
                auto p = ctx.manifest.stage("derive", [&]() { return derive_patterns(resolved_jobs()); });
                ctx.emit_json(patterns_to_json(p), output);
                return int(exit_ok);
            };
        });

        auto * verify = census->add_subcommand("verify", "Run the census checks");
        string which;
        verify->add_option("check", which, "lemma3 or chain")->required()->check(CLI::IsMember({"lemma3", "chain"}));
        verify->add_option("--jobs", jobs_option, "Parallel shards")->check(CLI::Range(1, 1024));
        add_output(verify);
        verify->callback([&, which = &which]() {
            action = [&, which]() {
                auto jobs = resolved_jobs();
                auto report = ctx.manifest.stage(*which, [&]() {
                    return *which == "lemma3" ? verify_lemma3(jobs) : verify_lower_bound_chain(jobs);
                });
                ctx.emit_json(check_report_to_json(report), output);
                return int(report.passed ? exit_ok : exit_verification);
            };
        });
    }

    // verify paper
    auto * verify = app.add_subcommand("verify", "Reproduction checks");
    verify->require_subcommand(1);
    {
        auto * paper = verify->add_subcommand("paper", "Run the checks for one result");
        string target;
        vector<unsigned> ns;
        optional<unsigned> paper_q;
        optional<string> out_dir;
        paper->add_option("--target", target, "thm1, thm2, thm3, thm4, lemma1, lemma3 or thm5-chain")
            ->required()
            ->check(CLI::IsMember(paper_targets()));
        paper->add_option("--n", ns, "Dimension(s)");
        paper->add_option("--q", paper_q, "Alphabet size");
        paper->add_option("--jobs", jobs_option, "Parallel census shards")->check(CLI::Range(1, 1024));
        paper->add_option("--out-dir", out_dir, "Write one JSON report per check plus manifest.json here");
        paper->callback([&, target = &target, ns = &ns, paper_q = &paper_q, out_dir = &out_dir]() {
            action = [&, target, ns, paper_q, out_dir]() {
                PaperCheckOptions options;
                if (! ns->empty())
                    options.n_values = *ns;
                if (ns->size() == 1)
                    options.n = ns->front();
                options.q = *paper_q;
                options.jobs = resolved_jobs();
                auto reports = ctx.manifest.stage(*target, [&]() { return verify_paper(*target, options); });

                bool passed = std::all_of(reports.begin(), reports.end(), [](auto & r) { return r.passed; });
                Json bundle{{"target", *target}, {"passed", passed}, {"reports", Json::array()}};
                for (auto & r : reports)
                    bundle["reports"].push_back(check_report_to_json(r));

                if (*out_dir) {
                    std::filesystem::create_directories(**out_dir);
                    for (std::size_t i = 0; i < reports.size(); ++i)
                        ctx.manifest.write_output(**out_dir + "/" + *target + "-" + std::to_string(i) + ".json",
                            dump_json(check_report_to_json(reports[i])));
                    if (! ctx.manifest_path)
                        ctx.manifest_path = **out_dir + "/manifest.json";
                }
                ctx.emit_json(bundle, std::nullopt);
                for (auto & r : reports)
                    for (auto & i : r.items)
                        if (! i.passed)
                            std::cerr << r.name << ": " << i.name << " failed: " << i.detail << "\n";
                return int(passed ? exit_ok : exit_verification);
            };
        });
    }

    // convert
    auto * convert = app.add_subcommand("convert", "Convert graphs, digraphs and certificates between JSON and DOT");
    convert->add_option("input", input)->required();
    convert->add_option("--format", format, "Output format")->required()->check(CLI::IsMember({"json", "dot"}));
    add_output(convert);
    convert->callback([&]() {
        action = [&]() {
            auto text = ctx.manifest.read_input(input);
            string result;
            if (looks_like_dot(input, text)) {
                auto parsed = graph_or_digraph_from_dot(text);
                if (auto g = std::get_if<Graph>(&parsed))
                    result = format == "dot" ? graph_to_dot(*g) : dump_json(graph_to_json(*g));
                else {
                    auto & d = std::get<Digraph>(parsed);
                    result = format == "dot" ? digraph_to_dot(d) : dump_json(digraph_to_json(d));
                }
            }
            else {
                auto json = parse_json_text(text, input);
                if (json.is_object() && json.contains("prey_map")) {
                    auto cert = certificate_from_json(json);
                    result = format == "dot" ? certificate_to_dot(cert) : dump_json(certificate_to_json(cert));
                }
                else if (json.is_object() && json.contains("arcs")) {
                    auto d = digraph_from_json(json);
                    result = format == "dot" ? digraph_to_dot(d) : dump_json(digraph_to_json(d));
                }
                else {
                    auto g = graph_from_json(json);
                    result = format == "dot" ? graph_to_dot(g) : dump_json(graph_to_json(g));
                }
            }
            ctx.emit(result, output);
            return int(exit_ok);
        };
    });

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    int code = exit_usage;
    try {
        record_options(ctx.manifest, &app, "");
        code = action();
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        code = exit_usage;
    }

    if (ctx.manifest_path) {
        try {
            write_text_file(*ctx.manifest_path, dump_json(ctx.manifest.finish(code)));
        }
        catch (const std::exception & e) {
            std::cerr << "error: could not write manifest: " << e.what() << "\n";
            if (code == exit_ok)
                code = exit_usage;
        }
    }
    return code;
}
