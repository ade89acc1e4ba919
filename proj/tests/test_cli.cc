#include <compnum/graph_io.hh>

#include <openssl/evp.h>

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

using namespace compnum;

using std::string;

namespace fs = std::filesystem;

namespace
{
    struct Run
    {
        int code = -1;
        string out, err;
    };

    auto binary() -> string
    {
        auto env = std::getenv("COMPNUM_BIN");
        REQUIRE_MESSAGE(env, "COMPNUM_BIN must point at the compnum executable");
        return env;
    }

    auto scratch() -> const fs::path &
    {
        static const fs::path dir = [] {
            auto d = fs::temp_directory_path() / ("compnum-cli-test-" + std::to_string(::getpid()));
            fs::create_directories(d);
            return d;
        }();
        return dir;
    }

    auto run(const string & args, const string & env = "") -> Run
    {
        auto err_path = scratch() / "stderr.txt";
        auto command = env + (env.empty() ? "" : " ") + binary() + " " + args + " 2>" + err_path.string();
        Run result;
        auto pipe = ::popen(command.c_str(), "r");
        REQUIRE(pipe);
        std::array<char, 4096> buffer;
        std::size_t got;
        while ((got = std::fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
            result.out.append(buffer.data(), got);
        auto status = ::pclose(pipe);
        result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        result.err = read_text_file(err_path.string());
        return result;
    }

    auto path(const string & name) -> string
    {
        return (scratch() / name).string();
    }

    auto sha256(const string & data) -> string
    {
        unsigned char digest[EVP_MAX_MD_SIZE];
        unsigned int length = 0;
        EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
        std::ostringstream out;
        for (unsigned i = 0; i < length; ++i)
            out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
        return out.str();
    }
}

TEST_CASE("usage errors exit with 1")
{
    CHECK(run("").code == 1);
    CHECK(run("frobnicate").code == 1);
    CHECK(run("hamming gen 2").code == 1);
    CHECK(run("verify paper --target thm9").code == 1);
    CHECK(run("convert /nonexistent.json --format dot").code == 1);
    CHECK(run("--help").code == 0);
    auto bad_jobs = run("census run --host hamming:2,3 --size 3", "COMPNUM_JOBS=zero");
    CHECK(bad_jobs.code == 1);
    CHECK(bad_jobs.err.find("COMPNUM_JOBS") != string::npos);
}

TEST_CASE("hamming subcommands")
{
    auto gen = run("hamming gen 2 3");
    REQUIRE(gen.code == 0);
    auto g = graph_from_json(Json::parse(gen.out));
    CHECK(g.order() == 9);
    CHECK(g.size() == 18);

    auto dot = run("hamming gen 2 2 --format dot");
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("graph", 0) == 0);

    auto cover = Json::parse(run("hamming cover 3 3").out);
    CHECK(cover["cliques"].size() == 27);

    auto known = Json::parse(run("hamming known 4 3").out);
    CHECK(known["value"] == 33);
    auto open = Json::parse(run("hamming known 5 4").out);
    CHECK(open["value"].is_null());
    CHECK(open["bound_offset"] == 256);
}

TEST_CASE("witness build and verify")
{
    auto out = path("h43.json");
    auto build = run("witness build 4 3 -o " + out);
    REQUIRE(build.code == 0);
    auto cert = Json::parse(read_text_file(out));
    CHECK(cert["k"] == 33);
    CHECK(cert["ordering"].size() == 114);

    auto verify = run("witness verify " + out + " --require-normalized");
    CHECK(verify.code == 0);
    CHECK(Json::parse(verify.out)["passed"] == true);

    // Drop one prey list: edges go missing.
    for (auto & [id, prey] : cert["prey_map"].items())
        if (! prey.empty()) {
            prey = Json::array();
            break;
        }
    auto broken = path("broken.json");
    write_text_file(broken, dump_json(cert));
    auto failed = run("witness verify " + broken);
    CHECK(failed.code == 3);
    auto report = Json::parse(failed.out);
    CHECK(report["passed"] == false);
    CHECK(report["diagnostics"][0].get<string>().rfind("missing edges", 0) == 0);

    CHECK(run("witness build 5 3 --format dot -o " + path("h53.dot")).code == 0);
    CHECK(read_text_file(path("h53.dot")).rfind("digraph", 0) == 0);
    CHECK(run("witness build 2 3").code == 1);
}

TEST_CASE("witness normalize")
{
    write_text_file(path("k3.json"), R"({"vertices":["a","b","c"],"edges":[["a","b"],["a","c"],["b","c"]]})");
    write_text_file(path("k3d.json"), R"({"vertices":["a","b","c","z1","z2","z3"],
        "arcs":[["a","z1"],["b","z1"],["b","z2"],["c","z2"],["a","z3"],["c","z3"]]})");
    write_text_file(path("k3cover.json"), R"({"cliques":[["a","b","c"]]})");
    auto r = run("witness normalize " + path("k3.json") + " " + path("k3d.json") + " --cover " + path("k3cover.json") +
        " -k 3");
    REQUIRE(r.code == 0);
    auto d = digraph_from_json(Json::parse(r.out));
    std::size_t empty = 0;
    for (VertexIndex v = 0; v < d.order(); ++v)
        empty += d.in_neighbours(v).empty();
    CHECK(empty == 5);
    CHECK(d.size() == 3);

    write_text_file(path("badcover.json"), R"({"cliques":[["a","q"]]})");
    CHECK(run("witness normalize " + path("k3.json") + " " + path("k3d.json") + " --cover " + path("badcover.json") +
              " -k 3")
              .code == 1);
}

TEST_CASE("solve subcommands and exit codes")
{
    write_text_file(path("c4.json"), R"({"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["a","d"]]})");
    auto c4 = run("solve exact " + path("c4.json"));
    REQUIRE(c4.code == 0);
    CHECK(Json::parse(c4.out)["k"] == 2);
    auto searched = run("solve exact " + path("c4.json") + " --no-shortcuts --certificate " + path("c4cert.json"));
    CHECK(searched.code == 0);
    CHECK(run("witness verify " + path("c4cert.json")).code == 0);

    CHECK(run("hamming gen 2 3 -o " + path("h23.json")).code == 0);
    auto h23 = run("solve exact " + path("h23.json") + " --general");
    CHECK(h23.code == 0);
    CHECK(Json::parse(h23.out)["k"] == 2);

    auto infeasible = run("solve hamming 2 3 --k 1");
    CHECK(infeasible.code == 0);
    CHECK(Json::parse(infeasible.out)["status"] == "infeasible");

    auto budget = run("solve hamming 3 3 --k 5 --node-limit 5");
    CHECK(budget.code == 2);
    CHECK(Json::parse(budget.out)["status"] == "budget");

    auto capped = run("solve exact " + path("h23.json") + " --max-k 1 --no-shortcuts");
    CHECK(capped.code == 2);
    CHECK(Json::parse(capped.out)["status"] == "bracketed");

    CHECK(run("solve exact " + path("c4.json") + " --time-limit -1").code == 1);
}

TEST_CASE("census subcommands")
{
    auto r = run("census run --host hamming:3,3 --size 6 --classify --jobs 2");
    REQUIRE(r.code == 0);
    auto report = Json::parse(r.out);
    CHECK(report["max_triangles"] == 2);
    CHECK(report["subsets_examined"] == 296010);

    CHECK(run("hamming gen 2 3 -o " + path("host.json")).code == 0);
    auto file_host = Json::parse(run("census run --host " + path("host.json") + " --size 9").out);
    CHECK(file_host["max_triangles"] == 6);

    CHECK(run("census run --host hamming:3 --size 4").code == 1);
    CHECK(run("census patterns -o " + path("patterns.json")).code == 0);
    CHECK(Json::parse(read_text_file(path("patterns.json"))).contains("H3"));
    CHECK(run("census verify lemma3").code == 0);
    CHECK(run("census verify nothing").code == 1);
}

TEST_CASE("verify paper")
{
    auto r = run("verify paper --target lemma1 --n 3 --q 3");
    REQUIRE(r.code == 0);
    auto bundle = Json::parse(r.out);
    CHECK(bundle["passed"] == true);
    CHECK(bundle["reports"][0]["details"]["members"] == 27);

    auto thm3 = run("verify paper --target thm3 --n 4 --out-dir " + path("thm3"));
    REQUIRE(thm3.code == 0);
    CHECK(Json::parse(thm3.out)["reports"][0]["details"]["k"] == 33);
    CHECK(fs::exists(path("thm3/thm3-0.json")));
    CHECK(fs::exists(path("thm3/manifest.json")));

    auto chain = Json::parse(run("verify paper --target thm5-chain").out);
    CHECK(chain["passed"] == true);
    CHECK(chain["reports"][0]["checks"].size() == 3);
}

TEST_CASE("convert")
{
    string input = dump_json(graph_to_json(Graph({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}})));
    write_text_file(path("g.json"), input);
    CHECK(run("convert " + path("g.json") + " --format dot -o " + path("g.dot")).code == 0);
    auto back = run("convert " + path("g.dot") + " --format json");
    CHECK(back.code == 0);
    CHECK(back.out == input);

    write_text_file(path("bad.json"), R"({"vertices":["x","y"],"edges":[["x"]]})");
    auto bad = run("convert " + path("bad.json") + " --format dot");
    CHECK(bad.code == 1);
    CHECK(bad.err.find("edges[0]") != string::npos);

    CHECK(run("witness build 3 3 -o " + path("h33.json")).code == 0);
    auto dot = run("convert " + path("h33.json") + " --format dot");
    CHECK(dot.code == 0);
    auto cert = Json::parse(read_text_file(path("h33.json")));
    std::size_t arcs = 0, found = 0;
    for (auto & [id, prey] : cert["prey_map"].items())
        arcs += prey.size();
    for (auto at = dot.out.find("->"); at != string::npos; at = dot.out.find("->", at + 2))
        ++found;
    CHECK(found == arcs);
}

TEST_CASE("run manifest")
{
    auto manifest_a = path("manifest_a.json"), manifest_b = path("manifest_b.json");
    CHECK(run("--manifest " + manifest_a + " witness build 4 3 -o " + path("m.json")).code == 0);
    CHECK(run("--manifest " + manifest_b + " witness build 4 3 -o " + path("m.json")).code == 0);
    auto a = Json::parse(read_text_file(manifest_a)), b = Json::parse(read_text_file(manifest_b));

    REQUIRE(a["outputs"].size() == 1);
    auto & output = a["outputs"][0];
    CHECK(output["sha256"] == sha256(read_text_file(output["path"].get<string>())));
    CHECK(a["inputs"].size() == 0);
    CHECK(a["exit_code"] == 0);
    CHECK(a["versions"].contains("compnum"));
    CHECK(a["stages"].size() == 2);

    for (auto * m : {&a, &b}) {
        m->erase("command_line");
        m->erase("wall_seconds");
        for (auto & stage : (*m)["stages"])
            stage.erase("seconds");
    }
    CHECK(dump_json(a) == dump_json(b));

    auto verify_manifest = path("manifest_v.json");
    CHECK(run("--manifest " + verify_manifest + " witness verify " + path("m.json")).code == 0);
    auto v = Json::parse(read_text_file(verify_manifest));
    REQUIRE(v["inputs"].size() == 1);
    CHECK(v["inputs"][0]["sha256"] == output["sha256"]);
}
