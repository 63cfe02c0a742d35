#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "diagext/runner.hpp"

using namespace diagext;
using nlohmann::json;

namespace {

std::string corpus(const std::string& name) { return std::string(DIAGEXT_CORPUS_DIR) + "/" + name; }

json stripped(json j) {
    j.erase("timing_ms");
    return j;
}

json golden(const std::string& name) {
    std::ifstream in(std::string(DIAGEXT_GOLDEN_DIR) + "/" + name);
    REQUIRE(in.good());
    json j;
    in >> j;
    return j;
}

RunConfig base(const std::string& cmd, const std::string& alg,
               const std::vector<std::string>& mods = {}) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.algebra_path = corpus(alg);
    for (const auto& m : mods) cfg.module_paths.push_back(corpus(m));
    return cfg;
}

} // namespace

TEST_CASE("every corpus golden file reproduces") {
    struct Entry {
        RunConfig cfg;
        const char* golden_name;
    };
    std::vector<Entry> entries;

    {
        RunConfig c = base("resolve", "quantum_string.alg", {"string.mod"});
        c.n_max = 5;
        entries.push_back({c, "quantum_string_resolve.json"});
    }
    {
        RunConfig c = base("diagonal", "quantum_xy.alg", {"cyc.mod"});
        c.n_max = 6;
        c.unit_overrides["q"] = "generic";
        entries.push_back({c, "quantum_xy_diagonal.json"});
    }
    {
        RunConfig c = base("periodicity", "quantum_xy_qm1.alg", {"cyc.mod"});
        c.n_max = 6;
        c.window = 8;
        entries.push_back({c, "quantum_xy_qm1_periodicity.json"});
    }
    {
        RunConfig c = base("cx1", "quantum_xy_gf5.alg", {"cyc.mod"});
        c.n_max = 6;
        c.window = 8;
        entries.push_back({c, "quantum_xy_gf5_cx1.json"});
    }
    {
        RunConfig c = base("ext", "quantum_plane.alg", {"period_one.mod"});
        c.n_max = 4;
        entries.push_back({c, "quantum_plane_ext.json"});
    }
    {
        RunConfig c = base("verify-grcent", "kx2.alg");
        c.n_max = 4;
        entries.push_back({c, "kx2_verify_grcent.json"});
    }
    {
        RunConfig c = base("simple-syzygy", "atilde1.alg");
        c.window = 8;
        entries.push_back({c, "atilde1_simple_syzygy.json"});
    }
    {
        RunConfig c = base("hochschild", "atilde2.alg");
        c.n_max = 6;
        entries.push_back({c, "atilde2_hochschild.json"});
    }
    {
        RunConfig c = base("ext-simples", "atilde3.alg");
        c.n_max = 6;
        entries.push_back({c, "atilde3_ext_simples.json"});
    }
    {
        RunConfig c = base("center", "quantum_plane.alg");
        c.n_max = 4;
        entries.push_back({c, "quantum_plane_center.json"});
    }
    {
        RunConfig c = base("nilpotency", "quantum_string.alg", {"string.mod"});
        c.n_max = 6;
        entries.push_back({c, "quantum_string_nilpotency.json"});
    }
    {
        RunConfig c = base("betti-compare", "atilde2.alg",
                           {"simple_v1.mod", "simple_v1.mod", "simple_v1.mod"});
        c.arg_i = 3;
        c.arg_n = 3;
        c.arg_m = 4;
        c.window = 7;
        entries.push_back({c, "atilde2_betti_compare.json"});
    }

    for (const auto& e : entries) {
        INFO("golden: " << e.golden_name);
        RunResult rr = run(e.cfg);
        CHECK(rr.exit_code == 0);
        CHECK(stripped(rr.report) == golden(e.golden_name));
    }
}

TEST_CASE("identical configs give byte-identical JSON modulo timing") {
    RunConfig c = base("diagonal", "quantum_xy_gf5.alg", {"cyc.mod"});
    c.n_max = 6;
    RunResult a = run(c);
    RunResult b = run(c);
    CHECK(stripped(a.report).dump() == stripped(b.report).dump());
}

TEST_CASE("exit codes: hypothesis failure is 2, errors are 1") {
    RunConfig c = base("simple-syzygy", "quantum_string.alg");
    c.window = 6;
    RunResult rr = run(c);
    CHECK(rr.exit_code == 2);
    CHECK(rr.report["error_kind"] == "HypothesisFailed");

    RunConfig bad = base("resolve", "quantum_string.alg");
    bad.module_texts.push_back("module cokernel [[z]]");
    RunResult rb = run(bad);
    CHECK(rb.exit_code == 1);
    CHECK(rb.report.contains("error"));

    RunConfig missing = base("resolve", "no_such_file.alg", {"string.mod"});
    CHECK(run(missing).exit_code == 1);
}

TEST_CASE("every command runs green on a corpus input") {
    struct Row { const char* cmd; const char* alg; std::vector<std::string> mods; };
    std::vector<Row> rows = {
        {"resolve", "quantum_string.alg", {"string.mod"}},
        {"betti", "quantum_xy.alg", {"cyc.mod"}},
        {"ext", "quantum_string.alg", {"string.mod"}},
        {"yoneda", "quantum_plane.alg", {"period_one.mod"}},
        {"diagonal", "quantum_xy_gf5.alg", {"cyc.mod"}},
        {"nilpotency", "quantum_string.alg", {"string.mod"}},
        {"periodicity", "quantum_string.alg", {"string.mod"}},
        {"cx1", "quantum_xy_qm1.alg", {"cyc.mod"}},
        {"simple-syzygy", "atilde2.alg", {}},
        {"hochschild", "kx2.alg", {}},
        {"ext-simples", "quantum_string.alg", {}},
        {"center", "atilde1.alg", {}},
        {"verify-grcent", "atilde1.alg", {}},
    };
    for (const auto& r : rows) {
        INFO("command: " << r.cmd);
        RunConfig c = base(r.cmd, r.alg, r.mods);
        c.n_max = 4;
        c.window = 6;
        RunResult rr = run(c);
        CHECK(rr.exit_code == 0);
        CHECK(rr.report.contains("result"));
    }
    // betti-compare needs its indices
    RunConfig c = base("betti-compare", "atilde2.alg",
                       {"simple_v1.mod", "simple_v1.mod", "simple_v1.mod"});
    c.arg_i = 3;
    c.arg_n = 3;
    c.arg_m = 4;
    c.window = 7;
    CHECK(run(c).exit_code == 0);
}

TEST_CASE("inline sources and unit overrides work through run()") {
    RunConfig c;
    c.command = "betti";
    c.algebra_text =
        "field Q\nunit q = 2\nvertex v\narrow x: v -> v\narrow y: v -> v\n"
        "relation x*y - q*y*x\nrelation x*x\nrelation y*y\n";
    c.module_texts.push_back("module cokernel [[x+y]]");
    c.n_max = 4;
    RunResult rr = run(c);
    CHECK(rr.exit_code == 0);
    CHECK(rr.report["result"]["betti"] == json::array({1, 1, 1, 1, 1}));
    CHECK(rr.report["algebra"] == "<inline>");

    // field override: run the same presentation over GF(5)
    c.field_override = "GF(5)";
    c.command = "periodicity";
    c.n_max = 6;
    c.window = 8;
    RunResult r5 = run(c);
    CHECK(r5.exit_code == 0);
    CHECK(r5.report["field"] == "GF(5)");
    CHECK(r5.report["result"]["kind"] == "Periodic");
    CHECK(r5.report["result"]["period"] == 4);
}
