#include "diagext/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diagext/hochschild.hpp"
#include "diagext/periodicity.hpp"
#include "diagext/util.hpp"

namespace diagext {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Loaded {
    AlgebraPresentation pres;
    AlgebraPtr A;
    std::vector<ModulePtr> modules; // bound to A (bimodule-regular binds to A^e)
    int depth = 0;
};

Loaded load(const RunConfig& cfg, std::size_t expected_modules) {
    Loaded L;
    std::string atext = cfg.algebra_text ? *cfg.algebra_text : slurp(cfg.algebra_path);
    std::map<std::string, std::string> ov;
    for (const auto& [k, v] : cfg.unit_overrides)
        if (v != "generic") ov[k] = v; // "generic": keep the declared value
    L.pres = parse_algebra(atext, ov.empty() ? nullptr : &ov,
                           cfg.field_override ? &*cfg.field_override : nullptr);

    int need = cfg.n_max + cfg.window + 6;
    int depth = cfg.depth > 0 ? cfg.depth : need;
    if (L.pres.truncation && depth > *L.pres.truncation) depth = *L.pres.truncation;
    L.depth = depth;
    L.A = GradedAlgebra::materialize(L.pres, depth);

    std::vector<std::string> mtexts = cfg.module_texts;
    for (const auto& p : cfg.module_paths) mtexts.push_back(slurp(p));
    if (mtexts.size() < expected_modules)
        throw Error("command '" + cfg.command + "' needs " + std::to_string(expected_modules) +
                    " module file(s)");
    for (const auto& t : mtexts)
        L.modules.push_back(from_presentation(parse_module(t, L.pres), L.A));
    return L;
}

json verdict_json(const PeriodicityVerdict& v) {
    json j;
    switch (v.kind) {
        case PeriodicityVerdict::Kind::Periodic: j["kind"] = "Periodic"; break;
        case PeriodicityVerdict::Kind::EventuallyPeriodic: j["kind"] = "EventuallyPeriodic"; break;
        case PeriodicityVerdict::Kind::NotDetected: j["kind"] = "NotDetected"; break;
        case PeriodicityVerdict::Kind::Unknown: j["kind"] = "Unknown"; break;
    }
    if (v.kind == PeriodicityVerdict::Kind::Periodic ||
        v.kind == PeriodicityVerdict::Kind::EventuallyPeriodic) {
        j["period"] = v.period;
        j["onset"] = v.onset;
    }
    j["window"] = v.window;
    if (!v.detail.empty()) j["detail"] = v.detail;
    j["lifting_evidence"] = v.lifting_evidence;
    j["direct_evidence"] = v.direct_evidence;
    return j;
}

json sprow_json(const SpRow& r) {
    json j = json::array();
    for (const auto& [i, v] : r) j.push_back({{"k", i}, {"c", v.str()}});
    return j;
}

json key_json(const ExtTable::Key& k) { return json{{"n", k.n}, {"i", k.i}, {"k", k.k}}; }

/* --- per-command handlers, each returns the "result" object --- */

json cmd_resolve(const RunConfig& cfg, Loaded& L, std::string& text) {
    Resolution res(L.modules.at(0));
    res.extend_to(cfg.n_max);
    verify_resolution(res, cfg.n_max);
    json out;
    out["betti"] = json::array();
    out["generator_degrees"] = json::array();
    out["differentials"] = json::array();
    for (int n = 0; n <= cfg.n_max; ++n) {
        out["betti"].push_back(res.betti(n));
        out["generator_degrees"].push_back(res.generator_degrees(n));
        if (n >= 1) out["differentials"].push_back(rmatrix_str(L.A, res.differential(n)));
    }
    auto lc = is_linear_up_to(res, cfg.n_max);
    out["linear"] = lc.linear;
    if (!lc.linear) out["first_nonlinear_stage"] = lc.first_failure;
    std::ostringstream ts;
    ts << "betti:";
    for (int n = 0; n <= cfg.n_max; ++n) ts << " " << res.betti(n);
    ts << (lc.linear ? "  (linear)" : "  (not linear)");
    text = ts.str();
    return out;
}

json cmd_betti(const RunConfig& cfg, Loaded& L, std::string& text) {
    Resolution res(L.modules.at(0));
    BettiProfile bp = betti_profile(res, cfg.n_max);
    json out;
    out["betti"] = bp.betti;
    out["all_ones"] = bp.all_ones;
    out["window_bounded"] = bp.window_bounded;
    out["window"] = bp.window;
    std::ostringstream ts;
    ts << "betti:";
    for (int b : bp.betti) ts << " " << b;
    text = ts.str();
    return out;
}

json cmd_ext(const RunConfig& cfg, Loaded& L, std::string& text) {
    Resolution rm(L.modules.at(0));
    std::optional<Resolution> rn;
    if (L.modules.size() >= 2) rn.emplace(L.modules.at(1));
    ExtPair pair(rm, rn ? *rn : rm);
    json out;
    out["dims"] = json::array();
    std::ostringstream ts;
    for (int n = 0; n <= cfg.n_max; ++n) {
        json row;
        row["n"] = n;
        row["total"] = pair.dim(n);
        json by;
        for (int i : pair.candidate_degrees(n)) {
            std::size_t d = pair.dim_at(n, i);
            if (d) by[std::to_string(i)] = d;
        }
        row["by_internal_degree"] = by;
        out["dims"].push_back(row);
        ts << "Ext^" << n << ": " << pair.dim(n) << "  ";
    }
    text = ts.str();
    return out;
}

json cmd_yoneda(const RunConfig& cfg, Loaded& L, std::string& text) {
    Resolution res(L.modules.at(0));
    ExtTable T(res, cfg.n_max);
    json out;
    out["basis"] = json::array();
    for (int n = 0; n <= cfg.n_max; ++n)
        for (const auto& k : T.basis(n)) out["basis"].push_back(key_json(k));
    out["products"] = json::array();
    for (int n1 = 0; n1 <= cfg.n_max; ++n1)
        for (int n2 = 0; n1 + n2 <= cfg.n_max; ++n2)
            for (const auto& a : T.basis(n1))
                for (const auto& b : T.basis(n2)) {
                    json p;
                    p["a"] = key_json(a);
                    p["b"] = key_json(b);
                    p["ab"] = sprow_json(T.product(a, b));
                    out["products"].push_back(p);
                }
    text = "ext algebra products tabulated to degree " + std::to_string(cfg.n_max);
    return out;
}

json cmd_diagonal(const RunConfig& cfg, Loaded& L, std::string& text) {
    Resolution res(L.modules.at(0));
    ExtTable T(res, cfg.n_max);
    DiagonalTable D = diagonal_subalgebra(T, cfg.n_max);
    json out;
    out["dims"] = D.dims;
    out["closed"] = D.closed;
    out["products"] = json::array();
    for (const auto& [ab, coords] : D.products) {
        json p;
        p["a"] = key_json(ab.first);
        p["b"] = key_json(ab.second);
        p["ab"] = sprow_json(coords);
        out["products"].push_back(p);
    }
    std::ostringstream ts;
    ts << "Delta dims:";
    for (auto d : D.dims) ts << " " << d;
    text = ts.str();
    return out;
}

json cmd_nilpotency(const RunConfig& cfg, Loaded& L, std::string& text) {
    Resolution res(L.modules.at(0));
    ExtTable T(res, cfg.n_max);
    int d = L.modules.at(0)->graded_length();
    json out;
    out["graded_length"] = d;
    out["classes"] = json::array();
    int half = cfg.n_max / (d + 1);
    for (int n = 0; n <= half; ++n)
        for (const auto& k : T.basis(n)) {
            if (k.i == -k.n) continue;
            ExtElement e = T.from_key(k, L.A->field().one());
            auto ni = nilpotency_index(T, e, d + 1);
            json c;
            c["key"] = key_json(k);
            if (ni) c["nilpotency_index"] = *ni;
            else c["nilpotency_index"] = nullptr;
            out["classes"].push_back(c);
        }
    text = "nilpotency indices of N_M basis classes computed (bound " +
           std::to_string(d + 1) + ")";
    return out;
}

json cmd_periodicity(const RunConfig& cfg, Loaded& L, std::string& text) {
    Resolution res(L.modules.at(0));
    PeriodicityVerdict v = detect_periodicity(res, cfg.n_max, cfg.window);
    json out = verdict_json(v);
    text = out["kind"].get<std::string>();
    if (out.contains("period")) text += "(" + std::to_string(v.period) + ")";
    return out;
}

json cmd_cx1(const RunConfig& cfg, Loaded& L, std::string& text) {
    Resolution res(L.modules.at(0));
    Cx1Report rep = cx1_criterion(res, cfg.n_max, cfg.window);
    json out;
    out["delta_nonzero"] = rep.delta_nonzero;
    if (rep.delta_nonzero) out["delta_degree"] = rep.delta_degree;
    out["eventually_periodic"] = rep.eventually_periodic;
    out["verdict"] = verdict_json(rep.verdict);
    out["agree"] = rep.agree;
    text = std::string("cx1: delta ") + (rep.delta_nonzero ? "nonzero" : "zero") +
           ", detection " + (rep.eventually_periodic ? "positive" : "negative") +
           (rep.agree ? " (agree)" : " (DISAGREE)");
    return out;
}

json cmd_betti_compare(const RunConfig& cfg, Loaded& L, std::string& text) {
    if (cfg.arg_i < 0 || cfg.arg_n < 0 || cfg.arg_m < 0)
        throw Error("betti-compare needs --i, --prop-n and --m");
    Resolution RM(L.modules.at(0));
    Resolution RN(L.modules.at(1));
    Resolution RL(L.modules.at(2));
    BettiComparison cmp =
        compare_betti(RM, RN, RL, cfg.arg_i, cfg.arg_n, cfg.arg_m, cfg.window);
    json out;
    out["i"] = cmp.i;
    out["n"] = cmp.n;
    out["m"] = cmp.m;
    out["beta_m_minus_i_of_N"] = cmp.concluded_betti;
    out["epi_chain"] = cmp.epi_flags;
    text = "beta_" + std::to_string(cmp.m - cmp.i) + "(N) = 1 certified";
    return out;
}

json cmd_simple_syzygy(const RunConfig& cfg, Loaded& L, std::string& text) {
    SimpleSyzygyReport rep = simple_syzygy_analysis(L.A, cfg.window);
    json out;
    out["vertex_count"] = rep.vertex_count;
    out["selfinjective"] = rep.selfinjective;
    out["all_periodic"] = rep.all_periodic;
    out["betti_all_one"] = rep.betti_all_one;
    out["common_period"] = rep.common_period;
    out["period"] = rep.period;
    out["quiver_cyclic_j2"] = rep.quiver_cyclic_j2;
    // computed period for cyclic J^2 quivers equals the vertex count
    out["period_equals_vertex_count"] = rep.period == rep.vertex_count;
    out["simples"] = json::array();
    for (const auto& ps : rep.simples) {
        json s;
        s["vertex"] = L.A->vertex_name(ps.vertex);
        s["betti"] = ps.betti;
        s["simple_syzygy_at"] = ps.simple_syzygy_at;
        s["syzygy_vertex"] =
            ps.syzygy_vertex >= 0 ? L.A->vertex_name(ps.syzygy_vertex) : "";
        s["period"] = ps.period;
        out["simples"].push_back(s);
    }
    std::ostringstream ts;
    ts << "simples: " << rep.vertex_count << ", period " << rep.period
       << (rep.common_period ? " (common)" : "");
    text = ts.str();
    return out;
}

json cmd_hochschild(const RunConfig& cfg, Loaded& L, std::string& text) {
    HochschildData hh = hochschild(L.A, cfg.n_max);
    json out;
    out["dims"] = hh.dims;
    out["delta_dims"] = hh.delta_dims;
    json nd = json::array();
    for (std::size_t n = 0; n < hh.dims.size(); ++n) nd.push_back(hh.dims[n] - hh.delta_dims[n]);
    out["n_dims"] = nd;

    // mirror a Q computation over a large prime as a consistency check;
    // the rational answer stays authoritative
    if (cfg.mirror_prime > 0) {
        if (!L.A->field().is_rational()) throw Error("--mirror-prime needs a rational base field");
        std::string f = "GF(" + std::to_string(cfg.mirror_prime) + ")";
        RunConfig mcfg = cfg;
        mcfg.field_override = f;
        Loaded Lm = load(mcfg, 0);
        HochschildData hhm = hochschild(Lm.A, cfg.n_max);
        json mj;
        mj["prime"] = cfg.mirror_prime;
        mj["dims"] = hhm.dims;
        mj["delta_dims"] = hhm.delta_dims;
        mj["dims_match"] = hhm.dims == hh.dims && hhm.delta_dims == hh.delta_dims;
        out["mirror"] = mj;
    }

    std::ostringstream ts;
    ts << "HH dims:";
    for (auto d : hh.dims) ts << " " << d;
    text = ts.str();
    return out;
}

json cmd_ext_simples(const RunConfig& cfg, Loaded& L, std::string& text) {
    ExtAlgebraData es = ext_algebra_of_semisimple(L.A, cfg.n_max);
    json out;
    out["dims"] = es.dims;
    out["diagonal_concentrated"] = es.diagonal_concentrated;
    std::ostringstream ts;
    ts << "E_R dims:";
    for (auto d : es.dims) ts << " " << d;
    text = ts.str();
    return out;
}

json cmd_center(const RunConfig& cfg, Loaded& L, std::string& text) {
    ExtAlgebraData es = ext_algebra_of_semisimple(L.A, cfg.n_max + 1);
    GradedCenter Z = graded_center(*es.table, cfg.n_max);
    json out;
    out["dims"] = Z.dims;
    auto w = find_non_nilpotent_center(*es.table, Z, cfg.n_max, 4);
    if (w) {
        json wj;
        wj["degree"] = w->degree;
        wj["powers_checked"] = w->powers_checked;
        out["non_nilpotent_witness"] = wj;
    } else {
        out["non_nilpotent_witness"] = nullptr;
    }
    std::ostringstream ts;
    ts << "Z_gr dims:";
    for (auto d : Z.dims) ts << " " << d;
    text = ts.str();
    return out;
}

json cmd_verify_grcent(const RunConfig& cfg, Loaded& L, std::string& text) {
    GrCentReport rep = verify_gr_cent(L.A, cfg.n_max, /*throw_on_failure=*/false);
    json out;
    out["pass"] = rep.pass;
    out["delta_dims"] = rep.delta_dims;
    out["center_dims"] = rep.center_dims;
    out["t_ranks"] = rep.t_ranks;
    out["per_degree"] = rep.per_degree;
    text = rep.pass ? "gr-cent verification: pass" : "gr-cent verification: FAIL";
    return out;
}

} // namespace

const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> cmds{
        "resolve",    "betti",        "ext",       "yoneda",     "diagonal",
        "nilpotency", "periodicity",  "cx1",       "betti-compare",
        "simple-syzygy", "hochschild", "ext-simples", "center",  "verify-grcent"};
    return cmds;
}

RunResult run(const RunConfig& cfg) {
    auto t0 = std::chrono::steady_clock::now();
    RunResult rr;
    json& rep = rr.report;
    rep["schema"] = "diagext-report/1";
    rep["command"] = cfg.command;
    rep["algebra"] = cfg.algebra_text
                         ? "<inline>"
                         : std::filesystem::path(cfg.algebra_path).filename().string();
    json mods = json::array();
    for (std::size_t i = 0; i < cfg.module_texts.size(); ++i) mods.push_back("<inline>");
    for (const auto& p : cfg.module_paths)
        mods.push_back(std::filesystem::path(p).filename().string());
    rep["modules"] = mods;
    json params;
    params["n_max"] = cfg.n_max;
    params["window"] = cfg.window;
    if (!cfg.unit_overrides.empty()) params["unit_overrides"] = cfg.unit_overrides;
    if (cfg.field_override) params["field_override"] = *cfg.field_override;
    if (cfg.arg_i >= 0) params["i"] = cfg.arg_i;
    if (cfg.arg_n >= 0) params["prop_n"] = cfg.arg_n;
    if (cfg.arg_m >= 0) params["m"] = cfg.arg_m;
    rep["params"] = params;

    try {
        std::size_t needed = 0;
        if (cfg.command == "resolve" || cfg.command == "betti" || cfg.command == "ext" ||
            cfg.command == "yoneda" || cfg.command == "diagonal" ||
            cfg.command == "nilpotency" || cfg.command == "periodicity" || cfg.command == "cx1")
            needed = 1;
        if (cfg.command == "betti-compare") needed = 3;

        Loaded L = load(cfg, needed);
        rep["field"] = L.A->field().describe();
        json trunc;
        trunc["declared"] = L.pres.truncation ? json(*L.pres.truncation) : json(nullptr);
        trunc["materialized_to"] = L.depth;
        trunc["complete"] = L.A->complete();
        rep["truncation"] = trunc;

        std::string text;
        json result;
        if (cfg.command == "resolve") result = cmd_resolve(cfg, L, text);
        else if (cfg.command == "betti") result = cmd_betti(cfg, L, text);
        else if (cfg.command == "ext") result = cmd_ext(cfg, L, text);
        else if (cfg.command == "yoneda") result = cmd_yoneda(cfg, L, text);
        else if (cfg.command == "diagonal") result = cmd_diagonal(cfg, L, text);
        else if (cfg.command == "nilpotency") result = cmd_nilpotency(cfg, L, text);
        else if (cfg.command == "periodicity") result = cmd_periodicity(cfg, L, text);
        else if (cfg.command == "cx1") result = cmd_cx1(cfg, L, text);
        else if (cfg.command == "betti-compare") result = cmd_betti_compare(cfg, L, text);
        else if (cfg.command == "simple-syzygy") result = cmd_simple_syzygy(cfg, L, text);
        else if (cfg.command == "hochschild") result = cmd_hochschild(cfg, L, text);
        else if (cfg.command == "ext-simples") result = cmd_ext_simples(cfg, L, text);
        else if (cfg.command == "center") result = cmd_center(cfg, L, text);
        else if (cfg.command == "verify-grcent") result = cmd_verify_grcent(cfg, L, text);
        else throw Error("unknown command '" + cfg.command + "'");

        rep["result"] = result;
        rr.text = cfg.command + ": " + text;
        if (cfg.command == "verify-grcent" && !result["pass"].get<bool>()) rr.exit_code = 1;
    } catch (const HypothesisError& e) {
        rep["error"] = e.what();
        rep["error_kind"] = "HypothesisFailed";
        rep["hypothesis"] = e.which;
        rr.text = std::string("hypothesis failed: ") + e.what();
        rr.exit_code = 2;
    } catch (const std::exception& e) {
        rep["error"] = e.what();
        rep["error_kind"] = "Error";
        rr.text = std::string("error: ") + e.what();
        rr.exit_code = 1;
    }

    auto t1 = std::chrono::steady_clock::now();
    rep["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return rr;
}

} // namespace diagext
