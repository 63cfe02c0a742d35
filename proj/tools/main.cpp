#include <CLI11.hpp>

#include <iostream>

#include "diagext/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"diagext: exact graded Ext / diagonal subalgebra / Hochschild engine"};
    app.require_subcommand(1);

    diagext::RunConfig cfg;
    cfg.format = "text";

    for (const auto& name : diagext::known_commands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("algebra", cfg.algebra_path, "algebra presentation file")->required();
        sub->add_option("modules", cfg.module_paths, "module presentation file(s)");
        sub->add_option("--n", cfg.n_max, "homological degree bound");
        sub->add_option("--window", cfg.window, "syzygy/verification window");
        sub->add_option("--depth", cfg.depth, "internal-degree materialization depth");
        sub->add_option("--format", cfg.format, "text or json");
        sub->add_option_function<std::string>(
            "--q", [&cfg](const std::string& v) { cfg.unit_overrides["q"] = v; },
            "override the named unit q ('generic' keeps the declared value)");
        sub->add_option_function<std::string>(
            "--unit", [&cfg](const std::string& kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw CLI::ValidationError("--unit needs name=value");
                cfg.unit_overrides[kv.substr(0, eq)] = kv.substr(eq + 1);
            },
            "override a named unit, name=value (repeatable)");
        sub->add_option_function<std::string>(
            "--field", [&cfg](const std::string& v) { cfg.field_override = v; },
            "override the ground field: Q or GF(p)");
        if (name == "hochschild")
            sub->add_option("--mirror-prime", cfg.mirror_prime,
                            "cross-check a rational run over GF(p)");
        if (name == "betti-compare") {
            sub->add_option("--i", cfg.arg_i, "diagonal degree of eta")->required();
            sub->add_option("--prop-n", cfg.arg_n, "Ext degree of theta")->required();
            sub->add_option("--m", cfg.arg_m, "Betti index on the M side")->required();
        }
        sub->callback([&cfg, name]() { cfg.command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    diagext::RunResult rr = diagext::run(cfg);
    if (cfg.format == "json") {
        std::cout << rr.report.dump(2) << "\n";
    } else {
        std::cout << rr.text << "\n";
        if (rr.report.contains("error")) std::cout << rr.report["error"].get<std::string>() << "\n";
    }
    return rr.exit_code;
}
