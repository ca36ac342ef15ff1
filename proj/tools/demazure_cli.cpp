#include <omp.h>

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "demazure/job.hpp"

using namespace demazure;

namespace {

Json read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("InvalidArgument", "cannot read config file '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw config_error("InvalidArgument", "config file '" + path + "' is not valid JSON: " + e.what());
    }
}

int emit(const Json& doc, bool human, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "cannot write " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    if (human) {
        std::cout << human_summary(doc);
    } else if (out_path.empty()) {
        std::cout << text;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Formal affine Demazure algebras: root data, coproducts, dual algebras and torsion."};
    std::vector<std::string> command;
    std::string config_path, type, lattice, ring, fgl, out_path;
    int prec = 0, slack = 0, threads = 0;
    uint64_t seed = 0;
    std::vector<std::string> word_overrides;
    bool human = false, timing = false;

    app.add_option("command", command,
                   "roots | weyl | rebase <word> | mul <expr> <expr> | coproduct <word> | dual-mult-table | eta <i> <j> | "
                   "kappa [root] | torsion | charmap | verify <suite>")
        ->required();
    app.add_option("--config", config_path, "JSON configuration; flags override its keys");
    app.add_option("--type", type, "Root system type, e.g. A2, B3, G2, A1xA1");
    app.add_option("--lattice", lattice, "sc or adj");
    app.add_option("--ring", ring, "Coefficient ring: Z, Z/4, Z[1/2], Z[a]");
    app.add_option("--fgl", fgl, "additive | multiplicative[:beta=B] | JSON law");
    app.add_option("--prec", prec, "Output precision");
    app.add_option("--slack", slack, "Extra working degrees (default: number of positive roots + 2)");
    app.add_option("--seed", seed, "Seed for the randomized checks");
    app.add_option("--word", word_overrides, "Basis word override CANONICAL=REPLACEMENT, e.g. 1,2,1=2,1,2");
    app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");
    app.add_option("--out", out_path, "Write the JSON document to this file");
    app.add_flag("--human", human, "Print a plain-text summary instead of JSON");
    app.add_flag("--timing", timing, "Include wall-clock time in the output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (threads > 0) omp_set_num_threads(threads);

    JobConfig cfg;
    try {
        if (!config_path.empty()) cfg.merge_json(read_config(config_path));
        Json flags = Json::object();
        if (app.count("--type")) flags["type"] = type;
        if (app.count("--lattice")) flags["lattice"] = lattice;
        if (app.count("--ring")) flags["ring"] = ring;
        if (app.count("--fgl")) flags["fgl"] = law_json_from_flag(fgl);
        if (app.count("--prec")) flags["prec"] = prec;
        if (app.count("--slack")) flags["slack"] = slack;
        if (app.count("--seed")) flags["seed"] = seed;
        cfg.merge_json(flags);
        for (const auto& w : word_overrides) {
            auto eq = w.find('=');
            if (eq == std::string::npos) throw config_error("InvalidWord", "word override must look like CANONICAL=REPLACEMENT");
            cfg.words[w.substr(0, eq)] = w.substr(eq + 1);
        }
        auto t0 = std::chrono::steady_clock::now();
        CommandOutput out = run_command(cfg, command);
        if (timing) {
            out.doc["timing"] = Json{{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
        }
        int io = emit(out.doc, human, out_path);
        return io != 0 ? io : out.exit_code;
    } catch (const Error& e) {
        CommandOutput out = error_output(e, command);
        out.doc["config"] = cfg.to_json();
        emit(out.doc, human, out_path);
        return out.exit_code;
    } catch (const std::exception& e) {
        CommandOutput out = error_output(config_error("InternalError", e.what()), command);
        emit(out.doc, human, out_path);
        return 2;
    }
}
