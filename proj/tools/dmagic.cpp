/*
 *  Copyright (C) 2026  The dmagic authors
 *
 *  Licensed under the Apache License, Version 2.0 (the "License");
 *  you may not use this file except in compliance with the License.
 *  You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 *  Unless required by applicable law or agreed to in writing, software
 *  distributed under the License is distributed on an "AS IS" BASIS,
 *  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *  See the License for the specific language governing permissions and
 *  limitations under the License.
 *
 */
#include <dmagic/bench.hpp>
#include <dmagic/engine.hpp>
#include <dmagic/error.hpp>
#include <dmagic/parser.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace dmagic;
using json = nlohmann::json;

enum Exit { ok = 0, usage = 1, invalid = 2, limit = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}


std::string model_line(const Model& m) { return to_string(m); }

int run_eval(const std::string& program_file, const std::string& db_file, const std::string& query_file,
             const std::string& goal_text, const std::string& strategy_name, const std::string& mode_name,
             const std::string& emit_file, bool as_json, bool raw, int timeout_ms) {
    auto strategy = parse_strategy(strategy_name);
    auto mode = parse_mode(mode_name);
    if (!strategy) throw UsageError("unknown strategy: " + strategy_name);
    if (!mode) throw UsageError("unknown mode: " + mode_name);
    if (query_file.empty() == goal_text.empty()) throw UsageError("give exactly one of --query and --goal");

    Program program = parse_program(slurp(program_file));
    Database db = db_file.empty() ? Database{} : parse_database(slurp(db_file));
    Atom goal = parse_query(goal_text.empty() ? slurp(query_file) : goal_text);
    Query query{goal, program};

    if (!emit_file.empty()) emit(emit_file, render_bundle(disj_magic(goal, program)));

    EvalOptions opts;
    if (timeout_ms > 0)
        opts.solve.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
    EvaluationReport rep = evaluate(query, db, *strategy, *mode, opts);

    std::vector<Model> models;
    if (rep.models) {
        ModelSet ms = raw || *strategy == Strategy::naive ? *rep.models : restrict_to_source(*rep.models, program, db);
        models = ms.models;
    }

    if (as_json) {
        json j;
        j["goal"] = to_string(goal);
        j["strategy"] = to_string(*strategy);
        j["mode"] = to_string(*mode);
        j["holds"] = rep.answer.holds();
        json subs = json::array();
        for (const auto& s : rep.answer.substitutions) {
            json row = json::array();
            for (Symbol c : s) row.push_back(c.str());
            subs.push_back(row);
        }
        json vars = json::array();
        for (Symbol v : rep.answer.variables) vars.push_back(v.str());
        j["variables"] = vars;
        j["substitutions"] = subs;
        if (rep.models) {
            json ms = json::array();
            for (const Model& m : models) {
                json atoms = json::array();
                for (const GroundAtom& a : m) atoms.push_back(to_string(a));
                ms.push_back(atoms);
            }
            j["models"] = ms;
        }
        const EvalStats& st = rep.stats;
        j["stats"] = {{"ground_rules", st.ground_rules}, {"ground_atoms", st.ground_atoms},
                      {"models", st.models},             {"partial_models", st.partial_models},
                      {"rewritten_rules", st.rewritten_rules}, {"esv_stratified", st.esv_stratified},
                      {"rewrite_ms", st.rewrite_ms},     {"ground_ms", st.ground_ms},
                      {"solve_ms", st.solve_ms},         {"wall_ms", st.wall_ms}};
        std::cout << j.dump(2) << '\n';
        return ok;
    }

    if (rep.models) {
        for (const Model& m : models) std::cout << model_line(m) << '\n';
        std::cout << "% models: " << models.size() << '\n';
    }
    std::cout << to_string(rep.answer) << '\n';
    std::cerr << "% ground_rules=" << rep.stats.ground_rules << " wall_ms=" << rep.stats.wall_ms
              << " rewrite_ms=" << rep.stats.rewrite_ms << '\n';
    return ok;
}

int run_bench(const std::string& scenario_file, const std::string& out_file, bool summary) {
    std::string base = std::filesystem::path(scenario_file).parent_path().string();
    bench::BenchScenario sc;
    try {
        sc = bench::parse_scenario(slurp(scenario_file), base.empty() ? "." : base);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::vector<bench::ReportRow> rows = bench::run_scenario(sc);
    std::ostringstream csv;
    bench::write_csv(csv, rows);
    emit(out_file, csv.str());
    if (summary) bench::write_summary(out_file.empty() || out_file == "-" ? std::cerr : std::cout, rows);
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dmagic: disjunctive Datalog with constraints, magic-set rewriting"};
    app.require_subcommand(1);

    std::string program_file, db_file, query_file, goal_text, strategy = "magic-partial", mode = "brave";
    std::string emit_file, out_file, scenario_file;
    bool as_json = false, raw = false, summary = true, symmetric = false;
    int timeout_ms = 0;

    CLI::App* eval = app.add_subcommand("eval", "evaluate a query");
    eval->add_option("--program", program_file, "program file")->required();
    eval->add_option("--db", db_file, "database file");
    eval->add_option("--query", query_file, "file holding the query atom");
    eval->add_option("--goal", goal_text, "query atom given inline");
    eval->add_option("--strategy", strategy, "naive | magic-partial | magic-total");
    eval->add_option("--mode", mode, "brave | cautious | models");
    eval->add_option("--emit-rewritten", emit_file, "write the rewritten program here");
    eval->add_option("--timeout-ms", timeout_ms, "solver deadline (0 = none)");
    eval->add_flag("--json", as_json, "machine-readable output");
    eval->add_flag("--raw", raw, "print models with shadow, adorned and magic atoms");

    CLI::App* bench_cmd = app.add_subcommand("bench", "run a benchmark scenario");
    bench_cmd->add_option("--scenario", scenario_file, "scenario JSON")->required();
    bench_cmd->add_option("--out", out_file, "CSV output (default stdout)");
    bench_cmd->add_flag("!--no-summary", summary, "skip the summary table");

    CLI::App* gen = app.add_subcommand("gen", "generate a database");
    gen->require_subcommand(1);
    int k = 1;
    bench::LatticeSpec lat;
    std::string c1 = "triangle", c2 = "empty";
    CLI::App* gen_chain = gen->add_subcommand("chain", "a(1,2), ..., a(k,k+1)");
    gen_chain->add_option("--k", k)->required();
    gen_chain->add_option("--out", out_file);
    CLI::App* gen_lat = gen->add_subcommand("lattice", "layered graph");
    gen_lat->add_option("--base", lat.base)->required();
    gen_lat->add_option("--height", lat.height)->required();
    gen_lat->add_option("--grade", lat.grade)->required();
    gen_lat->add_flag("--symmetric", symmetric, "emit every arc in both directions");
    gen_lat->add_option("--out", out_file);
    CLI::App* gen_two = gen->add_subcommand("two-comp", "two disjoint components");
    gen_two->add_option("--c1", c1, "triangle | K<n> | complete:<n> | lattice:<b>,<h>,<g> | empty");
    gen_two->add_option("--c2", c2, "as --c1");
    gen_two->add_flag("--symmetric", symmetric, "emit every arc in both directions");
    gen_two->add_option("--out", out_file);

    CLI::App* rewrite = app.add_subcommand("rewrite", "print the magic-set rewriting");
    rewrite->add_option("--program", program_file)->required();
    rewrite->add_option("--query", query_file);
    rewrite->add_option("--goal", goal_text);
    rewrite->add_option("--out", out_file);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if (*eval)
            return run_eval(program_file, db_file, query_file, goal_text, strategy, mode, emit_file, as_json, raw,
                            timeout_ms);
        if (*bench_cmd) return run_bench(scenario_file, out_file, summary);
        if (*gen_chain) emit(out_file, render_database(bench::gen_chain(k)));
        if (*gen_lat) emit(out_file, render_database(bench::graph_database(bench::lattice_graph(lat), symmetric)));
        if (*gen_two)
            emit(out_file,
                 render_database(bench::gen_two_components(bench::parse_component(c1), bench::parse_component(c2), symmetric)));
        if (*rewrite) {
            if (query_file.empty() == goal_text.empty()) throw UsageError("give exactly one of --query and --goal");
            Program program = parse_program(slurp(program_file));
            Atom goal = parse_query(goal_text.empty() ? slurp(query_file) : goal_text);
            emit(out_file, render_bundle(disj_magic(goal, program)));
        }
        return ok;
    } catch (const UsageError& e) {
        std::cerr << "dmagic: " << e.what() << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dmagic: " << e.what() << '\n';
        return usage;
    } catch (const SyntaxError& e) {
        std::cerr << "dmagic: syntax error: " << e.what() << '\n';
        return invalid;
    } catch (const ValidationError& e) {
        std::cerr << "dmagic: " << e.what() << '\n';
        return invalid;
    } catch (const ResourceLimit& e) {
        std::cerr << "dmagic: resource limit: " << e.what() << '\n';
        return limit;
    } catch (const Error& e) {
        std::cerr << "dmagic: " << e.what() << '\n';
        return invalid;
    }
}
