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
#include <dmagic/error.hpp>
#include <dmagic/parser.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dmagic::bench {

using json = nlohmann::json;

namespace {

Symbol int_symbol(long long v) { return Symbol(std::to_string(v)); }

GroundAtom fact(const char* pred, std::initializer_list<long long> args) {
    GroundAtom g{Symbol(pred), {}};
    for (long long a : args) g.args.push_back(int_symbol(a));
    return g;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

Database gen_chain(int k) {
    if (k < 1) throw std::invalid_argument("gen_chain: k must be >= 1");
    std::vector<GroundAtom> facts;
    for (int i = 1; i <= k; ++i) facts.push_back(fact("a", {i, i + 1}));
    return Database(std::move(facts));
}

void LatticeSpec::check() const {
    if (base < 1 || height < 1 || grade < 1) throw std::invalid_argument("lattice: base, height and grade must be >= 1");
    // a source may reach every node but itself
    if (base > 1 && height > 1 && std::size_t(grade) > node_count() - 1)
        throw std::invalid_argument("lattice: grade exceeds the available targets");
}

int Graph::max_node() const {
    int m = 0;
    for (int n : nodes) m = std::max(m, n);
    return m;
}

Graph lattice_graph(const LatticeSpec& spec, int offset) {
    spec.check();
    const int B = spec.base, H = spec.height;
    auto id = [&](int r, int c) { return offset + r * B + c + 1; };
    Graph g;
    for (int r = 0; r < H; ++r)
        for (int c = 0; c < B; ++c) g.nodes.push_back(id(r, c));

    std::set<std::pair<int, int>> seen;
    auto add = [&](int from, int to) {
        if (from == to || !seen.insert({from, to}).second) return false;
        g.arcs.emplace_back(from, to);
        return true;
    };
    for (int c = 0; c + 1 < B; ++c) add(id(0, c), id(0, c + 1));
    for (int r = 0; r + 1 < H; ++r) add(id(r, 0), id(r + 1, 0));

    for (int r = 0; r + 1 < H; ++r) {
        for (int c = 1; c < B; ++c) {
            std::vector<int> rows;
            for (int q = r + 1; q < H; ++q) rows.push_back(q);
            rows.push_back(r);
            for (int q = r - 1; q >= 0; --q) rows.push_back(q);
            int sent = 0;
            for (int q : rows) {
                for (int d = 0; d < B && sent < spec.grade; ++d)
                    if (add(id(r, c), id(q, (c + d) % B))) ++sent;
                if (sent == spec.grade) break;
            }
            if (sent < spec.grade) throw std::invalid_argument("lattice: not enough distinct targets");
        }
    }
    return g;
}

Graph triangle(int offset) {
    Graph g;
    g.nodes = {offset + 1, offset + 2, offset + 3};
    g.arcs = {{offset + 1, offset + 2}, {offset + 2, offset + 3}, {offset + 1, offset + 3}};
    return g;
}

Graph complete_graph(int n, int offset) {
    Graph g;
    for (int i = 1; i <= n; ++i) g.nodes.push_back(offset + i);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.arcs.emplace_back(offset + i, offset + j);
    return g;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::set<int> an(a.nodes.begin(), a.nodes.end());
    for (int n : b.nodes)
        if (an.count(n)) throw std::invalid_argument("disjoint_union: node ranges overlap");
    Graph g = a;
    g.nodes.insert(g.nodes.end(), b.nodes.begin(), b.nodes.end());
    g.arcs.insert(g.arcs.end(), b.arcs.begin(), b.arcs.end());
    return g;
}

Database graph_database(const Graph& g, bool symmetric) {
    std::vector<GroundAtom> facts;
    for (int n : g.nodes) facts.push_back(fact("node", {n}));
    for (auto [u, v] : g.arcs) {
        facts.push_back(fact("edge", {u, v}));
        if (symmetric) facts.push_back(fact("edge", {v, u}));
    }
    return Database(std::move(facts));
}

Database gen_lattice(const LatticeSpec& spec, int offset) { return graph_database(lattice_graph(spec, offset)); }

Graph component_graph(const ComponentSpec& c, int offset) {
    switch (c.kind) {
    case ComponentSpec::Kind::empty: return {};
    case ComponentSpec::Kind::triangle: return triangle(offset);
    case ComponentSpec::Kind::complete: return complete_graph(c.n, offset);
    case ComponentSpec::Kind::lattice: return lattice_graph(c.lattice, offset);
    }
    return {};
}

Database gen_two_components(const ComponentSpec& c1, const ComponentSpec& c2, bool symmetric) {
    Graph a = component_graph(c1, 0);
    Graph b = component_graph(c2, a.max_node());
    return graph_database(disjoint_union(a, b), symmetric);
}

// ---------------------------------------------------------------------------

const std::vector<BuiltinProgram>& builtin_programs() {
    static const std::vector<BuiltinProgram> programs = {
        {"P1", "p(X) | q(X) :- a(X,Y).\n", "p(1)", false},
        {"P2",
         "p(X) | q(X) :- a(X,Y).\n"
         ":- p(X), a(X,Y), q(Y), X <= 1.\n",
         "p(1)", false},
        {"COLORING",
         "2col(X,Y) :- color(X,red), color(Y,blue).\n"
         "color(X,red) | color(X,blue) | color(X,yellow) :- node(X).\n"
         ":- edge(X,Y), color(X,C), color(Y,C).\n",
         "2col(1,2)", false},
        // The conjunctive goal (v1(1), v2(2), v3(3)) is named by ds/3, and the
        // connected rules read edge first so the binding on Y reaches vI.
        {"3DS",
         "v1(X) | nv1(X) :- node(X).\n"
         "v2(X) | nv2(X) :- node(X).\n"
         "v3(X) | nv3(X) :- node(X).\n"
         ":- v1(X), v2(X).\n"
         ":- v1(X), v3(X).\n"
         ":- v2(X), v3(X).\n"
         ":- nv1(X), not connected1(X).\n"
         ":- nv2(X), not connected2(X).\n"
         ":- nv3(X), not connected3(X).\n"
         "connected1(Y) :- edge(X,Y), v1(X).\n"
         "connected2(Y) :- edge(X,Y), v2(X).\n"
         "connected3(Y) :- edge(X,Y), v3(X).\n"
         "ds(X,Y,Z) :- v1(X), v2(Y), v3(Z).\n",
         "ds(1,2,3)", true},
    };
    return programs;
}

const BuiltinProgram* find_builtin(std::string_view name) {
    for (const BuiltinProgram& p : builtin_programs()) {
        if (p.name == name) return &p;
    }
    if (name == "DS3") return find_builtin("3DS");
    return nullptr;
}

// ---------------------------------------------------------------------------

ComponentSpec parse_component(std::string_view text) {
    std::string t(text);
    auto colon = t.find(':');
    std::string kind = t.substr(0, colon);
    std::vector<int> nums;
    if (colon != std::string::npos) {
        std::stringstream ss(t.substr(colon + 1));
        for (std::string part; std::getline(ss, part, ',');) {
            try {
                nums.push_back(std::stoi(part));
            } catch (const std::logic_error&) {
                throw std::invalid_argument("bad component: " + t);
            }
        }
    }
    ComponentSpec c;
    if ((kind == "empty" || kind == "none") && nums.empty()) {
        c.kind = ComponentSpec::Kind::empty;
    } else if (kind == "triangle" && nums.empty()) {
        c.kind = ComponentSpec::Kind::triangle;
    } else if (kind == "complete" && nums.size() == 1) {
        c.kind = ComponentSpec::Kind::complete;
        c.n = nums[0];
    } else if (kind.size() > 1 && kind[0] == 'K' && colon == std::string::npos &&
               std::all_of(kind.begin() + 1, kind.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        c.kind = ComponentSpec::Kind::complete;
        c.n = std::stoi(kind.substr(1));
    } else if (kind == "lattice" && nums.size() == 3) {
        c.kind = ComponentSpec::Kind::lattice;
        c.lattice = {nums[0], nums[1], nums[2]};
        c.lattice.check();
    } else {
        throw std::invalid_argument("bad component: " + t);
    }
    if (c.kind == ComponentSpec::Kind::complete && c.n < 1) throw std::invalid_argument("bad component: " + t);
    return c;
}

Database InstanceSpec::build(bool default_symmetric) const {
    bool sym = symmetric.value_or(default_symmetric);
    switch (kind) {
    case Kind::chain: return gen_chain(k);
    case Kind::lattice: return graph_database(lattice_graph(lattice), sym);
    case Kind::two_components: return gen_two_components(c1, c2, sym);
    case Kind::file: return parse_database(read_file(file));
    }
    return {};
}

void BenchScenario::check() const {
    if (strategies.empty()) throw std::invalid_argument("scenario " + name + ": no strategies");
    if (repetitions < 1) throw std::invalid_argument("scenario " + name + ": repetitions must be >= 1");
    if (instances.empty()) throw std::invalid_argument("scenario " + name + ": no instances");
    if (workers < 1) throw std::invalid_argument("scenario " + name + ": workers must be >= 1");
    if (goal.empty()) throw std::invalid_argument("scenario " + name + ": no goal");
}

namespace {

LatticeSpec lattice_from(const json& j) {
    LatticeSpec s;
    s.base = j.at("base").get<int>();
    s.height = j.value("height", s.base);
    s.grade = j.value("grade", 1);
    return s;
}

std::string lattice_label(const LatticeSpec& s) {
    return std::to_string(s.base) + "x" + std::to_string(s.height) + "g" + std::to_string(s.grade);
}

ComponentSpec component_from(const json& j) {
    if (j.is_string()) return parse_component(j.get<std::string>());
    ComponentSpec c;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "empty") {
        c.kind = ComponentSpec::Kind::empty;
    } else if (kind == "triangle") {
        c.kind = ComponentSpec::Kind::triangle;
    } else if (kind == "complete") {
        c.kind = ComponentSpec::Kind::complete;
        c.n = j.at("n").get<int>();
    } else if (kind == "lattice") {
        c.kind = ComponentSpec::Kind::lattice;
        c.lattice = lattice_from(j);
    } else {
        throw std::invalid_argument("unknown component kind: " + kind);
    }
    return c;
}

std::string component_label(const ComponentSpec& c) {
    switch (c.kind) {
    case ComponentSpec::Kind::empty: return "empty";
    case ComponentSpec::Kind::triangle: return "tri";
    case ComponentSpec::Kind::complete: return "K" + std::to_string(c.n);
    case ComponentSpec::Kind::lattice: return lattice_label(c.lattice);
    }
    return "?";
}

void instances_from(const json& j, const std::string& base_dir, std::vector<InstanceSpec>& out) {
    std::string kind = j.at("kind").get<std::string>();
    InstanceSpec s;
    if (j.contains("symmetric")) s.symmetric = j.at("symmetric").get<bool>();
    if (kind == "chain") {
        s.kind = InstanceSpec::Kind::chain;
        const json& k = j.at("k");
        std::vector<int> ks;
        if (k.is_array()) {
            ks = k.get<std::vector<int>>();
        } else {
            ks.push_back(k.get<int>());
        }
        for (int v : ks) {
            InstanceSpec c = s;
            c.k = v;
            c.param = "k=" + std::to_string(v);
            out.push_back(c);
        }
        return;
    }
    if (kind == "lattice") {
        s.kind = InstanceSpec::Kind::lattice;
        s.lattice = lattice_from(j);
        s.param = lattice_label(s.lattice);
    } else if (kind == "two-comp" || kind == "two_components") {
        s.kind = InstanceSpec::Kind::two_components;
        s.c1 = component_from(j.at("c1"));
        s.c2 = component_from(j.at("c2"));
        s.param = component_label(s.c1) + "+" + component_label(s.c2);
    } else if (kind == "file") {
        s.kind = InstanceSpec::Kind::file;
        std::filesystem::path p = j.at("path").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        s.file = p.string();
        s.param = p.filename().string();
    } else {
        throw std::invalid_argument("unknown instance kind: " + kind);
    }
    if (j.contains("param")) s.param = j.at("param").get<std::string>();
    out.push_back(std::move(s));
}

} // namespace

BenchScenario parse_scenario(std::string_view json_text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scenario: ") + e.what());
    }
    try {
        BenchScenario s;
        s.name = j.value("name", std::string("scenario"));
        const json& prog = j.at("program");
        if (prog.is_string()) {
            const BuiltinProgram* b = find_builtin(prog.get<std::string>());
            if (!b) throw std::invalid_argument("unknown built-in program: " + prog.get<std::string>());
            s.program_name = b->name;
            s.program_text = b->text;
            s.goal = b->goal;
            s.symmetric_edges = b->symmetric_edges;
        } else {
            std::filesystem::path p = prog.at("file").get<std::string>();
            if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
            s.program_text = read_file(p.string());
        }
        if (j.contains("goal")) s.goal = j.at("goal").get<std::string>();
        if (j.contains("query")) s.goal = j.at("query").get<std::string>();
        if (j.contains("mode")) {
            auto m = parse_mode(j.at("mode").get<std::string>());
            if (!m) throw std::invalid_argument("unknown mode: " + j.at("mode").get<std::string>());
            s.mode = *m;
        }
        for (const json& st : j.at("strategies")) {
            auto v = parse_strategy(st.get<std::string>());
            if (!v) throw std::invalid_argument("unknown strategy: " + st.get<std::string>());
            s.strategies.push_back(*v);
        }
        s.repetitions = j.value("repetitions", 1);
        s.timeout_ms = j.value("timeout_ms", 60000);
        s.workers = j.value("workers", 1);
        if (j.contains("symmetric")) s.symmetric_edges = j.at("symmetric").get<bool>();
        for (const json& inst : j.at("instances")) instances_from(inst, base_dir, s.instances);
        s.check();
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scenario: ") + e.what());
    }
}

std::string answer_text(const Atom& goal, const Answer& answer) {
    if (goal.is_ground()) return answer.holds() ? "true" : "false";
    return std::to_string(answer.substitutions.size());
}

std::vector<ReportRow> run_scenario(const BenchScenario& scenario) {
    scenario.check();
    Program program = parse_program(scenario.program_text);
    Atom goal = parse_query(scenario.goal);
    Query query{goal, program};
    validate_goal(goal, program);

    std::vector<Database> dbs;
    for (const InstanceSpec& inst : scenario.instances) dbs.push_back(inst.build(scenario.symmetric_edges));

    struct Job {
        std::size_t strategy, instance;
        int rep;
    };
    std::vector<Job> jobs;
    for (std::size_t s = 0; s < scenario.strategies.size(); ++s)
        for (std::size_t i = 0; i < scenario.instances.size(); ++i)
            for (int r = 0; r < scenario.repetitions; ++r) jobs.push_back({s, i, r});

    std::vector<ReportRow> rows(jobs.size());
    auto run = [&](std::size_t idx) {
        const Job& job = jobs[idx];
        ReportRow row;
        row.scenario = scenario.name;
        row.strategy = to_string(scenario.strategies[job.strategy]);
        row.param = scenario.instances[job.instance].param;
        row.rep = job.rep;
        EvalOptions opts;
        opts.solve.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(scenario.timeout_ms);
        try {
            EvaluationReport rep = evaluate(query, dbs[job.instance], scenario.strategies[job.strategy],
                                            scenario.mode, opts);
            row.wall_ms = rep.stats.wall_ms;
            row.rewrite_ms = rep.stats.rewrite_ms;
            row.ground_rules = rep.stats.ground_rules;
            row.models = rep.stats.models;
            row.answer = answer_text(goal, rep.answer);
        } catch (const ResourceLimit&) {
            row.wall_ms = double(scenario.timeout_ms);
            row.answer = "timeout";
        }
        rows[idx] = std::move(row);
    };

    if (scenario.workers <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) run(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < scenario.workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) run(i);
            });
        for (std::thread& t : pool) t.join();
    }
    return rows;
}

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows) {
    os << "scenario,strategy,param,rep,wall_ms,rewrite_ms,ground_rules,models,answer\n";
    for (const ReportRow& r : rows) {
        os << csv_field(r.scenario) << ',' << r.strategy << ',' << csv_field(r.param) << ',' << r.rep << ','
           << std::fixed << std::setprecision(3) << r.wall_ms << ',' << r.rewrite_ms << ',' << r.ground_rules << ','
           << r.models << ',' << r.answer << '\n';
    }
    os.unsetf(std::ios::floatfield);
}

void write_summary(std::ostream& os, const std::vector<ReportRow>& rows) {
    struct Acc {
        double wall = 0;
        int n = 0;
        std::size_t models = 0, ground = 0;
        std::set<std::string> answers;
    };
    std::vector<std::pair<std::string, std::string>> order;
    std::map<std::pair<std::string, std::string>, Acc> acc;
    for (const ReportRow& r : rows) {
        auto key = std::make_pair(r.strategy, r.param);
        if (!acc.count(key)) order.push_back(key);
        Acc& a = acc[key];
        a.wall += r.wall_ms;
        ++a.n;
        a.models = r.models;
        a.ground = r.ground_rules;
        a.answers.insert(r.answer);
    }
    os << std::left << std::setw(15) << "strategy" << std::setw(20) << "param" << std::right << std::setw(12)
       << "wall_ms" << std::setw(10) << "models" << std::setw(12) << "ground" << "  answer\n";
    for (const auto& key : order) {
        const Acc& a = acc[key];
        std::string ans;
        for (const std::string& s : a.answers) ans += (ans.empty() ? "" : "/") + s;
        os << std::left << std::setw(15) << key.first << std::setw(20) << key.second << std::right << std::setw(12)
           << std::fixed << std::setprecision(2) << a.wall / a.n << std::setw(10) << a.models << std::setw(12)
           << a.ground << "  " << ans << '\n';
    }
    os.unsetf(std::ios::floatfield);
}

} // namespace dmagic::bench
