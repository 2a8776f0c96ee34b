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
#ifndef DMAGIC_BENCH_HPP
#define DMAGIC_BENCH_HPP

#include <dmagic/core.hpp>
#include <dmagic/engine.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dmagic::bench {

// ---------------------------------------------------------------------------
// Instance generators
// ---------------------------------------------------------------------------

/// a(1,2), ..., a(k,k+1). Throws std::invalid_argument for k < 1.
Database gen_chain(int k);

struct LatticeSpec {
    int base = 1;   // nodes per layer
    int height = 1; // layers
    int grade = 1;  // arcs leaving each node off the top layer

    std::size_t node_count() const { return std::size_t(base) * std::size_t(height); }
    std::size_t arc_count() const {
        return std::size_t(base - 1) * std::size_t(height - 1) * std::size_t(grade) + std::size_t(base - 1) +
               std::size_t(height - 1);
    }
    void check() const;
};

/// Directed graph over integer node ids.
struct Graph {
    std::vector<int> nodes;
    std::vector<std::pair<int, int>> arcs;

    int max_node() const;
};

/// Layered grid; node (r, c) has id offset + r*base + c + 1 (row-major, row 0 is the bottom).
Graph lattice_graph(const LatticeSpec& spec, int offset = 0);
Graph triangle(int offset = 0);            // 3 nodes, 3 edges
Graph complete_graph(int n, int offset = 0); // n nodes, n(n-1)/2 edges i < j
Graph disjoint_union(const Graph& a, const Graph& b);

/// node/1 and edge/2 facts; `symmetric` adds every arc in both directions.
Database graph_database(const Graph& g, bool symmetric = false);

/// node/edge facts of the lattice.
Database gen_lattice(const LatticeSpec& spec, int offset = 0);

/// Component spec for two-component instances.
struct ComponentSpec {
    enum class Kind { empty, triangle, complete, lattice };
    Kind kind = Kind::empty;
    int n = 0;           // complete
    LatticeSpec lattice; // lattice
};

Graph component_graph(const ComponentSpec& c, int offset);

/// `empty`, `triangle`, `K<n>`, `complete:<n>` or `lattice:<base>,<height>,<grade>`.
/// Throws std::invalid_argument on anything else.
ComponentSpec parse_component(std::string_view text);

/// Component 1 numbered from 1; component 2 continues after it.
Database gen_two_components(const ComponentSpec& c1, const ComponentSpec& c2, bool symmetric = false);

// ---------------------------------------------------------------------------
// Built-in programs
// ---------------------------------------------------------------------------

struct BuiltinProgram {
    std::string name;
    std::string text;
    std::string goal;
    bool symmetric_edges = false; // instances for this program use undirected edges
};

/// P1, P2, COLORING, 3DS.
const std::vector<BuiltinProgram>& builtin_programs();
const BuiltinProgram* find_builtin(std::string_view name);

// ---------------------------------------------------------------------------
// Scenarios
// ---------------------------------------------------------------------------

struct InstanceSpec {
    std::string param; // label for the CSV
    enum class Kind { chain, lattice, two_components, file } kind = Kind::chain;
    int k = 1;
    LatticeSpec lattice;
    ComponentSpec c1, c2;
    std::string file;
    std::optional<bool> symmetric; // defaults to the program's convention

    Database build(bool default_symmetric) const;
};

struct BenchScenario {
    std::string name;
    std::string program_name; // built-in name, or empty when program_text comes from a file
    std::string program_text;
    std::string goal;
    EvalMode mode = EvalMode::brave;
    std::vector<Strategy> strategies;
    std::vector<InstanceSpec> instances;
    int repetitions = 1;
    int timeout_ms = 60000;
    int workers = 1;
    bool symmetric_edges = false;

    void check() const;
};

/// Parses a scenario from JSON. Relative file paths resolve against `base_dir`.
BenchScenario parse_scenario(std::string_view json_text, const std::string& base_dir = ".");

struct ReportRow {
    std::string scenario;
    std::string strategy;
    std::string param;
    int rep = 0;
    double wall_ms = 0;
    double rewrite_ms = 0;
    std::size_t ground_rules = 0;
    std::size_t models = 0;
    std::string answer; // "true"/"false" for ground goals, substitution count otherwise, "timeout" on limit
};

/// One row per (strategy, instance, repetition), in that nesting order.
std::vector<ReportRow> run_scenario(const BenchScenario& scenario);

/// Answer column text for an evaluation result.
std::string answer_text(const Atom& goal, const Answer& answer);

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows);
/// Per (strategy, param): mean wall time, models, ground rules and the answer.
void write_summary(std::ostream& os, const std::vector<ReportRow>& rows);

} // namespace dmagic::bench

#endif
