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
#ifndef DMAGIC_ENGINE_HPP
#define DMAGIC_ENGINE_HPP

#include <dmagic/core.hpp>
#include <dmagic/grounder.hpp>
#include <dmagic/rewriter.hpp>
#include <dmagic/solver.hpp>

#include <optional>
#include <string>

namespace dmagic {

enum class Strategy { naive, magic_partial, magic_total };
enum class EvalMode { brave, cautious, models };

const char* to_string(Strategy s);
const char* to_string(EvalMode m);
std::optional<Strategy> parse_strategy(std::string_view text);
std::optional<EvalMode> parse_mode(std::string_view text);

/// How magic_total completes a partial model N.
enum class Completion {
    /// Stable models of ground(P_D) that contain N.
    extension,
    /// N x SM(false rules of ground(P_D) w.r.t. N), the remainder taken literally.
    remainder,
};

struct EvalOptions {
    SolveOptions solve;
    GroundOptions ground;
    Completion completion = Completion::extension;
    /// Keep only magic_total models in which the goal holds.
    bool total_goal_filter = false;
    /// Ground goals in brave/cautious mode stop at the first witness.
    bool early_stop = true;
};

struct EvalStats {
    std::size_t ground_rules = 0;   // instances of program rules and constraints, facts of D excluded
    std::size_t ground_atoms = 0;
    std::size_t models = 0;
    std::size_t partial_models = 0; // magic_total: distinct restrictions M[P_D]
    std::size_t completions = 0;    // magic_total: completion searches run
    std::size_t rewritten_rules = 0;
    bool esv_stratified = true;
    double rewrite_ms = 0;
    double ground_ms = 0;
    double solve_ms = 0;
    double wall_ms = 0;             // grounding + solving; rewriting excluded
};

struct EvaluationReport {
    Answer answer;
    std::optional<ModelSet> models;
    EvalStats stats;
    std::optional<RewriteBundle> bundle;
};

/// RV, ESV, Magic and Coll assembled rule by rule as in the Magic_Partial listing.
RewriteBundle magic_partial_program(const Atom& goal, const Program& program);

/// SM(Disj_Magic ∪ D); models carry shadow, adorned and magic atoms.
ModelSet magic_partial(const Query& query, const Database& db, const EvalOptions& options = {},
                       EvalStats* stats = nullptr);

/// Completion of every partial model over ground(P_D).
ModelSet magic_total(const Query& query, const Database& db, const EvalOptions& options = {},
                     EvalStats* stats = nullptr);

/// Atoms over the predicates of P_D (source base and derived), i.e. M[P_D].
Model restrict_to_source(const Model& m, const Program& program, const Database& db);
ModelSet restrict_to_source(const ModelSet& ms, const Program& program, const Database& db);

EvaluationReport evaluate(const Query& query, const Database& db, Strategy strategy, EvalMode mode,
                          const EvalOptions& options = {});

} // namespace dmagic

#endif
