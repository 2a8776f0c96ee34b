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
#ifndef DMAGIC_SOLVER_HPP
#define DMAGIC_SOLVER_HPP

#include <dmagic/core.hpp>
#include <dmagic/grounder.hpp>

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

namespace dmagic {

struct SolveOptions {
    /// Stop after this many models (0 = enumerate all). A stopped run is not exhaustive.
    std::size_t max_models = 0;
    std::uint64_t max_decisions = 50'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    /// Limits raise ResourceLimit; otherwise the result is marked non-exhaustive.
    bool throw_on_limit = true;
    /// Only models containing every `assume_true` atom and no `assume_false` atom.
    std::vector<GroundAtom> assume_true;
    std::vector<GroundAtom> assume_false;
    /// Called for every model in discovery order; return false to stop.
    std::function<bool(const Model&)> on_model;
};

struct SolveStats {
    std::uint64_t decisions = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t candidates = 0; // total assignments reaching the stability check
    std::uint64_t models = 0;
};

/// Stable models of a ground program (constraints filter candidates).
ModelSet solve(const GroundProgram& g, const SolveOptions& options = {}, SolveStats* stats = nullptr);

/// MM of a ground negation-free program; constraints are respected.
ModelSet minimal_models(const GroundProgram& g, const SolveOptions& options = {});

/// SM(P_D).
ModelSet stable_models(const Program& program, const Database& db, const SolveOptions& options = {},
                       const GroundOptions& ground = {});

/// Unique stable model of a stratified normal program without constraints.
Model perfect_model(const Program& program, const Database& db, const GroundOptions& ground = {});

/// M contains D, satisfies ground(P_D) and is a minimal model of its reduct.
bool is_stable(const Program& program, const Database& db, const Model& candidate);
bool is_stable(const GroundProgram& g, const Model& candidate);

/// Substitutions for the goal variables; cautious answers over no models are
/// all instantiations over `universe`.
Answer answers(const Atom& goal, const ModelSet& models, AnswerMode mode, const std::set<Symbol>& universe = {});

ModelSet cross_union(const ModelSet& a, const ModelSet& b);

} // namespace dmagic

#endif
