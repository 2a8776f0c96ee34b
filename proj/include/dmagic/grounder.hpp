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
#ifndef DMAGIC_GROUNDER_HPP
#define DMAGIC_GROUNDER_HPP

#include <dmagic/core.hpp>

#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

namespace dmagic {

using AtomId = std::uint32_t;

/// Dense numbering of ground atoms.
class AtomTable {
public:
    AtomId intern(const GroundAtom& a);
    std::optional<AtomId> find(const GroundAtom& a) const;
    const GroundAtom& atom(AtomId id) const { return atoms_[id]; }
    std::size_t size() const noexcept { return atoms_.size(); }

private:
    std::vector<GroundAtom> atoms_;
    std::unordered_map<GroundAtom, AtomId> ids_;
};

/// Index of a database fact inside GroundRule::source.
inline constexpr std::size_t database_origin = static_cast<std::size_t>(-1);

struct GroundRule {
    std::vector<AtomId> head; // empty for constraints
    std::vector<AtomId> pos;
    std::vector<AtomId> neg;
    RuleRef origin;           // origin.index == database_origin for facts of D

    bool is_constraint() const noexcept { return head.empty(); }
    bool is_database_fact() const noexcept { return origin.index == database_origin; }
};

class GroundProgram {
public:
    AtomTable atoms;
    std::vector<GroundRule> rules;
    std::set<Symbol> universe;

    std::size_t add(GroundRule r);
    /// Instances of program rules and constraints (database facts excluded).
    std::size_t instance_count() const;
    Rule to_rule(std::size_t i) const;
    AtomSet to_atom_set(const std::vector<AtomId>& ids) const;
    /// Ids of the atoms of `m` known to the table; unknown atoms are reported via `missing`.
    std::vector<AtomId> ids_of(const AtomSet& m, bool* missing = nullptr) const;
};

std::string to_string(const GroundProgram& g);

struct GroundOptions {
    std::size_t max_instances = 200000;
    /// Extra constants added to the universe (e.g. constants of a goal).
    std::vector<Symbol> extra_constants;
    bool empty_universe_is_error = true;
    /// Only instantiate bodies over atoms that some rule or fact can produce.
    /// When false, every positive derived body literal ranges over the whole
    /// Herbrand universe and only base literals are checked against D.
    bool prune_underivable = true;
};

std::set<Symbol> herbrand_universe(const Program& program, const Database& db);

/// ground(P_D). Facts of D are included as rules with empty body.
GroundProgram ground_program(const Program& program, const Database& db, const GroundOptions& options = {});

/// Gelfond-Lifschitz reduct; shares the atom numbering of `g`.
GroundProgram reduct(const GroundProgram& g, const AtomSet& interpretation);

struct TruthPartition {
    std::vector<std::size_t> true_rules;
    std::vector<std::size_t> false_rules;
};

/// Splits rule indices of `g` by whether each rule is satisfied in `model`.
TruthPartition partition_by_truth(const GroundProgram& g, const AtomSet& model);

/// Head true or body false under the membership predicate.
template <class In>
bool rule_satisfied(const GroundRule& r, In&& in) {
    for (AtomId a : r.pos)
        if (!in(a)) return true;
    for (AtomId a : r.neg)
        if (in(a)) return true;
    for (AtomId a : r.head)
        if (in(a)) return true;
    return false;
}

} // namespace dmagic

#endif
