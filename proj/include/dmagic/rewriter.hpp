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
#ifndef DMAGIC_REWRITER_HPP
#define DMAGIC_REWRITER_HPP

#include <dmagic/core.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

namespace dmagic {

// Reserved naming. Shadow of p is sv__p, p adorned with bf is p__bf (p__0 for
// arity 0), and the magic predicate of an adorned predicate q is m__q.
inline constexpr std::string_view shadow_prefix = "sv__";
inline constexpr std::string_view magic_prefix = "m__";

Symbol shadow_name(Symbol p);
Symbol adorned_name(Symbol p, const std::string& pattern);
Symbol magic_name(Symbol adorned);

/// b for constant arguments, f for variables.
std::string binding_pattern(const Atom& goal);

// ---------------------------------------------------------------------------
// Standard versions
// ---------------------------------------------------------------------------

/// esv(P_R): each a1 | ... | am :- B becomes a_i :- B and a_i :- a_j, B (i != j).
std::vector<Rule> esv_rules(const std::vector<Rule>& rules);

/// esv(P_C): for each positive derived atom b_i of a constraint, b_i :- (rest of body).
std::vector<Rule> esv_constraints(const std::vector<Rule>& constraints, const std::set<Symbol>& derived);

/// esv(P) = esv(P_R) ∪ esv(P_C), as a normal program.
Program esv(const Program& program);

struct Shadowed {
    Program program;
    std::map<Symbol, Symbol> shadow_map; // source predicate -> shadow
};

/// Renames every predicate in `derived` to its shadow. Throws ReservedPrefix if
/// a renamed predicate already carries a reserved affix.
Shadowed shadow(const Program& program, const std::set<Symbol>& derived);
Shadowed shadow(const Program& program);

/// RV(P_R): a1 | ... | am :- sv__a1, ..., sv__am, B.
std::vector<Rule> restricted_version(const std::vector<Rule>& rules);

/// ESV(P) = shadow(esv(P)).
Shadowed extended_shadow_version(const Program& program);

/// Rew(P) = RV(P_R) ∪ P_C ∪ ESV(P).
Program rew(const Program& program);

// ---------------------------------------------------------------------------
// Magic sets
// ---------------------------------------------------------------------------

struct AdornedRule {
    Rule rule;                         // predicates already renamed to adorned names
    std::size_t source = 0;            // index into the normal program's rules
    Symbol head_predicate;             // unadorned
    std::string head_pattern;
    std::vector<std::string> patterns; // per body literal; empty when not adorned
    std::vector<bool> adorned;         // per body literal: derived, hence renamed (arity 0 has pattern "")
    std::vector<Symbol> body_predicates; // unadorned, per body literal (empty for comparisons)
};

struct AdornedProgram {
    Atom goal;          // unadorned goal atom
    std::string goal_pattern;
    std::vector<AdornedRule> rules;
    std::map<Symbol, std::set<std::string>> adornments; // predicate -> patterns reached
};

/// Left-to-right binding propagation from `goal` over a normal program.
AdornedProgram adorn(const Atom& goal, const Program& normal_program);

struct MagicProgram {
    std::vector<Rule> magic;    // seed fact first, then magic rules
    std::vector<Rule> modified;
};

MagicProgram magic(const AdornedProgram& adorned);

/// sv__p(shape) :- sv__p__a(shape) for each most general P_R head shape of p and
/// each adornment a of sv__p.
std::vector<Rule> collecting_rules(const std::vector<Rule>& source_rules, const std::map<Symbol, Symbol>& shadow_map,
                                   const AdornedProgram& adorned);

struct RewriteBundle {
    std::vector<Rule> restricted;
    std::vector<Rule> constraints;
    std::vector<Rule> magic;     // seed and magic rules
    std::vector<Rule> modified;
    std::vector<Rule> collecting;
    std::map<Symbol, Symbol> shadow_map;
    Atom goal;
    bool identity = false; // fully free goal: the source program unchanged

    Program program() const;
};

/// Disj_Magic(g(t), (P_R, P_C)).
RewriteBundle disj_magic(const Atom& goal, const Program& program);

/// Program text with `% -- part --` separators.
std::string render_bundle(const RewriteBundle& bundle);

/// Throws ValidationError unless the goal names a derived predicate with the right arity.
void validate_goal(const Atom& goal, const Program& program);

// ---------------------------------------------------------------------------
// Stratified negation to constraints
// ---------------------------------------------------------------------------

/// Generates predicate names that do not occur in a given program and carry no reserved affix.
class FreshNames {
public:
    explicit FreshNames(const Program& program);
    Symbol make(Symbol base, const char* tag);

private:
    std::set<Symbol> used_;
};

struct Eliminated {
    std::vector<Rule> rules;
    std::vector<Rule> constraints;
};

/// Replaces each negated body literal `not b(t)` of `rule` by a guessed partition
/// p'|b' with three checking constraints. `context` is the program containing
/// the rule; it is used to reject negation through recursion (UnstratifiedUse).
Eliminated eliminate_stratified_negation(const Rule& rule, FreshNames& fresh, const Program& context);

/// Applies the rewriting to every rule of `program` that has negated literals.
Program eliminate_stratified_negation(const Program& program);

} // namespace dmagic

#endif
