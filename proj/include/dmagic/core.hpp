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
#ifndef DMAGIC_CORE_HPP
#define DMAGIC_CORE_HPP

#include <dmagic/error.hpp>
#include <dmagic/symbol.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dmagic {

// ---------------------------------------------------------------------------
// Syntax
// ---------------------------------------------------------------------------

struct Term {
    enum class Kind : std::uint8_t { constant, variable };

    Kind kind = Kind::constant;
    Symbol name;

    static Term constant(Symbol s) { return {Kind::constant, s}; }
    static Term constant(std::string_view s) { return {Kind::constant, Symbol(s)}; }
    static Term variable(Symbol s) { return {Kind::variable, s}; }
    static Term variable(std::string_view s) { return {Kind::variable, Symbol(s)}; }

    bool is_variable() const noexcept { return kind == Kind::variable; }
    bool is_constant() const noexcept { return kind == Kind::constant; }

    friend bool operator==(const Term&, const Term&) = default;
    friend bool operator<(const Term& a, const Term& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.name < b.name;
    }
};

struct Atom {
    Symbol predicate;
    std::vector<Term> args;

    std::size_t arity() const noexcept { return args.size(); }
    bool is_ground() const;
    /// Distinct variables in order of first occurrence.
    std::vector<Symbol> variables() const;

    friend bool operator==(const Atom&, const Atom&) = default;
    friend bool operator<(const Atom& a, const Atom& b) {
        if (a.predicate != b.predicate) return a.predicate < b.predicate;
        return a.args < b.args;
    }
};

enum class CompareOp : std::uint8_t { lt, le, gt, ge, eq, ne };

const char* to_string(CompareOp op);
bool evaluate(CompareOp op, Symbol lhs, Symbol rhs);

/// Body literal: an atom, a negated atom, or an evaluable comparison between terms.
struct Literal {
    enum class Kind : std::uint8_t { positive, negative, comparison };

    Kind kind = Kind::positive;
    Atom atom;                      // positive / negative
    CompareOp op = CompareOp::eq;   // comparison
    Term lhs, rhs;                  // comparison

    static Literal pos(Atom a) { return {Kind::positive, std::move(a), CompareOp::eq, {}, {}}; }
    static Literal neg(Atom a) { return {Kind::negative, std::move(a), CompareOp::eq, {}, {}}; }
    static Literal compare(Term l, CompareOp o, Term r) { return {Kind::comparison, {}, o, l, r}; }

    bool is_positive() const noexcept { return kind == Kind::positive; }
    bool is_negative() const noexcept { return kind == Kind::negative; }
    bool is_comparison() const noexcept { return kind == Kind::comparison; }
    std::vector<Symbol> variables() const;

    friend bool operator==(const Literal& a, const Literal& b);
    friend bool operator<(const Literal& a, const Literal& b);
};

/// a1 | ... | am :- b1, ..., bk, not c1, ..., not cn.
struct Rule {
    std::vector<Atom> head;
    std::vector<Literal> body;

    bool is_constraint() const noexcept { return head.empty(); }
    bool is_disjunctive() const noexcept { return head.size() > 1; }
    bool is_fact() const noexcept { return body.empty() && head.size() == 1; }
    bool has_negation() const;
    /// Distinct variables in order of first occurrence (head first, then body).
    std::vector<Symbol> variables() const;

    friend bool operator==(const Rule&, const Rule&) = default;
    friend bool operator<(const Rule& a, const Rule& b) {
        if (a.head != b.head) return a.head < b.head;
        return a.body < b.body;
    }
};

/// The pair (P_R, P_C). Derived predicates are exactly the head predicates of
/// P_R; every other predicate occurring in the program is base.
struct Program {
    std::vector<Rule> rules;
    std::vector<Rule> constraints;

    void add(Rule r);
    void append(const Program& other);
    bool empty() const noexcept { return rules.empty() && constraints.empty(); }
    std::size_t size() const noexcept { return rules.size() + constraints.size(); }

    const Rule& at(RuleRef ref) const { return ref.constraint ? constraints.at(ref.index) : rules.at(ref.index); }

    std::set<Symbol> derived_predicates() const;
    std::set<Symbol> base_predicates() const;
    std::set<Symbol> predicates() const;
    /// Constants occurring anywhere in the program.
    std::set<Symbol> constants() const;
    /// First-seen arity per predicate (validate_program reports conflicts).
    std::map<Symbol, std::size_t> arities() const;

    friend bool operator==(const Program&, const Program&) = default;
};

/// Equality of rule multisets and constraint multisets; literal order within
/// each rule is significant.
bool structurally_equal(const Program& a, const Program& b);

// ---------------------------------------------------------------------------
// Ground objects and semantics
// ---------------------------------------------------------------------------

struct GroundAtom {
    Symbol predicate;
    std::vector<Symbol> args;

    friend bool operator==(const GroundAtom&, const GroundAtom&) = default;
    std::size_t hash() const noexcept;
};

/// Deterministic output order: predicate text, then arguments by compare_constants.
bool operator<(const GroundAtom& a, const GroundAtom& b);

Atom to_atom(const GroundAtom& g);
/// Precondition: a.is_ground().
GroundAtom to_ground(const Atom& a);

/// Sorted set of ground atoms.
class AtomSet {
public:
    AtomSet() = default;
    explicit AtomSet(std::vector<GroundAtom> atoms);

    bool contains(const GroundAtom& a) const;
    void insert(GroundAtom a);
    void insert_all(const AtomSet& other);
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }
    bool is_subset_of(const AtomSet& other) const;
    auto begin() const noexcept { return atoms_.begin(); }
    auto end() const noexcept { return atoms_.end(); }
    const std::vector<GroundAtom>& atoms() const noexcept { return atoms_; }

    /// Atoms whose predicate is in `predicates` (the I[P] restriction).
    AtomSet restrict_to(const std::set<Symbol>& predicates) const;
    std::set<Symbol> constants() const;
    std::set<Symbol> predicates() const;

    friend bool operator==(const AtomSet&, const AtomSet&) = default;
    friend bool operator<(const AtomSet& a, const AtomSet& b) { return a.atoms_ < b.atoms_; }

private:
    std::vector<GroundAtom> atoms_;
};

/// A set of ground facts over base predicates.
using Database = AtomSet;
/// An interpretation; the stable/minimal status is established by the solver.
using Model = AtomSet;

struct Query {
    Atom goal;
    Program program;
};

/// Set of models plus whether enumeration ran to completion.
struct ModelSet {
    std::vector<Model> models; // sorted, no duplicates
    bool exhaustive = true;

    void normalize();
    bool contains(const Model& m) const;
    std::size_t size() const noexcept { return models.size(); }
    bool empty() const noexcept { return models.empty(); }
    friend bool operator==(const ModelSet&, const ModelSet&) = default;
};

enum class AnswerMode : std::uint8_t { brave, cautious };

const char* to_string(AnswerMode m);

/// Substitutions for the goal's variables (in first-occurrence order) that make
/// the goal true. A ground goal has one (empty) substitution when it holds.
struct Answer {
    AnswerMode mode = AnswerMode::brave;
    std::vector<Symbol> variables;
    std::vector<std::vector<Symbol>> substitutions; // sorted, no duplicates

    bool holds() const noexcept { return !substitutions.empty(); }
    bool contains(const std::vector<Symbol>& s) const;
    bool is_subset_of(const Answer& other) const;
    void normalize();
    friend bool operator==(const Answer& a, const Answer& b) {
        return a.variables == b.variables && a.substitutions == b.substitutions;
    }
};

/// Instantiations of the goal's variables under which the goal matches `atom`.
std::optional<std::vector<Symbol>> match_goal(const Atom& goal, const GroundAtom& atom);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const GroundAtom& a);
std::string to_string(const Literal& l);
std::string to_string(const Rule& r);
std::string to_string(const AtomSet& s);
std::string to_string(const Answer& a);

// ---------------------------------------------------------------------------
// Validation and dependency structure
// ---------------------------------------------------------------------------

/// Predicate names of the form `sv__*`, `m__*` or containing `__` are reserved
/// for shadow, magic and adorned predicates introduced by rewriting.
bool is_reserved_name(Symbol predicate);

struct ValidationOptions {
    bool require_safety = true;
    bool allow_negation_in_rules = false; // rewriting-internal programs use negation
    bool check_constraint_polarity = true;
    bool allow_reserved_names = false;
};

/// Empty iff every Program invariant holds. Violations are data, not failures.
std::vector<Violation> validate_program(const Program& program, const ValidationOptions& options = {});

/// Throws ValidationError when validate_program reports anything.
void require_valid(const Program& program, const ValidationOptions& options = {});

struct DependencyEdge {
    Symbol from; // body predicate
    Symbol to;   // head predicate
    bool negative = false;

    friend bool operator==(const DependencyEdge&, const DependencyEdge&) = default;
    friend bool operator<(const DependencyEdge& a, const DependencyEdge& b);
};

/// Predicate dependency graph of P_R: q -> p when q occurs in the body of a rule
/// defining p, and between distinct head predicates of a disjunctive rule.
class DependencyGraph {
public:
    DependencyGraph(std::set<Symbol> nodes, std::vector<DependencyEdge> edges);

    const std::set<Symbol>& nodes() const noexcept { return nodes_; }
    const std::vector<DependencyEdge>& edges() const noexcept { return edges_; }
    bool has_edge(Symbol from, Symbol to, bool negative) const;

    /// Strongly connected components in topological order (dependencies first).
    const std::vector<std::vector<Symbol>>& components() const noexcept { return components_; }
    std::size_t component_of(Symbol p) const;
    bool mutually_recursive(Symbol a, Symbol b) const { return component_of(a) == component_of(b); }

private:
    std::set<Symbol> nodes_;
    std::vector<DependencyEdge> edges_;
    std::vector<std::vector<Symbol>> components_;
    std::map<Symbol, std::size_t> component_index_;
};

DependencyGraph dependency_graph(const Program& program);

/// Ordered partition of the derived predicates such that every negative edge
/// points strictly upward. Throws NotStratified when a negative edge lies
/// inside a strongly connected component.
std::vector<std::vector<Symbol>> stratification(const Program& program);

} // namespace dmagic

template <>
struct std::hash<dmagic::GroundAtom> {
    std::size_t operator()(const dmagic::GroundAtom& a) const noexcept { return a.hash(); }
};

#endif
