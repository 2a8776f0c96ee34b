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
#include <dmagic/core.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

namespace dmagic {

namespace {
void push_unique(std::vector<Symbol>& out, Symbol s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
}

void collect_vars(const Atom& a, std::vector<Symbol>& out) {
    for (const Term& t : a.args)
        if (t.is_variable()) push_unique(out, t.name);
}

void collect_vars(const Literal& l, std::vector<Symbol>& out) {
    if (l.is_comparison()) {
        if (l.lhs.is_variable()) push_unique(out, l.lhs.name);
        if (l.rhs.is_variable()) push_unique(out, l.rhs.name);
    } else {
        collect_vars(l.atom, out);
    }
}

template <class F>
void for_each_atom(const Rule& r, F&& f) {
    for (const Atom& a : r.head) f(a, false);
    for (const Literal& l : r.body)
        if (!l.is_comparison()) f(l.atom, l.is_negative());
}

template <class F>
void for_each_atom(const Program& p, F&& f) {
    for (const Rule& r : p.rules) for_each_atom(r, f);
    for (const Rule& r : p.constraints) for_each_atom(r, f);
}
} // namespace

// ---------------------------------------------------------------------------

bool Atom::is_ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.is_variable(); });
}

std::vector<Symbol> Atom::variables() const {
    std::vector<Symbol> out;
    collect_vars(*this, out);
    return out;
}

const char* to_string(CompareOp op) {
    switch (op) {
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "!=";
    }
    return "?";
}

bool evaluate(CompareOp op, Symbol lhs, Symbol rhs) {
    auto c = compare_constants(lhs, rhs);
    switch (op) {
    case CompareOp::lt: return c < 0;
    case CompareOp::le: return c <= 0;
    case CompareOp::gt: return c > 0;
    case CompareOp::ge: return c >= 0;
    case CompareOp::eq: return c == 0;
    case CompareOp::ne: return c != 0;
    }
    return false;
}

std::vector<Symbol> Literal::variables() const {
    std::vector<Symbol> out;
    collect_vars(*this, out);
    return out;
}

bool operator==(const Literal& a, const Literal& b) {
    if (a.kind != b.kind) return false;
    if (a.is_comparison()) return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
    return a.atom == b.atom;
}

bool operator<(const Literal& a, const Literal& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.is_comparison()) {
        if (a.op != b.op) return a.op < b.op;
        if (!(a.lhs == b.lhs)) return a.lhs < b.lhs;
        return a.rhs < b.rhs;
    }
    return a.atom < b.atom;
}

bool Rule::has_negation() const {
    return std::any_of(body.begin(), body.end(), [](const Literal& l) { return l.is_negative(); });
}

std::vector<Symbol> Rule::variables() const {
    std::vector<Symbol> out;
    for (const Atom& a : head) collect_vars(a, out);
    for (const Literal& l : body) collect_vars(l, out);
    return out;
}

void Program::add(Rule r) {
    if (r.is_constraint())
        constraints.push_back(std::move(r));
    else
        rules.push_back(std::move(r));
}

void Program::append(const Program& other) {
    rules.insert(rules.end(), other.rules.begin(), other.rules.end());
    constraints.insert(constraints.end(), other.constraints.begin(), other.constraints.end());
}

std::set<Symbol> Program::derived_predicates() const {
    std::set<Symbol> out;
    for (const Rule& r : rules)
        for (const Atom& a : r.head) out.insert(a.predicate);
    return out;
}

std::set<Symbol> Program::predicates() const {
    std::set<Symbol> out;
    for_each_atom(*this, [&](const Atom& a, bool) { out.insert(a.predicate); });
    return out;
}

std::set<Symbol> Program::base_predicates() const {
    std::set<Symbol> all = predicates();
    for (Symbol d : derived_predicates()) all.erase(d);
    return all;
}

std::set<Symbol> Program::constants() const {
    std::set<Symbol> out;
    auto visit = [&](const Rule& r) {
        for_each_atom(r, [&](const Atom& a, bool) {
            for (const Term& t : a.args)
                if (t.is_constant()) out.insert(t.name);
        });
        for (const Literal& l : r.body)
            if (l.is_comparison()) {
                if (l.lhs.is_constant()) out.insert(l.lhs.name);
                if (l.rhs.is_constant()) out.insert(l.rhs.name);
            }
    };
    for (const Rule& r : rules) visit(r);
    for (const Rule& r : constraints) visit(r);
    return out;
}

std::map<Symbol, std::size_t> Program::arities() const {
    std::map<Symbol, std::size_t> out;
    for_each_atom(*this, [&](const Atom& a, bool) { out.emplace(a.predicate, a.arity()); });
    return out;
}

bool structurally_equal(const Program& a, const Program& b) {
    auto sorted = [](std::vector<Rule> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    return sorted(a.rules) == sorted(b.rules) && sorted(a.constraints) == sorted(b.constraints);
}

// ---------------------------------------------------------------------------

std::size_t GroundAtom::hash() const noexcept {
    std::size_t h = predicate.hash();
    for (Symbol s : args) h ^= s.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

bool operator<(const GroundAtom& a, const GroundAtom& b) {
    if (a.predicate != b.predicate) return a.predicate < b.predicate;
    return std::lexicographical_compare(a.args.begin(), a.args.end(), b.args.begin(), b.args.end(), constant_less);
}

Atom to_atom(const GroundAtom& g) {
    Atom a{g.predicate, {}};
    a.args.reserve(g.args.size());
    for (Symbol s : g.args) a.args.push_back(Term::constant(s));
    return a;
}

GroundAtom to_ground(const Atom& a) {
    GroundAtom g{a.predicate, {}};
    g.args.reserve(a.args.size());
    for (const Term& t : a.args) {
        if (t.is_variable()) throw Error("atom is not ground: " + to_string(a));
        g.args.push_back(t.name);
    }
    return g;
}

AtomSet::AtomSet(std::vector<GroundAtom> atoms) : atoms_(std::move(atoms)) {
    std::sort(atoms_.begin(), atoms_.end());
    atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool AtomSet::contains(const GroundAtom& a) const { return std::binary_search(atoms_.begin(), atoms_.end(), a); }

void AtomSet::insert(GroundAtom a) {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
    if (it == atoms_.end() || !(*it == a)) atoms_.insert(it, std::move(a));
}

void AtomSet::insert_all(const AtomSet& other) {
    std::vector<GroundAtom> merged;
    merged.reserve(atoms_.size() + other.atoms_.size());
    std::set_union(atoms_.begin(), atoms_.end(), other.atoms_.begin(), other.atoms_.end(), std::back_inserter(merged));
    atoms_ = std::move(merged);
}

bool AtomSet::is_subset_of(const AtomSet& other) const {
    return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
}

AtomSet AtomSet::restrict_to(const std::set<Symbol>& predicates) const {
    AtomSet out;
    for (const GroundAtom& a : atoms_)
        if (predicates.count(a.predicate)) out.atoms_.push_back(a);
    return out;
}

std::set<Symbol> AtomSet::constants() const {
    std::set<Symbol> out;
    for (const GroundAtom& a : atoms_) out.insert(a.args.begin(), a.args.end());
    return out;
}

std::set<Symbol> AtomSet::predicates() const {
    std::set<Symbol> out;
    for (const GroundAtom& a : atoms_) out.insert(a.predicate);
    return out;
}

void ModelSet::normalize() {
    std::sort(models.begin(), models.end());
    models.erase(std::unique(models.begin(), models.end()), models.end());
}

bool ModelSet::contains(const Model& m) const {
    return std::find(models.begin(), models.end(), m) != models.end();
}

const char* to_string(AnswerMode m) { return m == AnswerMode::brave ? "brave" : "cautious"; }

namespace {
bool subst_less(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), constant_less);
}
} // namespace

void Answer::normalize() {
    std::sort(substitutions.begin(), substitutions.end(), subst_less);
    substitutions.erase(std::unique(substitutions.begin(), substitutions.end()), substitutions.end());
}

bool Answer::contains(const std::vector<Symbol>& s) const {
    return std::binary_search(substitutions.begin(), substitutions.end(), s, subst_less);
}

bool Answer::is_subset_of(const Answer& other) const {
    return std::includes(other.substitutions.begin(), other.substitutions.end(), substitutions.begin(),
                         substitutions.end(), subst_less);
}

std::optional<std::vector<Symbol>> match_goal(const Atom& goal, const GroundAtom& atom) {
    if (goal.predicate != atom.predicate || goal.args.size() != atom.args.size()) return std::nullopt;
    std::vector<Symbol> vars = goal.variables();
    std::vector<Symbol> values(vars.size());
    std::vector<bool> set(vars.size(), false);
    for (std::size_t i = 0; i < goal.args.size(); ++i) {
        const Term& t = goal.args[i];
        if (t.is_constant()) {
            if (t.name != atom.args[i]) return std::nullopt;
            continue;
        }
        std::size_t v = std::find(vars.begin(), vars.end(), t.name) - vars.begin();
        if (set[v] && values[v] != atom.args[i]) return std::nullopt;
        values[v] = atom.args[i];
        set[v] = true;
    }
    return values;
}

// ---------------------------------------------------------------------------

std::string to_string(const Term& t) { return t.name.str(); }

std::string to_string(const Atom& a) {
    std::string out = a.predicate.str();
    if (a.args.empty()) return out;
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ',';
        out += a.args[i].name.str();
    }
    out += ')';
    return out;
}

std::string to_string(const GroundAtom& a) { return to_string(to_atom(a)); }

std::string to_string(const Literal& l) {
    switch (l.kind) {
    case Literal::Kind::positive: return to_string(l.atom);
    case Literal::Kind::negative: return "not " + to_string(l.atom);
    case Literal::Kind::comparison:
        return to_string(l.lhs) + " " + to_string(l.op) + " " + to_string(l.rhs);
    }
    return {};
}

std::string to_string(const Rule& r) {
    std::string out;
    for (std::size_t i = 0; i < r.head.size(); ++i) {
        if (i) out += " | ";
        out += to_string(r.head[i]);
    }
    if (!r.body.empty()) {
        out += r.head.empty() ? ":- " : " :- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) out += ", ";
            out += to_string(r.body[i]);
        }
    }
    out += '.';
    return out;
}

std::string to_string(const AtomSet& s) {
    std::string out = "{";
    bool first = true;
    for (const GroundAtom& a : s) {
        if (!first) out += ", ";
        first = false;
        out += to_string(a);
    }
    out += '}';
    return out;
}

std::string to_string(const Answer& a) {
    std::ostringstream os;
    os << to_string(a.mode) << ' ';
    if (a.variables.empty()) {
        os << (a.holds() ? "true" : "false");
        return os.str();
    }
    os << '{';
    for (std::size_t i = 0; i < a.substitutions.size(); ++i) {
        if (i) os << ", ";
        os << '{';
        for (std::size_t j = 0; j < a.variables.size(); ++j) {
            if (j) os << ", ";
            os << a.variables[j] << '=' << a.substitutions[i][j];
        }
        os << '}';
    }
    os << '}';
    return os.str();
}

// ---------------------------------------------------------------------------

bool is_reserved_name(Symbol predicate) { return predicate.str().find("__") != std::string::npos; }

std::vector<Violation> validate_program(const Program& program, const ValidationOptions& options) {
    std::vector<Violation> out;
    auto report = [&](ViolationKind kind, RuleRef ref, std::string message) {
        out.push_back({kind, ref, to_string(program.at(ref)), std::move(message), std::nullopt});
    };

    std::map<Symbol, std::size_t> arity;
    std::set<Symbol> reserved_reported;
    auto check_statement = [&](const Rule& r, RuleRef ref) {
        for_each_atom(r, [&](const Atom& a, bool) {
            auto [it, fresh] = arity.emplace(a.predicate, a.arity());
            if (!fresh && it->second != a.arity())
                report(ViolationKind::arity_mismatch, ref,
                       "predicate " + a.predicate.str() + " used with arity " + std::to_string(a.arity()) +
                           " and " + std::to_string(it->second));
            if (!options.allow_reserved_names && is_reserved_name(a.predicate) &&
                reserved_reported.insert(a.predicate).second)
                report(ViolationKind::reserved_name, ref, "predicate name " + a.predicate.str() + " is reserved");
        });

        if (!ref.constraint && !options.allow_negation_in_rules && r.has_negation())
            report(ViolationKind::negation_in_rule, ref, "negative literal in a rule body");

        if (options.require_safety) {
            std::vector<Symbol> positive;
            for (const Literal& l : r.body)
                if (l.is_positive()) collect_vars(l.atom, positive);
            std::vector<Symbol> unsafe;
            for (Symbol v : r.variables())
                if (std::find(positive.begin(), positive.end(), v) == positive.end()) unsafe.push_back(v);
            for (Symbol v : unsafe)
                report(ViolationKind::unsafe_variable, ref,
                       "variable " + v.str() + " does not occur in a positive body literal");
        }
    };
    for (std::size_t i = 0; i < program.rules.size(); ++i) {
        if (program.rules[i].head.empty())
            report(ViolationKind::negation_in_head, {false, i}, "rule with empty head stored among rules");
        check_statement(program.rules[i], {false, i});
    }
    for (std::size_t i = 0; i < program.constraints.size(); ++i)
        check_statement(program.constraints[i], {true, i});

    if (options.check_constraint_polarity) {
        // p may not occur positively in one constraint and negatively in another
        std::map<Symbol, std::vector<std::size_t>> pos, neg;
        for (std::size_t i = 0; i < program.constraints.size(); ++i)
            for (const Literal& l : program.constraints[i].body) {
                if (l.is_positive()) pos[l.atom.predicate].push_back(i);
                if (l.is_negative()) neg[l.atom.predicate].push_back(i);
            }
        for (const auto& [p, negs] : neg) {
            auto it = pos.find(p);
            if (it == pos.end()) continue;
            for (std::size_t n : negs) {
                bool clash = std::any_of(it->second.begin(), it->second.end(), [&](std::size_t q) { return q != n; });
                if (clash) {
                    report(ViolationKind::constraint_polarity, {true, n},
                           "predicate " + p.str() + " appears positively and negatively in different constraints");
                    break;
                }
            }
        }
    }
    return out;
}

void require_valid(const Program& program, const ValidationOptions& options) {
    auto v = validate_program(program, options);
    if (!v.empty()) throw ValidationError(std::move(v));
}

// ---------------------------------------------------------------------------

bool operator<(const DependencyEdge& a, const DependencyEdge& b) {
    if (a.from != b.from) return a.from < b.from;
    if (a.to != b.to) return a.to < b.to;
    return a.negative < b.negative;
}

DependencyGraph::DependencyGraph(std::set<Symbol> nodes, std::vector<DependencyEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
    for (const auto& e : edges_) {
        nodes_.insert(e.from);
        nodes_.insert(e.to);
    }

    // Tarjan; components come out in reverse topological order of the
    // dependency direction, i.e. sinks (consumers) first, so reverse at the end.
    std::map<Symbol, std::vector<Symbol>> succ;
    for (const auto& e : edges_) succ[e.from].push_back(e.to);
    std::map<Symbol, std::size_t> index, low;
    std::set<Symbol> on_stack;
    std::vector<Symbol> stack;
    std::size_t counter = 0;
    std::function<void(Symbol)> visit = [&](Symbol v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on_stack.insert(v);
        for (Symbol w : succ[v]) {
            if (!index.count(w)) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on_stack.count(w)) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<Symbol> comp;
            Symbol w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack.erase(w);
                comp.push_back(w);
            } while (w != v);
            std::sort(comp.begin(), comp.end());
            components_.push_back(std::move(comp));
        }
    };
    for (Symbol v : nodes_)
        if (!index.count(v)) visit(v);
    std::reverse(components_.begin(), components_.end());
    for (std::size_t i = 0; i < components_.size(); ++i)
        for (Symbol s : components_[i]) component_index_[s] = i;
}

bool DependencyGraph::has_edge(Symbol from, Symbol to, bool negative) const {
    return std::binary_search(edges_.begin(), edges_.end(), DependencyEdge{from, to, negative});
}

std::size_t DependencyGraph::component_of(Symbol p) const {
    auto it = component_index_.find(p);
    if (it == component_index_.end()) throw Error("unknown predicate " + p.str());
    return it->second;
}

DependencyGraph dependency_graph(const Program& program) {
    std::vector<DependencyEdge> edges;
    for (const Rule& r : program.rules) {
        for (const Atom& h : r.head) {
            for (const Literal& l : r.body)
                if (!l.is_comparison()) edges.push_back({l.atom.predicate, h.predicate, l.is_negative()});
            for (const Atom& other : r.head)
                if (other.predicate != h.predicate) edges.push_back({other.predicate, h.predicate, false});
        }
    }
    return DependencyGraph(program.predicates(), std::move(edges));
}

std::vector<std::vector<Symbol>> stratification(const Program& program) {
    DependencyGraph g = dependency_graph(program);
    for (const auto& e : g.edges())
        if (e.negative && g.mutually_recursive(e.from, e.to))
            throw NotStratified("negative dependency of " + e.to.str() + " on " + e.from.str() + " inside a cycle");

    std::map<Symbol, std::size_t> stratum;
    for (const auto& comp : g.components()) {
        std::size_t level = 0;
        for (const auto& e : g.edges()) {
            if (std::find(comp.begin(), comp.end(), e.to) == comp.end()) continue;
            if (std::find(comp.begin(), comp.end(), e.from) != comp.end()) continue;
            level = std::max(level, stratum[e.from] + (e.negative ? 1 : 0));
        }
        for (Symbol s : comp) stratum[s] = level;
    }

    std::set<Symbol> derived = program.derived_predicates();
    std::map<std::size_t, std::vector<Symbol>> grouped;
    for (Symbol d : derived) grouped[stratum[d]].push_back(d);
    std::vector<std::vector<Symbol>> out;
    for (auto& [level, preds] : grouped) out.push_back(std::move(preds));
    return out;
}

} // namespace dmagic
