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
#include <dmagic/parser.hpp>
#include <dmagic/rewriter.hpp>

#include <algorithm>
#include <deque>

namespace dmagic {

Symbol shadow_name(Symbol p) { return Symbol(std::string(shadow_prefix) + p.str()); }

Symbol adorned_name(Symbol p, const std::string& pattern) {
    return Symbol(p.str() + "__" + (pattern.empty() ? std::string("0") : pattern));
}

Symbol magic_name(Symbol adorned) { return Symbol(std::string(magic_prefix) + adorned.str()); }

std::string binding_pattern(const Atom& goal) {
    std::string out;
    for (const Term& t : goal.args) out += t.is_constant() ? 'b' : 'f';
    return out;
}

namespace {
void push_unique(std::vector<Rule>& out, Rule r) {
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(std::move(r));
}

Atom renamed(const Atom& a, Symbol p) { return Atom{p, a.args}; }

std::vector<Symbol> vars_of(const Literal& l) { return l.variables(); }

bool contains(const std::vector<Symbol>& v, Symbol s) { return std::find(v.begin(), v.end(), s) != v.end(); }
} // namespace

// ---------------------------------------------------------------------------

std::vector<Rule> esv_rules(const std::vector<Rule>& rules) {
    std::vector<Rule> out;
    for (const Rule& r : rules) {
        if (r.head.size() <= 1) {
            out.push_back(r);
            continue;
        }
        for (const Atom& a : r.head) out.push_back(Rule{{a}, r.body});
        for (std::size_t i = 0; i < r.head.size(); ++i)
            for (std::size_t j = 0; j < r.head.size(); ++j) {
                if (i == j) continue;
                Rule s{{r.head[i]}, {Literal::pos(r.head[j])}};
                s.body.insert(s.body.end(), r.body.begin(), r.body.end());
                out.push_back(std::move(s));
            }
    }
    return out;
}

std::vector<Rule> esv_constraints(const std::vector<Rule>& constraints, const std::set<Symbol>& derived) {
    std::vector<Rule> out;
    for (const Rule& c : constraints) {
        for (std::size_t i = 0; i < c.body.size(); ++i) {
            const Literal& bi = c.body[i];
            if (!bi.is_positive() || !derived.count(bi.atom.predicate)) continue;
            Rule r{{bi.atom}, {}};
            auto add_group = [&](auto&& keep) {
                for (std::size_t j = 0; j < c.body.size(); ++j)
                    if (j != i && keep(c.body[j])) r.body.push_back(c.body[j]);
            };
            add_group([&](const Literal& l) { return l.is_positive() && !derived.count(l.atom.predicate); });
            add_group([&](const Literal& l) { return l.is_positive() && derived.count(l.atom.predicate); });
            add_group([](const Literal& l) { return l.is_comparison(); });
            add_group([](const Literal& l) { return l.is_negative(); });
            out.push_back(std::move(r));
        }
    }
    return out;
}

Program esv(const Program& program) {
    Program out;
    out.rules = esv_rules(program.rules);
    auto c = esv_constraints(program.constraints, program.derived_predicates());
    out.rules.insert(out.rules.end(), c.begin(), c.end());
    return out;
}

Shadowed shadow(const Program& program, const std::set<Symbol>& derived) {
    Shadowed out;
    for (Symbol d : derived) {
        if (is_reserved_name(d)) throw ReservedPrefix("predicate " + d.str() + " already carries a reserved affix");
        out.shadow_map.emplace(d, shadow_name(d));
    }
    auto ren = [&](const Atom& a) {
        auto it = out.shadow_map.find(a.predicate);
        return it == out.shadow_map.end() ? a : renamed(a, it->second);
    };
    auto convert = [&](const Rule& r) {
        Rule s;
        for (const Atom& h : r.head) s.head.push_back(ren(h));
        for (Literal l : r.body) {
            if (!l.is_comparison()) l.atom = ren(l.atom);
            s.body.push_back(std::move(l));
        }
        return s;
    };
    for (const Rule& r : program.rules) out.program.rules.push_back(convert(r));
    for (const Rule& r : program.constraints) out.program.constraints.push_back(convert(r));
    return out;
}

Shadowed shadow(const Program& program) { return shadow(program, program.derived_predicates()); }

std::vector<Rule> restricted_version(const std::vector<Rule>& rules) {
    std::vector<Rule> out;
    for (const Rule& r : rules) {
        Rule s{r.head, {}};
        for (const Atom& a : r.head) s.body.push_back(Literal::pos(renamed(a, shadow_name(a.predicate))));
        s.body.insert(s.body.end(), r.body.begin(), r.body.end());
        out.push_back(std::move(s));
    }
    return out;
}

Shadowed extended_shadow_version(const Program& program) {
    return shadow(esv(program), program.derived_predicates());
}

Program rew(const Program& program) {
    Program out;
    out.rules = restricted_version(program.rules);
    out.constraints = program.constraints;
    Shadowed e = extended_shadow_version(program);
    out.rules.insert(out.rules.end(), e.program.rules.begin(), e.program.rules.end());
    return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string pattern_for(const Atom& a, const std::vector<Symbol>& bound) {
    std::string p;
    for (const Term& t : a.args) p += (t.is_constant() || contains(bound, t.name)) ? 'b' : 'f';
    return p;
}

std::vector<Term> bound_args(const Atom& a, const std::string& pattern) {
    std::vector<Term> out;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (pattern[i] == 'b') out.push_back(a.args[i]);
    return out;
}

std::vector<Symbol> bound_vars(const Atom& a, const std::string& pattern) {
    std::vector<Symbol> out;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (pattern[i] == 'b' && a.args[i].is_variable() && !contains(out, a.args[i].name))
            out.push_back(a.args[i].name);
    return out;
}

} // namespace

AdornedProgram adorn(const Atom& goal, const Program& normal_program) {
    AdornedProgram out;
    out.goal = goal;
    out.goal_pattern = binding_pattern(goal);
    std::set<Symbol> derived = normal_program.derived_predicates();

    std::deque<std::pair<Symbol, std::string>> work;
    auto reach = [&](Symbol p, const std::string& pattern) {
        if (out.adornments[p].insert(pattern).second) work.emplace_back(p, pattern);
    };
    reach(goal.predicate, out.goal_pattern);

    while (!work.empty()) {
        auto [p, alpha] = work.front();
        work.pop_front();
        for (std::size_t ri = 0; ri < normal_program.rules.size(); ++ri) {
            const Rule& r = normal_program.rules[ri];
            if (r.head.size() != 1) throw Error("adorn expects a normal program");
            if (r.head.front().predicate != p) continue;

            AdornedRule ar;
            ar.source = ri;
            ar.head_predicate = p;
            ar.head_pattern = alpha;
            ar.rule.head.push_back(renamed(r.head.front(), adorned_name(p, alpha)));
            std::vector<Symbol> bound = bound_vars(r.head.front(), alpha);

            // negated derived literals see the head and every positive literal
            std::vector<Symbol> all_positive = bound;
            for (const Literal& l : r.body)
                if (l.is_positive())
                    for (Symbol v : l.atom.variables())
                        if (!contains(all_positive, v)) all_positive.push_back(v);

            for (const Literal& l : r.body) {
                Literal nl = l;
                std::string pattern;
                Symbol pred;
                if (!l.is_comparison()) pred = l.atom.predicate;
                bool is_derived = !l.is_comparison() && derived.count(pred);
                if (is_derived) {
                    pattern = pattern_for(l.atom, l.is_positive() ? bound : all_positive);
                    nl.atom = renamed(l.atom, adorned_name(pred, pattern));
                    reach(pred, pattern);
                }
                if (l.is_positive())
                    for (Symbol v : l.atom.variables())
                        if (!contains(bound, v)) bound.push_back(v);
                ar.rule.body.push_back(std::move(nl));
                ar.patterns.push_back(std::move(pattern));
                ar.adorned.push_back(is_derived);
                ar.body_predicates.push_back(pred);
            }
            out.rules.push_back(std::move(ar));
        }
    }
    return out;
}

MagicProgram magic(const AdornedProgram& adorned) {
    MagicProgram out;
    Symbol goal_adorned = adorned_name(adorned.goal.predicate, adorned.goal_pattern);
    out.magic.push_back(Rule{{Atom{magic_name(goal_adorned), bound_args(adorned.goal, adorned.goal_pattern)}}, {}});

    for (const AdornedRule& ar : adorned.rules) {
        const Atom& head = ar.rule.head.front();
        Atom head_magic{magic_name(head.predicate), bound_args(head, ar.head_pattern)};
        std::vector<Symbol> h_vars = bound_vars(head, ar.head_pattern);
        const auto& body = ar.rule.body;

        for (std::size_t k = 0; k < body.size(); ++k) {
            if (!ar.adorned[k]) continue;
            const Literal& target = body[k];
            std::vector<Symbol> reach;
            for (Symbol v : bound_vars(target.atom, ar.patterns[k]))
                if (!contains(h_vars, v)) reach.push_back(v);

            std::vector<std::size_t> candidates;
            for (std::size_t i = 0; i < body.size(); ++i)
                if (body[i].is_positive() && i != k && (target.is_negative() || i < k)) candidates.push_back(i);

            std::vector<bool> kept(body.size(), false);
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t i : candidates) {
                    if (kept[i]) continue;
                    std::vector<Symbol> vs = vars_of(body[i]);
                    bool linked = std::any_of(vs.begin(), vs.end(),
                                              [&](Symbol v) { return !contains(h_vars, v) && contains(reach, v); });
                    if (!linked) continue;
                    kept[i] = true;
                    changed = true;
                    for (Symbol v : vs)
                        if (!contains(h_vars, v) && !contains(reach, v)) reach.push_back(v);
                }
            }

            Rule m{{Atom{magic_name(target.atom.predicate), bound_args(target.atom, ar.patterns[k])}}, {}};
            m.body.push_back(Literal::pos(head_magic));
            std::vector<Symbol> available = h_vars;
            for (std::size_t i = 0; i < body.size(); ++i)
                if (kept[i]) {
                    m.body.push_back(body[i]);
                    for (Symbol v : vars_of(body[i]))
                        if (!contains(available, v)) available.push_back(v);
                }
            for (const Literal& l : body) {
                if (!l.is_comparison()) continue;
                std::vector<Symbol> vs = l.variables();
                if (std::all_of(vs.begin(), vs.end(), [&](Symbol v) { return contains(available, v); }))
                    m.body.push_back(l);
            }
            push_unique(out.magic, std::move(m));
        }

        Rule mod{ar.rule.head, {Literal::pos(head_magic)}};
        mod.body.insert(mod.body.end(), body.begin(), body.end());
        push_unique(out.modified, std::move(mod));
    }
    return out;
}

namespace {
/// True when `special` is an instance of `general` (variables of `special` held fixed).
bool instance_of(const Atom& special, const Atom& general) {
    if (special.predicate != general.predicate || special.args.size() != general.args.size()) return false;
    std::map<Symbol, Term> theta;
    for (std::size_t i = 0; i < general.args.size(); ++i) {
        const Term& g = general.args[i];
        const Term& s = special.args[i];
        if (g.is_constant()) {
            if (!(g == s)) return false;
            continue;
        }
        auto [it, fresh] = theta.emplace(g.name, s);
        if (!fresh && !(it->second == s)) return false;
    }
    return true;
}
} // namespace

std::vector<Rule> collecting_rules(const std::vector<Rule>& source_rules, const std::map<Symbol, Symbol>& shadow_map,
                                   const AdornedProgram& adorned) {
    std::vector<Rule> out;
    for (const auto& [p, sv] : shadow_map) {
        auto ad = adorned.adornments.find(sv);
        if (ad == adorned.adornments.end()) continue;
        std::vector<Atom> shapes;
        for (const Rule& r : source_rules)
            for (const Atom& h : r.head)
                if (h.predicate == p) shapes.push_back(h);
        std::vector<Atom> general;
        for (std::size_t i = 0; i < shapes.size(); ++i) {
            bool dominated = false;
            for (std::size_t j = 0; j < shapes.size() && !dominated; ++j) {
                if (i == j || !instance_of(shapes[i], shapes[j])) continue;
                // proper instance, or a renaming seen earlier
                dominated = !instance_of(shapes[j], shapes[i]) || j < i;
            }
            if (!dominated) general.push_back(shapes[i]);
        }
        for (const std::string& alpha : ad->second)
            for (const Atom& s : general)
                push_unique(out, Rule{{renamed(s, sv)}, {Literal::pos(renamed(s, adorned_name(sv, alpha)))}});
    }
    return out;
}

void validate_goal(const Atom& goal, const Program& program) {
    auto derived = program.derived_predicates();
    if (!derived.count(goal.predicate))
        throw ValidationError("goal predicate " + goal.predicate.str() + " is not defined by any rule");
    auto arity = program.arities();
    if (arity.at(goal.predicate) != goal.arity())
        throw ValidationError("goal " + to_string(goal) + " has arity " + std::to_string(goal.arity()) +
                              ", expected " + std::to_string(arity.at(goal.predicate)));
}

Program RewriteBundle::program() const {
    Program p;
    p.rules = restricted;
    p.rules.insert(p.rules.end(), magic.begin(), magic.end());
    p.rules.insert(p.rules.end(), modified.begin(), modified.end());
    p.rules.insert(p.rules.end(), collecting.begin(), collecting.end());
    p.constraints = constraints;
    return p;
}

RewriteBundle disj_magic(const Atom& goal, const Program& program) {
    require_valid(program);
    validate_goal(goal, program);
    RewriteBundle b;
    b.goal = goal;
    b.constraints = program.constraints;
    bool free = !goal.args.empty() && binding_pattern(goal).find('b') == std::string::npos;
    if (free) {
        b.restricted = program.rules;
        b.identity = true;
        return b;
    }
    b.restricted = restricted_version(program.rules);
    Shadowed e = extended_shadow_version(program);
    b.shadow_map = e.shadow_map;
    AdornedProgram ad = adorn(renamed(goal, shadow_name(goal.predicate)), e.program);
    MagicProgram mg = magic(ad);
    b.magic = std::move(mg.magic);
    b.modified = std::move(mg.modified);
    b.collecting = collecting_rules(program.rules, e.shadow_map, ad);
    return b;
}

std::string render_bundle(const RewriteBundle& b) {
    auto section = [](const char* name, std::vector<Rule> rules) {
        Program p;
        for (Rule& r : rules) p.add(std::move(r));
        return std::string("% -- ") + name + " --\n" + render_program(p);
    };
    std::vector<Rule> magic = b.magic;
    magic.insert(magic.end(), b.modified.begin(), b.modified.end());
    return section("restricted", b.restricted) + section("constraints", b.constraints) + section("magic", magic) +
           section("collecting", b.collecting);
}

// ---------------------------------------------------------------------------

FreshNames::FreshNames(const Program& program) : used_(program.predicates()) {}

Symbol FreshNames::make(Symbol base, const char* tag) {
    std::string stem = base.str();
    while (!stem.empty() && stem.back() == '_') stem.pop_back();
    for (std::size_t k = 1;; ++k) {
        Symbol s(stem + "_" + tag + std::to_string(k));
        if (used_.insert(s).second) return s;
    }
}

Eliminated eliminate_stratified_negation(const Rule& rule, FreshNames& fresh, const Program& context) {
    Eliminated out;
    if (rule.is_constraint()) {
        out.constraints.push_back(rule);
        return out;
    }
    if (!rule.has_negation()) {
        out.rules.push_back(rule);
        return out;
    }

    // b may not depend on any head predicate
    Program with_rule = context;
    if (std::find(with_rule.rules.begin(), with_rule.rules.end(), rule) == with_rule.rules.end())
        with_rule.rules.push_back(rule);
    DependencyGraph g = dependency_graph(with_rule);
    std::set<Symbol> reached;
    std::vector<Symbol> stack;
    for (const Atom& h : rule.head) stack.push_back(h.predicate);
    while (!stack.empty()) {
        Symbol s = stack.back();
        stack.pop_back();
        if (!reached.insert(s).second) continue;
        for (const auto& e : g.edges())
            if (e.from == s) stack.push_back(e.to);
    }
    for (const Literal& l : rule.body)
        if (l.is_negative() && reached.count(l.atom.predicate))
            throw UnstratifiedUse("negated predicate " + l.atom.predicate.str() + " depends on the head of `" +
                                  to_string(rule) + "`");

    Rule current = rule;
    for (;;) {
        auto neg = std::find_if(current.body.begin(), current.body.end(), [](const Literal& l) { return l.is_negative(); });
        if (neg == current.body.end()) break;
        Atom b = neg->atom;
        std::vector<Term> v;
        for (Symbol s : current.variables()) v.push_back(Term::variable(s));
        Atom p_prime{fresh.make(current.head.front().predicate, "p"), v};
        Atom b_prime{fresh.make(b.predicate, "n"), v};

        out.rules.push_back(Rule{current.head, {Literal::pos(p_prime)}});
        Rule next{{p_prime, b_prime}, {}};
        for (auto it = current.body.begin(); it != current.body.end(); ++it)
            if (it != neg) next.body.push_back(*it);
        out.constraints.push_back(Rule{{}, {Literal::pos(p_prime), Literal::pos(b_prime)}});
        out.constraints.push_back(Rule{{}, {Literal::pos(b_prime), Literal::neg(b)}});
        out.constraints.push_back(Rule{{}, {Literal::pos(p_prime), Literal::pos(b)}});
        current = std::move(next);
    }
    out.rules.push_back(std::move(current));
    return out;
}

Program eliminate_stratified_negation(const Program& program) {
    FreshNames fresh(program);
    Program out;
    out.constraints = program.constraints;
    for (const Rule& r : program.rules) {
        Eliminated e = eliminate_stratified_negation(r, fresh, program);
        out.rules.insert(out.rules.end(), e.rules.begin(), e.rules.end());
        out.constraints.insert(out.constraints.end(), e.constraints.begin(), e.constraints.end());
    }
    return out;
}

} // namespace dmagic
