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
// Random small programs with constraints, databases and ground goals.
#ifndef DMAGIC_TESTS_FUZZ_HPP
#define DMAGIC_TESTS_FUZZ_HPP

#include <dmagic/core.hpp>
#include <dmagic/error.hpp>
#include <dmagic/rewriter.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace fuzz {

using namespace dmagic;

struct Case {
    Program program;
    Database db;
    std::vector<Atom> goals; // ground
};

struct Sig {
    const char* name;
    int arity;
};

inline const std::vector<Sig>& base_sigs() {
    static const std::vector<Sig> s = {{"a", 2}, {"b", 1}};
    return s;
}
inline const std::vector<Sig>& derived_sigs() {
    static const std::vector<Sig> s = {{"p", 1}, {"q", 1}, {"r", 2}, {"s", 0}};
    return s;
}

class Generator {
public:
    explicit Generator(unsigned seed) : rng_(seed) {}

    int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }

    /// `with_constraints`: 0 = none, 1 = at least one, -1 = either.
    Case make(int with_constraints) {
        for (;;) {
            Case c = attempt(with_constraints);
            if (validate_program(c.program).empty()) return c;
            ++rejected;
        }
    }

    std::size_t rejected = 0;

private:
    std::mt19937 rng_;
    int nconst_ = 3;

    Term constant() { return Term::constant(std::to_string(uniform(1, nconst_))); }

    Atom random_atom(const Sig& s, const std::vector<std::string>& vars, double const_p) {
        Atom a{Symbol(s.name), {}};
        for (int i = 0; i < s.arity; ++i) {
            if (vars.empty() || chance(const_p))
                a.args.push_back(constant());
            else
                a.args.push_back(Term::variable(vars[uniform(0, int(vars.size()) - 1)]));
        }
        return a;
    }

    static void collect(const Atom& a, std::vector<Symbol>& out) {
        for (const Term& t : a.args)
            if (t.is_variable() && std::find(out.begin(), out.end(), t.name) == out.end()) out.push_back(t.name);
    }

    std::vector<Literal> positive_body(int n, bool base_first) {
        static const std::vector<std::string> vars = {"X", "Y", "Z"};
        std::vector<Literal> body;
        for (int i = 0; i < n; ++i) {
            bool base = (i == 0 && base_first) || chance(0.5);
            const auto& pool = base ? base_sigs() : derived_sigs();
            body.push_back(Literal::pos(random_atom(pool[uniform(0, int(pool.size()) - 1)], vars, 0.15)));
        }
        return body;
    }

    void maybe_comparison(std::vector<Literal>& body, const std::vector<Symbol>& bound) {
        if (bound.empty() || !chance(0.2)) return;
        static const CompareOp ops[] = {CompareOp::le, CompareOp::ne, CompareOp::lt, CompareOp::eq};
        Term lhs = Term::variable(bound[uniform(0, int(bound.size()) - 1)]);
        Term rhs = chance(0.5) || bound.size() < 2 ? constant() : Term::variable(bound[uniform(0, int(bound.size()) - 1)]);
        body.push_back(Literal::compare(lhs, ops[uniform(0, 3)], rhs));
    }

    Rule random_rule() {
        Rule r;
        r.body = positive_body(uniform(1, 3), chance(0.7));
        std::vector<Symbol> bound;
        for (const Literal& l : r.body) collect(l.atom, bound);
        maybe_comparison(r.body, bound);
        std::vector<std::string> names;
        for (Symbol s : bound) names.push_back(s.str());
        int m = uniform(1, 2);
        for (int i = 0; i < m; ++i) {
            const Sig& s = derived_sigs()[uniform(0, int(derived_sigs().size()) - 1)];
            Atom h = random_atom(s, names, 0.1);
            if (std::find(r.head.begin(), r.head.end(), h) == r.head.end()) r.head.push_back(h);
        }
        return r;
    }

    Rule random_constraint() {
        Rule c;
        c.body = positive_body(uniform(1, 3), false);
        std::vector<Symbol> bound;
        for (const Literal& l : c.body) collect(l.atom, bound);
        std::vector<std::string> names;
        for (Symbol s : bound) names.push_back(s.str());
        if (chance(0.3)) {
            const auto& pool = chance(0.7) ? derived_sigs() : base_sigs();
            c.body.push_back(Literal::neg(random_atom(pool[uniform(0, int(pool.size()) - 1)], names, 0.2)));
        }
        maybe_comparison(c.body, bound);
        return c;
    }

    Case attempt(int with_constraints) {
        Case c;
        nconst_ = uniform(1, 3);
        int nrules = uniform(1, 5);
        for (int i = 0; i < nrules; ++i) c.program.rules.push_back(random_rule());
        int ncons = with_constraints == 0 ? 0 : with_constraints == 1 ? uniform(1, 2) : uniform(0, 2);
        for (int i = 0; i < ncons; ++i) c.program.constraints.push_back(random_constraint());

        std::vector<GroundAtom> facts;
        for (int i = 1; i <= nconst_; ++i) {
            if (chance(0.5)) facts.push_back({Symbol("b"), {Symbol(std::to_string(i))}});
            for (int j = 1; j <= nconst_; ++j)
                if (chance(0.35))
                    facts.push_back({Symbol("a"), {Symbol(std::to_string(i)), Symbol(std::to_string(j))}});
        }
        c.db = Database(std::move(facts));

        std::set<Symbol> derived = c.program.derived_predicates();
        std::vector<Sig> heads;
        for (const Sig& s : derived_sigs())
            if (derived.count(Symbol(s.name))) heads.push_back(s);
        for (int i = 0; i < 2 && !heads.empty(); ++i) {
            Atom g = random_atom(heads[uniform(0, int(heads.size()) - 1)], {}, 1.0);
            if (std::find(c.goals.begin(), c.goals.end(), g) == c.goals.end()) c.goals.push_back(g);
        }
        return c;
    }
};

/// ESV of the program has a stratification (the setting the rewriting theory covers).
inline bool esv_stratified(const Program& p) {
    try {
        stratification(extended_shadow_version(p).program);
        return true;
    } catch (const NotStratified&) {
        return false;
    }
}

} // namespace fuzz

#endif
