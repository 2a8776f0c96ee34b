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
#include "fuzz.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

#include <dmagic/bench.hpp>
#include <dmagic/error.hpp>
#include <dmagic/rewriter.hpp>
#include <dmagic/solver.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace dmagic;
using namespace testing_helpers;

namespace {

Program internal(const std::string& t) { return parse_internal(t); }

std::vector<Model> as_vector(const ModelSet& ms) { return ms.models; }

struct RandomGround {
    GroundProgram g;
    oracle::Ground o;
};

// Ground program over atoms x0..x(n-1) with random rules, optionally with negation and constraints.
RandomGround random_ground(std::mt19937& rng, int n, bool negation, bool constraints) {
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    RandomGround r;
    oracle::Grounder og;
    for (int i = 0; i < n; ++i) {
        GroundAtom a{Symbol("x" + std::to_string(i)), {}};
        r.g.atoms.intern(a);
        og.id(a);
    }
    int nrules = pick(1, 2 * n);
    for (int k = 0; k < nrules; ++k) {
        GroundRule gr;
        oracle::GRule orl;
        bool constraint = constraints && pick(0, 5) == 0;
        int heads = constraint ? 0 : pick(1, 3);
        std::set<int> used;
        auto fresh = [&] {
            for (;;) {
                int a = pick(0, n - 1);
                if (used.insert(a).second || int(used.size()) >= n) return a;
            }
        };
        for (int h = 0; h < heads; ++h) {
            int a = fresh();
            if (std::find(orl.head.begin(), orl.head.end(), a) != orl.head.end()) continue;
            gr.head.push_back(AtomId(a));
            orl.head.push_back(a);
        }
        int pos = pick(constraint ? 1 : 0, 2);
        for (int b = 0; b < pos; ++b) {
            int a = pick(0, n - 1);
            gr.pos.push_back(AtomId(a));
            orl.pos.push_back(a);
        }
        if (negation && pick(0, 2) == 0) {
            int a = pick(0, n - 1);
            gr.neg.push_back(AtomId(a));
            orl.neg.push_back(a);
        }
        gr.origin = RuleRef{constraint, std::size_t(k)};
        r.g.add(gr);
        r.o.rules.push_back(orl);
    }
    r.o.atoms = og.out.atoms;
    return r;
}

} // namespace

TEST(MinimalModels, TextbookDisjunction) {
    GroundProgram g = ground_program(parse("a | b."), {});
    ModelSet ms = minimal_models(g);
    EXPECT_EQ(ms.models, (std::vector<Model>{model({"a"}), model({"b"})}));
    EXPECT_TRUE(ms.exhaustive);
}

TEST(MinimalModels, FactsOnly) {
    EXPECT_EQ(minimal_models(ground_program(parse("p(1)."), {})).models, std::vector<Model>{model({"p(1)"})});
}

TEST(MinimalModels, RejectsNegation) {
    EXPECT_THROW(minimal_models(ground_program(internal("p :- not q."), {})), Error);
}

TEST(MinimalModels, MatchesSubsetEnumeration) {
    std::mt19937 rng(1234);
    for (int trial = 0; trial < 400; ++trial) {
        int n = 1 + trial % 10;
        RandomGround r = random_ground(rng, n, false, trial % 2 == 0);
        std::vector<std::uint64_t> expect = oracle::minimal_models(n, r.o.rules);
        ModelSet got = minimal_models(r.g);
        std::set<std::uint64_t> got_masks;
        for (const Model& m : got.models) {
            std::uint64_t mask = 0;
            for (const GroundAtom& a : m) mask |= std::uint64_t(1) << std::stoi(a.predicate.str().substr(1));
            got_masks.insert(mask);
        }
        EXPECT_EQ(got_masks, std::set<std::uint64_t>(expect.begin(), expect.end())) << "trial " << trial;
    }
}

TEST(StableModels, MatchesSubsetEnumerationWithNegation) {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + trial % 10;
        RandomGround r = random_ground(rng, n, true, true);
        std::vector<Model> expect = oracle::stable_models(r.o);
        EXPECT_EQ(as_vector(solve(r.g)), expect) << "trial " << trial << "\n" << to_string(r.g);
    }
}

TEST(StableModels, ColoringTriangleAndK4) {
    Program p = parse(coloring_text());
    Database tri = bench::graph_database(bench::triangle());
    ModelSet ms = stable_models(p, tri);
    EXPECT_EQ(ms.size(), 6u);
    // the full-universe oracle is out of reach here; check each model directly
    for (const Model& m : ms.models) {
        EXPECT_TRUE(is_stable(p, tri, m));
        std::size_t colors = 0;
        for (const GroundAtom& a : m)
            if (a.predicate == Symbol("color")) ++colors;
        EXPECT_EQ(colors, 3u);
    }
    EXPECT_TRUE(stable_models(p, bench::graph_database(bench::complete_graph(4))).empty());
}

TEST(StableModels, CoincideWithMinimalModelsWhenPositive) {
    fuzz::Generator gen(5);
    for (int i = 0; i < 100; ++i) {
        fuzz::Case c = gen.make(0);
        GroundOptions o;
        o.empty_universe_is_error = false;
        GroundProgram g = ground_program(c.program, c.db, o);
        EXPECT_EQ(solve(g), minimal_models(g));
    }
}

TEST(StableModels, PairwiseIncomparable) {
    fuzz::Generator gen(6);
    for (int i = 0; i < 150; ++i) {
        fuzz::Case c = gen.make(-1);
        GroundOptions o;
        o.empty_universe_is_error = false;
        ModelSet ms = stable_models(c.program, c.db, {}, o);
        for (const Model& a : ms.models)
            for (const Model& b : ms.models)
                if (!(a == b)) EXPECT_FALSE(a.is_subset_of(b));
    }
}

TEST(StableModels, ConstraintsOnlyRemoveModels) {
    fuzz::Generator gen(8);
    for (int i = 0; i < 150; ++i) {
        fuzz::Case c = gen.make(1);
        Program rules_only = c.program;
        rules_only.constraints.clear();
        GroundOptions o;
        o.empty_universe_is_error = false;
        ModelSet with = stable_models(c.program, c.db, {}, o);
        ModelSet without = stable_models(rules_only, c.db, {}, o);
        for (const Model& m : with.models) EXPECT_TRUE(without.contains(m));
    }
}

TEST(StableModels, NormalPositiveProgramHasOneModel) {
    ModelSet ms = stable_models(parse("ancestor(X,Y) :- father(X,Y).\n ancestor(X,Y) :- father(X,Z), ancestor(Z,Y)."),
                                db("father(a,b). father(b,c)."));
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_TRUE(ms.models[0].contains(ga("ancestor(a,c)")));
}

TEST(StableModels, MaxModelsTruncates) {
    SolveOptions o;
    o.max_models = 3;
    ModelSet ms = stable_models(parse("p(X) | q(X) :- a(X,Y)."), bench::gen_chain(4), o);
    EXPECT_EQ(ms.size(), 3u);
    EXPECT_FALSE(ms.exhaustive);
    EXPECT_THROW(answers(parse_query("p(1)"), ms, AnswerMode::brave), NonExhaustive);
}

TEST(StableModels, DecisionLimit) {
    SolveOptions o;
    o.max_decisions = 5;
    EXPECT_THROW(stable_models(parse("p(X) | q(X) :- a(X,Y)."), bench::gen_chain(10), o), ResourceLimit);
    o.throw_on_limit = false;
    EXPECT_FALSE(stable_models(parse("p(X) | q(X) :- a(X,Y)."), bench::gen_chain(10), o).exhaustive);
}

TEST(StableModels, Assumptions) {
    SolveOptions o;
    o.assume_true = {ga("p(1)")};
    o.assume_false = {ga("p(2)")};
    ModelSet ms = stable_models(parse("p(X) | q(X) :- a(X,Y)."), bench::gen_chain(3), o);
    EXPECT_EQ(ms.size(), 2u);
    for (const Model& m : ms.models) {
        EXPECT_TRUE(m.contains(ga("p(1)")));
        EXPECT_TRUE(m.contains(ga("q(2)")));
    }
}

TEST(PerfectModel, EsvAnc) {
    Program esv_anc = esv(parse(anc_text()));
    Model m = perfect_model(esv_anc, db("related(john,bob)."));
    for (const char* a : {"father(john,bob)", "brother(john,bob)", "ancestor(john,bob)"})
        EXPECT_TRUE(m.contains(ga(a))) << a;
}

TEST(PerfectModel, StratifiedNegation) {
    Program p = internal("p :- not q.\n q :- b.");
    EXPECT_EQ(perfect_model(p, db("b.")), model({"b", "q"}));
    EXPECT_EQ(perfect_model(p, {}), model({"p"}));
    EXPECT_THROW(perfect_model(internal("p :- not p."), {}), NotStratified);
}

TEST(PerfectModel, EqualsUniqueStableModel) {
    Program p = internal("r(X) :- e(X), not s(X).\n s(X) :- f(X).\n t(X) :- r(X), not u(X).\n u(X) :- s(X).");
    Database d = db("e(1). e(2). e(3). f(2).");
    ModelSet ms = stable_models(p, d);
    ASSERT_EQ(ms.size(), 1u);
    EXPECT_EQ(ms.models[0], perfect_model(p, d));
}

TEST(IsStable, Examples) {
    Program p = parse("a | b.");
    EXPECT_TRUE(is_stable(p, {}, model({"a"})));
    EXPECT_FALSE(is_stable(p, {}, model({"a", "b"})));
    Program q = parse("p(X) | q(X) :- a(X,Y).");
    Database d = db("a(1,2).");
    EXPECT_TRUE(is_stable(q, d, model({"a(1,2)", "p(1)"})));
    EXPECT_FALSE(is_stable(q, d, model({"p(1)"}))); // misses the fact
    EXPECT_FALSE(is_stable(parse(coloring_text()), bench::graph_database(bench::triangle()),
                           model({"node(1)", "node(2)", "node(3)", "edge(1,2)", "edge(2,3)", "edge(1,3)",
                                  "color(1,red)", "color(2,red)", "color(3,blue)"})));
}

TEST(IsStable, AgreesWithOracle) {
    fuzz::Generator gen(21);
    for (int i = 0; i < 100; ++i) {
        fuzz::Case c = gen.make(-1);
        for (const Model& m : oracle::stable_models(c.program, c.db)) EXPECT_TRUE(is_stable(c.program, c.db, m));
    }
}

TEST(Answers, BraveCautious) {
    ModelSet ms;
    ms.models = {model({"a"}), model({"b"})};
    Answer b = answers(parse_query("a"), ms, AnswerMode::brave);
    Answer c = answers(parse_query("a"), ms, AnswerMode::cautious);
    EXPECT_TRUE(b.holds());
    EXPECT_EQ(b.substitutions.size(), 1u);
    EXPECT_FALSE(c.holds());
}

TEST(Answers, Substitutions) {
    ModelSet ms = stable_models(parse(anc_text()), db("related(john,bob)."));
    Answer a = answers(parse_query("ancestor(john, Y)"), ms, AnswerMode::brave);
    EXPECT_EQ(a.substitutions, std::vector<std::vector<Symbol>>{{Symbol("bob")}});
    Answer c = answers(parse_query("ancestor(john, Y)"), ms, AnswerMode::cautious);
    EXPECT_TRUE(c.substitutions.empty()); // the brother model has no ancestor
}

TEST(Answers, CautiousOverNoModels) {
    ModelSet none;
    EXPECT_TRUE(answers(parse_query("p(1)"), none, AnswerMode::cautious).holds());
    EXPECT_FALSE(answers(parse_query("p(1)"), none, AnswerMode::brave).holds());
    Answer all = answers(parse_query("p(X)"), none, AnswerMode::cautious, {Symbol("1"), Symbol("2")});
    EXPECT_EQ(all.substitutions.size(), 2u);
}

TEST(CrossUnion, Definitions) {
    ModelSet a;
    a.models = {model({"a"})};
    ModelSet bc;
    bc.models = {model({"b"}), model({"c"})};
    ModelSet unit;
    unit.models = {Model{}};
    EXPECT_EQ(cross_union(a, unit).models, a.models);
    EXPECT_EQ(cross_union(a, bc).models, (std::vector<Model>{model({"a", "b"}), model({"a", "c"})}));
    EXPECT_TRUE(cross_union(a, ModelSet{}).empty());
}

TEST(StableModels, NonGroundMatchesOracle) {
    fuzz::Generator gen(77);
    for (int i = 0; i < 300; ++i) {
        fuzz::Case c = gen.make(-1);
        GroundOptions o;
        o.empty_universe_is_error = false;
        EXPECT_EQ(as_vector(stable_models(c.program, c.db, {}, o)), oracle::stable_models(c.program, c.db))
            << render_program(c.program) << render_database(c.db);
    }
}
