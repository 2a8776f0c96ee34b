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
#include "helpers.hpp"
#include "oracle.hpp"

#include <dmagic/bench.hpp>
#include <dmagic/engine.hpp>
#include <dmagic/error.hpp>

#include <gtest/gtest.h>

using namespace dmagic;
using namespace testing_helpers;

namespace {

Query query(const std::string& program, const std::string& goal) { return Query{parse_query(goal), parse(program)}; }

const char* p1() { return bench::find_builtin("P1")->text.c_str(); }
const char* p2() { return bench::find_builtin("P2")->text.c_str(); }

Database witness_db() {
    bench::ComponentSpec tri{bench::ComponentSpec::Kind::triangle, 0, {}};
    bench::ComponentSpec k4{bench::ComponentSpec::Kind::complete, 4, {}};
    return bench::gen_two_components(tri, k4);
}

} // namespace

TEST(Strategy, NamesRoundTrip) {
    for (Strategy s : {Strategy::naive, Strategy::magic_partial, Strategy::magic_total})
        EXPECT_EQ(parse_strategy(to_string(s)), s);
    EXPECT_EQ(parse_strategy("magic-partial"), Strategy::magic_partial);
    EXPECT_FALSE(parse_strategy("bogus"));
    for (EvalMode m : {EvalMode::brave, EvalMode::cautious, EvalMode::models}) EXPECT_EQ(parse_mode(to_string(m)), m);
}

TEST(Evaluate, P1Chain) {
    Query q = query(p1(), "p(1)");
    Database d = bench::gen_chain(3);
    EXPECT_TRUE(evaluate(q, d, Strategy::naive, EvalMode::brave).answer.holds());
    EXPECT_FALSE(evaluate(q, d, Strategy::naive, EvalMode::cautious).answer.holds());
    EvaluationReport n = evaluate(q, d, Strategy::naive, EvalMode::models);
    EvaluationReport m = evaluate(q, d, Strategy::magic_partial, EvalMode::models);
    EvaluationReport t = evaluate(q, d, Strategy::magic_total, EvalMode::models);
    EXPECT_EQ(n.models->size(), 8u);
    EXPECT_EQ(m.models->size(), 2u);
    EXPECT_EQ(*t.models, *n.models);
    EXPECT_LT(m.stats.ground_rules, n.stats.ground_rules + 10);
}

TEST(Evaluate, P2ConstraintRemovesModels) {
    Query q = query(p2(), "p(1)");
    Database d = bench::gen_chain(3);
    EvaluationReport n = evaluate(q, d, Strategy::naive, EvalMode::models);
    EXPECT_EQ(n.models->size(), 6u); // p(1), q(2) together are forbidden
    for (const Model& m : n.models->models)
        EXPECT_FALSE(m.contains(ga("p(1)")) && m.contains(ga("q(2)")));
    EXPECT_EQ(*evaluate(q, d, Strategy::magic_total, EvalMode::models).models, *n.models);
    EXPECT_EQ(evaluate(q, d, Strategy::magic_partial, EvalMode::models).models->size(), 3u);
}

TEST(Evaluate, AncestorSubstitutions) {
    Query q = query(anc_text(), "ancestor(john,Y)");
    Database d = db("related(john,bob). related(bob,ann).");
    for (Strategy s : {Strategy::naive, Strategy::magic_partial, Strategy::magic_total}) {
        Answer b = evaluate(q, d, s, EvalMode::brave).answer;
        EXPECT_EQ(b.substitutions, (std::vector<std::vector<Symbol>>{{Symbol("ann")}, {Symbol("bob")}})) << to_string(s);
        EXPECT_TRUE(evaluate(q, d, s, EvalMode::cautious).answer.substitutions.empty()) << to_string(s);
    }
}

TEST(Evaluate, PartialModelNotPreModel) {
    Query q = query(coloring_text(), "2col(1,2)");
    Database d = witness_db();
    EvaluationReport naive = evaluate(q, d, Strategy::naive, EvalMode::models);
    EXPECT_TRUE(naive.models->empty());
    EXPECT_FALSE(evaluate(q, d, Strategy::naive, EvalMode::brave).answer.holds());

    EvaluationReport partial = evaluate(q, d, Strategy::magic_partial, EvalMode::models);
    EXPECT_FALSE(partial.models->empty());
    EXPECT_TRUE(evaluate(q, d, Strategy::magic_partial, EvalMode::brave).answer.holds());

    EvaluationReport total = evaluate(q, d, Strategy::magic_total, EvalMode::models);
    EXPECT_TRUE(total.models->empty());
    EXPECT_FALSE(evaluate(q, d, Strategy::magic_total, EvalMode::brave).answer.holds());
    EXPECT_GT(total.stats.partial_models, 0u);
}

TEST(Evaluate, PartialModelsOnlyTouchRelevantComponent) {
    Query q = query(coloring_text(), "2col(1,2)");
    Model m = evaluate(q, witness_db(), Strategy::magic_partial, EvalMode::models).models->models.front();
    for (const GroundAtom& a : m)
        if (a.predicate == Symbol("color")) EXPECT_LE(*a.args[0].as_integer(), 3);
}

TEST(Evaluate, MagicTotalModelsAreStable) {
    Query q = query(coloring_text(), "2col(1,2)");
    Database d = bench::gen_two_components({bench::ComponentSpec::Kind::triangle, 0, {}},
                                           {bench::ComponentSpec::Kind::triangle, 0, {}});
    ModelSet ms = *evaluate(q, d, Strategy::magic_total, EvalMode::models).models;
    EXPECT_EQ(ms.size(), 36u);
    for (const Model& m : ms.models) EXPECT_TRUE(is_stable(q.program, d, m));
    EXPECT_EQ(ms, *evaluate(q, d, Strategy::naive, EvalMode::models).models);
}

TEST(Evaluate, RemainderCompletion) {
    Query q = query(p1(), "p(1)");
    Database d = bench::gen_chain(3);
    EvalOptions o;
    o.completion = Completion::remainder;
    ModelSet rem = magic_total(q, d, o);
    for (const Model& m : rem.models) EXPECT_TRUE(is_stable(q.program, d, m));
    EXPECT_EQ(rem, *evaluate(q, d, Strategy::naive, EvalMode::models).models);
}

TEST(Evaluate, GoalFilterKeepsOnlyGoalModels) {
    Query q = query(p1(), "p(1)");
    EvalOptions o;
    o.total_goal_filter = true;
    ModelSet ms = magic_total(q, bench::gen_chain(3), o);
    EXPECT_EQ(ms.size(), 4u);
    for (const Model& m : ms.models) EXPECT_TRUE(m.contains(ga("p(1)")));
}

TEST(Evaluate, RestrictToSource) {
    Query q = query(anc_text(), "ancestor(john,Y)");
    Database d = db("related(john,bob).");
    ModelSet raw = magic_partial(q, d);
    for (const Model& m : restrict_to_source(raw, q.program, d).models)
        for (const GroundAtom& a : m) EXPECT_FALSE(is_reserved_name(a.predicate)) << to_string(a);
}

TEST(Evaluate, StatsExcludeRewriting) {
    EvaluationReport r = evaluate(query(p1(), "p(1)"), bench::gen_chain(4), Strategy::magic_partial, EvalMode::models);
    EXPECT_GT(r.stats.rewritten_rules, 0u);
    EXPECT_GE(r.stats.wall_ms, 0.0);
    EXPECT_NEAR(r.stats.wall_ms, r.stats.ground_ms + r.stats.solve_ms, 1.0);
}

TEST(Evaluate, RejectsInvalidGoals) {
    Program p = parse(anc_text());
    EXPECT_THROW(evaluate(Query{parse_query("related(john,Y)"), p}, {}, Strategy::naive, EvalMode::brave),
                 ValidationError);
    EXPECT_THROW(evaluate(Query{parse_query("ancestor(john)"), p}, {}, Strategy::magic_partial, EvalMode::brave),
                 ValidationError);
}

TEST(Evaluate, DeadlineRaisesResourceLimit) {
    EvalOptions o;
    o.solve.deadline = std::chrono::steady_clock::now();
    EXPECT_THROW(evaluate(query(p1(), "p(1)"), bench::gen_chain(14), Strategy::naive, EvalMode::models, o),
                 ResourceLimit);
}

TEST(Evaluate, CautiousOverNoModelsHolds) {
    Query q = query(coloring_text(), "2col(1,2)");
    Database k4 = bench::graph_database(bench::complete_graph(4));
    EXPECT_TRUE(evaluate(q, k4, Strategy::naive, EvalMode::cautious).answer.holds());
}

TEST(Evaluate, AgreesWithOracleOnSmallPrograms) {
    struct Case {
        const char* program;
        const char* facts;
        const char* goal;
    } cases[] = {
        {"p(X) | q(X) :- a(X,Y).\n", "a(1,2). a(2,3).", "p(1)"},
        {"p(X) | q(X) :- a(X,Y).\n :- p(X), a(X,Y), q(Y), X <= 1.", "a(1,2). a(2,3).", "q(2)"},
        {"r(X,Y) :- a(X,Y).\n r(X,Z) :- r(X,Y), a(Y,Z).\n p(X) | q(X) :- r(X,Y).", "a(1,2). a(2,1).", "p(2)"},
        {"p(X) :- b(X).\n q(X) | s :- p(X).\n :- s, b(X), not q(X).", "b(1). b(2).", "q(1)"},
    };
    for (const Case& c : cases) {
        Query q = query(c.program, c.goal);
        Database d = db(c.facts);
        auto truth = oracle::stable_models(q.program, d, {q.goal});
        GroundAtom g = to_ground(q.goal);
        for (Strategy s : {Strategy::naive, Strategy::magic_total}) {
            EXPECT_EQ(evaluate(q, d, s, EvalMode::brave).answer.holds(), oracle::brave(g, truth)) << c.program;
            EXPECT_EQ(evaluate(q, d, s, EvalMode::cautious).answer.holds(), oracle::cautious(g, truth)) << c.program;
        }
    }
}
