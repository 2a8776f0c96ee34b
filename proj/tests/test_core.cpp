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

#include <dmagic/error.hpp>
#include <dmagic/rewriter.hpp>

#include <gtest/gtest.h>

using namespace dmagic;
using namespace testing_helpers;

namespace {

Program unchecked(const std::string& text) {
    ParseOptions o;
    o.validate = false;
    return parse_program(text, o);
}

bool has_kind(const std::vector<Violation>& vs, ViolationKind k) {
    return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == k; });
}

Symbol S(const char* s) { return Symbol(s); }

} // namespace

TEST(Symbol, InterningAndOrder) {
    EXPECT_EQ(Symbol("john"), Symbol(std::string("jo") + "hn"));
    EXPECT_NE(Symbol("a"), Symbol("b"));
    EXPECT_EQ(Symbol("-12").as_integer(), -12);
    EXPECT_FALSE(Symbol("x1").as_integer());
    EXPECT_TRUE(constant_less(Symbol("2"), Symbol("10")));   // numeric, not textual
    EXPECT_TRUE(constant_less(Symbol("10"), Symbol("blue"))); // integers first
    EXPECT_TRUE(constant_less(Symbol("blue"), Symbol("red")));
    EXPECT_TRUE(constant_less(Symbol("1"), Symbol("01")) || constant_less(Symbol("01"), Symbol("1")));
}

TEST(Comparison, Evaluate) {
    EXPECT_TRUE(evaluate(CompareOp::le, S("1"), S("1")));
    EXPECT_FALSE(evaluate(CompareOp::le, S("2"), S("1")));
    EXPECT_TRUE(evaluate(CompareOp::lt, S("9"), S("10")));
    EXPECT_TRUE(evaluate(CompareOp::ne, S("a"), S("b")));
    EXPECT_TRUE(evaluate(CompareOp::gt, S("red"), S("blue")));
    EXPECT_TRUE(evaluate(CompareOp::eq, S("x"), S("x")));
}

TEST(Rule, Kinds) {
    Program p = unchecked("a | b :- c.\n p(X) :- q(X).\n :- p(X), q(X).\n f(1).");
    ASSERT_EQ(p.rules.size(), 3u);
    EXPECT_TRUE(p.rules[0].is_disjunctive());
    EXPECT_FALSE(p.rules[1].is_disjunctive());
    EXPECT_TRUE(p.rules[2].is_fact());
    ASSERT_EQ(p.constraints.size(), 1u);
    EXPECT_TRUE(p.constraints[0].is_constraint());
}

TEST(Program, BaseAndDerived) {
    Program p = parse(anc_text());
    EXPECT_EQ(p.derived_predicates(), (std::set<Symbol>{S("father"), S("brother"), S("ancestor")}));
    EXPECT_EQ(p.base_predicates(), (std::set<Symbol>{S("related")}));
    Program c = parse(coloring_text());
    EXPECT_EQ(c.base_predicates(), (std::set<Symbol>{S("node"), S("edge")}));
    EXPECT_EQ(c.constants(), (std::set<Symbol>{S("red"), S("blue"), S("yellow")}));
}

TEST(Validate, AncIsValid) { EXPECT_TRUE(validate_program(parse(anc_text())).empty()); }

TEST(Validate, UnsafeHeadVariable) {
    auto vs = validate_program(unchecked("p(X) :- q(Y)."));
    ASSERT_FALSE(vs.empty());
    EXPECT_TRUE(has_kind(vs, ViolationKind::unsafe_variable));
    EXPECT_NE(vs[0].message.find('X'), std::string::npos);
}

TEST(Validate, UnsafeNegativeVariable) {
    EXPECT_TRUE(has_kind(validate_program(unchecked(":- p(X), not q(Y).")), ViolationKind::unsafe_variable));
    EXPECT_TRUE(has_kind(validate_program(unchecked(":- p(X), Y < 2.")), ViolationKind::unsafe_variable));
}

TEST(Validate, ConstraintPolarity) {
    auto vs = validate_program(unchecked("p(X) | q(X) :- e(X).\n :- p(X), e(X).\n :- q(X), not p(X)."));
    ASSERT_TRUE(has_kind(vs, ViolationKind::constraint_polarity));
    EXPECT_NE(vs[0].message.find("p"), std::string::npos);
    // one constraint using p both ways is no cross-constraint conflict
    EXPECT_TRUE(validate_program(unchecked("p(X) :- e(X).\n :- p(X), e(X).\n :- e(X), not q(X).")).empty());
}

TEST(Validate, NegationInRules) {
    EXPECT_TRUE(has_kind(validate_program(unchecked("p(X) :- e(X), not q(X).")), ViolationKind::negation_in_rule));
    ValidationOptions o;
    o.allow_negation_in_rules = true;
    EXPECT_TRUE(validate_program(unchecked("p(X) :- e(X), not q(X)."), o).empty());
}

TEST(Validate, ArityAndReservedNames) {
    EXPECT_TRUE(has_kind(validate_program(unchecked("p(X) :- e(X).\n p(X,Y) :- e(X), e(Y).")),
                         ViolationKind::arity_mismatch));
    EXPECT_TRUE(has_kind(validate_program(unchecked("sv__p(X) :- e(X).")), ViolationKind::reserved_name));
    EXPECT_TRUE(has_kind(validate_program(unchecked("p__bf(X) :- e(X).")), ViolationKind::reserved_name));
}

TEST(DependencyGraph, Anc) {
    DependencyGraph g = dependency_graph(parse(anc_text()));
    EXPECT_TRUE(g.has_edge(S("father"), S("ancestor"), false));
    EXPECT_TRUE(g.has_edge(S("ancestor"), S("ancestor"), false));
    EXPECT_TRUE(g.has_edge(S("related"), S("father"), false));
    EXPECT_TRUE(g.has_edge(S("related"), S("brother"), false));
    EXPECT_TRUE(g.has_edge(S("brother"), S("father"), false));
    EXPECT_TRUE(g.has_edge(S("father"), S("brother"), false));
    EXPECT_EQ(g.edges().size(), 6u);
    EXPECT_TRUE(g.mutually_recursive(S("father"), S("brother")));
    EXPECT_FALSE(g.mutually_recursive(S("father"), S("ancestor")));
}

TEST(DependencyGraph, FactsOnlyAndNegativeEdge) {
    EXPECT_TRUE(dependency_graph(parse("p(1).")).edges().empty());
    ValidationOptions o;
    o.allow_negation_in_rules = true;
    Program p = unchecked("p :- not q.");
    DependencyGraph g = dependency_graph(p);
    EXPECT_TRUE(g.has_edge(S("q"), S("p"), true));
}

TEST(DependencyGraph, ComponentsTopological) {
    DependencyGraph g = dependency_graph(parse(anc_text()));
    std::size_t fb = g.component_of(S("father"));
    EXPECT_LT(g.component_of(S("related")), fb);
    EXPECT_LT(fb, g.component_of(S("ancestor")));
}

TEST(Stratification, ColoringEsvSingleStratum) {
    auto strata = stratification(extended_shadow_version(parse(coloring_text())).program);
    ASSERT_EQ(strata.size(), 1u);
    EXPECT_EQ(strata[0].size(), 2u);
}

TEST(Stratification, TwoStrata) {
    auto strata = stratification(unchecked("p :- not q.\n q :- b."));
    ASSERT_EQ(strata.size(), 2u);
    EXPECT_EQ(strata[0], std::vector<Symbol>{S("q")});
    EXPECT_EQ(strata[1], std::vector<Symbol>{S("p")});
}

TEST(Stratification, NegativeSelfLoop) { EXPECT_THROW(stratification(unchecked("p :- not p.")), NotStratified); }

TEST(Stratification, NegativeEdgesPointUp) {
    Program p = unchecked("a :- not b.\n b :- c, not d.\n d :- e.\n c :- e.\n f :- a, not c.");
    auto strata = stratification(p);
    std::map<Symbol, std::size_t> level;
    for (std::size_t i = 0; i < strata.size(); ++i)
        for (Symbol s : strata[i]) level[s] = i;
    for (const DependencyEdge& e : dependency_graph(p).edges())
        if (e.negative && level.count(e.from)) EXPECT_LT(level[e.from], level[e.to]);
}

TEST(AtomSet, SortedSetOperations) {
    Model m = model({"q(2)", "p(10)", "p(2)", "p(2)"});
    ASSERT_EQ(m.size(), 3u);
    EXPECT_EQ(to_string(m), "{p(2), p(10), q(2)}");
    EXPECT_TRUE(model({"p(2)"}).is_subset_of(m));
    EXPECT_FALSE(model({"p(3)"}).is_subset_of(m));
    EXPECT_EQ(m.restrict_to({S("q")}), model({"q(2)"}));
}

TEST(Answer, MatchGoal) {
    Atom goal = parse_query("ancestor(john, Y)");
    auto m = match_goal(goal, ga("ancestor(john,bob)"));
    ASSERT_TRUE(m);
    EXPECT_EQ(*m, std::vector<Symbol>{S("bob")});
    EXPECT_FALSE(match_goal(goal, ga("ancestor(bob,john)")));
    EXPECT_FALSE(match_goal(parse_query("r(X,X)"), ga("r(1,2)")));
    EXPECT_TRUE(match_goal(parse_query("r(X,X)"), ga("r(2,2)")));
}

TEST(Program, StructuralEqualityIgnoresRuleOrder) {
    EXPECT_TRUE(structurally_equal(parse("p(X) :- a(X).\n q(X) :- b(X)."), parse("q(X) :- b(X).\n p(X) :- a(X).")));
    EXPECT_FALSE(structurally_equal(parse("p(X) :- a(X), b(X)."), parse("p(X) :- b(X), a(X).")));
}
