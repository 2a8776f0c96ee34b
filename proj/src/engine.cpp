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
#include <dmagic/engine.hpp>

#include <chrono>
#include <set>

namespace dmagic {

const char* to_string(Strategy s) {
    switch (s) {
    case Strategy::naive: return "naive";
    case Strategy::magic_partial: return "magic-partial";
    case Strategy::magic_total: return "magic-total";
    }
    return "?";
}

const char* to_string(EvalMode m) {
    switch (m) {
    case EvalMode::brave: return "brave";
    case EvalMode::cautious: return "cautious";
    case EvalMode::models: return "models";
    }
    return "?";
}

std::optional<Strategy> parse_strategy(std::string_view text) {
    if (text == "naive") return Strategy::naive;
    if (text == "magic-partial" || text == "magic_partial") return Strategy::magic_partial;
    if (text == "magic-total" || text == "magic_total") return Strategy::magic_total;
    return std::nullopt;
}

std::optional<EvalMode> parse_mode(std::string_view text) {
    if (text == "brave") return EvalMode::brave;
    if (text == "cautious") return EvalMode::cautious;
    if (text == "models") return EvalMode::models;
    return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

GroundOptions with_goal_constants(GroundOptions g, const Atom& goal) {
    for (const Term& t : goal.args)
        if (t.is_constant()) g.extra_constants.push_back(t.name);
    return g;
}

bool goal_holds(const Atom& goal, const Model& m) {
    for (const GroundAtom& a : m)
        if (match_goal(goal, a)) return true;
    return false;
}

bool esv_is_stratified(const Program& program) {
    try {
        stratification(extended_shadow_version(program).program);
        return true;
    } catch (const NotStratified&) {
        return false;
    }
}

} // namespace

RewriteBundle magic_partial_program(const Atom& goal, const Program& program) {
    require_valid(program);
    validate_goal(goal, program);
    RewriteBundle b;
    b.goal = goal;
    b.constraints = program.constraints;
    if (!goal.args.empty() && binding_pattern(goal).find('b') == std::string::npos) {
        b.restricted = program.rules;
        b.identity = true;
        return b;
    }

    std::set<Symbol> derived = program.derived_predicates();
    Program esv_part;
    for (const Rule& r : program.rules) {
        Rule guarded{r.head, {}};
        for (const Atom& a : r.head) guarded.body.push_back(Literal::pos(Atom{shadow_name(a.predicate), a.args}));
        guarded.body.insert(guarded.body.end(), r.body.begin(), r.body.end());
        b.restricted.push_back(std::move(guarded));
        for (Rule& e : esv_rules({r})) esv_part.rules.push_back(std::move(e));
    }
    for (const Rule& c : program.constraints)
        for (Rule& e : esv_constraints({c}, derived)) esv_part.rules.push_back(std::move(e));
    Shadowed esv = shadow(esv_part, derived);
    b.shadow_map = esv.shadow_map;

    AdornedProgram ad = adorn(Atom{shadow_name(goal.predicate), goal.args}, esv.program);
    MagicProgram mg = magic(ad);
    b.magic = std::move(mg.magic);
    b.modified = std::move(mg.modified);
    b.collecting = collecting_rules(program.rules, esv.shadow_map, ad);
    return b;
}

Model restrict_to_source(const Model& m, const Program& program, const Database& db) {
    std::set<Symbol> preds = program.predicates();
    std::set<Symbol> d = db.predicates();
    preds.insert(d.begin(), d.end());
    return m.restrict_to(preds);
}

ModelSet restrict_to_source(const ModelSet& ms, const Program& program, const Database& db) {
    ModelSet out;
    out.exhaustive = ms.exhaustive;
    for (const Model& m : ms.models) out.models.push_back(restrict_to_source(m, program, db));
    out.normalize();
    return out;
}

ModelSet magic_partial(const Query& query, const Database& db, const EvalOptions& options, EvalStats* stats) {
    EvalStats local;
    EvalStats& st = stats ? *stats : local;
    auto t0 = Clock::now();
    RewriteBundle bundle = magic_partial_program(query.goal, query.program);
    Program p = bundle.program();
    auto t1 = Clock::now();
    GroundProgram g = ground_program(p, db, with_goal_constants(options.ground, query.goal));
    auto t2 = Clock::now();
    ModelSet ms = solve(g, options.solve);
    auto t3 = Clock::now();

    st.rewrite_ms += ms_between(t0, t1);
    st.ground_ms += ms_between(t1, t2);
    st.solve_ms += ms_between(t2, t3);
    st.wall_ms += ms_between(t1, t3);
    st.ground_rules += g.instance_count();
    st.ground_atoms += g.atoms.size();
    st.rewritten_rules = p.size();
    st.models = ms.size();
    return ms;
}

ModelSet magic_total(const Query& query, const Database& db, const EvalOptions& options, EvalStats* stats) {
    EvalStats local;
    EvalStats& st = stats ? *stats : local;
    auto t0 = Clock::now();
    RewriteBundle bundle = magic_partial_program(query.goal, query.program);
    Program p = bundle.program();
    auto t1 = Clock::now();
    GroundOptions gopts = with_goal_constants(options.ground, query.goal);
    GroundProgram partial = ground_program(p, db, gopts);
    std::optional<GroundProgram> full; // ground(P_D), built on first use
    double ground_ms = ms_between(t1, Clock::now());

    std::set<Symbol> source = query.program.predicates();
    for (Symbol s : db.predicates()) source.insert(s);

    ModelSet out;
    std::set<Model> seen;
    bool stopped = false;
    std::size_t limit = options.solve.max_models;

    auto complete = [&](const Model& m) {
        Model n = m.restrict_to(source);
        if (!seen.insert(n).second) return true;
        if (!full) {
            auto g0 = Clock::now();
            full = ground_program(query.program, db, gopts);
            ground_ms += ms_between(g0, Clock::now());
        }
        ++st.completions;
        ModelSet completed;
        SolveOptions ext = options.solve;
        ext.on_model = nullptr;
        if (options.completion == Completion::extension) {
            ext.assume_true.insert(ext.assume_true.end(), n.begin(), n.end());
            ext.max_models = options.total_goal_filter || !limit ? 0 : limit - std::min(limit, out.models.size());
            completed = solve(*full, ext);
        } else {
            TruthPartition part = partition_by_truth(*full, n);
            GroundProgram rem;
            rem.atoms = full->atoms;
            rem.universe = full->universe;
            for (std::size_t i : part.false_rules) rem.add(full->rules[i]);
            // the facts of D stay available to the remainder's bodies
            for (const GroundRule& r : full->rules)
                if (r.is_database_fact()) rem.add(r);
            ext.max_models = 0;
            ModelSet single;
            single.models.push_back(n);
            completed = cross_union(single, solve(rem, ext));
        }
        for (Model& c : completed.models) {
            if (options.total_goal_filter && !goal_holds(query.goal, c)) continue;
            out.models.push_back(std::move(c));
        }
        if (!completed.exhaustive) out.exhaustive = false;
        if (limit && out.models.size() >= limit) {
            stopped = true;
            return false;
        }
        return true;
    };
    // Assumptions speak about SM(P_D), and a partial model need not satisfy
    // them even when one of its extensions does. With a model limit the
    // partial models that satisfy them are tried first; the search over all
    // partial models runs only when that falls short.
    SolveOptions partial_opts = options.solve;
    partial_opts.max_models = 0;
    partial_opts.on_model = complete;
    bool assumed = !partial_opts.assume_true.empty() || !partial_opts.assume_false.empty();
    bool partials_exhaustive = true;
    if (assumed && limit) solve(partial, partial_opts);
    if (!stopped) {
        partial_opts.assume_true.clear();
        partial_opts.assume_false.clear();
        partials_exhaustive = solve(partial, partial_opts).exhaustive;
    }
    auto s1 = Clock::now();

    out.normalize();
    if (stopped || !partials_exhaustive) out.exhaustive = false;
    if (limit && out.models.size() > limit) out.models.resize(limit);

    st.rewrite_ms += ms_between(t0, t1);
    st.ground_ms += ground_ms;
    st.solve_ms += ms_between(t1, s1) - ground_ms;
    st.wall_ms += ms_between(t1, s1);
    st.ground_rules += partial.instance_count() + (full ? full->instance_count() : 0);
    st.ground_atoms += partial.atoms.size() + (full ? full->atoms.size() : 0);
    st.rewritten_rules = p.size();
    st.partial_models = seen.size();
    st.models = out.size();
    return out;
}

EvaluationReport evaluate(const Query& query, const Database& db, Strategy strategy, EvalMode mode,
                          const EvalOptions& options) {
    require_valid(query.program);
    validate_goal(query.goal, query.program);

    EvaluationReport report;
    EvalOptions opts = options;
    bool early = options.early_stop && query.goal.is_ground() && mode != EvalMode::models;
    if (early) {
        GroundAtom g = to_ground(query.goal);
        if (mode == EvalMode::brave)
            opts.solve.assume_true.push_back(g);
        else
            opts.solve.assume_false.push_back(g);
        opts.solve.max_models = 1;
    }

    ModelSet ms;
    switch (strategy) {
    case Strategy::naive: {
        auto t0 = Clock::now();
        GroundProgram g = ground_program(query.program, db, with_goal_constants(opts.ground, query.goal));
        auto t1 = Clock::now();
        ms = solve(g, opts.solve);
        auto t2 = Clock::now();
        report.stats.ground_ms = ms_between(t0, t1);
        report.stats.solve_ms = ms_between(t1, t2);
        report.stats.wall_ms = ms_between(t0, t2);
        report.stats.ground_rules = g.instance_count();
        report.stats.ground_atoms = g.atoms.size();
        report.stats.models = ms.size();
        break;
    }
    case Strategy::magic_partial:
        report.stats.esv_stratified = esv_is_stratified(query.program);
        ms = magic_partial(query, db, opts, &report.stats);
        break;
    case Strategy::magic_total:
        report.stats.esv_stratified = esv_is_stratified(query.program);
        ms = magic_total(query, db, opts, &report.stats);
        break;
    }

    AnswerMode amode = mode == EvalMode::cautious ? AnswerMode::cautious : AnswerMode::brave;
    if (early) {
        bool found = !ms.empty();
        report.answer.mode = amode;
        if (amode == AnswerMode::brave ? found : !found) report.answer.substitutions.push_back({});
    } else {
        std::set<Symbol> universe = herbrand_universe(query.program, db);
        report.answer = answers(query.goal, ms, amode, universe);
    }
    if (mode == EvalMode::models) report.models = std::move(ms);
    return report;
}

} // namespace dmagic
