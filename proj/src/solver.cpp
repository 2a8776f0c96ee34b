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
#include <dmagic/solver.hpp>

#include <algorithm>
#include <map>

namespace dmagic {

namespace {

// ---------------------------------------------------------------------------
// Minimality of M w.r.t. the reduct G^M
// ---------------------------------------------------------------------------

class MinimalityCheck {
public:
    MinimalityCheck(const GroundProgram& g, const std::vector<char>& in_m) : g_(g), in_m_(in_m) {}

    bool minimal() {
        for (std::size_t i = 0; i < g_.rules.size(); ++i) {
            const GroundRule& r = g_.rules[i];
            if (r.is_constraint()) continue;
            if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return in_m_[a]; })) continue;
            if (!std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return in_m_[a]; })) continue;
            Active act{&r, {}};
            for (AtomId h : r.head)
                if (in_m_[h]) act.head.push_back(h);
            if (act.head.empty()) return false; // M is not even a model
            active_.push_back(std::move(act));
        }
        std::size_t m_size = std::count(in_m_.begin(), in_m_.end(), 1);

        // least fixpoint of the single-head active rules
        std::vector<char> in_n(in_m_.size(), 0);
        std::vector<std::vector<std::size_t>> watch(in_m_.size());
        std::vector<std::size_t> missing(active_.size());
        std::vector<AtomId> queue;
        bool any_disjunctive = false;
        for (std::size_t i = 0; i < active_.size(); ++i) {
            if (active_[i].head.size() > 1) {
                any_disjunctive = true;
                continue;
            }
            missing[i] = active_[i].rule->pos.size();
            for (AtomId p : active_[i].rule->pos) watch[p].push_back(i);
            if (missing[i] == 0) queue.push_back(active_[i].head.front());
        }
        std::size_t n_size = 0;
        while (!queue.empty()) {
            AtomId a = queue.back();
            queue.pop_back();
            if (in_n[a]) continue;
            in_n[a] = 1;
            ++n_size;
            for (std::size_t i : watch[a])
                if (--missing[i] == 0) queue.push_back(active_[i].head.front());
        }
        if (n_size == m_size) return true;
        if (!any_disjunctive) return false;
        return !smaller_model(in_n, n_size, m_size);
    }

private:
    struct Active {
        const GroundRule* rule;
        std::vector<AtomId> head; // head ∩ M
    };

    bool smaller_model(std::vector<char> in_n, std::size_t n_size, std::size_t m_size) {
        const Active* violated = nullptr;
        for (bool changed = true; changed;) {
            changed = false;
            violated = nullptr;
            for (const Active& a : active_) {
                if (!std::all_of(a.rule->pos.begin(), a.rule->pos.end(), [&](AtomId p) { return in_n[p]; }))
                    continue;
                if (std::any_of(a.head.begin(), a.head.end(), [&](AtomId h) { return in_n[h]; })) continue;
                if (a.head.size() == 1) {
                    in_n[a.head.front()] = 1;
                    ++n_size;
                    changed = true;
                } else if (!violated) {
                    violated = &a;
                }
            }
        }
        if (n_size == m_size) return false;
        if (!violated) return true;
        for (AtomId h : violated->head) {
            std::vector<char> next = in_n;
            next[h] = 1;
            if (smaller_model(std::move(next), n_size + 1, m_size)) return true;
        }
        return false;
    }

    const GroundProgram& g_;
    const std::vector<char>& in_m_;
    std::vector<Active> active_;
};

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

class Search {
public:
    Search(const GroundProgram& g, const SolveOptions& options, SolveStats& stats)
        : g_(g), options_(options), stats_(stats), n_(g.atoms.size()), val_(n_, 0), head_occ_(n_), body_occ_(n_) {
        for (std::size_t i = 0; i < g.rules.size(); ++i) {
            const GroundRule& r = g.rules[i];
            for (AtomId a : r.head) head_occ_[a].push_back(i);
            for (AtomId a : r.pos) body_occ_[a].push_back(i);
            for (AtomId a : r.neg) body_occ_[a].push_back(i);
        }
        for (auto& v : head_occ_) v.erase(std::unique(v.begin(), v.end()), v.end());
        for (auto& v : body_occ_) {
            std::sort(v.begin(), v.end());
            v.erase(std::unique(v.begin(), v.end()), v.end());
        }
    }

    ModelSet run() {
        ModelSet out;
        bool ok = true;
        for (const GroundAtom& a : options_.assume_true) {
            auto id = g_.atoms.find(a);
            if (!id) return out; // never derivable
            ok = ok && assign(*id, 1);
        }
        for (const GroundAtom& a : options_.assume_false)
            if (auto id = g_.atoms.find(a)) ok = ok && assign(*id, -1);
        if (ok) {
            for (std::size_t i = 0; i < g_.rules.size() && ok; ++i) ok = check_rule(i);
            for (AtomId a = 0; a < n_ && ok; ++a) ok = check_support(a);
        }
        bool conflict = !(ok && propagate());

        for (;;) {
            if (conflict) {
                ++stats_.conflicts;
                if (!backtrack(conflict)) break;
                continue;
            }
            if (limits_hit()) {
                out.exhaustive = false;
                break;
            }
            auto choice = choose();
            if (!choice) {
                if (leaf(out)) break;
                if (!backtrack(conflict)) break;
                continue;
            }
            ++stats_.decisions;
            decisions_.push_back({trail_.size(), choice->first, choice->second, false});
            conflict = !(assign(choice->first, choice->second) && propagate());
        }
        if (stopped_) out.exhaustive = false;
        out.normalize();
        return out;
    }

private:
    struct Decision {
        std::size_t trail_size;
        AtomId atom;
        signed char value;
        bool flipped;
    };

    bool limits_hit() {
        bool over = stats_.decisions > options_.max_decisions;
        if (!over && options_.deadline && (stats_.decisions & 255) == 0)
            over = std::chrono::steady_clock::now() > *options_.deadline;
        if (over && options_.throw_on_limit)
            throw ResourceLimit("search limit reached after " + std::to_string(stats_.decisions) + " decisions");
        return over;
    }

    bool assign(AtomId a, signed char v) {
        if (val_[a] == v) return true;
        if (val_[a] != 0) return false;
        val_[a] = v;
        trail_.push_back(a);
        return true;
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            AtomId a = trail_[qhead_++];
            for (std::size_t r : head_occ_[a])
                if (!check_rule(r) || !check_heads_support(r)) return false;
            for (std::size_t r : body_occ_[a])
                if (!check_rule(r) || !check_heads_support(r)) return false;
            if (!check_support(a)) return false;
        }
        return true;
    }

    bool check_heads_support(std::size_t r) {
        for (AtomId h : g_.rules[r].head)
            if (!check_support(h)) return false;
        return true;
    }

    /// Forward and backward propagation on one rule.
    bool check_rule(std::size_t ri) {
        const GroundRule& r = g_.rules[ri];
        std::size_t unknown_body = 0;
        AtomId last_body = 0;
        bool last_positive = true;
        for (AtomId p : r.pos) {
            if (val_[p] < 0) return true;
            if (val_[p] == 0) {
                ++unknown_body;
                last_body = p;
                last_positive = true;
            }
        }
        for (AtomId q : r.neg) {
            if (val_[q] > 0) return true;
            if (val_[q] == 0) {
                ++unknown_body;
                last_body = q;
                last_positive = false;
            }
        }
        std::size_t unknown_head = 0;
        AtomId last_head = 0;
        for (AtomId h : r.head) {
            if (val_[h] > 0) return true;
            if (val_[h] == 0) {
                ++unknown_head;
                last_head = h;
            }
        }
        if (unknown_body == 0) {
            if (unknown_head == 0) return false;
            if (unknown_head == 1) return assign(last_head, 1);
            return true;
        }
        if (unknown_body == 1 && unknown_head == 0) return assign(last_body, last_positive ? -1 : 1);
        return true;
    }

    bool can_support(const GroundRule& r, AtomId a) const {
        for (AtomId p : r.pos)
            if (val_[p] < 0) return false;
        for (AtomId q : r.neg)
            if (val_[q] > 0) return false;
        for (AtomId h : r.head)
            if (h != a && val_[h] > 0) return false;
        return true;
    }

    /// A true atom needs a rule with true body whose only true head atom it is.
    bool check_support(AtomId a) {
        if (val_[a] < 0) return true;
        std::size_t count = 0;
        const GroundRule* only = nullptr;
        for (std::size_t ri : head_occ_[a]) {
            const GroundRule& r = g_.rules[ri];
            if (!can_support(r, a)) continue;
            if (++count > 1) break;
            only = &r;
        }
        if (count == 0) return val_[a] == 0 ? assign(a, -1) : false;
        if (count == 1 && val_[a] > 0) {
            for (AtomId p : only->pos)
                if (!assign(p, 1)) return false;
            for (AtomId q : only->neg)
                if (!assign(q, -1)) return false;
            for (AtomId h : only->head)
                if (h != a && !assign(h, -1)) return false;
        }
        return true;
    }

    std::optional<std::pair<AtomId, signed char>> choose() const {
        for (const GroundRule& r : g_.rules) {
            if (r.head.size() < 2) continue;
            bool body_true = std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId p) { return val_[p] > 0; }) &&
                             std::all_of(r.neg.begin(), r.neg.end(), [&](AtomId q) { return val_[q] < 0; });
            if (!body_true) continue;
            if (std::any_of(r.head.begin(), r.head.end(), [&](AtomId h) { return val_[h] > 0; })) continue;
            for (AtomId h : r.head)
                if (val_[h] == 0) return std::make_pair(h, static_cast<signed char>(1));
        }
        for (AtomId a = 0; a < n_; ++a)
            if (val_[a] == 0) return std::make_pair(a, static_cast<signed char>(-1));
        return std::nullopt;
    }

    void undo_to(std::size_t size) {
        while (trail_.size() > size) {
            val_[trail_.back()] = 0;
            trail_.pop_back();
        }
        qhead_ = std::min(qhead_, size);
    }

    /// Chronological backtracking; sets `conflict` to the outcome of the flip.
    bool backtrack(bool& conflict) {
        while (!decisions_.empty() && decisions_.back().flipped) decisions_.pop_back();
        if (decisions_.empty()) return false;
        Decision& d = decisions_.back();
        undo_to(d.trail_size);
        d.flipped = true;
        conflict = !(assign(d.atom, static_cast<signed char>(-d.value)) && propagate());
        return true;
    }

    /// Returns true when enumeration should stop.
    bool leaf(ModelSet& out) {
        ++stats_.candidates;
        std::vector<char> in_m(n_, 0);
        for (AtomId a = 0; a < n_; ++a) in_m[a] = val_[a] > 0;
        for (const GroundRule& r : g_.rules)
            if (!rule_satisfied(r, [&](AtomId a) { return static_cast<bool>(in_m[a]); })) return false;
        if (!MinimalityCheck(g_, in_m).minimal()) return false;

        std::vector<AtomId> ids;
        for (AtomId a = 0; a < n_; ++a)
            if (in_m[a]) ids.push_back(a);
        Model m = g_.to_atom_set(ids);
        ++stats_.models;
        bool keep_going = !options_.on_model || options_.on_model(m);
        out.models.push_back(std::move(m));
        if (!keep_going || (options_.max_models && out.models.size() >= options_.max_models)) {
            stopped_ = true;
            return true;
        }
        return false;
    }

    const GroundProgram& g_;
    const SolveOptions& options_;
    SolveStats& stats_;
    std::size_t n_;
    std::vector<signed char> val_;
    std::vector<std::vector<std::size_t>> head_occ_, body_occ_;
    std::vector<AtomId> trail_;
    std::size_t qhead_ = 0;
    std::vector<Decision> decisions_;
    bool stopped_ = false;
};

} // namespace

ModelSet solve(const GroundProgram& g, const SolveOptions& options, SolveStats* stats) {
    SolveStats local;
    return Search(g, options, stats ? *stats : local).run();
}

ModelSet minimal_models(const GroundProgram& g, const SolveOptions& options) {
    for (const GroundRule& r : g.rules)
        if (!r.neg.empty()) throw Error("minimal_models expects a negation-free program");
    return solve(g, options);
}

ModelSet stable_models(const Program& program, const Database& db, const SolveOptions& options,
                       const GroundOptions& ground) {
    return solve(ground_program(program, db, ground), options);
}

Model perfect_model(const Program& program, const Database& db, const GroundOptions& ground) {
    for (const Rule& r : program.rules)
        if (r.is_disjunctive()) throw Error("perfect_model expects a normal program");
    if (!program.constraints.empty()) throw Error("perfect_model expects a program without constraints");
    auto strata = stratification(program);
    GroundProgram g = ground_program(program, db, ground);

    std::map<Symbol, std::size_t> level;
    for (std::size_t i = 0; i < strata.size(); ++i)
        for (Symbol p : strata[i]) level[p] = i;
    std::vector<std::vector<std::size_t>> by_level(strata.size());
    std::vector<char> in(g.atoms.size(), 0);
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const GroundRule& r = g.rules[i];
        if (r.is_database_fact()) {
            in[r.head.front()] = 1;
            continue;
        }
        by_level[level.at(g.atoms.atom(r.head.front()).predicate)].push_back(i);
    }
    for (const auto& rules : by_level) {
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i : rules) {
                const GroundRule& r = g.rules[i];
                AtomId h = r.head.front();
                if (in[h]) continue;
                if (!std::all_of(r.pos.begin(), r.pos.end(), [&](AtomId a) { return in[a]; })) continue;
                if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return in[a]; })) continue;
                in[h] = 1;
                changed = true;
            }
        }
    }
    std::vector<AtomId> ids;
    for (AtomId a = 0; a < in.size(); ++a)
        if (in[a]) ids.push_back(a);
    return g.to_atom_set(ids);
}

bool is_stable(const GroundProgram& g, const Model& candidate) {
    bool missing = false;
    std::vector<AtomId> ids = g.ids_of(candidate, &missing);
    if (missing) return false; // an atom no rule can derive
    std::vector<char> in(g.atoms.size(), 0);
    for (AtomId a : ids) in[a] = 1;
    for (const GroundRule& r : g.rules)
        if (!rule_satisfied(r, [&](AtomId a) { return static_cast<bool>(in[a]); })) return false;
    return MinimalityCheck(g, in).minimal();
}

bool is_stable(const Program& program, const Database& db, const Model& candidate) {
    if (!db.is_subset_of(candidate)) return false;
    GroundOptions opts;
    std::set<Symbol> extra = candidate.constants();
    opts.extra_constants.assign(extra.begin(), extra.end());
    opts.empty_universe_is_error = false;
    return is_stable(ground_program(program, db, opts), candidate);
}

Answer answers(const Atom& goal, const ModelSet& models, AnswerMode mode, const std::set<Symbol>& universe) {
    if (!models.exhaustive) throw NonExhaustive("answers requested from a truncated model enumeration");
    Answer out;
    out.mode = mode;
    out.variables = goal.variables();

    auto of_model = [&](const Model& m) {
        Answer a;
        for (const GroundAtom& atom : m)
            if (auto s = match_goal(goal, atom)) a.substitutions.push_back(std::move(*s));
        a.normalize();
        return a;
    };

    if (mode == AnswerMode::brave) {
        for (const Model& m : models.models) {
            Answer a = of_model(m);
            out.substitutions.insert(out.substitutions.end(), a.substitutions.begin(), a.substitutions.end());
        }
        out.normalize();
        return out;
    }

    if (models.models.empty()) {
        std::set<Symbol> u = universe;
        for (const Term& t : goal.args)
            if (t.is_constant()) u.insert(t.name);
        std::vector<Symbol> values(u.begin(), u.end());
        std::vector<Symbol> current(out.variables.size());
        std::function<void(std::size_t)> expand = [&](std::size_t i) {
            if (i == current.size()) {
                out.substitutions.push_back(current);
                return;
            }
            for (Symbol v : values) {
                current[i] = v;
                expand(i + 1);
            }
        };
        expand(0);
        out.normalize();
        return out;
    }

    Answer acc = of_model(models.models.front());
    for (std::size_t i = 1; i < models.models.size() && !acc.substitutions.empty(); ++i) {
        Answer a = of_model(models.models[i]);
        std::vector<std::vector<Symbol>> kept;
        for (auto& s : acc.substitutions)
            if (a.contains(s)) kept.push_back(std::move(s));
        acc.substitutions = std::move(kept);
    }
    out.substitutions = std::move(acc.substitutions);
    out.normalize();
    return out;
}

ModelSet cross_union(const ModelSet& a, const ModelSet& b) {
    ModelSet out;
    out.exhaustive = a.exhaustive && b.exhaustive;
    for (const Model& x : a.models)
        for (const Model& y : b.models) {
            Model m = x;
            m.insert_all(y);
            out.models.push_back(std::move(m));
        }
    out.normalize();
    return out;
}

} // namespace dmagic
