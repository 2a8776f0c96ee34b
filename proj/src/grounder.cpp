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
#include <dmagic/grounder.hpp>

#include <algorithm>
#include <limits>

namespace dmagic {

AtomId AtomTable::intern(const GroundAtom& a) {
    auto [it, fresh] = ids_.emplace(a, static_cast<AtomId>(atoms_.size()));
    if (fresh) atoms_.push_back(a);
    return it->second;
}

std::optional<AtomId> AtomTable::find(const GroundAtom& a) const {
    auto it = ids_.find(a);
    if (it == ids_.end()) return std::nullopt;
    return it->second;
}

std::size_t GroundProgram::add(GroundRule r) {
    rules.push_back(std::move(r));
    return rules.size() - 1;
}

std::size_t GroundProgram::instance_count() const {
    return std::count_if(rules.begin(), rules.end(), [](const GroundRule& r) { return !r.is_database_fact(); });
}

Rule GroundProgram::to_rule(std::size_t i) const {
    const GroundRule& g = rules.at(i);
    Rule r;
    for (AtomId a : g.head) r.head.push_back(to_atom(atoms.atom(a)));
    for (AtomId a : g.pos) r.body.push_back(Literal::pos(to_atom(atoms.atom(a))));
    for (AtomId a : g.neg) r.body.push_back(Literal::neg(to_atom(atoms.atom(a))));
    return r;
}

AtomSet GroundProgram::to_atom_set(const std::vector<AtomId>& ids) const {
    std::vector<GroundAtom> v;
    v.reserve(ids.size());
    for (AtomId a : ids) v.push_back(atoms.atom(a));
    return AtomSet(std::move(v));
}

std::vector<AtomId> GroundProgram::ids_of(const AtomSet& m, bool* missing) const {
    std::vector<AtomId> out;
    if (missing) *missing = false;
    for (const GroundAtom& a : m) {
        if (auto id = atoms.find(a))
            out.push_back(*id);
        else if (missing)
            *missing = true;
    }
    return out;
}

std::string to_string(const GroundProgram& g) {
    std::string out;
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        out += to_string(g.to_rule(i));
        out += '\n';
    }
    return out;
}

std::set<Symbol> herbrand_universe(const Program& program, const Database& db) {
    std::set<Symbol> u = program.constants();
    std::set<Symbol> d = db.constants();
    u.insert(d.begin(), d.end());
    return u;
}

namespace {

constexpr std::uint32_t no_stamp = std::numeric_limits<std::uint32_t>::max();

struct Arg {
    bool var = false;
    std::uint32_t index = 0; // variable index
    Symbol value;            // constant
};

struct Lit {
    Symbol predicate;
    std::vector<Arg> args;
};

struct Cmp {
    CompareOp op;
    Arg lhs, rhs;
};

struct Compiled {
    RuleRef ref;
    std::size_t nvars = 0;
    std::vector<Lit> head, pos, neg; // pos[0, njoin) is joined, the rest expanded
    std::size_t njoin = 0;
    std::vector<Cmp> cmps;
    std::vector<std::uint32_t> free_vars; // expanded over the universe
    std::vector<std::vector<std::size_t>> orders; // join order starting with literal j
};

Arg compile_term(const Term& t, std::vector<Symbol>& vars) {
    if (t.is_constant()) return {false, 0, t.name};
    auto it = std::find(vars.begin(), vars.end(), t.name);
    if (it == vars.end()) {
        vars.push_back(t.name);
        return {true, static_cast<std::uint32_t>(vars.size() - 1), {}};
    }
    return {true, static_cast<std::uint32_t>(it - vars.begin()), {}};
}

Lit compile_atom(const Atom& a, std::vector<Symbol>& vars) {
    Lit l{a.predicate, {}};
    for (const Term& t : a.args) l.args.push_back(compile_term(t, vars));
    return l;
}

Compiled compile(const Rule& r, RuleRef ref, const std::set<Symbol>& unchecked) {
    Compiled c;
    c.ref = ref;
    std::vector<Symbol> vars;
    for (const Literal& l : r.body)
        if (l.is_positive() && !unchecked.count(l.atom.predicate)) c.pos.push_back(compile_atom(l.atom, vars));
    c.njoin = c.pos.size();
    std::size_t joined_vars = vars.size();
    for (const Literal& l : r.body)
        if (l.is_positive() && unchecked.count(l.atom.predicate)) c.pos.push_back(compile_atom(l.atom, vars));
    for (const Literal& l : r.body) {
        if (l.is_negative()) c.neg.push_back(compile_atom(l.atom, vars));
        if (l.is_comparison()) c.cmps.push_back({l.op, compile_term(l.lhs, vars), compile_term(l.rhs, vars)});
    }
    for (const Atom& h : r.head) c.head.push_back(compile_atom(h, vars));
    c.nvars = vars.size();
    for (std::size_t v = joined_vars; v < vars.size(); ++v) c.free_vars.push_back(static_cast<std::uint32_t>(v));
    return c;
}

struct IndexKey {
    Symbol predicate;
    std::uint32_t position;
    Symbol value;
    friend bool operator==(const IndexKey&, const IndexKey&) = default;
};

struct IndexKeyHash {
    std::size_t operator()(const IndexKey& k) const noexcept {
        return k.predicate.hash() * 31 + k.position * 1000003u + k.value.hash() * 7;
    }
};

class Grounder {
public:
    Grounder(const Program& program, const Database& db, const GroundOptions& options)
        : options_(options) {
        out_.universe = herbrand_universe(program, db);
        out_.universe.insert(options.extra_constants.begin(), options.extra_constants.end());
        universe_.assign(out_.universe.begin(), out_.universe.end());
        std::sort(universe_.begin(), universe_.end(), constant_less);

        if (universe_.empty() && options.empty_universe_is_error) {
            auto has_vars = [](const Rule& r) { return !r.variables().empty(); };
            if (std::any_of(program.rules.begin(), program.rules.end(), has_vars) ||
                std::any_of(program.constraints.begin(), program.constraints.end(), has_vars))
                throw EmptyUniverse("no constants to instantiate rule variables");
        }

        std::set<Symbol> unchecked;
        if (!options.prune_underivable) unchecked = program.derived_predicates();
        for (std::size_t i = 0; i < program.rules.size(); ++i)
            rules_.push_back(compile(program.rules[i], {false, i}, unchecked));
        for (std::size_t i = 0; i < program.constraints.size(); ++i)
            constraints_.push_back(compile(program.constraints[i], {true, i}, unchecked));
        for (Compiled& c : rules_) plan(c);
        for (Compiled& c : constraints_) plan(c);

        for (const GroundAtom& f : db) {
            AtomId id = out_.atoms.intern(f);
            out_.add({{id}, {}, {}, {false, database_origin}});
            make_possible(id);
        }
        flush();
    }

    GroundProgram run() {
        if (options_.prune_underivable) {
            std::uint32_t lo = 0;
            for (Compiled& c : rules_)
                if (joined(c) == 0) instantiate(c, join_all_ranges(c, 0));
            for (;;) {
                std::uint32_t hi = static_cast<std::uint32_t>(order_.size());
                for (Compiled& c : rules_)
                    for (std::size_t j = 0; j < joined(c); ++j) semi_naive(c, j, lo, hi);
                lo = hi;
                flush();
                if (order_.size() == hi) break;
            }
        } else {
            for (Compiled& c : rules_) instantiate(c, join_all_ranges(c, static_cast<std::uint32_t>(order_.size())));
        }
        std::uint32_t n = static_cast<std::uint32_t>(order_.size());
        for (Compiled& c : constraints_) instantiate(c, join_all_ranges(c, n));
        return std::move(out_);
    }

private:
    struct Range {
        std::uint32_t lo, hi;
    };

    static std::size_t joined(const Compiled& c) { return c.njoin; }

    /// Greedy order: the starting literal, then the literal with most bound arguments.
    static void plan(Compiled& c) {
        std::size_t n = joined(c);
        c.orders.assign(std::max<std::size_t>(n, 1), {});
        for (std::size_t start = 0; start < std::max<std::size_t>(n, 1); ++start) {
            std::vector<bool> bound(c.nvars, false), used(n, false);
            auto& order = c.orders[start];
            auto take = [&](std::size_t i) {
                used[i] = true;
                order.push_back(i);
                for (const Arg& a : c.pos[i].args)
                    if (a.var) bound[a.index] = true;
            };
            if (n == 0) break;
            take(start);
            while (order.size() < n) {
                std::size_t best = n;
                int best_score = -1;
                for (std::size_t i = 0; i < n; ++i) {
                    if (used[i]) continue;
                    int score = 0;
                    for (const Arg& a : c.pos[i].args)
                        if (!a.var || bound[a.index]) ++score;
                    if (score > best_score) {
                        best_score = score;
                        best = i;
                    }
                }
                take(best);
            }
        }
    }

    std::vector<Range> join_all_ranges(const Compiled& c, std::uint32_t hi) const {
        return std::vector<Range>(joined(c), Range{0, hi});
    }

    void semi_naive(Compiled& c, std::size_t j, std::uint32_t lo, std::uint32_t hi) {
        auto it = by_pred_.find(c.pos[j].predicate);
        if (it == by_pred_.end() || it->second.empty() || stamp_[it->second.back()] < lo) return;
        std::vector<Range> ranges(joined(c));
        for (std::size_t i = 0; i < ranges.size(); ++i)
            ranges[i] = i < j ? Range{0, lo} : i == j ? Range{lo, hi} : Range{0, hi};
        instantiate(c, ranges, j);
    }

    void instantiate(Compiled& c, const std::vector<Range>& ranges, std::size_t start = 0) {
        binding_.assign(c.nvars, Symbol());
        matched_.assign(c.pos.size(), 0);
        match(c, c.orders[start], 0, ranges);
    }

    bool comparisons_ok(const Compiled& c) const {
        for (const Cmp& k : c.cmps) {
            Symbol l = k.lhs.var ? binding_[k.lhs.index] : k.lhs.value;
            Symbol r = k.rhs.var ? binding_[k.rhs.index] : k.rhs.value;
            if (l.empty() || r.empty()) continue;
            if (!evaluate(k.op, l, r)) return false;
        }
        return true;
    }

    void match(Compiled& c, const std::vector<std::size_t>& order, std::size_t k, const std::vector<Range>& ranges) {
        if (k == order.size() || joined(c) == 0) {
            expand(c, 0);
            return;
        }
        std::size_t li = order[k];
        const Lit& lit = c.pos[li];
        Range range = ranges[li];
        if (range.lo >= range.hi) return;

        const std::vector<AtomId>* candidates = nullptr;
        for (std::uint32_t p = 0; p < lit.args.size(); ++p) {
            const Arg& a = lit.args[p];
            Symbol v = a.var ? binding_[a.index] : a.value;
            if (v.empty()) continue;
            auto it = by_arg_.find({lit.predicate, p, v});
            if (it == by_arg_.end()) return;
            if (!candidates || it->second.size() < candidates->size()) candidates = &it->second;
        }
        if (!candidates) {
            auto it = by_pred_.find(lit.predicate);
            if (it == by_pred_.end()) return;
            candidates = &it->second;
        }

        auto first = std::lower_bound(candidates->begin(), candidates->end(), range.lo,
                                      [&](AtomId id, std::uint32_t s) { return stamp_[id] < s; });
        std::vector<std::uint32_t> newly;
        for (auto it = first; it != candidates->end() && stamp_[*it] < range.hi; ++it) {
            const GroundAtom& g = out_.atoms.atom(*it);
            if (g.args.size() != lit.args.size()) continue;
            newly.clear();
            bool ok = true;
            for (std::size_t p = 0; p < lit.args.size() && ok; ++p) {
                const Arg& a = lit.args[p];
                if (!a.var) {
                    ok = a.value == g.args[p];
                } else if (binding_[a.index].empty()) {
                    binding_[a.index] = g.args[p];
                    newly.push_back(a.index);
                } else {
                    ok = binding_[a.index] == g.args[p];
                }
            }
            if (ok && comparisons_ok(c)) {
                matched_[li] = *it;
                match(c, order, k + 1, ranges);
            }
            for (std::uint32_t v : newly) binding_[v] = Symbol();
        }
    }

    void expand(Compiled& c, std::size_t i) {
        if (i == c.free_vars.size()) {
            if (comparisons_ok(c)) emit(c);
            return;
        }
        std::uint32_t v = c.free_vars[i];
        for (Symbol s : universe_) {
            binding_[v] = s;
            if (comparisons_ok(c)) expand(c, i + 1);
        }
        binding_[v] = Symbol();
    }

    GroundAtom ground(const Lit& l) const {
        GroundAtom g{l.predicate, {}};
        g.args.reserve(l.args.size());
        for (const Arg& a : l.args) g.args.push_back(a.var ? binding_[a.index] : a.value);
        return g;
    }

    void emit(Compiled& c) {
        if (++instances_ > options_.max_instances)
            throw ResourceLimit("ground instance cap of " + std::to_string(options_.max_instances) + " exceeded");
        GroundRule r;
        r.origin = c.ref;
        std::size_t nj = joined(c);
        for (std::size_t i = 0; i < c.pos.size(); ++i) {
            AtomId id;
            if (i < nj) {
                id = matched_[i];
            } else {
                GroundAtom g = ground(c.pos[i]);
                id = out_.atoms.intern(g);
            }
            if (std::find(r.pos.begin(), r.pos.end(), id) == r.pos.end()) r.pos.push_back(id);
        }
        for (const Lit& l : c.neg) {
            AtomId id = out_.atoms.intern(ground(l));
            if (std::find(r.neg.begin(), r.neg.end(), id) == r.neg.end()) r.neg.push_back(id);
        }
        for (const Lit& l : c.head) {
            AtomId id = out_.atoms.intern(ground(l));
            if (std::find(r.head.begin(), r.head.end(), id) == r.head.end()) r.head.push_back(id);
            if (id >= stamp_.size() || stamp_[id] == no_stamp) pending_.push_back(id);
        }
        out_.add(std::move(r));
    }

    void make_possible(AtomId id) {
        if (stamp_.size() <= id) stamp_.resize(id + 1, no_stamp);
        if (stamp_[id] != no_stamp) return;
        stamp_[id] = static_cast<std::uint32_t>(order_.size());
        order_.push_back(id);
        const GroundAtom& g = out_.atoms.atom(id);
        by_pred_[g.predicate].push_back(id);
        for (std::uint32_t p = 0; p < g.args.size(); ++p) by_arg_[{g.predicate, p, g.args[p]}].push_back(id);
    }

    void flush() {
        std::vector<AtomId> pending = std::move(pending_);
        pending_.clear();
        for (AtomId id : pending) make_possible(id);
        if (stamp_.size() < out_.atoms.size()) stamp_.resize(out_.atoms.size(), no_stamp);
    }

    GroundOptions options_;
    GroundProgram out_;
    std::vector<Symbol> universe_;
    std::vector<Compiled> rules_, constraints_;

    std::vector<std::uint32_t> stamp_;
    std::vector<AtomId> order_;
    std::unordered_map<Symbol, std::vector<AtomId>> by_pred_;
    std::unordered_map<IndexKey, std::vector<AtomId>, IndexKeyHash> by_arg_;
    std::vector<AtomId> pending_;

    std::vector<Symbol> binding_;
    std::vector<AtomId> matched_;
    std::size_t instances_ = 0;
};

} // namespace

GroundProgram ground_program(const Program& program, const Database& db, const GroundOptions& options) {
    return Grounder(program, db, options).run();
}

GroundProgram reduct(const GroundProgram& g, const AtomSet& interpretation) {
    GroundProgram out;
    out.atoms = g.atoms;
    out.universe = g.universe;
    std::vector<bool> in(g.atoms.size(), false);
    for (AtomId a : g.ids_of(interpretation)) in[a] = true;
    for (const GroundRule& r : g.rules) {
        if (std::any_of(r.neg.begin(), r.neg.end(), [&](AtomId a) { return in[a]; })) continue;
        out.add({r.head, r.pos, {}, r.origin});
    }
    return out;
}

TruthPartition partition_by_truth(const GroundProgram& g, const AtomSet& model) {
    TruthPartition out;
    std::vector<bool> in(g.atoms.size(), false);
    for (AtomId a : g.ids_of(model)) in[a] = true;
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        if (rule_satisfied(g.rules[i], [&](AtomId a) { return static_cast<bool>(in[a]); }))
            out.true_rules.push_back(i);
        else
            out.false_rules.push_back(i);
    }
    return out;
}

} // namespace dmagic
