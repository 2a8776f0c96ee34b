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
#ifndef DMAGIC_TESTS_HELPERS_HPP
#define DMAGIC_TESTS_HELPERS_HPP

#include <dmagic/core.hpp>
#include <dmagic/parser.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace testing_helpers {

inline const char* anc_text() {
    return "father(X,Y) | brother(X,Y) :- related(X,Y).\n"
           "ancestor(X,Y) :- father(X,Y).\n"
           "ancestor(X,Y) :- father(X,Z), ancestor(Z,Y).\n";
}

inline const char* coloring_text() {
    return "2col(X,Y) :- color(X,red), color(Y,blue).\n"
           "color(X,red) | color(X,blue) | color(X,yellow) :- node(X).\n"
           ":- edge(X,Y), color(X,C), color(Y,C).\n";
}

inline dmagic::Program parse(const std::string& text) { return dmagic::parse_program(text); }

/// Parses rewriting output, where reserved names and negation are expected.
inline dmagic::Program parse_internal(const std::string& text) {
    dmagic::ParseOptions o;
    o.validation.allow_reserved_names = true;
    o.validation.allow_negation_in_rules = true;
    o.validation.check_constraint_polarity = false;
    return dmagic::parse_program(text, o);
}

inline std::vector<dmagic::Rule> rules_of(const std::string& text) {
    dmagic::Program p = parse_internal(text);
    std::vector<dmagic::Rule> out = p.rules;
    out.insert(out.end(), p.constraints.begin(), p.constraints.end());
    return out;
}

/// Sorted rule texts: rule sets compared independent of order.
inline std::vector<std::string> texts(const std::vector<dmagic::Rule>& rules) {
    std::vector<std::string> out;
    for (const dmagic::Rule& r : rules) out.push_back(dmagic::to_string(r));
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<std::string> texts(const std::string& program_text) { return texts(rules_of(program_text)); }

inline dmagic::Database db(const std::string& text) { return dmagic::parse_database(text); }

inline dmagic::GroundAtom ga(const std::string& text) { return dmagic::to_ground(dmagic::parse_query(text)); }

inline dmagic::Model model(std::initializer_list<const char*> atoms) {
    std::vector<dmagic::GroundAtom> v;
    for (const char* a : atoms) v.push_back(ga(a));
    return dmagic::Model(std::move(v));
}

} // namespace testing_helpers

#endif
