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
#ifndef DMAGIC_PARSER_HPP
#define DMAGIC_PARSER_HPP

#include <dmagic/core.hpp>

#include <string>
#include <string_view>

namespace dmagic {

// Surface syntax:
//
//   ancestor(X,Y) :- father(X,Y).
//   father(X,Y) | brother(X,Y) :- related(X,Y).     (`v` also separates heads)
//   :- edge(X,Y), color(X,C), color(Y,C).
//   :- nv1(X), not connected1(X).
//   :- p(X), a(X,Y), q(Y), X <= 1.                  (< <= > >= = != are evaluable)
//   ?- ancestor(john, Y).
//
// Variables start with an uppercase letter or `_`; predicates and constants
// start with a lowercase letter or a digit. `%` starts a comment.

struct ParseOptions {
    bool validate = true;
    ValidationOptions validation;
};

Program parse_program(std::string_view text, const ParseOptions& options = {});

/// Ground facts only.
Database parse_database(std::string_view text);

/// `?- atom.`; the leading `?-` is optional.
Atom parse_query(std::string_view text);

/// One statement per line, sorted by (head predicate names, rule text).
std::string render_program(const Program& program);

std::string render_database(const Database& db);

} // namespace dmagic

#endif
