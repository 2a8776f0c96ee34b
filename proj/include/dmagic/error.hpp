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
#ifndef DMAGIC_ERROR_HPP
#define DMAGIC_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dmagic {

/// 1-based position of a token or statement in program text.
struct SourceSpan {
    std::size_t line = 1;
    std::size_t column = 1;
    std::size_t length = 1;

    friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

/// Names a statement of a Program: a rule of P_R or a constraint of P_C.
struct RuleRef {
    bool constraint = false;
    std::size_t index = 0;

    friend bool operator==(const RuleRef&, const RuleRef&) = default;
};

enum class ViolationKind {
    unsafe_variable,
    negation_in_rule,
    constraint_polarity,
    arity_mismatch,
    reserved_name,
    negation_in_head,
};

const char* to_string(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    RuleRef rule;
    std::string rule_text;
    std::string message;
    std::optional<SourceSpan> span; // filled in by the parser
};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, SourceSpan span);
    const SourceSpan& span() const noexcept { return span_; }

private:
    SourceSpan span_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<Violation> violations);
    ValidationError(const std::string& message, std::vector<Violation> violations = {});
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    std::vector<Violation> violations_;
};

/// A configured cap (ground instances, search decisions, deadline) was exceeded.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class NotStratified : public Error {
public:
    using Error::Error;
};

class ReservedPrefix : public Error {
public:
    using Error::Error;
};

class UnstratifiedUse : public Error {
public:
    using Error::Error;
};

/// Answers were requested from a truncated model enumeration.
class NonExhaustive : public Error {
public:
    using Error::Error;
};

class EmptyUniverse : public Error {
public:
    using Error::Error;
};

} // namespace dmagic

#endif
