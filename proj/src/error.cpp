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
#include <dmagic/error.hpp>

namespace dmagic {

const char* to_string(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::unsafe_variable: return "unsafe-variable";
    case ViolationKind::negation_in_rule: return "negation-in-rule";
    case ViolationKind::constraint_polarity: return "constraint-polarity";
    case ViolationKind::arity_mismatch: return "arity-mismatch";
    case ViolationKind::reserved_name: return "reserved-name";
    case ViolationKind::negation_in_head: return "malformed-rule";
    }
    return "unknown";
}

namespace {
std::string locate(const std::string& message, const SourceSpan& span) {
    return std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message;
}

std::string summarize(const std::vector<Violation>& violations) {
    std::string out = "invalid program";
    for (const Violation& v : violations) {
        out += "\n  ";
        if (v.span) out += std::to_string(v.span->line) + ":" + std::to_string(v.span->column) + ": ";
        out += to_string(v.kind);
        out += ": ";
        out += v.message;
        if (!v.rule_text.empty()) out += " in `" + v.rule_text + "`";
    }
    return out;
}
} // namespace

SyntaxError::SyntaxError(const std::string& message, SourceSpan span)
    : Error(locate(message, span)), span_(span) {}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(summarize(violations)), violations_(std::move(violations)) {}

ValidationError::ValidationError(const std::string& message, std::vector<Violation> violations)
    : Error(violations.empty() ? message : message + "\n" + summarize(violations)),
      violations_(std::move(violations)) {}

} // namespace dmagic
