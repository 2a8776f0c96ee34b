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
#ifndef DMAGIC_SYMBOL_HPP
#define DMAGIC_SYMBOL_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace dmagic {

/// Interned name of a predicate, constant or variable.
///
/// Symbols with equal text share one process-wide string; equality and hashing
/// are pointer operations. The intern table only ever grows, so a Symbol stays
/// valid for the lifetime of the process and may be shared across threads.
class Symbol {
public:
    Symbol();
    explicit Symbol(std::string_view text);

    const std::string& str() const noexcept { return *text_; }
    bool empty() const noexcept { return text_->empty(); }

    /// Integer value when the text is a (possibly signed) decimal literal.
    std::optional<long long> as_integer() const;

    friend bool operator==(Symbol a, Symbol b) noexcept { return a.text_ == b.text_; }
    friend bool operator!=(Symbol a, Symbol b) noexcept { return a.text_ != b.text_; }

    /// Lexicographic on text.
    friend bool operator<(Symbol a, Symbol b) noexcept {
        return a.text_ != b.text_ && *a.text_ < *b.text_;
    }

    std::size_t hash() const noexcept { return std::hash<const void*>{}(text_); }

private:
    const std::string* text_;
};

std::ostream& operator<<(std::ostream& os, Symbol s);

/// Total order on constants used by comparison literals and model output:
/// integers numerically, integers before other constants, the rest lexicographically.
std::strong_ordering compare_constants(Symbol a, Symbol b);

inline bool constant_less(Symbol a, Symbol b) { return compare_constants(a, b) < 0; }

} // namespace dmagic

template <>
struct std::hash<dmagic::Symbol> {
    std::size_t operator()(dmagic::Symbol s) const noexcept { return s.hash(); }
};

#endif
