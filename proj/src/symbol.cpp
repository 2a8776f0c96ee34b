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
#include <dmagic/symbol.hpp>

#include <charconv>
#include <mutex>
#include <ostream>
#include <unordered_set>

namespace dmagic {

namespace {
struct InternTable {
    std::mutex lock;
    std::unordered_set<std::string> strings;

    const std::string* intern(std::string_view text) {
        std::lock_guard<std::mutex> guard(lock);
        return &*strings.emplace(text).first;
    }
};

InternTable& table() {
    static InternTable* t = new InternTable();
    return *t;
}

const std::string* empty_symbol() {
    static const std::string* e = table().intern("");
    return e;
}
} // namespace

Symbol::Symbol() : text_(empty_symbol()) {}

Symbol::Symbol(std::string_view text) : text_(table().intern(text)) {}

std::optional<long long> Symbol::as_integer() const {
    const std::string& s = *text_;
    if (s.empty()) return std::nullopt;
    long long value = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) return std::nullopt;
    return value;
}

std::ostream& operator<<(std::ostream& os, Symbol s) { return os << s.str(); }

std::strong_ordering compare_constants(Symbol a, Symbol b) {
    if (a == b) return std::strong_ordering::equal;
    auto ia = a.as_integer();
    auto ib = b.as_integer();
    if (ia && ib && *ia != *ib) return *ia <=> *ib;
    if (ia && !ib) return std::strong_ordering::less;
    if (ib && !ia) return std::strong_ordering::greater;
    int c = a.str().compare(b.str());
    return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}

} // namespace dmagic
