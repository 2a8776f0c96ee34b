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
#include <dmagic/parser.hpp>

#include <algorithm>
#include <cctype>

namespace dmagic {

namespace {

enum class Tok {
    ident,    // predicate or constant
    variable,
    lparen,
    rparen,
    comma,
    dot,
    bar,
    if_,      // :-
    query,    // ?-
    op,
    end,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_blank();
            SourceSpan start{line_, col_, 1};
            if (pos_ >= text_.size()) {
                out.push_back({Tok::end, "", start});
                return out;
            }
            char c = text_[pos_];
            auto single = [&](Tok k) {
                advance(1);
                out.push_back({k, std::string(1, c), start});
            };
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
                (c == '-' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
                std::size_t begin = pos_;
                advance(1);
                while (pos_ < text_.size() &&
                       (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                    advance(1);
                std::string word(text_.substr(begin, pos_ - begin));
                start.length = word.size();
                bool var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
                if (c == '-' && !std::all_of(word.begin() + 1, word.end(), ::isdigit))
                    throw SyntaxError("malformed integer `" + word + "`", start);
                out.push_back({var ? Tok::variable : Tok::ident, std::move(word), start});
                continue;
            }
            switch (c) {
            case '(': single(Tok::lparen); continue;
            case ')': single(Tok::rparen); continue;
            case ',': single(Tok::comma); continue;
            case '.': single(Tok::dot); continue;
            case '|': single(Tok::bar); continue;
            default: break;
            }
            std::string_view rest = text_.substr(pos_);
            auto take = [&](Tok k, std::size_t n) {
                start.length = n;
                out.push_back({k, std::string(rest.substr(0, n)), start});
                advance(n);
            };
            if (rest.starts_with(":-")) take(Tok::if_, 2);
            else if (rest.starts_with("?-")) take(Tok::query, 2);
            else if (rest.starts_with("<=") || rest.starts_with(">=") || rest.starts_with("!=") ||
                     rest.starts_with("==") || rest.starts_with("<>"))
                take(Tok::op, 2);
            else if (c == '<' || c == '>' || c == '=') take(Tok::op, 1);
            else throw SyntaxError(std::string("unexpected character `") + c + "`", start);
        }
    }

private:
    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
            if (text_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
        }
    }

    void skip_blank() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '%') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance(1);
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

CompareOp to_op(const std::string& s) {
    if (s == "<") return CompareOp::lt;
    if (s == "<=") return CompareOp::le;
    if (s == ">") return CompareOp::gt;
    if (s == ">=") return CompareOp::ge;
    if (s == "=" || s == "==") return CompareOp::eq;
    return CompareOp::ne;
}

struct Statement {
    Rule rule;
    SourceSpan span;
    bool query = false;
};

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    bool at_end() const { return peek().kind == Tok::end; }

    Statement statement() {
        Statement st;
        st.span = peek().span;
        if (peek().kind == Tok::query) {
            next();
            st.query = true;
            st.rule.head.push_back(atom());
            expect(Tok::dot, "`.`");
            return finish(st);
        }
        if (peek().kind != Tok::if_) {
            st.rule.head.push_back(atom());
            for (;;) {
                if (peek().kind == Tok::bar) {
                    next();
                } else if (peek().kind == Tok::ident && peek().text == "v" && is_head_start(1)) {
                    next();
                } else {
                    break;
                }
                st.rule.head.push_back(atom());
            }
        }
        if (peek().kind == Tok::if_) {
            Token arrow = next();
            if (peek().kind == Tok::dot) throw SyntaxError("empty rule body", arrow.span);
            st.rule.body.push_back(literal());
            while (peek().kind == Tok::comma) {
                next();
                st.rule.body.push_back(literal());
            }
        }
        expect(Tok::dot, "`.`");
        return finish(st);
    }

private:
    Statement& finish(Statement& st) {
        const Token& last = toks_[pos_ - 1];
        if (last.span.line == st.span.line) st.span.length = last.span.column + 1 - st.span.column;
        return st;
    }

    bool is_head_start(std::size_t ahead) const {
        const Token& t = toks_[std::min(pos_ + ahead, toks_.size() - 1)];
        return t.kind == Tok::ident;
    }

    const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind)
            throw SyntaxError(std::string("expected ") + what + " but found `" + peek().text + "`", peek().span);
        return next();
    }

    Term term() {
        const Token& t = peek();
        if (t.kind == Tok::variable) return Term::variable(next().text);
        if (t.kind == Tok::ident) return Term::constant(next().text);
        throw SyntaxError("expected a term but found `" + t.text + "`", t.span);
    }

    Atom atom() {
        Token name = peek();
        if (name.kind == Tok::variable)
            throw SyntaxError("predicate names may not start with an uppercase letter: `" + name.text + "`",
                              name.span);
        expect(Tok::ident, "a predicate name");
        if (name.text.front() == '-') throw SyntaxError("malformed predicate name", name.span);
        Atom a{Symbol(name.text), {}};
        if (peek().kind == Tok::lparen) {
            next();
            a.args.push_back(term());
            while (peek().kind == Tok::comma) {
                next();
                a.args.push_back(term());
            }
            expect(Tok::rparen, "`)`");
        }
        return a;
    }

    Literal literal() {
        if (peek().kind == Tok::ident && peek().text == "not" &&
            (peek(1).kind == Tok::ident || peek(1).kind == Tok::variable)) {
            next();
            return Literal::neg(atom());
        }
        bool comparison = peek().kind == Tok::variable ||
                          (peek().kind == Tok::ident && peek(1).kind == Tok::op);
        if (comparison) {
            Term lhs = term();
            Token op = expect(Tok::op, "a comparison operator");
            Term rhs = term();
            return Literal::compare(lhs, to_op(op.text), rhs);
        }
        return Literal::pos(atom());
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::vector<Statement> parse_statements(std::string_view text) {
    Parser p(Lexer(text).run());
    std::vector<Statement> out;
    while (!p.at_end()) out.push_back(p.statement());
    return out;
}

} // namespace

Program parse_program(std::string_view text, const ParseOptions& options) {
    Program prog;
    std::vector<SourceSpan> rule_spans, constraint_spans;
    for (Statement& st : parse_statements(text)) {
        if (st.query) throw SyntaxError("query statement inside a program", st.span);
        (st.rule.is_constraint() ? constraint_spans : rule_spans).push_back(st.span);
        prog.add(std::move(st.rule));
    }
    if (options.validate) {
        auto violations = validate_program(prog, options.validation);
        if (!violations.empty()) {
            for (Violation& v : violations)
                v.span = v.rule.constraint ? constraint_spans[v.rule.index] : rule_spans[v.rule.index];
            throw ValidationError(std::move(violations));
        }
    }
    return prog;
}

Database parse_database(std::string_view text) {
    std::vector<GroundAtom> facts;
    for (Statement& st : parse_statements(text)) {
        if (st.query || !st.rule.is_fact()) throw SyntaxError("database files contain facts only", st.span);
        const Atom& a = st.rule.head.front();
        if (!a.is_ground()) throw SyntaxError("database fact is not ground: " + to_string(a), st.span);
        facts.push_back(to_ground(a));
    }
    return Database(std::move(facts));
}

Atom parse_query(std::string_view text) {
    std::vector<Statement> statements;
    try {
        statements = parse_statements(text);
    } catch (const SyntaxError&) {
        // the closing `.` may be left out
        statements = parse_statements(std::string(text) + "\n.");
    }
    if (statements.size() != 1) throw SyntaxError("expected exactly one query", SourceSpan{});
    Statement& st = statements.front();
    if (!st.rule.is_fact()) throw SyntaxError("a query is a single atom", st.span);
    return st.rule.head.front();
}

std::string render_program(const Program& program) {
    std::vector<std::pair<std::vector<std::string>, std::string>> keyed;
    auto add = [&](const Rule& r) {
        std::vector<std::string> heads;
        for (const Atom& a : r.head) heads.push_back(a.predicate.str());
        keyed.emplace_back(std::move(heads), to_string(r));
    };
    for (const Rule& r : program.rules) add(r);
    for (const Rule& r : program.constraints) add(r);
    std::sort(keyed.begin(), keyed.end());
    std::string out;
    for (const auto& [key, text] : keyed) {
        out += text;
        out += '\n';
    }
    return out;
}

std::string render_database(const Database& db) {
    std::string out;
    for (const GroundAtom& a : db) {
        out += to_string(a);
        out += ".\n";
    }
    return out;
}

} // namespace dmagic
