#pragma once
//
// Word grammar:
//
//   word    := token (sep token)*         sep := whitespace | '.'
//   token   := a | a* | b | b* | S | S* | e(i,j) | t(i,j;n) | 1
//   free    := (F<k>: word)+              one letter per prefix
//
// A plain word must stay inside one algebra; in a free word each letter must,
// and every letter carrying the same prefix must use the same algebra.
//

#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "awf/qalg.hpp"

namespace awf {

class parse_error : public std::invalid_argument {
public:
    parse_error(std::size_t line, std::size_t column, const std::string& msg)
        : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column)
    {
    }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_, column_;
};

struct ParsedLetter {
    std::size_t factor = 1;  ///< 1-based, as written
    Word word;
};

struct ParsedWord {
    bool free = false;
    Word plain;                        ///< when !free
    std::vector<ParsedLetter> letters; ///< when free
    std::map<std::size_t, AlgebraTag> factor_algebras;
};

namespace detail {

class WordScanner {
public:
    explicit WordScanner(std::string_view text) : text_(text) {}

    ParsedWord run()
    {
        ParsedWord out;
        skip_separators();
        if (at_end())
            return out;
        out.free = at_prefix();
        std::optional<std::size_t> unit_pos;
        while (!at_end()) {
            if (out.free) {
                if (!at_prefix())
                    fail("expected a factor prefix F<k>:");
                const std::size_t fac = read_prefix();
                out.letters.push_back({fac, Word{}});
                unit_pos.reset();
                const Mark after = mark();
                skip_separators();
                if (at_end() || at_prefix())
                    fail_at(after, "empty letter after prefix F" + std::to_string(fac) + ":");
                while (!at_end() && !at_prefix()) {
                    read_token_into(out.letters.back().word, unit_pos);
                    skip_separators();
                }
                const auto tag = out.letters.back().word.tag();
                if (tag) {
                    auto [it, fresh] = out.factor_algebras.emplace(fac, *tag);
                    if (!fresh && it->second != *tag)
                        fail_at(letter_start_, "factor F" + std::to_string(fac) + " was used with " +
                                                   to_string(it->second) + " letters, now " + to_string(*tag));
                }
            } else {
                if (at_prefix())
                    fail("factor prefix inside a plain word");
                read_token_into(out.plain, unit_pos);
                skip_separators();
            }
        }
        return out;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek(std::size_t off = 0) const { return pos_ + off < text_.size() ? text_[pos_ + off] : '\0'; }

    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    static bool is_sep(char c) { return c == '.' || std::isspace(static_cast<unsigned char>(c)); }

    void skip_separators()
    {
        while (!at_end() && is_sep(peek()))
            advance();
    }

    bool at_prefix() const
    {
        if (peek() != 'F')
            return false;
        std::size_t i = 1;
        while (std::isdigit(static_cast<unsigned char>(peek(i))))
            ++i;
        return i > 1 && peek(i) == ':';
    }

    struct Mark {
        std::size_t line, col, pos;
    };
    Mark mark() const { return {line_, col_, pos_}; }

    [[noreturn]] void fail(const std::string& msg) const { throw parse_error(line_, col_, msg); }
    [[noreturn]] static void fail_at(Mark m, const std::string& msg) { throw parse_error(m.line, m.col, msg); }

    std::size_t read_prefix()
    {
        letter_start_ = mark();
        advance();  // F
        const Mark m = mark();
        std::size_t v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + static_cast<std::size_t>(peek() - '0');
            advance();
        }
        advance();  // :
        if (v == 0)
            fail_at(m, "factor numbers start at 1");
        return v;
    }

    std::string token_from(std::size_t from) const
    {
        std::size_t i = from;
        while (i < text_.size() && !is_sep(text_[i]))
            ++i;
        return std::string(text_.substr(from, i - from));
    }
    std::string rest_of_token() const { return token_from(pos_); }

    long read_int(bool allow_sign)
    {
        const Mark m = mark();
        bool neg = false;
        if (allow_sign && (peek() == '-' || peek() == '+')) {
            neg = peek() == '-';
            advance();
        }
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail_at(m, std::string("malformed index: expected ") + (allow_sign ? "an integer" : "a non-negative integer") +
                           ", found '" + rest_of_token() + "'");
        long v = 0;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            v = v * 10 + (peek() - '0');
            if (v > 1000000000L)
                fail_at(m, "index too large");
            advance();
        }
        return neg ? -v : v;
    }

    void expect(char c, const char* what)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "' " + what);
        advance();
    }

    void read_token_into(Word& w, std::optional<std::size_t>& unit_pos)
    {
        const Mark start = mark();
        std::optional<Symbol> sym;
        const char c = peek();
        const auto starred = [&] {
            if (peek(1) == '*') {
                advance();
                advance();
                return true;
            }
            advance();
            return false;
        };
        if (c == 'a' || c == 'b') {
            const bool st = starred();
            sym = c == 'a' ? (st ? SUq2Gen::a_star : SUq2Gen::a) : (st ? SUq2Gen::b_star : SUq2Gen::b);
        } else if (c == 'S') {
            sym = ShiftGen{starred()};
        } else if ((c == 'e' || c == 't') && peek(1) == '(') {
            advance();
            advance();
            const long i = read_int(false);
            expect(',', "between indices");
            const long j = read_int(false);
            if (c == 'e') {
                expect(')', "to close e(i,j)");
                sym = MatrixUnit{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
            } else {
                expect(';', "before the shift power");
                const long n = read_int(true);
                expect(')', "to close t(i,j;n)");
                sym = TensorUnit{static_cast<std::size_t>(i), static_cast<std::size_t>(j), n};
            }
        } else if (c == '1') {
            advance();
            if (!at_end() && !is_sep(peek()))
                fail_at(start, "unknown token '" + token_from(start.pos) + "'");
            if (!w.empty())
                fail_at(start, "'1' must stand alone");
            unit_pos = pos_;
            return;
        } else {
            fail_at(start, "unknown token '" + token_from(start.pos) + "'");
        }
        if (!at_end() && !is_sep(peek()) && !at_prefix())
            fail_at(start, "unknown token '" + token_from(start.pos) + "'");
        if (unit_pos)
            fail_at(start, "'1' must stand alone");
        try {
            w.push_back(*sym);
        } catch (const algebra_mismatch& e) {
            fail_at(start, e.what());
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0, line_ = 1, col_ = 1;
    Mark letter_start_{1, 1, 0};
};

}  // namespace detail

inline ParsedWord parse_word(std::string_view text) { return detail::WordScanner(text).run(); }

/// Canonical printing: tokens separated by one space, letters by " . ".
inline std::string canonical(const Word& w)
{
    if (w.empty())
        return "1";
    std::string out;
    for (const auto& s : w.symbols()) {
        if (!out.empty())
            out += ' ';
        out += to_string(s);
    }
    return out;
}

inline std::string canonical(const ParsedWord& p)
{
    if (!p.free)
        return canonical(p.plain);
    std::string out;
    for (const auto& l : p.letters) {
        if (!out.empty())
            out += " . ";
        out += "F" + std::to_string(l.factor) + ":" + canonical(l.word);
    }
    return out;
}

}  // namespace awf
