#pragma once

// Recursive-descent parser for the shared polynomial expression grammar:
// integers, variable names, +, -, *, ^ with non-negative integer exponents,
// parentheses; whitespace insignificant. Integer/integer fractions are also
// accepted so that printed rational coefficients round-trip.

#include <cctype>
#include <string>

#include "rescal/exceptions.hpp"
#include "rescal/poly.hpp"

namespace rescal {

template <class F>
class ExprParser {
  public:
    ExprParser(TowerPtr<F> tower, std::string text)
        : tower_(std::move(tower)), text_(std::move(text)) {}

    Poly<F> parse() {
        Poly<F> p = expr();
        skip_ws();
        if (pos_ != text_.size())
            fail("trailing input at position " + std::to_string(pos_));
        return p;
    }

  private:
    Poly<F> expr() {
        skip_ws();
        bool neg = false;
        if (peek() == '+' || peek() == '-') neg = get() == '-';
        Poly<F> p = term();
        if (neg) p = -p;
        while (true) {
            skip_ws();
            char c = peek();
            if (c == '+' || c == '-') {
                get();
                Poly<F> q = term();
                p = (c == '+') ? p + q : p - q;
            } else {
                return p;
            }
        }
    }

    Poly<F> term() {
        Poly<F> p = factor();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                get();
                p = p * factor();
            } else {
                return p;
            }
        }
    }

    Poly<F> factor() {
        Poly<F> p = base();
        skip_ws();
        if (peek() == '^') {
            get();
            long e = integer();
            if (e < 0) fail("negative exponent");
            p = p.pow(static_cast<unsigned>(e));
        }
        return p;
    }

    Poly<F> base() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            get();
            Poly<F> p = expr();
            skip_ws();
            if (get() != ')') fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = integer();
            skip_ws();
            if (peek() == '/') {
                get();
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    fail("expected integer denominator");
                long den = integer();
                if (den == 0) fail("zero denominator");
                return Poly<F>::constant(
                    tower_, tower_->field().from_fraction(num, den));
            }
            return Poly<F>::from_int(tower_, num);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name = identifier();
            if (!tower_->has_var(name))
                fail("unknown variable '" + name + "'");
            return Poly<F>::variable(tower_, name);
        }
        fail(std::string("unexpected character '") + c + "'");
        return Poly<F>::zero(tower_);  // unreachable
    }

    long integer() {
        skip_ws();
        std::string digits;
        while (std::isdigit(static_cast<unsigned char>(peek())))
            digits += get();
        if (digits.empty()) fail("expected integer");
        return std::stol(digits);
    }

    std::string identifier() {
        std::string name;
        while (std::isalnum(static_cast<unsigned char>(peek())) ||
               peek() == '_')
            name += get();
        return name;
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return pos_ < text_.size() ? text_[pos_++] : '\0'; }
    [[noreturn]] void fail(const std::string& why) {
        throw ParseError("expression parse error: " + why + " in \"" + text_ +
                         "\"");
    }

    TowerPtr<F> tower_;
    std::string text_;
    std::size_t pos_ = 0;
};

template <class F>
Poly<F> parse_poly(const TowerPtr<F>& tower, const std::string& text) {
    return ExprParser<F>(tower, text).parse();
}

}  // namespace rescal
