// Recursive-descent parser and canonical printer for polynomial text.
//
//   expr    := term (('+' | '-') term)*
//   term    := factor (('*' | '/') factor)*      '/' only by a nonzero constant
//   factor  := ('+' | '-') factor | primary ('^' integer)?
//   primary := integer | 'i' | 'z' integer | '(' expr ')'
//
// This accepts the canonical grammar (coefficients as integers, p/q, or
// "(a+b*i)") and, more generally, products and powers of parenthesized
// polynomials, which are expanded.

#include <cctype>
#include <limits>

#include "fgbar/error.hpp"
#include "fgbar/polynomial.hpp"

namespace fgbar {
namespace {

class Parser {
public:
    Parser(std::string_view text, int n) : text_(text), n_(n) {}

    Polynomial parse() {
        skip_ws();
        if (at_end()) throw ParseError("empty polynomial expression", pos_);
        Polynomial p = expr();
        skip_ws();
        if (!at_end()) throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
        return p;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_])) != 0) ++pos_;
    }
    bool accept(char c) {
        skip_ws();
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr() {
        Polynomial acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            if (accept('*')) {
                acc = acc * factor();
            } else if (accept('/')) {
                const std::size_t at = pos_;
                Polynomial d = factor();
                if (!d.is_constant() || d.is_zero())
                    throw ParseError("division is only allowed by a nonzero constant", at);
                acc = acc.scaled(GaussRational(1) / d.terms().begin()->second);
            } else {
                return acc;
            }
        }
    }

    Polynomial factor() {
        skip_ws();
        if (accept('-')) return -factor();
        if (accept('+')) return factor();
        Polynomial base = primary();
        if (accept('^')) {
            skip_ws();
            const std::size_t at = pos_;
            const long e = integer();
            if (e < 1) throw ParseError("exponent must be an integer >= 1", at);
            if (e > 10000) throw ParseError("exponent too large", at);
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Polynomial primary() {
        skip_ws();
        const std::size_t at = pos_;
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
            Integer v(digits());
            return Polynomial::constant(n_, GaussRational(Rational(v)));
        }
        if (c == 'i') {
            ++pos_;
            return Polynomial::constant(n_, GaussRational(Rational(0), Rational(1)));
        }
        if (c == 'z') {
            ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek())) == 0)
                throw ParseError("expected variable index after 'z'", pos_);
            const std::string idx = digits();
            if (idx.size() > 6 || std::stol(idx) < 1 || std::stol(idx) > n_)
                throw ParseError("variable index out of range: z" + idx + " (dimension " +
                                     std::to_string(n_) + ")",
                                 at);
            Exponent e(static_cast<std::size_t>(n_), 0);
            e[static_cast<std::size_t>(std::stol(idx) - 1)] = 1;
            return Polynomial::monomial(n_, std::move(e));
        }
        if (c == '(') {
            ++pos_;
            Polynomial inner = expr();
            if (!accept(')')) throw ParseError("expected ')'", pos_);
            return inner;
        }
        if (at_end()) throw ParseError("unexpected end of expression", pos_);
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek())) != 0) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    long integer() {
        if (std::isdigit(static_cast<unsigned char>(peek())) == 0)
            throw ParseError("expected integer exponent", pos_);
        const std::string d = digits();
        if (d.size() > 9) return std::numeric_limits<long>::max();
        return std::stol(d);
    }

    std::string_view text_;
    int n_;
    std::size_t pos_ = 0;
};

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])) != 0) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])) != 0) --e;
    return std::string(s.substr(b, e - b));
}

std::string monomial_text(const Exponent& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!s.empty()) s += "*";
        s += "z" + std::to_string(i + 1);
        if (e[i] != 1) s += "^" + std::to_string(e[i]);
    }
    return s;
}

}  // namespace

Polynomial parse_poly(std::string_view text, int n) {
    if (n < 1 || n > IndexSet::kMaxDimension) throw std::invalid_argument("dimension out of range");
    Polynomial p = Parser(text, n).parse();
    if (p.is_zero() && trim(text) != "0")
        throw ParseError("expression reduces to the zero polynomial (write \"0\" explicitly)", 0);
    return p;
}

std::string to_string(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const auto& [e, c] : p.terms()) {
        const std::string mono = monomial_text(e);
        std::string t;
        if (mono.empty()) {
            t = to_string(c);
        } else if (c == GaussRational(1)) {
            t = mono;
        } else if (c == GaussRational(-1)) {
            t = "-" + mono;
        } else {
            t = to_string(c) + "*" + mono;
        }
        if (!out.empty() && t.front() != '-') out += "+";
        out += t;
    }
    return out;
}

}  // namespace fgbar
