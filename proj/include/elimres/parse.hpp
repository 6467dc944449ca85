#pragma once

// Polynomial text syntax:
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER ('/' NUMBER)? | IDENT | '(' expr ')'

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "elimres/poly.hpp"

namespace elimres {

namespace detail {

template <Field F>
F parse_scalar(std::string_view text, std::uint32_t modulus) {
    if constexpr (std::is_same_v<F, ModInt>) {
        if (modulus == 0) throw UsageError("prime field literal without a modulus");
        return ModInt::parse(text, modulus);
    } else {
        return F::parse(text);
    }
}

template <Field F>
class PolyParser {
public:
    PolyParser(std::string_view text, SpacePtr space, std::uint32_t modulus)
        : s_(text), space_(std::move(space)), modulus_(modulus) {}

    MultiPoly<F> parse() {
        skip();
        if (pos_ == s_.size()) throw ParseError(pos_, "empty expression");
        MultiPoly<F> p = expr();
        skip();
        if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
        return p;
    }

private:
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    MultiPoly<F> expr() {
        MultiPoly<F> acc = term();
        while (true) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    MultiPoly<F> term() {
        MultiPoly<F> acc = unary();
        while (accept('*')) acc *= unary();
        return acc;
    }

    MultiPoly<F> unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    MultiPoly<F> power() {
        MultiPoly<F> base = primary();
        if (accept('^')) {
            skip();
            std::size_t start = pos_;
            std::string digits = read_digits();
            if (digits.empty()) throw ParseError(start, "expected a non-negative integer exponent");
            if (digits.size() > 4) throw ParseError(start, "exponent too large");
            unsigned e = static_cast<unsigned>(std::stoul(digits));
            return e ? base.pow(e) : MultiPoly<F>(space_, unit());
        }
        return base;
    }

    MultiPoly<F> primary() {
        skip();
        if (pos_ == s_.size()) throw ParseError(pos_, "unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly<F> inner = expr();
            if (!accept(')')) throw ParseError(pos_, "expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string lit = read_digits();
            std::size_t save = pos_;
            skip();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                skip();
                std::size_t start = pos_;
                std::string den = read_digits();
                if (den.empty()) throw ParseError(start, "expected a denominator");
                if (den.find_first_not_of('0') == std::string::npos) throw ParseError(start, "zero denominator");
                lit += "/" + den;
            } else {
                pos_ = save;
            }
            return MultiPoly<F>(space_, parse_scalar<F>(lit, modulus_));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            auto idx = space_->index_of(name);
            if (!idx) throw ParseError(start, "unknown identifier '" + name + "'");
            Monomial m;
            m.set(*idx, 1);
            return MultiPoly<F>(space_, m, unit());
        }
        throw ParseError(pos_, std::string("unexpected '") + c + "'");
    }

    // Prime field units must carry the modulus so that every parsed
    // coefficient lives in F_p rather than being a modulus-free literal.
    F unit() const { return parse_scalar<F>("1", modulus_); }

    std::string read_digits() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::string_view s_;
    SpacePtr space_;
    std::uint32_t modulus_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a polynomial over `space`. `modulus` is required for prime fields.
template <Field F>
MultiPoly<F> parse_poly(std::string_view text, const SpacePtr& space, std::uint32_t modulus = 0) {
    return detail::PolyParser<F>(text, space, modulus).parse();
}

}  // namespace elimres
