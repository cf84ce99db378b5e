#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "tmfalg/algebra/polynomial.hpp"

namespace tmfalg {

namespace detail {

// Recursive descent over: expr := term (('+'|'-') term)*,
// term := unary ('*' unary)*, unary := '-' unary | power,
// power := atom ('^' integer)?, atom := integer | name | '(' expr ')'.
class PolynomialParser {
public:
    PolynomialParser(RingPtr ring, std::string_view text) : ring_(std::move(ring)), text_(text) {}

    Polynomial parse()
    {
        auto p = expr();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw AlgebraError("cannot parse polynomial '" + std::string(text_) + "' at offset " +
                           std::to_string(pos_) + ": " + what);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Polynomial expr()
    {
        auto acc = term();
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Polynomial term()
    {
        auto acc = unary();
        while (accept('*'))
            acc = acc * unary();
        return acc;
    }

    Polynomial unary()
    {
        if (accept('-'))
            return -unary();
        return power();
    }

    Polynomial power()
    {
        auto base = atom();
        if (accept('^')) {
            skip_space();
            auto digits = integer_literal();
            if (digits.empty())
                fail("expected exponent");
            return base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
        return base;
    }

    std::string integer_literal()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Polynomial atom()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = expr();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial::constant(ring_, mpz_class(integer_literal()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            auto name = text_.substr(start, pos_ - start);
            auto idx = ring_->index_of(name);
            if (!idx)
                fail("unknown generator '" + std::string(name) + "'");
            return Polynomial::generator(ring_, *idx);
        }
        fail("unexpected character");
    }

    RingPtr ring_;
    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace detail

/// Parses the canonical text form (and ordinary arithmetic expressions built
/// from integers, generator names, `+ - * ^` and parentheses).
inline Polynomial parse_polynomial(const RingPtr& ring, std::string_view text)
{
    return detail::PolynomialParser(ring, text).parse();
}

} // namespace tmfalg
