#pragma once

#include "poisson/errors.hpp"
#include "poisson/laurent.hpp"
#include "poisson/ratfunc.hpp"

#include <cctype>
#include <map>
#include <string>
#include <string_view>

namespace poisson {

// Scalar expressions: integers, + - * / ^int, parentheses and named symbols.
// `t` is always the indeterminate; other names come from `symbols`.
template <class K>
class ScalarParser {
public:
    explicit ScalarParser(std::map<std::string, RatFunc<K>> symbols = {}) : sym_(std::move(symbols))
    {
        sym_.emplace("t", RatFunc<K>::t());
    }

    RatFunc<K> parse(std::string_view s) const
    {
        State st{s, 0};
        skip(st);
        if (st.pos == s.size())
            throw ParseError("empty scalar expression");
        RatFunc<K> v = expr(st);
        skip(st);
        if (st.pos != s.size())
            fail(st, "trailing input");
        return v;
    }

private:
    struct State {
        std::string_view s;
        size_t pos;
    };

    [[noreturn]] static void fail(const State& st, const std::string& what)
    {
        throw ParseError(what + " at offset " + std::to_string(st.pos) + " in '" + std::string(st.s) + "'");
    }
    static void skip(State& st)
    {
        while (st.pos < st.s.size() && std::isspace(static_cast<unsigned char>(st.s[st.pos])))
            ++st.pos;
    }
    static bool eat(State& st, char c)
    {
        skip(st);
        if (st.pos < st.s.size() && st.s[st.pos] == c) {
            ++st.pos;
            return true;
        }
        return false;
    }

    RatFunc<K> expr(State& st) const
    {
        RatFunc<K> v = term(st);
        for (;;) {
            if (eat(st, '+'))
                v = v + term(st);
            else if (eat(st, '-'))
                v = v - term(st);
            else
                return v;
        }
    }
    RatFunc<K> term(State& st) const
    {
        RatFunc<K> v = unary(st);
        for (;;) {
            if (eat(st, '*')) {
                v = v * unary(st);
            } else if (eat(st, '/')) {
                RatFunc<K> d = unary(st);
                if (d.is_zero())
                    fail(st, "division by zero");
                v = v / d;
            } else {
                return v;
            }
        }
    }
    RatFunc<K> unary(State& st) const
    {
        if (eat(st, '-'))
            return -unary(st);
        if (eat(st, '+'))
            return unary(st);
        return power(st);
    }
    RatFunc<K> power(State& st) const
    {
        RatFunc<K> base = atom(st);
        if (!eat(st, '^'))
            return base;
        skip(st);
        bool neg = false;
        if (st.pos < st.s.size() && (st.s[st.pos] == '-' || st.s[st.pos] == '+')) {
            neg = st.s[st.pos] == '-';
            ++st.pos;
        }
        size_t start = st.pos;
        while (st.pos < st.s.size() && std::isdigit(static_cast<unsigned char>(st.s[st.pos])))
            ++st.pos;
        if (start == st.pos || st.pos - start > 6)
            fail(st, "bad exponent");
        int e = std::stoi(std::string(st.s.substr(start, st.pos - start)));
        if (neg && base.is_zero())
            fail(st, "negative power of zero");
        return base.pow(neg ? -e : e);
    }
    RatFunc<K> atom(State& st) const
    {
        skip(st);
        if (st.pos >= st.s.size())
            fail(st, "unexpected end");
        char c = st.s[st.pos];
        if (c == '(') {
            ++st.pos;
            RatFunc<K> v = expr(st);
            if (!eat(st, ')'))
                fail(st, "expected ')'");
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = st.pos;
            while (st.pos < st.s.size() && std::isdigit(static_cast<unsigned char>(st.s[st.pos])))
                ++st.pos;
            return RatFunc<K>(K(Rational::parse(st.s.substr(start, st.pos - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = st.pos;
            while (st.pos < st.s.size() &&
                   (std::isalnum(static_cast<unsigned char>(st.s[st.pos])) || st.s[st.pos] == '_'))
                ++st.pos;
            std::string name(st.s.substr(start, st.pos - start));
            auto it = sym_.find(name);
            if (it == sym_.end())
                fail(st, "unknown symbol '" + name + "'");
            return it->second;
        }
        fail(st, std::string("unexpected character '") + c + "'");
    }

    std::map<std::string, RatFunc<K>> sym_;
};

template <class K>
LaurentPoly<K> to_laurent(const RatFunc<K>& f)
{
    if (!f.den().is_monomial())
        throw ParseError("not a Laurent polynomial: " + f.str());
    int k = f.den().degree();
    LaurentPoly<K> r;
    const auto& c = f.num().coeffs();
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero())
            r += LaurentPoly<K>::monomial(c[i], static_cast<int>(i) - k);
    return r;
}

template <class K>
LaurentPoly<K> parse_laurent(std::string_view s)
{
    return to_laurent(ScalarParser<K>().parse(s));
}

template <class K>
RatFunc<K> parse_ratfunc(std::string_view s)
{
    return ScalarParser<K>().parse(s);
}

}  // namespace poisson
