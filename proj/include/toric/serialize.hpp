#ifndef TORIC_SERIALIZE_HPP
#define TORIC_SERIALIZE_HPP

#include <cctype>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include <toric/poly.hpp>
#include <toric/series.hpp>

namespace toric
{

namespace detail
{

inline std::string factor_string(const std::string &name, int e)
{
    return e == 1 ? name : name + "^" + std::to_string(e);
}

// Appends the product of generator and u factors for one term, or "" for 1.
inline std::string monomial_string(const Ring &ring, const Monomial &gen, const Monomial *u)
{
    std::string s;
    auto append = [&](const std::string &f) {
        if (!s.empty()) {
            s += '*';
        }
        s += f;
    };
    for (std::size_t i = 0; i < gen.size(); ++i) {
        if (gen[i] != 0) {
            append(factor_string(ring[i].name, gen[i]));
        }
    }
    if (u) {
        for (std::size_t i = 0; i < u->size(); ++i) {
            if ((*u)[i] != 0) {
                append(factor_string("u" + std::to_string(i + 1), (*u)[i]));
            }
        }
    }
    return s;
}

inline void append_term(std::string &out, const Rational &c, const std::string &mono)
{
    const bool negative = c < 0;
    const Rational a = negative ? Rational(-c) : c;
    if (out.empty()) {
        if (negative) {
            out += '-';
        }
    } else {
        out += negative ? " - " : " + ";
    }
    std::string coeff;
    if (is_integer(a)) {
        if (a != 1 || mono.empty()) {
            coeff = to_string(a);
        }
    } else {
        coeff = mono.empty() ? to_string(a) : "(" + to_string(a) + ")";
    }
    out += coeff;
    if (!coeff.empty() && !mono.empty()) {
        out += '*';
    }
    out += mono;
}

} // namespace detail

// Canonical text form, terms in increasing graded-lex order.
inline std::string to_string(const Poly &p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    for (const auto &[m, c] : p.terms()) {
        detail::append_term(out, c, detail::monomial_string(*p.ring(), m, nullptr));
    }
    return out;
}

// Terms ordered by u-monomial, then by generator monomial, both graded-lex.
inline std::string to_string(const MultiSeries &s)
{
    std::string out;
    for (const auto &layer : s.layers()) {
        for (const auto &[u, p] : layer) {
            for (const auto &[g, c] : p.terms()) {
                detail::append_term(out, c, detail::monomial_string(*s.ring(), g, &u));
            }
        }
    }
    return out.empty() ? "0" : out;
}

inline std::string to_string(const LinearForm &w)
{
    std::string s = "(";
    for (std::size_t i = 0; i < w.coefficients().size(); ++i) {
        if (i) {
            s += ',';
        }
        s += to_string(w[i]);
    }
    return s + ")";
}

namespace detail
{

// Recursive-descent parser for the canonical text form. Identifiers resolve
// to ring generators first, then to u1..uk.
class TermParser
{
public:
    TermParser(std::string_view text, const RingPtr &ring, int k) : m_text(text), m_ring(ring), m_k(k) {}

    // (u-monomial, generator monomial, coefficient) triples
    struct Term {
        Monomial u, gen;
        Rational c;
    };

    std::vector<Term> parse()
    {
        std::vector<Term> terms;
        skip();
        if (at_end()) {
            fail("empty expression");
        }
        bool first = true;
        while (!at_end()) {
            Rational sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = get() == '-' ? -1 : 1;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Term t = term();
            t.c *= sign;
            terms.push_back(std::move(t));
            first = false;
            skip();
        }
        return terms;
    }

private:
    Term term()
    {
        Term t{Monomial(static_cast<std::size_t>(m_k), 0), Monomial(m_ring->size(), 0), Rational(1)};
        factor(t);
        skip();
        while (!at_end() && peek() == '*') {
            get();
            skip();
            factor(t);
            skip();
        }
        return t;
    }

    void factor(Term &t)
    {
        if (at_end()) {
            fail("unexpected end of input");
        }
        const char c = peek();
        if (c == '(') {
            get();
            const std::size_t start = m_pos;
            while (!at_end() && peek() != ')') {
                get();
            }
            if (at_end()) {
                fail("unterminated '('");
            }
            t.c *= wrap([&] { return parse_rational(m_text.substr(start, m_pos - start)); });
            get();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            const std::size_t start = m_pos;
            while (!at_end() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/')) {
                get();
            }
            t.c *= wrap([&] { return parse_rational(m_text.substr(start, m_pos - start)); });
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = m_pos;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
                get();
            }
            const std::string name(m_text.substr(start, m_pos - start));
            int e = 1;
            skip();
            if (!at_end() && peek() == '^') {
                get();
                skip();
                const std::size_t es = m_pos;
                while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
                    get();
                }
                if (es == m_pos) {
                    fail("expected an exponent");
                }
                e = std::stoi(std::string(m_text.substr(es, m_pos - es)));
            }
            if (auto idx = m_ring->index_of(name)) {
                t.gen[*idx] += e;
            } else if (name.size() > 1 && name[0] == 'u'
                       && name.find_first_not_of("0123456789", 1) == std::string::npos) {
                const int i = std::stoi(name.substr(1));
                if (i < 1 || i > m_k) {
                    fail("variable '" + name + "' out of range");
                }
                t.u[static_cast<std::size_t>(i - 1)] += e;
            } else {
                fail("unknown identifier '" + name + "'");
            }
        } else {
            fail(std::string("unexpected character '") + c + "'");
        }
    }

    template <typename F>
    Rational wrap(F &&f)
    {
        try {
            return f();
        } catch (const std::invalid_argument &e) {
            fail(e.what());
        }
        return 0;
    }

    [[noreturn]] void fail(const std::string &msg) const
    {
        throw std::invalid_argument("parse error at offset " + std::to_string(m_pos) + ": " + msg);
    }
    bool at_end() const
    {
        return m_pos >= m_text.size();
    }
    char peek() const
    {
        return m_text[m_pos];
    }
    char get()
    {
        return m_text[m_pos++];
    }
    void skip()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++m_pos;
        }
    }

    std::string_view m_text;
    RingPtr m_ring;
    int m_k;
    std::size_t m_pos = 0;
};

} // namespace detail

inline Poly parse_poly(std::string_view text, const RingPtr &ring)
{
    Poly p(ring);
    for (const auto &t : detail::TermParser(text, ring, 0).parse()) {
        p.add_term(t.gen, t.c);
    }
    return p;
}

inline MultiSeries parse_series(std::string_view text, const RingPtr &ring, int k, int order)
{
    MultiSeries s(ring, k, order);
    for (const auto &t : detail::TermParser(text, ring, k).parse()) {
        s.add_term(t.u, Poly::monomial(ring, t.gen, t.c));
    }
    return s;
}

inline nlohmann::json to_json(const MultiSeries &s)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &layer : s.layers()) {
        for (const auto &[u, p] : layer) {
            nlohmann::json coeff = nlohmann::json::array();
            for (const auto &[g, c] : p.terms()) {
                coeff.push_back({{"gen", g}, {"val", to_string(c)}});
            }
            terms.push_back({{"u", u}, {"coeff", coeff}});
        }
    }
    return {{"terms", terms}};
}

inline MultiSeries series_from_json(const nlohmann::json &j, const RingPtr &ring, int k, int order)
{
    MultiSeries s(ring, k, order);
    try {
        for (const auto &t : j.at("terms")) {
            const auto u = t.at("u").get<Monomial>();
            if (static_cast<int>(u.size()) != k) {
                throw std::invalid_argument("exponent vector length does not match the variable count");
            }
            Poly p(ring);
            for (const auto &c : t.at("coeff")) {
                const auto g = c.at("gen").get<Monomial>();
                if (g.size() != ring->size()) {
                    throw std::invalid_argument("generator exponent length does not match the ring");
                }
                p.add_term(g, parse_rational(c.at("val").get<std::string>()));
            }
            s.add_term(u, p);
        }
    } catch (const nlohmann::json::exception &e) {
        throw std::invalid_argument(std::string("malformed series JSON: ") + e.what());
    }
    return s;
}

} // namespace toric

#endif
