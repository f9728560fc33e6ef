#ifndef TORIC_RATIONAL_HPP
#define TORIC_RATIONAL_HPP

#include <cctype>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace toric
{

using Integer = mpz_class;
using Rational = mpq_class;

// Canonical form: "p/q", with "/q" omitted when q == 1.
inline std::string to_string(const Rational &q)
{
    return q.get_str();
}

inline std::string to_string(const Integer &z)
{
    return z.get_str();
}

namespace detail
{

inline bool is_signed_digits(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

} // namespace detail

inline Integer parse_integer(std::string_view text)
{
    auto s = detail::trim(text);
    if (!detail::is_signed_digits(s)) {
        throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    }
    if (s.front() == '+') {
        s.remove_prefix(1);
    }
    return Integer(std::string(s), 10);
}

// Accepts "p" or "p/q" with an optional sign on p.
inline Rational parse_rational(std::string_view text)
{
    auto s = detail::trim(text);
    const auto slash = s.find('/');
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = 1;
    if (slash != std::string_view::npos) {
        auto d = s.substr(slash + 1);
        if (d.empty() || d.front() == '-' || d.front() == '+') {
            throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        }
        den = parse_integer(d);
        if (den == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
    }
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline long to_long(const Integer &z)
{
    if (!z.fits_slong_p()) {
        throw std::overflow_error("integer " + z.get_str() + " does not fit in a machine word");
    }
    return z.get_si();
}

// p/q in lowest terms; the two-argument mpq_class constructor does not reduce.
inline Rational ratio(long p, long q)
{
    if (q == 0) {
        throw std::domain_error("zero denominator");
    }
    Rational r(p, q);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational &q)
{
    return q.get_den() == 1;
}

inline Rational factorial(unsigned n)
{
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

inline Rational binomial(unsigned n, unsigned k)
{
    Integer b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

} // namespace toric

#endif
