#ifndef TORIC_TESTS_SUPPORT_HPP
#define TORIC_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <toric/toric.hpp>

namespace support
{

using namespace toric;

inline constexpr int property_cases = 200;

inline MultiSeries S(const std::string &text, const RingPtr &ring, int k, int order)
{
    return parse_series(text, ring, k, order);
}

inline Poly P(const std::string &text, const RingPtr &ring)
{
    return parse_poly(text, ring);
}

// Deterministic per-suite generator; every draw goes through here.
class Gen
{
public:
    explicit Gen(std::uint64_t seed) : m_eng(seed) {}

    long integer(long lo, long hi)
    {
        return std::uniform_int_distribution<long>(lo, hi)(m_eng);
    }

    bool coin()
    {
        return integer(0, 1) == 1;
    }

    Rational rational(long num = 5, long den = 4)
    {
        return ratio(integer(-num, num), integer(1, den));
    }

    Rational nonzero_rational(long num = 5, long den = 4)
    {
        Rational q;
        do {
            q = rational(num, den);
        } while (q == 0);
        return q;
    }

    // Small polynomial in the ring's generators, total degree <= 2.
    Poly poly(const RingPtr &ring, int terms = 2)
    {
        Poly p(ring);
        for (int t = 0; t < terms; ++t) {
            Monomial m(ring->size(), 0);
            for (int d = static_cast<int>(integer(0, 2)); d > 0 && !m.empty(); --d) {
                ++m[static_cast<std::size_t>(integer(0, static_cast<long>(m.size()) - 1))];
            }
            p.add_term(m, rational());
        }
        return p;
    }

    Monomial exponent(int k, int degree)
    {
        Monomial m(static_cast<std::size_t>(k), 0);
        for (int d = 0; d < degree; ++d) {
            ++m[static_cast<std::size_t>(integer(0, k - 1))];
        }
        return m;
    }

    // Sparse series with `density` random terms per degree in [lo, order].
    MultiSeries series(const RingPtr &ring, int k, int order, int lo = 0, int density = 2)
    {
        MultiSeries s(ring, k, order);
        for (int d = lo; d <= order; ++d) {
            for (int t = 0; t < density; ++t) {
                s.add_term(exponent(k, d), poly(ring));
            }
        }
        return s;
    }

    MultiSeries unit(const RingPtr &ring, int k, int order)
    {
        MultiSeries s = series(ring, k, order, 1);
        s.add_term(Monomial(static_cast<std::size_t>(k), 0), Poly(ring, nonzero_rational()));
        return s;
    }

    LinearForm form(int k, long bound = 3)
    {
        std::vector<Integer> w(static_cast<std::size_t>(k));
        bool nonzero = false;
        while (!nonzero) {
            for (auto &x : w) {
                x = integer(-bound, bound);
                nonzero = nonzero || x != 0;
            }
        }
        return LinearForm(std::move(w));
    }

    std::vector<int> signs(int n)
    {
        std::vector<int> e;
        for (int i = 0; i < n; ++i) {
            e.push_back(coin() ? 1 : -1);
        }
        return e;
    }

    template <typename T>
    const T &pick(const std::vector<T> &v)
    {
        return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))];
    }

private:
    std::mt19937_64 m_eng;
};

// Exact value of a series at u = r (all terms of degree <= order), per degree.
inline std::vector<Poly> degree_values(const MultiSeries &s, const std::vector<Rational> &r)
{
    std::vector<Poly> out;
    for (int d = 0; d <= s.order(); ++d) {
        Poly v(s.ring());
        for (const auto &[m, p] : s.layer(d)) {
            Rational x = 1;
            for (std::size_t i = 0; i < m.size(); ++i) {
                for (int e = 0; e < m[i]; ++e) {
                    x *= r[i];
                }
            }
            v.add_scaled(p, x);
        }
        out.push_back(std::move(v));
    }
    return out;
}

// Laurent coefficients in t of sum_i N_i(r t) / prod_j (w_ij . r t), from t^{-dmax}
// up to t^{order}; entry [e + offset] holds the t^e coefficient.
struct Laurent {
    int offset = 0;
    std::vector<Poly> coeffs;
};

inline Laurent rational_point_sum(const LocalizedSum &ls, const std::vector<Rational> &r)
{
    int dmax = 0;
    for (const auto &t : ls.terms()) {
        dmax = std::max(dmax, static_cast<int>(t.denominators.size()));
    }
    Laurent out{dmax, std::vector<Poly>(static_cast<std::size_t>(dmax + ls.order() + 1), Poly(ls.ring()))};
    for (const auto &t : ls.terms()) {
        Rational den = 1;
        for (const auto &w : t.denominators) {
            den *= w.evaluate(std::span<const Rational>(r));
        }
        const int d = static_cast<int>(t.denominators.size());
        const auto vals = degree_values(t.numerator, r);
        for (int e = 0; e < static_cast<int>(vals.size()); ++e) {
            const int power = e - d;
            if (power <= ls.order()) {
                out.coeffs[static_cast<std::size_t>(power + dmax)].add_scaled(vals[static_cast<std::size_t>(e)],
                                                                              Rational(1) / den);
            }
        }
    }
    return out;
}

// Random point avoiding the zero sets of the sum's denominators.
inline std::vector<Rational> generic_point(Gen &g, const LocalizedSum &ls)
{
    for (;;) {
        std::vector<Rational> r;
        for (int i = 0; i < ls.k(); ++i) {
            r.push_back(g.nonzero_rational(7, 5));
        }
        bool ok = true;
        for (const auto &t : ls.terms()) {
            for (const auto &w : t.denominators) {
                ok = ok && w.evaluate(std::span<const Rational>(r)) != 0;
            }
        }
        if (ok) {
            return r;
        }
    }
}

// A sum whose principal parts cancel: the localization sum of a random simplex
// pair, or q/(AB) - q/(A(A+B)) - q/(B(A+B)) plus a polynomial term.
inline LocalizedSum random_cancelling_sum(Gen &g, const std::vector<GenusSpec> &genera)
{
    const int N = static_cast<int>(g.integer(1, 4));
    if (g.coin()) {
        const int n = static_cast<int>(g.integer(1, 3));
        const auto f = signs_and_weights(simplex_pair(n, g.signs(n)));
        return localized_sum(f, g.pick(genera), Mode::linear, N);
    }
    auto R = genera.front().ring();
    const int k = static_cast<int>(g.integer(2, 3));
    LinearForm A = g.form(k), B = g.form(k);
    std::vector<Integer> s(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = A[i] + B[i];
    }
    while (std::all_of(s.begin(), s.end(), [](const Integer &x) { return x == 0; })) {
        B = g.form(k);
        for (std::size_t i = 0; i < s.size(); ++i) {
            s[i] = A[i] + B[i];
        }
    }
    const LinearForm C{std::vector<Integer>(s)};
    LocalizedSum ls(R, k, N);
    const MultiSeries q = g.series(R, k, N + 2);
    ls.add(q, {A, B});
    ls.add(-q, {A, C});
    ls.add(-q, {B, C});
    ls.add(g.series(R, k, N), {});
    return ls;
}

inline FixedPointData cpn(int n, int eps = -1)
{
    return signs_and_weights(simplex_pair(n, std::vector<int>(static_cast<std::size_t>(n), eps)));
}

} // namespace support

#endif
