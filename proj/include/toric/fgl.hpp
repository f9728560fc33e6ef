#ifndef TORIC_FGL_HPP
#define TORIC_FGL_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <toric/matrix.hpp>
#include <toric/poly.hpp>
#include <toric/rational.hpp>
#include <toric/series.hpp>

namespace toric
{

// Univariate x^e -> u_{i+1}^e in k variables.
inline MultiSeries embed(const MultiSeries &f, int k, int i)
{
    MultiSeries r(f.ring(), k, f.order());
    for (int d = 0; d <= f.order(); ++d) {
        for (const auto &[m, p] : f.layer(d)) {
            Monomial n(static_cast<std::size_t>(k), 0);
            n[static_cast<std::size_t>(i)] = m[0];
            r.add_term(n, p);
        }
    }
    return r;
}

// f(x)/x for a univariate f with zero constant term.
inline MultiSeries shift_down(const MultiSeries &f)
{
    if (!f.constant_term().is_zero()) {
        throw std::domain_error("series is not divisible by x");
    }
    MultiSeries r(f.ring(), 1, std::max(f.order() - 1, 0));
    for (int d = 1; d <= f.order(); ++d) {
        for (const auto &[m, p] : f.layer(d)) {
            r.add_term(Monomial{m[0] - 1}, p);
        }
    }
    return r;
}

// Terms of a 2-variable series with u2-exponent e, as a series in u1.
inline MultiSeries coefficient_of_u2(const MultiSeries &f, int e)
{
    MultiSeries r(f.ring(), 1, std::max(f.order() - e, 0));
    for (int d = e; d <= f.order(); ++d) {
        for (const auto &[m, p] : f.layer(d)) {
            if (m[1] == e) {
                r.add_term(Monomial{m[0]}, p);
            }
        }
    }
    return r;
}

class GenusSpec
{
public:
    // Rebuilds the same genus (same coefficient ring) at a given order.
    using Builder = std::function<GenusSpec(int)>;

    GenusSpec(std::string name, MultiSeries exponential, Builder builder = {})
        : m_name(std::move(name)), m_exp(std::move(exponential)), m_builder(std::move(builder))
    {
        if (m_exp.k() != 1) {
            throw std::invalid_argument("genus exponential must be univariate");
        }
        if (!m_exp.constant_term().is_zero()) {
            throw std::invalid_argument("genus exponential must have zero constant term");
        }
        if (m_exp.order() < 1 || m_exp.coefficient(1) != Poly(m_exp.ring(), 1)) {
            throw std::invalid_argument("genus exponential must have leading coefficient 1");
        }
        m_log = revert(m_exp);
    }

    const std::string &name() const
    {
        return m_name;
    }
    const RingPtr &ring() const
    {
        return m_exp.ring();
    }
    int order() const
    {
        return m_exp.order();
    }
    const MultiSeries &exponential() const
    {
        return m_exp;
    }
    const MultiSeries &logarithm() const
    {
        return m_log;
    }
    // b_j, the coefficient of x^{j+1} in the exponential.
    Poly b(int j) const
    {
        if (j + 1 > order()) {
            throw std::out_of_range("exponential coefficient beyond the working order");
        }
        return m_exp.coefficient(j + 1);
    }
    bool can_extend() const
    {
        return static_cast<bool>(m_builder);
    }

    GenusSpec at_order(int order) const
    {
        if (order <= this->order()) {
            GenusSpec g(*this);
            g.m_exp = m_exp.truncated(order);
            g.m_log = m_log.truncated(order);
            return g;
        }
        if (!m_builder) {
            throw std::invalid_argument("genus '" + m_name + "' is only known to order "
                                        + std::to_string(this->order()));
        }
        return m_builder(order);
    }

private:
    std::string m_name;
    MultiSeries m_exp;
    MultiSeries m_log;
    Builder m_builder;
};

struct FGL {
    GenusSpec spec;
    MultiSeries F;
};

// F(u1, u2) = b(m(u1) + m(u2))
inline FGL fgl_from_exponential(const GenusSpec &spec)
{
    const MultiSeries sum = embed(spec.logarithm(), 2, 0) + embed(spec.logarithm(), 2, 1);
    return {spec, substitute(spec.exponential(), {sum})};
}

// m with m'(u) = 1 / (dF/du2)(u, 0) and m(0) = 0.
inline MultiSeries logarithm_from_fgl(const MultiSeries &F)
{
    if (F.k() != 2) {
        throw std::invalid_argument("a formal group law has two variables");
    }
    const MultiSeries x = MultiSeries::variable(F.ring(), 1, F.order(), 0);
    if (!equal_to_order(coefficient_of_u2(F, 0), x, F.order())) {
        throw std::domain_error("formal group law is not unital: F(u, 0) != u");
    }
    const MultiSeries d = coefficient_of_u2(F, 1);
    return integrate(invert_unit(d.truncated(F.order() - 1)), 0);
}

// [m](u) = b(m * log(u))
inline MultiSeries m_series(const GenusSpec &spec, long m)
{
    return substitute(spec.exponential(), {spec.logarithm() * Rational(m)});
}

// [w](u) = b(sum_i w_i log(u_i))
inline MultiSeries weight_series(const GenusSpec &spec, const LinearForm &w)
{
    const int k = w.k();
    MultiSeries arg(spec.ring(), k, spec.order());
    for (int i = 0; i < k; ++i) {
        const auto &c = w[static_cast<std::size_t>(i)];
        if (c != 0) {
            arg += embed(spec.logarithm(), k, i) * Rational(c);
        }
    }
    return substitute(spec.exponential(), {arg});
}

// a(x) = x^2 / b(x); a_j is the coefficient of x^{j+1}.
inline MultiSeries conjugate_orientation(const GenusSpec &spec)
{
    const MultiSeries inv = invert_unit(shift_down(spec.exponential()));
    const MultiSeries x = MultiSeries::variable(spec.ring(), 1, inv.order() + 1, 0);
    return mul(x, inv.with_order(inv.order() + 1), inv.order() + 1).truncated(inv.order() + 1);
}

namespace detail
{

inline RingPtr ring_yz()
{
    return make_ring({{"y", 2}, {"z", 2}});
}

inline GenusSpec build_augmentation(int N)
{
    auto ring = make_ring();
    return GenusSpec("augmentation", MultiSeries::variable(ring, 1, N, 0), build_augmentation);
}

inline GenusSpec build_hurewicz(int N, int gens)
{
    std::vector<Generator> g;
    for (int j = 1; j <= gens; ++j) {
        g.push_back({"b" + std::to_string(j), 2 * j});
    }
    auto ring = make_ring(std::move(g));
    MultiSeries b = MultiSeries::variable(ring, 1, N, 0);
    for (int j = 1; j <= gens && j + 1 <= N; ++j) {
        b.add_term(Monomial{j + 1}, Poly::generator(ring, "b" + std::to_string(j)));
    }
    return GenusSpec("hurewicz", b, [gens](int M) { return build_hurewicz(M, gens); });
}

inline GenusSpec build_todd(int N)
{
    auto ring = make_ring({{"z", 2}});
    std::vector<Poly> c(static_cast<std::size_t>(N) + 1, Poly(ring));
    for (int n = 1; n <= N; ++n) {
        // (e^{zx} - 1)/z: z^{n-1} x^n / n!
        c[static_cast<std::size_t>(n)] = Poly::generator(ring, "z", n - 1) * (Rational(1) / factorial(n));
    }
    return GenusSpec("todd", MultiSeries::univariate(ring, N, c), build_todd);
}

inline GenusSpec build_signature(int N)
{
    auto ring = make_ring({{"z", 2}});
    std::vector<Poly> s(static_cast<std::size_t>(N) + 1, Poly(ring)), ch(s);
    for (int n = 0; n <= N; ++n) {
        const Poly zn = Poly::generator(ring, "z", n) * (Rational(1) / factorial(static_cast<unsigned>(n)));
        if (n % 2 == 0) {
            ch[static_cast<std::size_t>(n)] = zn;
        } else {
            // sinh(zx)/z
            s[static_cast<std::size_t>(n)] = Poly::generator(ring, "z", n - 1) * (Rational(1) / factorial(n));
        }
    }
    const MultiSeries b = mul(MultiSeries::univariate(ring, N, s), invert_unit(MultiSeries::univariate(ring, N, ch)));
    return GenusSpec("signature", b, build_signature);
}

inline GenusSpec build_cn(int N)
{
    auto ring = make_ring({{"v", 2}});
    std::vector<Poly> c(static_cast<std::size_t>(N) + 1, Poly(ring));
    for (int j = 0; j + 1 <= N; ++j) {
        c[static_cast<std::size_t>(j + 1)] = Poly::generator(ring, "v", j) * Rational(j % 2 ? -1 : 1);
    }
    return GenusSpec("cn", MultiSeries::univariate(ring, N, c), build_cn);
}

// (y^n - z^n) / (y - z) as an exact quotient.
inline Poly abel_numerator(const RingPtr &ring, int n)
{
    const Poly y = Poly::generator(ring, "y"), z = Poly::generator(ring, "z");
    return (y.pow(static_cast<unsigned>(n)) - z.pow(static_cast<unsigned>(n))).divide_exact(y - z);
}

inline GenusSpec build_abel(int N)
{
    auto ring = ring_yz();
    std::vector<Poly> c(static_cast<std::size_t>(N) + 1, Poly(ring));
    for (int n = 1; n <= N; ++n) {
        c[static_cast<std::size_t>(n)] = abel_numerator(ring, n) * (Rational(1) / factorial(n));
    }
    return GenusSpec("abel", MultiSeries::univariate(ring, N, c), build_abel);
}

inline GenusSpec build_t2(int N)
{
    auto ring = ring_yz();
    const Poly y = Poly::generator(ring, "y"), z = Poly::generator(ring, "z");
    // numerator (e^{yx} - e^{zx})/(y - z), denominator (y e^{zx} - z e^{yx})/(y - z)
    std::vector<Poly> num(static_cast<std::size_t>(N) + 1, Poly(ring)), den(num);
    for (int n = 0; n <= N; ++n) {
        const Rational f = Rational(1) / factorial(static_cast<unsigned>(n));
        if (n > 0) {
            num[static_cast<std::size_t>(n)] = abel_numerator(ring, n) * f;
        }
        const Poly top = y * z.pow(static_cast<unsigned>(n)) - z * y.pow(static_cast<unsigned>(n));
        den[static_cast<std::size_t>(n)] = top.divide_exact(y - z) * f;
    }
    const MultiSeries b
        = mul(MultiSeries::univariate(ring, N, num), invert_unit(MultiSeries::univariate(ring, N, den)));
    return GenusSpec("t2", b, build_t2);
}

inline GenusSpec build_elliptic(int N)
{
    auto ring = make_ring({{"delta", 4}, {"epsilon", 8}});
    // w = 2 delta t^2 - epsilon t^4; (1 - w)^{-1/2} = sum binom(2k, k) w^k / 4^k
    MultiSeries w(ring, 1, N - 1);
    w.add_term(Monomial{2}, Poly::generator(ring, "delta") * Rational(2));
    w.add_term(Monomial{4}, -Poly::generator(ring, "epsilon"));
    MultiSeries dm = MultiSeries::constant(ring, 1, N - 1, Rational(1));
    MultiSeries wk = dm;
    for (int k = 1; 2 * k <= N - 1; ++k) {
        wk = mul(wk, w);
        Integer four_k = 1;
        mpz_mul_2exp(four_k.get_mpz_t(), four_k.get_mpz_t(), static_cast<mp_bitcnt_t>(2 * k));
        dm += wk * (binomial(static_cast<unsigned>(2 * k), static_cast<unsigned>(k)) / Rational(four_k));
    }
    const MultiSeries m = integrate(dm, 0);
    return GenusSpec("elliptic", revert(m), build_elliptic);
}

} // namespace detail

inline RingPtr krichever_ring()
{
    return make_ring({{"a", 2}, {"p2", 4}, {"p3", 6}, {"g2", 8}});
}

// Formal derivative d/dz on Q[p2, p3, g2] with p2' = p3, p3' = 6 p2^2 - g2/2.
inline Poly weierstrass_derivative(const Poly &p)
{
    const auto &ring = krichever_ring();
    const Poly p2 = Poly::generator(ring, "p2"), p3 = Poly::generator(ring, "p3"), g2 = Poly::generator(ring, "g2");
    const Poly q = p.change_ring(ring);
    return q.derivative(*ring->index_of("p2")) * p3
           + q.derivative(*ring->index_of("p3")) * (Rational(6) * p2 * p2 - g2 * ratio(1, 2));
}

// f(x) = x exp(a x) exp(int_0^x (zeta(z - s) - zeta(z)) ds) sigma(x)/x
inline GenusSpec krichever_exponential(int order)
{
    if (order < 1) {
        throw std::invalid_argument("krichever exponential needs order >= 1");
    }
    const int N = order;
    auto ring = krichever_ring();
    const Poly a = Poly::generator(ring, "a"), p2 = Poly::generator(ring, "p2"), p3 = Poly::generator(ring, "p3"),
               g2 = Poly::generator(ring, "g2");
    const Poly g3 = Rational(4) * p2.pow(3) - g2 * p2 - p3 * p3;

    std::vector<Poly> L(static_cast<std::size_t>(N), Poly(ring));
    if (N >= 2) {
        L[1] = a;
    }
    // wp(z - s) integrated twice: sum_j (-1)^j wp^{(j)}(z) x^{j+2}/(j+2)!
    Poly wp = p2;
    for (int j = 0; j + 2 <= N - 1; ++j) {
        const Rational s = Rational(j % 2 ? -1 : 1) / factorial(static_cast<unsigned>(j + 2));
        L[static_cast<std::size_t>(j + 2)] += wp * s;
        wp = weierstrass_derivative(wp);
    }
    // Laurent coefficients of wp(x) = 1/x^2 + sum_{j>=2} c_j x^{2j-2}
    std::vector<Poly> c(static_cast<std::size_t>(N / 2) + 2, Poly(ring));
    for (int j = 2; 2 * j <= N - 1; ++j) {
        Poly cj(ring);
        if (j == 2) {
            cj = g2 * ratio(1, 20);
        } else if (j == 3) {
            cj = g3 * ratio(1, 28);
        } else {
            for (int i = 2; i <= j - 2; ++i) {
                cj.add_product(c[static_cast<std::size_t>(i)], c[static_cast<std::size_t>(j - i)]);
            }
            cj *= ratio(3, (2 * j + 1) * (j - 3));
        }
        c[static_cast<std::size_t>(j)] = cj;
        // log(sigma(x)/x) = -sum_j c_j x^{2j} / ((2j - 1) 2j)
        L[static_cast<std::size_t>(2 * j)] -= cj * ratio(1, (2 * j - 1) * (2 * j));
    }
    const MultiSeries e = series_exp(MultiSeries::univariate(ring, N - 1, L));
    const MultiSeries x = MultiSeries::variable(ring, 1, N, 0);
    const MultiSeries f = mul(x, e.with_order(N), N);
    return GenusSpec("krichever", f, krichever_exponential);
}

inline const std::vector<std::string> &catalog_names()
{
    static const std::vector<std::string> names{"augmentation", "hurewicz", "todd",     "cn",       "abel",
                                                "t2",           "signature", "elliptic", "krichever"};
    return names;
}

// `hurewicz_gens` < 0 means one generator per degree up to `order`.
inline GenusSpec catalog(const std::string &name, int order, int hurewicz_gens = -1)
{
    if (order < 1) {
        throw std::invalid_argument("genus order must be >= 1");
    }
    const int N = order + 2;
    auto build = [&]() -> GenusSpec {
        if (name == "augmentation") {
            return detail::build_augmentation(N);
        }
        if (name == "hurewicz") {
            return detail::build_hurewicz(N, hurewicz_gens < 0 ? order : hurewicz_gens);
        }
        if (name == "todd") {
            return detail::build_todd(N);
        }
        if (name == "signature") {
            return detail::build_signature(N);
        }
        if (name == "cn") {
            return detail::build_cn(N);
        }
        if (name == "abel") {
            return detail::build_abel(N);
        }
        if (name == "t2") {
            return detail::build_t2(N);
        }
        if (name == "elliptic") {
            return detail::build_elliptic(N);
        }
        if (name == "krichever") {
            return krichever_exponential(N);
        }
        throw std::invalid_argument("unknown genus '" + name + "'");
    };
    return build().at_order(order);
}

struct BsfglShape {
    bool ok = false;
    Poly a;
    MultiSeries c, d;
    std::optional<int> failure_degree;
};

// Recovers a, c(u), d(u) from F and checks
// F = u1 c(u2) + u2 c(u1) - a u1 u2 - u1^2 u2^2 (d(u1) - d(u2)) / (u1 c(u2) - u2 c(u1)).
inline BsfglShape verify_bsfgl_shape(const GenusSpec &spec, int order)
{
    if (order < 4) {
        throw std::invalid_argument("shape check needs order >= 4");
    }
    const int N = order + 2;
    const MultiSeries F = fgl_from_exponential(spec.at_order(N)).F;
    const auto &ring = spec.ring();
    BsfglShape out;
    out.a = -F.coefficient(Monomial{1, 1});
    const MultiSeries u = MultiSeries::variable(ring, 1, N - 1, 0);
    out.c = coefficient_of_u2(F, 1).truncated(N - 1) + u * out.a;
    const Poly c2 = out.c.coefficient(2);
    // [u2^2] F = u (c2 - d(u))
    const MultiSeries f2 = shift_down(coefficient_of_u2(F, 2));
    out.d = MultiSeries::constant(ring, 1, f2.order(), c2) - f2;

    const MultiSeries u1 = MultiSeries::variable(ring, 2, N, 0), u2 = MultiSeries::variable(ring, 2, N, 1);
    const MultiSeries c1 = embed(out.c, 2, 0), c2s = embed(out.c, 2, 1);
    const MultiSeries d1 = embed(out.d, 2, 0), d2s = embed(out.d, 2, 1);
    const LinearForm diff{1, -1};
    const MultiSeries num = divide_by_linear_form(d1 - d2s, diff);
    const MultiSeries den = divide_by_linear_form(mul(u1, c2s.with_order(N)) - mul(u2, c1.with_order(N)), diff);
    const MultiSeries q = mul(num, invert_unit(den));
    MultiSeries rhs = mul(u1, c2s.with_order(N)) + mul(u2, c1.with_order(N)) - mul(u1, u2) * out.a;
    Monomial sq{2, 2};
    MultiSeries q22(ring, 2, q.order() + 4);
    for (int deg = 0; deg <= q.order(); ++deg) {
        for (const auto &[m, p] : q.layer(deg)) {
            q22.add_term(m + sq, p);
        }
    }
    rhs -= q22;
    out.failure_degree = first_difference(F, rhs, order);
    out.ok = !out.failure_degree;
    return out;
}

// Compares the elliptic law with (u1 c(u2) + u2 c(u1)) / (1 - epsilon u1^2 u2^2),
// c = sqrt(1 - 2 delta u^2 + epsilon u^4).
inline bool elliptic_fgl_check(int order)
{
    const GenusSpec spec = catalog("elliptic", order);
    const MultiSeries F = fgl_from_exponential(spec).F;
    const auto &ring = spec.ring();
    const Poly delta = Poly::generator(ring, "delta"), eps = Poly::generator(ring, "epsilon");
    MultiSeries R = MultiSeries::constant(ring, 1, order, Rational(1));
    R.add_term(Monomial{2}, delta * Rational(-2));
    R.add_term(Monomial{4}, eps);
    const MultiSeries c = series_sqrt(R);
    const MultiSeries u1 = MultiSeries::variable(ring, 2, order, 0), u2 = MultiSeries::variable(ring, 2, order, 1);
    const MultiSeries top = mul(u1, embed(c, 2, 1)) + mul(u2, embed(c, 2, 0));
    MultiSeries bottom = MultiSeries::constant(ring, 2, order, Rational(1));
    bottom.add_term(Monomial{2, 2}, -eps);
    return equal_to_order(F, mul(top, invert_unit(bottom)), order);
}

// Partitions of n as nonincreasing part lists, in reverse lexicographic order.
inline std::vector<std::vector<int>> partitions(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int maxpart) {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

using ChernNumbers = std::map<std::vector<int>, Integer>;

// sum over partitions w of n of b_{w1} ... b_{wr} <c_w(nu), [M]>, with c_w
// in the monomial symmetric basis.
inline Poly genus_from_chern_numbers(const GenusSpec &spec, int n, const ChernNumbers &chern)
{
    if (n < 0) {
        throw std::invalid_argument("dimension must be nonnegative");
    }
    Poly total(spec.ring());
    for (const auto &w : partitions(n)) {
        auto it = chern.find(w);
        if (it == chern.end()) {
            std::string s;
            for (int p : w) {
                s += (s.empty() ? "" : ",") + std::to_string(p);
            }
            throw std::invalid_argument("missing Chern number for partition (" + s + ")");
        }
        Poly bw(spec.ring(), 1);
        for (int p : w) {
            bw *= spec.b(p);
        }
        total.add_scaled(bw, Rational(it->second));
    }
    return total;
}

// Converts Chern numbers <c_{l1} ... c_{lr}, [M]> (elementary basis) into the
// monomial symmetric basis used by genus_from_chern_numbers.
inline ChernNumbers elementary_to_monomial(int n, const ChernNumbers &elementary)
{
    if (n < 0 || n > 4) {
        throw std::invalid_argument("basis conversion is provided for n <= 4");
    }
    const auto parts = partitions(n);
    const std::size_t P = parts.size();
    std::vector<Generator> gens;
    for (int i = 1; i <= n; ++i) {
        gens.push_back({"x" + std::to_string(i), 2});
    }
    auto ring = make_ring(gens);
    std::vector<Poly> e(static_cast<std::size_t>(n) + 1, Poly(ring));
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Monomial m(static_cast<std::size_t>(n), 0);
        int deg = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) {
                m[static_cast<std::size_t>(i)] = 1;
                ++deg;
            }
        }
        e[static_cast<std::size_t>(deg)].add_term(m, 1);
    }
    // e_lambda = sum_w A(lambda, w) m_w
    Matrix<Rational> A(P, P);
    for (std::size_t i = 0; i < P; ++i) {
        Poly el(ring, 1);
        for (int p : parts[i]) {
            el *= e[static_cast<std::size_t>(p)];
        }
        for (std::size_t j = 0; j < P; ++j) {
            Monomial m(static_cast<std::size_t>(n), 0);
            for (std::size_t t = 0; t < parts[j].size(); ++t) {
                m[t] = parts[j][t];
            }
            A(i, j) = el.coefficient(m);
        }
    }
    const Matrix<Rational> Ainv = inverse(A);
    ChernNumbers out;
    for (std::size_t j = 0; j < P; ++j) {
        Rational v = 0;
        for (std::size_t i = 0; i < P; ++i) {
            auto it = elementary.find(parts[i]);
            if (it == elementary.end()) {
                throw std::invalid_argument("missing elementary Chern number");
            }
            v += Ainv(j, i) * Rational(it->second);
        }
        if (!is_integer(v)) {
            throw std::domain_error("Chern numbers are not integral in the monomial basis");
        }
        out[parts[j]] = v.get_num();
    }
    return out;
}

} // namespace toric

#endif
