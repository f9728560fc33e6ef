#ifndef TORIC_SERIES_HPP
#define TORIC_SERIES_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <toric/poly.hpp>
#include <toric/rational.hpp>

namespace toric
{

// Raised when an exact division by a linear form (or by a product of them)
// leaves a remainder. `degree()` is the homogeneous u-degree at which the
// obstruction was found, in the grading of the quotient being computed.
class not_divisible : public std::domain_error
{
public:
    not_divisible(const std::string &what, int degree) : std::domain_error(what), m_degree(degree) {}
    int degree() const noexcept
    {
        return m_degree;
    }

private:
    int m_degree;
};

// One homogeneous component of a series: u-monomial -> coefficient.
using Layer = std::map<Monomial, Poly, GradedLexLess>;

inline void layer_add(Layer &acc, const Monomial &m, const Poly &p)
{
    if (p.is_zero()) {
        return;
    }
    auto [it, inserted] = acc.try_emplace(m, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero()) {
            acc.erase(it);
        }
    }
}

inline void layer_add(Layer &acc, const Layer &b, const Rational &scale = 1)
{
    for (const auto &[m, p] : b) {
        layer_add(acc, m, scale == 1 ? p : p * scale);
    }
}

// acc += a * b
inline void layer_add_product(Layer &acc, const Layer &a, const Layer &b)
{
    for (const auto &[ma, pa] : a) {
        for (const auto &[mb, pb] : b) {
            auto [it, inserted] = acc.try_emplace(ma + mb);
            it->second.add_product(pa, pb);
        }
    }
    std::erase_if(acc, [](const auto &t) { return t.second.is_zero(); });
}

// Integer vector w defining the linear form w . u = w_1 u_1 + ... + w_k u_k.
class LinearForm
{
public:
    LinearForm() = default;
    explicit LinearForm(std::vector<Integer> w) : m_w(std::move(w))
    {
        if (std::all_of(m_w.begin(), m_w.end(), [](const Integer &x) { return x == 0; })) {
            throw std::invalid_argument("a linear form must be nonzero");
        }
    }
    LinearForm(std::initializer_list<long> w) : LinearForm(std::vector<Integer>(w.begin(), w.end())) {}

    int k() const
    {
        return static_cast<int>(m_w.size());
    }
    const std::vector<Integer> &coefficients() const
    {
        return m_w;
    }
    const Integer &operator[](std::size_t i) const
    {
        return m_w[i];
    }

    template <typename T>
    Rational evaluate(std::span<const T> point) const
    {
        Rational r = 0;
        for (std::size_t i = 0; i < m_w.size(); ++i) {
            r += Rational(m_w[i]) * point[i];
        }
        return r;
    }

    // w = scale * p with p primitive and its first nonzero entry positive.
    std::pair<Integer, LinearForm> primitive() const
    {
        Integer g = 0;
        for (const auto &x : m_w) {
            g = gcd(g, x);
        }
        auto first = std::find_if(m_w.begin(), m_w.end(), [](const Integer &x) { return x != 0; });
        if (*first < 0) {
            g = -g;
        }
        std::vector<Integer> p(m_w.size());
        for (std::size_t i = 0; i < m_w.size(); ++i) {
            p[i] = m_w[i] / g;
        }
        return {g, LinearForm(std::move(p))};
    }

    auto operator<=>(const LinearForm &o) const
    {
        if (m_w.size() != o.m_w.size()) {
            return m_w.size() <=> o.m_w.size();
        }
        for (std::size_t i = 0; i < m_w.size(); ++i) {
            const int c = cmp(m_w[i], o.m_w[i]);
            if (c != 0) {
                return c <=> 0;
            }
        }
        return std::strong_ordering::equal;
    }
    bool operator==(const LinearForm &o) const
    {
        return m_w == o.m_w;
    }

private:
    std::vector<Integer> m_w;
};

// Power series in u_1..u_k over a coefficient ring, known up to total degree
// `order` inclusive.
class MultiSeries
{
public:
    MultiSeries() : MultiSeries(make_ring(), 0, 0) {}
    MultiSeries(RingPtr ring, int k, int order) : m_ring(std::move(ring)), m_k(k), m_order(order)
    {
        if (!m_ring) {
            throw std::invalid_argument("series requires a coefficient ring");
        }
        if (k < 0) {
            throw std::invalid_argument("variable count must be nonnegative");
        }
        if (order < 0) {
            throw std::invalid_argument("truncation order must be nonnegative");
        }
        m_layers.resize(static_cast<std::size_t>(order) + 1);
    }

    static MultiSeries constant(RingPtr ring, int k, int order, const Poly &c)
    {
        MultiSeries s(std::move(ring), k, order);
        s.add_term(Monomial(static_cast<std::size_t>(k), 0), c);
        return s;
    }
    static MultiSeries constant(RingPtr ring, int k, int order, const Rational &c)
    {
        Poly p(ring, c);
        return constant(std::move(ring), k, order, p);
    }
    // The variable u_{i+1} (0-based index i).
    static MultiSeries variable(RingPtr ring, int k, int order, int i)
    {
        if (i < 0 || i >= k) {
            throw std::out_of_range("variable index out of range");
        }
        MultiSeries s(ring, k, order);
        Monomial m(static_cast<std::size_t>(k), 0);
        m[static_cast<std::size_t>(i)] = 1;
        s.add_term(m, Poly(ring, 1));
        return s;
    }
    static MultiSeries linear(RingPtr ring, int order, const LinearForm &w)
    {
        MultiSeries s(ring, w.k(), order);
        for (int i = 0; i < w.k(); ++i) {
            Monomial m(static_cast<std::size_t>(w.k()), 0);
            m[static_cast<std::size_t>(i)] = 1;
            s.add_term(m, Poly(ring, Rational(w[static_cast<std::size_t>(i)])));
        }
        return s;
    }
    // c_0 + c_1 x + c_2 x^2 + ... in one variable.
    static MultiSeries univariate(RingPtr ring, int order, const std::vector<Poly> &coeffs)
    {
        MultiSeries s(std::move(ring), 1, order);
        for (std::size_t e = 0; e < coeffs.size() && static_cast<int>(e) <= order; ++e) {
            s.add_term(Monomial{static_cast<int>(e)}, coeffs[e]);
        }
        return s;
    }

    const RingPtr &ring() const
    {
        return m_ring;
    }
    int k() const
    {
        return m_k;
    }
    int order() const
    {
        return m_order;
    }
    const Layer &layer(int d) const
    {
        return m_layers.at(static_cast<std::size_t>(d));
    }
    Layer &layer(int d)
    {
        return m_layers.at(static_cast<std::size_t>(d));
    }
    const std::vector<Layer> &layers() const
    {
        return m_layers;
    }

    Poly coefficient(const Monomial &m) const
    {
        const int d = total_degree(m);
        if (d > m_order) {
            throw std::out_of_range("coefficient beyond the truncation order");
        }
        const auto &l = m_layers[static_cast<std::size_t>(d)];
        auto it = l.find(m);
        return it == l.end() ? Poly(m_ring) : it->second;
    }
    // Univariate convenience: coefficient of x^e.
    Poly coefficient(int e) const
    {
        if (m_k != 1) {
            throw std::logic_error("coefficient(int) requires a univariate series");
        }
        return coefficient(Monomial{e});
    }

    void add_term(const Monomial &m, const Poly &p)
    {
        if (static_cast<int>(m.size()) != m_k) {
            throw std::invalid_argument("exponent vector length does not match the variable count");
        }
        const int d = total_degree(m);
        if (d > m_order || p.is_zero()) {
            return;
        }
        if (p.ring() && !same_ring(p.ring(), m_ring)) {
            throw std::invalid_argument("coefficient ring mismatch");
        }
        layer_add(m_layers[static_cast<std::size_t>(d)], m, p);
    }

    bool is_zero() const
    {
        return std::all_of(m_layers.begin(), m_layers.end(), [](const Layer &l) { return l.empty(); });
    }
    // Lowest degree carrying a nonzero term; order + 1 for the zero series.
    int valuation() const
    {
        for (int d = 0; d <= m_order; ++d) {
            if (!m_layers[static_cast<std::size_t>(d)].empty()) {
                return d;
            }
        }
        return m_order + 1;
    }
    std::size_t term_count() const
    {
        std::size_t n = 0;
        for (const auto &l : m_layers) {
            n += l.size();
        }
        return n;
    }
    Poly constant_term() const
    {
        return coefficient(Monomial(static_cast<std::size_t>(m_k), 0));
    }

    MultiSeries truncated(int order) const
    {
        if (order > m_order) {
            throw std::invalid_argument("cannot raise the truncation order of a series");
        }
        MultiSeries r(m_ring, m_k, order);
        for (int d = 0; d <= order; ++d) {
            r.m_layers[static_cast<std::size_t>(d)] = m_layers[static_cast<std::size_t>(d)];
        }
        return r;
    }
    MultiSeries homogeneous_part(int d) const
    {
        MultiSeries r(m_ring, m_k, m_order);
        if (d >= 0 && d <= m_order) {
            r.m_layers[static_cast<std::size_t>(d)] = m_layers[static_cast<std::size_t>(d)];
        }
        return r;
    }
    // Same terms, higher nominal order: only valid when the caller knows the
    // series is exact (e.g. a polynomial).
    MultiSeries with_order(int order) const
    {
        MultiSeries r(m_ring, m_k, order);
        for (int d = 0; d <= std::min(order, m_order); ++d) {
            r.m_layers[static_cast<std::size_t>(d)] = m_layers[static_cast<std::size_t>(d)];
        }
        return r;
    }

    template <typename F>
    MultiSeries map_coefficients(const RingPtr &target, F &&f) const
    {
        MultiSeries r(target, m_k, m_order);
        for (const auto &l : m_layers) {
            for (const auto &[m, p] : l) {
                r.add_term(m, f(p));
            }
        }
        return r;
    }

    MultiSeries &operator+=(const MultiSeries &o)
    {
        check_compatible(o);
        if (o.m_order < m_order) {
            *this = truncated(o.m_order);
        }
        for (int d = 0; d <= m_order; ++d) {
            layer_add(m_layers[static_cast<std::size_t>(d)], o.m_layers[static_cast<std::size_t>(d)]);
        }
        return *this;
    }
    MultiSeries &operator-=(const MultiSeries &o)
    {
        check_compatible(o);
        if (o.m_order < m_order) {
            *this = truncated(o.m_order);
        }
        for (int d = 0; d <= m_order; ++d) {
            layer_add(m_layers[static_cast<std::size_t>(d)], o.m_layers[static_cast<std::size_t>(d)], -1);
        }
        return *this;
    }
    MultiSeries &operator*=(const Rational &q)
    {
        for (auto &l : m_layers) {
            if (q == 0) {
                l.clear();
            }
            for (auto &t : l) {
                t.second *= q;
            }
        }
        return *this;
    }
    MultiSeries &operator*=(const Poly &p)
    {
        for (auto &l : m_layers) {
            Layer nl;
            for (const auto &[m, c] : l) {
                layer_add(nl, m, c * p);
            }
            l = std::move(nl);
        }
        return *this;
    }

    friend MultiSeries operator+(MultiSeries a, const MultiSeries &b)
    {
        a += b;
        return a;
    }
    friend MultiSeries operator-(MultiSeries a, const MultiSeries &b)
    {
        a -= b;
        return a;
    }
    friend MultiSeries operator-(MultiSeries a)
    {
        a *= Rational(-1);
        return a;
    }
    friend MultiSeries operator*(MultiSeries a, const Rational &q)
    {
        a *= q;
        return a;
    }
    friend MultiSeries operator*(const Rational &q, MultiSeries a)
    {
        a *= q;
        return a;
    }
    friend MultiSeries operator*(MultiSeries a, const Poly &p)
    {
        a *= p;
        return a;
    }
    friend MultiSeries operator*(const MultiSeries &a, const MultiSeries &b);

    friend bool operator==(const MultiSeries &a, const MultiSeries &b)
    {
        return a.m_k == b.m_k && a.m_order == b.m_order && same_ring(a.m_ring, b.m_ring)
               && a.m_layers == b.m_layers;
    }

    void check_compatible(const MultiSeries &o) const
    {
        if (!same_ring(m_ring, o.m_ring)) {
            throw std::invalid_argument("series have different coefficient rings");
        }
        if (m_k != o.m_k) {
            throw std::invalid_argument("series have different variable counts ("
                                        + std::to_string(m_k) + " vs " + std::to_string(o.m_k) + ")");
        }
    }

private:
    RingPtr m_ring;
    int m_k;
    int m_order;
    std::vector<Layer> m_layers;
};

// Equality of the terms of degree <= order.
inline bool equal_to_order(const MultiSeries &a, const MultiSeries &b, int order)
{
    if (a.k() != b.k() || !same_ring(a.ring(), b.ring())) {
        return false;
    }
    if (order > a.order() || order > b.order()) {
        throw std::invalid_argument("comparison order exceeds a truncation order");
    }
    for (int d = 0; d <= order; ++d) {
        if (a.layer(d) != b.layer(d)) {
            return false;
        }
    }
    return true;
}

// Lowest degree at which a and b differ, or nullopt if they agree to `order`.
inline std::optional<int> first_difference(const MultiSeries &a, const MultiSeries &b, int order)
{
    for (int d = 0; d <= order; ++d) {
        if (a.layer(d) != b.layer(d)) {
            return d;
        }
    }
    return std::nullopt;
}

inline MultiSeries add(const MultiSeries &a, const MultiSeries &b)
{
    return a + b;
}

// Cauchy product truncated at `order`.
inline MultiSeries mul(const MultiSeries &a, const MultiSeries &b, int order)
{
    a.check_compatible(b);
    if (order > a.order() || order > b.order()) {
        // Allowed only when the missing terms cannot contribute.
        if (order > a.order() + b.valuation() || order > b.order() + a.valuation()) {
            throw std::invalid_argument("requested product order exceeds what the factors determine");
        }
    }
    MultiSeries r(a.ring(), a.k(), order);
    for (int i = 0; i <= std::min(order, a.order()); ++i) {
        const auto &la = a.layer(i);
        if (la.empty()) {
            continue;
        }
        for (int j = 0; i + j <= order && j <= b.order(); ++j) {
            const auto &lb = b.layer(j);
            if (!lb.empty()) {
                layer_add_product(r.layer(i + j), la, lb);
            }
        }
    }
    return r;
}

inline MultiSeries mul(const MultiSeries &a, const MultiSeries &b)
{
    return mul(a, b, std::min(a.order(), b.order()));
}

inline MultiSeries operator*(const MultiSeries &a, const MultiSeries &b)
{
    return mul(a, b);
}

// Multiplication by the homogeneous linear form w . u; the product is known
// one degree further than the factor.
inline MultiSeries mul_linear(const MultiSeries &s, const LinearForm &w)
{
    if (w.k() != s.k()) {
        throw std::invalid_argument("linear form length does not match the variable count");
    }
    MultiSeries r(s.ring(), s.k(), s.order() + 1);
    for (int d = 0; d <= s.order(); ++d) {
        auto &out = r.layer(d + 1);
        for (const auto &[m, p] : s.layer(d)) {
            for (int i = 0; i < s.k(); ++i) {
                const auto &c = w[static_cast<std::size_t>(i)];
                if (c == 0) {
                    continue;
                }
                Monomial n(m);
                ++n[static_cast<std::size_t>(i)];
                layer_add(out, n, p * Rational(c));
            }
        }
    }
    return r;
}

// Exact quotient of a homogeneous layer by w . u, or nullopt on a remainder.
// Division runs in a pivot variable u_i with w_i != 0, eliminating terms from
// the highest u_i-exponent downwards.
inline std::optional<Layer> divide_layer(const Layer &p, const LinearForm &w)
{
    const auto k = static_cast<std::size_t>(w.k());
    std::size_t pivot = 0;
    while (w[pivot] == 0) {
        ++pivot;
    }
    const Rational inv_lead = Rational(1) / Rational(w[pivot]);
    Layer r = p, q;
    int top = 0;
    for (const auto &t : r) {
        top = std::max(top, t.first[pivot]);
    }
    for (int e = top; e >= 1; --e) {
        std::vector<Monomial> level;
        for (const auto &t : r) {
            if (t.first[pivot] == e) {
                level.push_back(t.first);
            }
        }
        for (const auto &m : level) {
            auto it = r.find(m);
            if (it == r.end()) {
                continue;
            }
            Poly t = it->second * inv_lead;
            Monomial base(m);
            --base[pivot];
            for (std::size_t j = 0; j < k; ++j) {
                if (w[j] == 0) {
                    continue;
                }
                Monomial n(base);
                ++n[j];
                layer_add(r, n, t * Rational(-w[j]));
            }
            layer_add(q, base, t);
        }
    }
    if (!r.empty()) {
        return std::nullopt;
    }
    return q;
}

// Exact division by w . u. The quotient is known to order(p) - 1.
inline MultiSeries divide_by_linear_form(const MultiSeries &p, const LinearForm &w)
{
    if (w.k() != p.k()) {
        throw std::invalid_argument("linear form length does not match the variable count");
    }
    if (p.order() < 1) {
        throw std::invalid_argument("division by a linear form needs truncation order >= 1");
    }
    MultiSeries q(p.ring(), p.k(), p.order() - 1);
    if (!p.layer(0).empty()) {
        throw not_divisible("series is not divisible by the linear form (nonzero constant term)", 0);
    }
    for (int d = 1; d <= p.order(); ++d) {
        auto ql = divide_layer(p.layer(d), w);
        if (!ql) {
            throw not_divisible("series is not divisible by the linear form in degree " + std::to_string(d), d);
        }
        q.layer(d - 1) = std::move(*ql);
    }
    return q;
}

// Multiplicative inverse of a series whose constant term is a nonzero rational.
inline MultiSeries invert_unit(const MultiSeries &s)
{
    const Poly c = s.constant_term();
    if (c.is_zero() || !c.is_constant()) {
        throw std::domain_error("series is not a unit: constant term must be a nonzero rational");
    }
    const Rational inv = Rational(1) / c.constant_value();
    MultiSeries t(s.ring(), s.k(), s.order());
    t.add_term(Monomial(static_cast<std::size_t>(s.k()), 0), Poly(s.ring(), inv));
    for (int e = 1; e <= s.order(); ++e) {
        Layer acc;
        for (int i = 1; i <= e; ++i) {
            if (!s.layer(i).empty() && !t.layer(e - i).empty()) {
                layer_add_product(acc, s.layer(i), t.layer(e - i));
            }
        }
        Layer &out = t.layer(e);
        layer_add(out, acc, -inv);
    }
    return t;
}

// s(images[0], ..., images[k-1]); every image must have zero constant term.
inline MultiSeries substitute(const MultiSeries &s, const std::vector<MultiSeries> &images)
{
    if (static_cast<int>(images.size()) != s.k()) {
        throw std::invalid_argument("substitute needs one image per variable");
    }
    if (images.empty()) {
        return s;
    }
    const int kk = images.front().k();
    int order = s.order();
    for (const auto &img : images) {
        if (img.k() != kk || !same_ring(img.ring(), s.ring())) {
            throw std::invalid_argument("substitution images must share ring and variable count");
        }
        if (!img.layer(0).empty()) {
            throw std::domain_error("substitution image has a nonzero constant term");
        }
        order = std::min(order, img.order());
    }
    // powers[i][e] = images[i]^e, truncated at `order`
    std::vector<std::vector<MultiSeries>> powers(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        powers[i].push_back(MultiSeries::constant(s.ring(), kk, order, Rational(1)));
    }
    auto power = [&](std::size_t i, int e) -> const MultiSeries & {
        auto &pw = powers[i];
        while (static_cast<int>(pw.size()) <= e) {
            pw.push_back(mul(pw.back(), images[i].truncated(order), order));
        }
        return pw[static_cast<std::size_t>(e)];
    };
    MultiSeries r(s.ring(), kk, order);
    for (int d = 0; d <= std::min(order, s.order()); ++d) {
        for (const auto &[m, c] : s.layer(d)) {
            // u^m has valuation >= d after substitution
            MultiSeries term = MultiSeries::constant(s.ring(), kk, order, c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] > 0) {
                    term = mul(term, power(i, m[i]), order);
                }
            }
            r += term;
        }
    }
    return r;
}

// Composition of univariate series f(g(x)).
inline MultiSeries compose(const MultiSeries &f, const MultiSeries &g)
{
    return substitute(f, {g});
}

// Compositional inverse of f = x + O(x^2).
inline MultiSeries revert(const MultiSeries &f)
{
    if (f.k() != 1) {
        throw std::invalid_argument("revert needs a univariate series");
    }
    if (!f.constant_term().is_zero()) {
        throw std::domain_error("revert needs a series with zero constant term");
    }
    if (f.order() < 1 || f.coefficient(1) != Poly(f.ring(), 1)) {
        throw std::domain_error("revert needs leading coefficient 1");
    }
    const int n = f.order();
    const MultiSeries x = MultiSeries::variable(f.ring(), 1, n, 0);
    const MultiSeries h = f - x;
    // g <- x - h(g); each pass fixes one more degree.
    MultiSeries g = x;
    for (int pass = 1; pass < n; ++pass) {
        g = x - compose(h, g);
    }
    return g;
}

// Partial derivative in variable i.
inline MultiSeries derivative(const MultiSeries &s, int i)
{
    const int order = std::max(s.order() - 1, 0);
    MultiSeries r(s.ring(), s.k(), order);
    for (int d = 1; d <= s.order(); ++d) {
        for (const auto &[m, p] : s.layer(d)) {
            const int e = m[static_cast<std::size_t>(i)];
            if (e > 0) {
                Monomial n(m);
                --n[static_cast<std::size_t>(i)];
                r.add_term(n, p * Rational(e));
            }
        }
    }
    return r;
}

// Antiderivative in variable i with zero constant of integration.
inline MultiSeries integrate(const MultiSeries &s, int i)
{
    MultiSeries r(s.ring(), s.k(), s.order() + 1);
    for (int d = 0; d <= s.order(); ++d) {
        for (const auto &[m, p] : s.layer(d)) {
            Monomial n(m);
            const int e = ++n[static_cast<std::size_t>(i)];
            r.add_term(n, p * ratio(1, e));
        }
    }
    return r;
}

// exp(s) for a univariate series with zero constant term, via E' = s' E.
inline MultiSeries series_exp(const MultiSeries &s)
{
    if (s.k() != 1) {
        throw std::invalid_argument("series_exp needs a univariate series");
    }
    if (!s.constant_term().is_zero()) {
        throw std::domain_error("series_exp needs zero constant term");
    }
    const int n = s.order();
    std::vector<Poly> e(static_cast<std::size_t>(n) + 1, Poly(s.ring()));
    e[0] = Poly(s.ring(), 1);
    for (int j = 1; j <= n; ++j) {
        Poly acc(s.ring());
        for (int i = 1; i <= j; ++i) {
            acc.add_product(s.coefficient(i) * Rational(i), e[static_cast<std::size_t>(j - i)]);
        }
        e[static_cast<std::size_t>(j)] = acc * ratio(1, j);
    }
    return MultiSeries::univariate(s.ring(), n, e);
}

// Square root of a series with constant term 1, by Newton iteration
// y <- (y + s / y) / 2.
inline MultiSeries series_sqrt(const MultiSeries &s)
{
    if (s.constant_term() != Poly(s.ring(), 1)) {
        throw std::domain_error("series_sqrt needs constant term 1");
    }
    MultiSeries y = MultiSeries::constant(s.ring(), s.k(), s.order(), Rational(1));
    for (int prec = 1; prec <= s.order(); prec *= 2) {
        y = (y + mul(s, invert_unit(y))) * ratio(1, 2);
    }
    // One last pass guards the top degree when order is not a power of two.
    y = (y + mul(s, invert_unit(y))) * ratio(1, 2);
    return y;
}

inline MultiSeries power(const MultiSeries &s, unsigned e)
{
    MultiSeries r = MultiSeries::constant(s.ring(), s.k(), s.order(), Rational(1));
    for (unsigned i = 0; i < e; ++i) {
        r = mul(r, s);
    }
    return r;
}

} // namespace toric

#endif
