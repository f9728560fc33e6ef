#ifndef TORIC_POLY_HPP
#define TORIC_POLY_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <toric/rational.hpp>

namespace toric
{

// A named polynomial generator of the coefficient ring. The degree is the
// topological grading; it is carried along but never used for ordering.
struct Generator {
    std::string name;
    int degree = 0;

    bool operator==(const Generator &) const = default;
};

class Ring
{
public:
    Ring() = default;
    explicit Ring(std::vector<Generator> gens) : m_gens(std::move(gens))
    {
        for (std::size_t i = 0; i < m_gens.size(); ++i) {
            if (m_gens[i].name.empty()) {
                throw std::invalid_argument("generator names must be nonempty");
            }
            if (m_gens[i].degree < 0 || m_gens[i].degree % 2 != 0) {
                throw std::invalid_argument("generator '" + m_gens[i].name
                                            + "' must have an even nonnegative degree");
            }
            for (std::size_t j = 0; j < i; ++j) {
                if (m_gens[j].name == m_gens[i].name) {
                    throw std::invalid_argument("duplicate generator '" + m_gens[i].name + "'");
                }
            }
        }
    }

    std::size_t size() const
    {
        return m_gens.size();
    }
    const Generator &operator[](std::size_t i) const
    {
        return m_gens[i];
    }
    const std::vector<Generator> &generators() const
    {
        return m_gens;
    }
    std::optional<std::size_t> index_of(std::string_view name) const
    {
        for (std::size_t i = 0; i < m_gens.size(); ++i) {
            if (m_gens[i].name == name) {
                return i;
            }
        }
        return std::nullopt;
    }

    bool operator==(const Ring &) const = default;

private:
    std::vector<Generator> m_gens;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<Generator> gens = {})
{
    return std::make_shared<const Ring>(std::move(gens));
}

inline bool same_ring(const RingPtr &a, const RingPtr &b)
{
    return a == b || (a && b && *a == *b);
}

using Monomial = std::vector<int>;

inline int total_degree(const Monomial &m)
{
    return std::accumulate(m.begin(), m.end(), 0);
}

// Graded lexicographic order: total degree first, then the exponent of the
// last variable is the most significant (so x1 < x2 < ... < xk).
struct GradedLexLess {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) {
            return da < db;
        }
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i]) {
                return a[i] < b[i];
            }
        }
        return false;
    }
};

inline Monomial operator+(const Monomial &a, const Monomial &b)
{
    Monomial r(a);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] += b[i];
    }
    return r;
}

// Sparse polynomial over Q in the generators of a Ring. A default-constructed
// Poly is zero over an unspecified ring and adopts the ring of whatever it is
// combined with.
class Poly
{
public:
    using term_map = std::map<Monomial, Rational, GradedLexLess>;

    Poly() = default;
    explicit Poly(RingPtr ring) : m_ring(std::move(ring)) {}
    Poly(RingPtr ring, const Rational &c) : m_ring(std::move(ring))
    {
        add_term(Monomial(m_ring ? m_ring->size() : 0, 0), c);
    }

    static Poly generator(RingPtr ring, std::string_view name, int power = 1)
    {
        const auto idx = ring->index_of(name);
        if (!idx) {
            throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
        }
        Monomial m(ring->size(), 0);
        m[*idx] = power;
        return monomial(std::move(ring), std::move(m), 1);
    }

    static Poly monomial(RingPtr ring, Monomial m, const Rational &c)
    {
        if (m.size() != ring->size()) {
            throw std::invalid_argument("monomial length does not match the ring");
        }
        Poly p(std::move(ring));
        p.add_term(m, c);
        return p;
    }

    const RingPtr &ring() const
    {
        return m_ring;
    }
    const term_map &terms() const
    {
        return m_terms;
    }
    std::size_t size() const
    {
        return m_terms.size();
    }
    bool is_zero() const
    {
        return m_terms.empty();
    }
    bool is_constant() const
    {
        return m_terms.empty() || (m_terms.size() == 1 && total_degree(m_terms.begin()->first) == 0);
    }
    // Coefficient of the monomial 1.
    Rational constant_value() const
    {
        if (m_terms.empty() || total_degree(m_terms.begin()->first) != 0) {
            return 0;
        }
        return m_terms.begin()->second;
    }
    Rational coefficient(const Monomial &m) const
    {
        auto it = m_terms.find(m);
        return it == m_terms.end() ? Rational(0) : it->second;
    }

    void add_term(const Monomial &m, const Rational &c)
    {
        if (c == 0) {
            return;
        }
        auto [it, inserted] = m_terms.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) {
                m_terms.erase(it);
            }
        }
    }

    Poly &operator+=(const Poly &o)
    {
        adopt(o);
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, c);
        }
        return *this;
    }
    Poly &operator-=(const Poly &o)
    {
        adopt(o);
        for (const auto &[m, c] : o.m_terms) {
            add_term(m, -c);
        }
        return *this;
    }
    Poly &operator*=(const Rational &q)
    {
        if (q == 0) {
            m_terms.clear();
        } else {
            for (auto &t : m_terms) {
                t.second *= q;
            }
        }
        return *this;
    }
    Poly &operator*=(const Poly &o)
    {
        Poly r;
        r.add_product(*this, o);
        if (!r.m_ring) {
            r.m_ring = m_ring ? m_ring : o.m_ring;
        }
        *this = std::move(r);
        return *this;
    }

    // *this += a * b
    void add_product(const Poly &a, const Poly &b)
    {
        adopt(a);
        adopt(b);
        Rational t;
        for (const auto &[ma, ca] : a.m_terms) {
            for (const auto &[mb, cb] : b.m_terms) {
                t = ca * cb;
                add_term(ma + mb, t);
            }
        }
    }

    // *this += q * a
    void add_scaled(const Poly &a, const Rational &q)
    {
        adopt(a);
        if (q == 0) {
            return;
        }
        for (const auto &[m, c] : a.m_terms) {
            add_term(m, c * q);
        }
    }

    friend Poly operator+(Poly a, const Poly &b)
    {
        a += b;
        return a;
    }
    friend Poly operator-(Poly a, const Poly &b)
    {
        a -= b;
        return a;
    }
    friend Poly operator*(const Poly &a, const Poly &b)
    {
        Poly r(a.m_ring ? a.m_ring : b.m_ring);
        r.add_product(a, b);
        return r;
    }
    friend Poly operator*(Poly a, const Rational &q)
    {
        a *= q;
        return a;
    }
    friend Poly operator*(const Rational &q, Poly a)
    {
        a *= q;
        return a;
    }
    friend Poly operator-(Poly a)
    {
        for (auto &t : a.m_terms) {
            t.second = -t.second;
        }
        return a;
    }
    friend bool operator==(const Poly &a, const Poly &b)
    {
        if (a.m_ring && b.m_ring && !same_ring(a.m_ring, b.m_ring)) {
            return false;
        }
        return a.m_terms == b.m_terms;
    }

    Poly pow(unsigned e) const
    {
        Poly r(m_ring, 1);
        Poly base = *this;
        while (e) {
            if (e & 1u) {
                r *= base;
            }
            e >>= 1u;
            if (e) {
                base *= base;
            }
        }
        return r;
    }

    Poly derivative(std::size_t gen) const
    {
        Poly r(m_ring);
        for (const auto &[m, c] : m_terms) {
            if (m[gen] > 0) {
                Monomial d(m);
                d[gen] -= 1;
                r.add_term(d, c * m[gen]);
            }
        }
        return r;
    }

    int max_total_degree() const
    {
        return m_terms.empty() ? -1 : total_degree(m_terms.rbegin()->first);
    }

    // Replaces generators by polynomials over `target`. Generators without an
    // image are mapped by name to the generator of the same name in `target`.
    Poly substitute(const std::map<std::string, Poly> &images, const RingPtr &target) const
    {
        const std::size_t n = m_ring ? m_ring->size() : 0;
        std::vector<std::optional<Poly>> image(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto &name = (*m_ring)[i].name;
            if (auto it = images.find(name); it != images.end()) {
                image[i] = it->second;
            } else if (target->index_of(name)) {
                image[i] = generator(target, name);
            }
        }
        Poly r(target);
        for (const auto &[m, c] : m_terms) {
            Poly t(target, c);
            for (std::size_t i = 0; i < n; ++i) {
                if (m[i] == 0) {
                    continue;
                }
                if (!image[i]) {
                    throw std::invalid_argument("generator '" + (*m_ring)[i].name
                                                + "' has no image in the target ring");
                }
                t *= image[i]->pow(static_cast<unsigned>(m[i]));
            }
            r += t;
        }
        r.m_ring = target;
        return r;
    }

    Poly change_ring(const RingPtr &target) const
    {
        return substitute({}, target);
    }

    // Exact division; throws std::domain_error when `d` does not divide *this.
    Poly divide_exact(const Poly &d) const
    {
        if (d.is_zero()) {
            throw std::domain_error("division by the zero polynomial");
        }
        const auto &[lm, lc] = *d.m_terms.rbegin();
        Poly q(m_ring ? m_ring : d.m_ring), r = *this;
        while (!r.is_zero()) {
            const auto &[rm, rc] = *r.m_terms.rbegin();
            Monomial qm(rm);
            for (std::size_t i = 0; i < qm.size(); ++i) {
                qm[i] -= lm[i];
                if (qm[i] < 0) {
                    throw std::domain_error("polynomial division is not exact");
                }
            }
            Poly t = monomial(q.m_ring, qm, rc / lc);
            q += t;
            r -= t * d;
        }
        return q;
    }

private:
    void adopt(const Poly &o)
    {
        if (!m_ring) {
            m_ring = o.m_ring;
        } else if (o.m_ring && !same_ring(m_ring, o.m_ring)) {
            throw std::invalid_argument("coefficient ring mismatch");
        }
    }

    RingPtr m_ring;
    term_map m_terms;
};

} // namespace toric

#endif
