#ifndef TORIC_LOCALIZE_HPP
#define TORIC_LOCALIZE_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <toric/fgl.hpp>
#include <toric/localized.hpp>
#include <toric/quasitoric.hpp>
#include <toric/serialize.hpp>
#include <toric/series.hpp>

namespace toric
{

enum class Mode { linear, universal };

inline std::string to_string(Mode m)
{
    return m == Mode::linear ? "linear" : "universal";
}

// Raised when fixed-point data fails the Conner-Floyd relations for a genus.
class conner_floyd_violation : public std::runtime_error
{
public:
    conner_floyd_violation(const std::string &what, int l) : std::runtime_error(what), m_l(l) {}
    int l() const noexcept
    {
        return m_l;
    }

private:
    int m_l;
};

// Writes 1/b(w.u) (linear) or 1/[w](u) (universal) as U / (w.u) and returns U
// to `order`. Needs the genus known to order + 1. In universal mode [w](u) is
// divisible by w.u only when it vanishes on w.u = 0, e.g. for k = 1.
class Reciprocals
{
public:
    Reciprocals(const GenusSpec &genus, Mode mode, int k, int order)
        : m_genus(genus.at_order(order + 1)), m_mode(mode), m_k(k), m_order(order)
    {
        if (mode == Mode::linear) {
            m_aplus = invert_unit(shift_down(m_genus.exponential())).truncated(order);
        }
    }

    const MultiSeries &operator()(const LinearForm &w)
    {
        auto it = m_cache.find(w);
        if (it != m_cache.end()) {
            return it->second;
        }
        MultiSeries r;
        if (m_mode == Mode::linear) {
            r = substitute(m_aplus, {MultiSeries::linear(m_genus.ring(), m_order, w)});
        } else {
            try {
                r = invert_unit(divide_by_linear_form(weight_series(m_genus, w), w));
            } catch (const not_divisible &) {
                throw std::domain_error("[" + to_string(w) + "](u) is not a multiple of the linear form "
                                        + to_string(w) + "; use the series quotient");
            }
        }
        return m_cache.emplace(w, std::move(r)).first->second;
    }

    const RingPtr &ring() const
    {
        return m_genus.ring();
    }
    int k() const
    {
        return m_k;
    }

private:
    GenusSpec m_genus;
    Mode m_mode;
    int m_k;
    int m_order;
    MultiSeries m_aplus;
    std::map<LinearForm, MultiSeries> m_cache;
};

// sum_x sign(x) prod_j 1/b(w_j(x).u) (or 1/[w_j(x)](u)) before cancellation,
// as a sum known to `order`.
inline LocalizedSum localized_sum(const FixedPointData &f, const GenusSpec &genus, Mode mode, int order)
{
    if (auto v = check_fixed_point_data(f); !v.empty()) {
        throw std::invalid_argument("invalid fixed point data: " + v.front());
    }
    const int need = order + f.n;
    Reciprocals recip(genus, mode, f.k, need);
    LocalizedSum ls(recip.ring(), f.k, order);
    for (const auto &p : f.points) {
        MultiSeries num = MultiSeries::constant(recip.ring(), f.k, need, Rational(p.sign));
        for (const auto &w : p.weights) {
            num = mul(num, recip(w));
        }
        ls.add(std::move(num), p.weights);
    }
    return ls;
}

struct CfEntry {
    int l = 0;
    // Homogeneous of degree l - n when the coefficient is a polynomial.
    std::optional<MultiSeries> value;
    std::string text;

    bool is_zero() const
    {
        return value && value->is_zero();
    }
};

struct CfSeries {
    int n = 0;
    int order = 0;
    std::vector<CfEntry> coeffs;

    const CfEntry &at(int l) const
    {
        return coeffs.at(static_cast<std::size_t>(l));
    }
};

inline std::string forms_string(const RingPtr &ring, const std::vector<LinearForm> &forms)
{
    std::string s;
    for (const auto &w : forms) {
        s += (s.empty() ? "" : "*") + ("(" + to_string(MultiSeries::linear(ring, 1, w)) + ")");
    }
    return s.empty() ? "1" : s;
}

// The localized sum as N / D, where the lowest layer of D is prod(forms) in
// degree d = forms.size(). N and D are known to at least order + d.
struct SeriesQuotient {
    MultiSeries numerator;
    MultiSeries denominator;
    std::vector<LinearForm> forms;
};

inline SeriesQuotient linear_quotient(const FixedPointData &f, const GenusSpec &genus, int order)
{
    auto cd = common_denominator(localized_sum(f, genus, Mode::linear, order));
    // D is a polynomial, so it is known to any order.
    MultiSeries den = MultiSeries::constant(cd.numerator.ring(), f.k, order + static_cast<int>(cd.forms.size()),
                                            Rational(1));
    for (const auto &w : cd.forms) {
        den = mul_linear(den, w);
    }
    return {std::move(cd.numerator), std::move(den), std::move(cd.forms)};
}

// D = prod_p [p](u)^{e_p} over primitive weights p up to sign, using
// [m p](u) = [p](u) V_m([p](u)) with the unit V_m(s) = [m](s)/s.
inline SeriesQuotient universal_quotient(const FixedPointData &f, const GenusSpec &genus, int order)
{
    if (auto v = check_fixed_point_data(f); !v.empty()) {
        throw std::invalid_argument("invalid fixed point data: " + v.front());
    }
    std::vector<std::vector<std::pair<Integer, LinearForm>>> split;
    std::map<LinearForm, int> total;
    for (const auto &p : f.points) {
        std::map<LinearForm, int> own;
        auto &s = split.emplace_back();
        for (const auto &w : p.weights) {
            s.push_back(w.primitive());
            ++own[s.back().second];
        }
        for (const auto &[q, e] : own) {
            total[q] = std::max(total[q], e);
        }
    }
    int d = 0;
    std::vector<LinearForm> forms;
    for (const auto &[q, e] : total) {
        d += e;
        forms.insert(forms.end(), static_cast<std::size_t>(e), q);
    }
    const int need = order + d;
    const GenusSpec g = genus.at_order(need + 1);
    const RingPtr &ring = g.ring();
    std::map<LinearForm, MultiSeries> bracket;
    MultiSeries den = MultiSeries::constant(ring, f.k, need, Rational(1));
    for (const auto &[q, e] : total) {
        const MultiSeries &b = bracket.emplace(q, weight_series(g, q).truncated(need)).first->second;
        for (int i = 0; i < e; ++i) {
            den = mul(den, b);
        }
    }
    std::map<std::pair<long, LinearForm>, MultiSeries> rescale;
    auto inverse_unit = [&](long m, const LinearForm &q) -> MultiSeries {
        auto key = std::make_pair(m, q);
        auto it = rescale.find(key);
        if (it == rescale.end()) {
            const MultiSeries vm = shift_down(m_series(g, m)).truncated(need);
            it = rescale.emplace(key, invert_unit(substitute(vm, {bracket.at(q)}))).first;
        }
        return it->second;
    };
    MultiSeries num(ring, f.k, need);
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        MultiSeries acc = MultiSeries::constant(ring, f.k, need, Rational(f.points[i].sign));
        std::map<LinearForm, int> own;
        for (const auto &[m, q] : split[i]) {
            ++own[q];
            if (m != 1) {
                acc = mul(acc, inverse_unit(m.get_si(), q));
            }
        }
        for (const auto &[q, e] : total) {
            for (int j = own[q]; j < e; ++j) {
                acc = mul(acc, bracket.at(q));
            }
        }
        num += acc;
    }
    return {std::move(num), std::move(den), std::move(forms)};
}

namespace detail
{

inline Layer layer_product(const Layer &a, const Layer &b)
{
    Layer out;
    for (const auto &[ma, pa] : a) {
        for (const auto &[mb, pb] : b) {
            Monomial m(ma);
            for (std::size_t i = 0; i < m.size(); ++i) {
                m[i] += mb[i];
            }
            layer_add(out, m, pa * pb);
        }
    }
    return out;
}

inline void layer_subtract(Layer &acc, const Layer &b)
{
    for (const auto &[m, p] : b) {
        layer_add(acc, m, -p);
    }
}

} // namespace detail

// Graded piece c_e of N / D, exactly A / H^power with H = prod(forms) and A
// homogeneous of degree e + power * d; power = 0 iff c_e is a polynomial.
struct QuotientPiece {
    int e = 0;
    Layer a;
    int power = 0;
};

// c_e for -d <= e <= order from c_e H = N_{e+d} - sum_{j<e} c_j D_{e+d-j}.
// Stops early when a nonzero c_j with j < 0 needs D beyond its known order.
inline std::vector<QuotientPiece> quotient_pieces(const SeriesQuotient &q, int order)
{
    const int d = static_cast<int>(q.forms.size());
    const Layer &H = q.denominator.layer(d);
    std::vector<Layer> hpow{Layer{{Monomial(static_cast<std::size_t>(q.numerator.k()), 0),
                                   Poly(q.numerator.ring(), Rational(1))}}};
    auto h_power = [&](int p) -> const Layer & {
        while (static_cast<int>(hpow.size()) <= p) {
            hpow.push_back(detail::layer_product(hpow.back(), H));
        }
        return hpow[static_cast<std::size_t>(p)];
    };
    std::vector<QuotientPiece> out;
    for (int e = -d; e <= order; ++e) {
        const bool known = std::all_of(out.begin(), out.end(), [&](const QuotientPiece &c) {
            return c.a.empty() || e + d - c.e <= q.denominator.order();
        });
        if (!known) {
            break;
        }
        int P = 0;
        for (const auto &c : out) {
            if (!c.a.empty()) {
                P = std::max(P, c.power);
            }
        }
        Layer r = detail::layer_product(q.numerator.layer(e + d), h_power(P));
        for (const auto &c : out) {
            if (c.a.empty()) {
                continue;
            }
            const Layer &dl = q.denominator.layer(e + d - c.e);
            if (!dl.empty()) {
                detail::layer_subtract(r, detail::layer_product(detail::layer_product(c.a, dl), h_power(P - c.power)));
            }
        }
        int power = P + 1;
        while (power > 0 && !r.empty()) {
            auto next = divide_layer_by_forms(r, q.forms);
            if (!next) {
                break;
            }
            r = std::move(*next);
            --power;
        }
        out.push_back({e, std::move(r), 0});
        out.back().power = out.back().a.empty() ? 0 : power;
    }
    return out;
}

// sum_x sign(x) prod_j 1/b(w_j(x).u) (linear) or 1/[w_j(x)](u) (universal),
// which must cancel to a power series; throws not_divisible otherwise.
inline MultiSeries phi(const FixedPointData &f, const GenusSpec &genus, Mode mode, int order)
{
    if (mode == Mode::linear) {
        return normalize(localized_sum(f, genus, mode, order));
    }
    const auto q = universal_quotient(f, genus, order);
    MultiSeries out(q.numerator.ring(), f.k, order);
    for (auto &c : quotient_pieces(q, order)) {
        if (c.a.empty()) {
            continue;
        }
        if (c.e < 0) {
            throw not_divisible("localized sum has a nonzero principal part in degree " + std::to_string(c.e), c.e);
        }
        if (c.power > 0) {
            throw not_divisible("localized sum does not cancel to a polynomial in degree " + std::to_string(c.e),
                                c.e);
        }
        out.layer(c.e) = std::move(c.a);
    }
    return out;
}

// cf_l for 0 <= l <= n + order: the degree l - n part of the localized sum.
inline CfSeries cf_series(const FixedPointData &f, const GenusSpec &genus, int order, Mode mode = Mode::linear)
{
    const auto q = mode == Mode::linear ? linear_quotient(f, genus, order) : universal_quotient(f, genus, order);
    const RingPtr &ring = q.numerator.ring();
    CfSeries out{f.n, order, {}};
    for (auto &c : quotient_pieces(q, order)) {
        const int l = c.e + f.n;
        if (l < 0) {
            continue;
        }
        CfEntry entry;
        entry.l = l;
        if (c.power == 0) {
            MultiSeries v(ring, f.k, std::max(c.e, 0));
            if (!c.a.empty()) {
                v.layer(c.e) = std::move(c.a);
            }
            entry.text = to_string(v);
            entry.value = std::move(v);
        } else {
            const int deg = c.e + c.power * static_cast<int>(q.forms.size());
            MultiSeries top(ring, f.k, deg);
            top.layer(deg) = std::move(c.a);
            entry.text = "(" + to_string(top) + ")/(" + forms_string(ring, q.forms) + ")"
                         + (c.power > 1 ? "^" + std::to_string(c.power) : "");
        }
        out.coeffs.push_back(std::move(entry));
    }
    for (int l = static_cast<int>(out.coeffs.size()); l <= f.n + order; ++l) {
        out.coeffs.push_back({l, std::nullopt, "undetermined"});
    }
    return out;
}

struct CfReport {
    bool pass = false;
    std::optional<int> first_violation;
    CfSeries cf;
    std::optional<Poly> genus_value;
};

inline std::optional<Poly> genus_value_of(const CfSeries &cf)
{
    const auto &e = cf.at(cf.n);
    if (!e.value) {
        return std::nullopt;
    }
    return e.value->constant_term();
}

// Passes iff cf_l = 0 for l < n and every computed cf_l with l >= n is a polynomial.
inline CfReport check_conner_floyd(const FixedPointData &f, const GenusSpec &genus, int order,
                                   Mode mode = Mode::linear)
{
    CfReport r;
    r.cf = cf_series(f, genus, order, mode);
    for (const auto &e : r.cf.coeffs) {
        const bool ok = e.l < f.n ? e.is_zero() : e.value.has_value();
        if (!ok && !r.first_violation) {
            r.first_violation = e.l;
        }
    }
    r.pass = !r.first_violation;
    r.genus_value = genus_value_of(r.cf);
    return r;
}

// Additionally requires cf_l = 0 for n < l <= n + order.
inline CfReport rigidity_check(const FixedPointData &f, const GenusSpec &genus, int order,
                               Mode mode = Mode::linear)
{
    CfReport r;
    r.cf = cf_series(f, genus, order, mode);
    for (const auto &e : r.cf.coeffs) {
        const bool ok = e.l == f.n ? e.value.has_value() : e.is_zero();
        if (!ok && !r.first_violation) {
            r.first_violation = e.l;
        }
    }
    r.pass = !r.first_violation;
    r.genus_value = genus_value_of(r.cf);
    return r;
}

inline Poly genus_value(const FixedPointData &f, const GenusSpec &genus, Mode mode = Mode::linear)
{
    const auto r = check_conner_floyd(f, genus, 0, mode);
    if (!r.pass) {
        throw conner_floyd_violation("fixed point data violates the Conner-Floyd relations at cf_"
                                         + std::to_string(*r.first_violation),
                                     *r.first_violation);
    }
    return *r.genus_value;
}

struct SpecialReport {
    Poly kv_value;
    bool kv_rigid = false;
    std::optional<int> kv_first_violation;
    std::optional<Poly> hr_value;
    bool pass = false;
};

// Krichever genus value and rigidity; for n < 5 also the Hurewicz genus value.
inline SpecialReport special_vanishing_check(const QuasitoricPair &pair, int order)
{
    if (!special_check(pair.lambda)) {
        throw std::invalid_argument("pair '" + pair.name + "' is not specially omnioriented: a column sum differs from 1");
    }
    const FixedPointData f = signs_and_weights(pair);
    SpecialReport r;
    const auto kv = rigidity_check(f, krichever_exponential(order + f.n + 1), order);
    r.kv_value = kv.genus_value ? *kv.genus_value : Poly(krichever_ring());
    r.kv_rigid = kv.pass;
    r.kv_first_violation = kv.first_violation;
    bool ok = kv.pass && r.kv_value.is_zero();
    if (f.n < 5) {
        r.hr_value = genus_value(f, catalog("hurewicz", f.n + 1, f.n));
        ok = ok && r.hr_value->is_zero();
    }
    r.pass = ok;
    return r;
}

struct BlockResult {
    std::vector<std::size_t> points;
    bool vanishes = false;
};

struct PairingReport {
    std::vector<BlockResult> blocks;
    bool vanishes = false;
};

// Exact vanishing of sum_{x in block} sign(x) / prod_j (w_j(x).u).
inline bool block_vanishes(const FixedPointData &f, const std::vector<std::size_t> &block)
{
    auto ring = make_ring();
    LocalizedSum ls(ring, f.k, 0);
    for (std::size_t i : block) {
        const auto &p = f.points.at(i);
        ls.add(MultiSeries::constant(ring, f.k, f.n, Rational(p.sign)), p.weights);
    }
    return common_denominator(ls).numerator.is_zero();
}

inline PairingReport pairing_obstruction(const FixedPointData &f, const std::vector<std::vector<std::size_t>> &blocks)
{
    std::vector<int> count(f.points.size(), 0);
    for (const auto &b : blocks) {
        for (std::size_t i : b) {
            if (i >= f.points.size()) {
                throw std::invalid_argument("block refers to point " + std::to_string(i + 1) + " of "
                                            + std::to_string(f.points.size()));
            }
            ++count[i];
        }
    }
    if (std::any_of(count.begin(), count.end(), [](int c) { return c != 1; })) {
        throw std::invalid_argument("blocks must partition the fixed points");
    }
    PairingReport r;
    r.vanishes = true;
    for (const auto &b : blocks) {
        BlockResult br{b, block_vanishes(f, b)};
        r.vanishes = r.vanishes && br.vanishes;
        r.blocks.push_back(std::move(br));
    }
    return r;
}

using Pairing = std::vector<std::vector<std::size_t>>;

// All perfect pairings of the fixed points whose every pair vanishes.
inline std::vector<Pairing> search_vanishing_pairings(const FixedPointData &f)
{
    const std::size_t N = f.points.size();
    std::vector<Pairing> out;
    if (N % 2 != 0) {
        return out;
    }
    std::map<std::pair<std::size_t, std::size_t>, bool> memo;
    auto pair_ok = [&](std::size_t a, std::size_t b) {
        auto key = std::make_pair(a, b);
        auto it = memo.find(key);
        if (it == memo.end()) {
            it = memo.emplace(key, block_vanishes(f, {a, b})).first;
        }
        return it->second;
    };
    std::vector<bool> used(N, false);
    Pairing cur;
    std::function<void()> rec = [&]() {
        std::size_t a = 0;
        while (a < N && used[a]) {
            ++a;
        }
        if (a == N) {
            out.push_back(cur);
            return;
        }
        used[a] = true;
        for (std::size_t b = a + 1; b < N; ++b) {
            if (!used[b] && pair_ok(a, b)) {
                used[b] = true;
                cur.push_back({a, b});
                rec();
                cur.pop_back();
                used[b] = false;
            }
        }
        used[a] = false;
    };
    rec();
    return out;
}

inline FixedPointData dataset(const std::string &name)
{
    if (name == "s6") {
        return {3, 2, {{"x1", 1, {{1, 0}, {0, 1}, {-1, -1}}}, {"x2", 1, {{-1, 0}, {0, -1}, {1, 1}}}}};
    }
    if (name == "cp1") {
        return {1, 1, {{"x0", 1, {{1}}}, {"x1", 1, {{-1}}}}};
    }
    if (name == "flag3") {
        FixedPointData f{3, 3, {}};
        std::vector<int> rho{0, 1, 2};
        do {
            FixedPoint p;
            p.label = "rho=" + std::to_string(rho[0] + 1) + std::to_string(rho[1] + 1) + std::to_string(rho[2] + 1);
            for (int i = 0; i < 3; ++i) {
                for (int j = i + 1; j < 3; ++j) {
                    std::vector<Integer> w(3, 0);
                    w[static_cast<std::size_t>(rho[static_cast<std::size_t>(i)])] += 1;
                    w[static_cast<std::size_t>(rho[static_cast<std::size_t>(j)])] -= 1;
                    p.weights.emplace_back(std::move(w));
                }
            }
            f.points.push_back(std::move(p));
        } while (std::next_permutation(rho.begin(), rho.end()));
        return f;
    }
    throw std::invalid_argument("unknown dataset '" + name + "'");
}

// Fixed-point data whose linear localization sum is the left-hand side of the
// rigidity functional equation for `which`.
inline FixedPointData functional_equation_data(const std::string &which)
{
    if (which == "cp1") {
        return dataset("cp1");
    }
    if (which == "cp2") {
        return {2, 2, {{"x0", 1, {{1, 0}, {0, 1}}}, {"x1", -1, {{1, 0}, {1, 1}}}, {"x2", 1, {{1, 1}, {0, -1}}}}};
    }
    if (which == "s6") {
        return dataset("s6");
    }
    throw std::invalid_argument("unknown functional equation '" + which + "'");
}

struct FunctionalEquationResult {
    bool ok = false;
    Poly constant;
    std::string message;
};

inline FunctionalEquationResult functional_equation_check(const std::string &which, const GenusSpec &genus, int order)
{
    const FixedPointData f = functional_equation_data(which);
    FunctionalEquationResult r;
    MultiSeries s;
    try {
        s = phi(f, genus, Mode::linear, order);
    } catch (const not_divisible &e) {
        r.message = e.what();
        return r;
    }
    r.constant = s.constant_term();
    for (int d = 1; d <= order; ++d) {
        if (!s.layer(d).empty()) {
            r.message = "left-hand side is not constant: nonzero terms in degree " + std::to_string(d);
            return r;
        }
    }
    r.ok = true;
    return r;
}

// prod_{i<j} a_+(u_i - u_j) with a_+ = 1/b_+, to `order`.
inline MultiSeries p_omega_series(int nvars, const GenusSpec &genus, int order)
{
    const GenusSpec g = genus.at_order(order + 1);
    const MultiSeries aplus = invert_unit(shift_down(g.exponential())).truncated(order);
    MultiSeries prod = MultiSeries::constant(g.ring(), nvars, order, Rational(1));
    for (int i = 0; i < nvars; ++i) {
        for (int j = i + 1; j < nvars; ++j) {
            std::vector<Integer> w(static_cast<std::size_t>(nvars), 0);
            w[static_cast<std::size_t>(i)] = 1;
            w[static_cast<std::size_t>(j)] = -1;
            prod = mul(prod, substitute(aplus, {MultiSeries::linear(g.ring(), order, LinearForm(w))}));
        }
    }
    return prod;
}

inline std::map<Monomial, Poly, GradedLexLess> p_omega(int nvars, const GenusSpec &genus, int order)
{
    std::map<Monomial, Poly, GradedLexLess> out;
    const MultiSeries prod = p_omega_series(nvars, genus, order);
    for (const auto &layer : prod.layers()) {
        for (const auto &[m, p] : layer) {
            out.emplace(m, p);
        }
    }
    return out;
}

} // namespace toric

#endif
