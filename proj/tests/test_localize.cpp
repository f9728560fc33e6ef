#include "printing.hpp"
#include "support.hpp"

using namespace toric;
using support::cpn;
using support::P;
using support::S;

namespace
{

GenusSpec hurewicz_for(int n, int order)
{
    return catalog("hurewicz", order + n + 1, order + n);
}

// Every valid square pair with |delta_i| <= 2.
std::vector<QuasitoricPair> square_family()
{
    std::vector<QuasitoricPair> out;
    for (int e1 : {-1, 1}) {
        for (int e2 : {-1, 1}) {
            for (long d1 = -2; d1 <= 2; ++d1) {
                for (long d2 = -2; d2 <= 2; ++d2) {
                    const long det = e1 * e2 - d1 * d2;
                    if (det == 1 || det == -1) {
                        out.push_back(square_pair(e1, e2, d1, d2));
                    }
                }
            }
        }
    }
    return out;
}

// Bundled datasets plus every CP^n_eps (n <= 3) and the square family.
std::vector<std::pair<std::string, FixedPointData>> corpus()
{
    std::vector<std::pair<std::string, FixedPointData>> out;
    for (const char *name : {"s6", "flag3", "cp1"}) {
        out.emplace_back(name, dataset(name));
    }
    for (int n = 1; n <= 3; ++n) {
        for (int mask = 0; mask < (1 << n); ++mask) {
            std::vector<int> eps;
            for (int i = 0; i < n; ++i) {
                eps.push_back(mask >> i & 1 ? 1 : -1);
            }
            const auto pair = simplex_pair(n, eps);
            out.emplace_back(pair.name, signs_and_weights(pair));
        }
    }
    for (const auto &pair : square_family()) {
        out.emplace_back(pair.name, signs_and_weights(pair));
    }
    return out;
}

int parity(const std::vector<int> &p)
{
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            inversions += p[i] > p[j];
        }
    }
    return inversions % 2 ? -1 : 1;
}

FixedPointData flip_sign(FixedPointData f, std::size_t i)
{
    f.points[i].sign = -f.points[i].sign;
    return f;
}

} // namespace

TEST_CASE("phi on CP^1")
{
    const auto f = cpn(1);
    const auto hr = hurewicz_for(1, 6);
    const MultiSeries lin = phi(f, hr, Mode::linear, 6);
    CHECK(lin.constant_term() == P("-2*b1", lin.ring()));

    // 1/u + 1/[-1](u): the x0 term is exactly 1/u, and v = -u / N1 solves F(u, v) = 0.
    const LocalizedSum ls = localized_sum(f, hr, Mode::universal, 6);
    REQUIRE(ls.terms().size() == 2);
    const auto &t0 = ls.terms()[0], &t1 = ls.terms()[1];
    REQUIRE(t0.denominators == std::vector<LinearForm>{LinearForm{1}});
    REQUIRE(t1.denominators == std::vector<LinearForm>{LinearForm{-1}});
    CHECK(t0.numerator == MultiSeries::constant(ls.ring(), 1, t0.numerator.order(), Rational(1)));
    const int N = t1.numerator.order();
    const MultiSeries u = MultiSeries::variable(ls.ring(), 1, N, 0);
    const MultiSeries inverse = mul(-u, invert_unit(t1.numerator));
    const MultiSeries F = fgl_from_exponential(hr.at_order(N)).F;
    CHECK(substitute(F, {u, inverse}).is_zero());

    const auto cf = cf_series(f, hr, 0);
    CHECK(cf.at(0).is_zero());
    CHECK(cf.at(1).value->constant_term() == P("-2*b1", cf.at(1).value->ring()));
}

TEST_CASE("todd on projective spaces")
{
    for (int n = 1; n <= 4; ++n) {
        const auto td = catalog("todd", n + 2);
        CHECK(genus_value(cpn(n), td) == P("z", td.ring()).pow(static_cast<unsigned>(n)) * Rational(n % 2 ? -1 : 1));
        CHECK(phi(cpn(n), td, Mode::linear, 0).constant_term() == genus_value(cpn(n), td));
    }
    const auto cf = cf_series(cpn(1), catalog("todd", 3), 0);
    CHECK(cf.at(1).text == "-z");
}

TEST_CASE("signature and cn genus")
{
    const auto sg = catalog("signature", 6);
    CHECK(genus_value(cpn(2), sg) == P("z^2", sg.ring()));
    CHECK(genus_value(cpn(4), sg) == P("z^4", sg.ring()));
    for (int n = 1; n <= 3; ++n) {
        const auto cn = catalog("cn", n + 2);
        CHECK(genus_value(cpn(n), cn) == P("v", cn.ring()).pow(static_cast<unsigned>(n)) * Rational(n + 1));
    }
}

TEST_CASE("augmentation sum vanishes on projective spaces")
{
    const auto ag = catalog("augmentation", 8);
    for (int n = 1; n <= 4; ++n) {
        const auto cd = common_denominator(localized_sum(cpn(n), ag, Mode::linear, 3));
        CHECK(cd.numerator.is_zero());
        const auto r = check_conner_floyd(cpn(n), ag, 3);
        CHECK(r.pass);
        for (const auto &e : r.cf.coeffs) {
            CHECK(e.is_zero());
        }
    }
}

TEST_CASE("S^6 coefficients")
{
    const auto f = dataset("s6");
    const auto hr = hurewicz_for(3, 0);
    const auto r = check_conner_floyd(f, hr, 0);
    REQUIRE(r.pass);
    for (int l = 0; l < 3; ++l) {
        CHECK(r.cf.at(l).is_zero());
    }
    const auto &R = r.genus_value->ring();
    // a1 = -b1, a2 = b1^2 - b2, a3 = -b1^3 + 2 b1 b2 - b3
    const Poly a1 = P("-b1", R), a2 = P("b1^2 - b2", R), a3 = P("-b1^3 + 2*b1*b2 - b3", R);
    CHECK(*r.genus_value == (a1.pow(3) - a1 * a2 * Rational(3) + a3 * Rational(3)) * Rational(2));
    CHECK(*r.genus_value == P("-2*b1^3 + 6*b1*b2 - 6*b3", R));

    const auto corrupted = check_conner_floyd(flip_sign(f, 1), catalog("augmentation", 4), 0);
    CHECK_FALSE(corrupted.pass);
    CHECK(corrupted.first_violation == 0);
    try {
        genus_value(flip_sign(f, 1), hr);
        FAIL("expected conner_floyd_violation");
    } catch (const conner_floyd_violation &e) {
        CHECK(e.l() == 0);
    }
    const auto uni = check_conner_floyd(flip_sign(f, 1), hr, 0, Mode::universal);
    CHECK_FALSE(uni.pass);
    CHECK(uni.first_violation == 0);
    CHECK(uni.cf.at(0).text == corrupted.cf.at(0).text);
    CHECK_THROWS_AS(phi(flip_sign(f, 1), hr, Mode::universal, 0), not_divisible);
}

TEST_CASE("universal reciprocals need the series quotient for mixed weights")
{
    const auto hr = hurewicz_for(3, 1);
    // [(1,1)](u) = F(u1, u2) does not vanish on u1 + u2 = 0.
    CHECK_THROWS_AS(localized_sum(dataset("s6"), hr, Mode::universal, 1), std::domain_error);
    CHECK(check_conner_floyd(dataset("s6"), hr, 1, Mode::universal).pass);
}

TEST_CASE("flag manifold")
{
    const auto f = dataset("flag3");
    const auto hr = hurewicz_for(3, 0);
    const auto r = check_conner_floyd(f, hr, 0);
    REQUIRE(r.pass);

    const auto P3 = p_omega(3, hr, 3);
    const std::vector<int> delta{2, 1, 0};
    std::vector<int> rho{0, 1, 2};
    std::optional<Poly> sum;
    do {
        Monomial m(3, 0);
        for (std::size_t i = 0; i < 3; ++i) {
            m[static_cast<std::size_t>(rho[i])] = delta[i];
        }
        const auto it = P3.find(m);
        REQUIRE(it != P3.end());
        const Poly term = it->second * Rational(parity(rho));
        sum = sum ? *sum + term : term;
    } while (std::next_permutation(rho.begin(), rho.end()));
    CHECK(to_string(*sum) == to_string(*r.genus_value));
}

TEST_CASE("p_omega")
{
    const auto hr = catalog("hurewicz", 4, 3);
    const auto P2 = p_omega(2, hr, 3);
    const Poly a1 = conjugate_orientation(hr).coefficient(2);
    CHECK(P2.at(Monomial{1, 0}) == a1);
    CHECK(P2.at(Monomial{0, 1}) == -a1);
    CHECK(P2.at(Monomial{0, 0}) == Poly(hr.ring(), 1));
    for (const auto &[m, p] : p_omega(3, catalog("augmentation", 5), 4)) {
        const int deg = std::accumulate(m.begin(), m.end(), 0);
        CHECK((deg == 0 ? p == Poly(p.ring(), 1) : p.is_zero()));
    }
}

TEST_CASE("genus_value on bounding CP^1")
{
    const auto f = signs_and_weights(simplex_pair(1, {1}));
    for (const auto &name : catalog_names()) {
        INFO(name);
        CHECK(genus_value(f, catalog(name, 3)).is_zero());
    }
    CHECK(genus_value(f, krichever_exponential(3)).is_zero());
}

TEST_CASE("rigidity")
{
    CHECK(rigidity_check(dataset("s6"), krichever_exponential(8), 4).pass);
    const auto cp2 = signs_and_weights(simplex_pair(2, {1, -1}));
    const auto t2 = rigidity_check(cp2, catalog("t2", 7), 4);
    CHECK(t2.pass);
    CHECK(*t2.genus_value == P("y*z", t2.genus_value->ring()));
    const auto hr = rigidity_check(cpn(2), hurewicz_for(2, 4), 4);
    CHECK_FALSE(hr.pass);
    // The coordinate permutations of CP^2 fix no nonzero linear form, so the
    // first nonconstant piece is quadratic.
    CHECK(hr.cf.at(3).is_zero());
    CHECK(hr.first_violation == 4);
    CHECK(hr.cf.at(2).value.has_value());
    const MultiSeries &q = *hr.cf.at(4).value;
    const auto &R = q.ring();
    // u1^2 + u2^2 - u1 u2 spans the invariant quadratics in these coordinates.
    CHECK(q == MultiSeries::constant(R, 2, 2, q.coefficient(Monomial{2, 0})) * S("u1^2 - u1*u2 + u2^2", R, 2, 2));
}

TEST_CASE("special vanishing")
{
    const auto sq = square_pair(-1, 1, 2, 0);
    REQUIRE(special_check(sq.lambda));
    const auto r = special_vanishing_check(sq, 4);
    CHECK(r.kv_value.is_zero());
    CHECK(r.kv_rigid);
    REQUIRE(r.hr_value);
    CHECK(r.hr_value->is_zero());
    CHECK(r.pass);

    const auto cp1 = special_vanishing_check(simplex_pair(1, {1}), 4);
    CHECK(cp1.kv_value.is_zero());
    CHECK(cp1.hr_value->is_zero());
    CHECK(cp1.pass);

    CHECK_THROWS_AS(special_vanishing_check(simplex_pair(2, {-1, -1}), 2), std::invalid_argument);
}

TEST_CASE("pairing obstruction")
{
    using Blocks = std::vector<std::vector<std::size_t>>;
    const Blocks by_delta1{{0, 3}, {1, 2}}, by_delta2{{0, 1}, {2, 3}}, diagonal{{0, 2}, {1, 3}};
    for (const auto &pair : square_family()) {
        INFO(pair.name);
        const auto f = signs_and_weights(pair);
        const auto &L = pair.lambda;
        const Integer d1 = L(1, 2), d2 = L(0, 3);
        CHECK(pairing_obstruction(f, by_delta1).vanishes == (d2 == 0));
        CHECK(pairing_obstruction(f, by_delta2).vanishes == (d1 == 0));
        CHECK_FALSE(block_vanishes(f, {0, 2}));
        CHECK_FALSE(pairing_obstruction(f, diagonal).vanishes);
        CHECK(search_vanishing_pairings(f).empty() == (d1 * d2 != 0));
    }
    const auto f = signs_and_weights(square_pair(-1, -1, 2, 1));
    CHECK(search_vanishing_pairings(f).empty());
    CHECK(pairing_obstruction(f, {{0, 1, 2, 3}}).vanishes);
    CHECK_THROWS_AS(pairing_obstruction(f, {{0, 1}, {1, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(pairing_obstruction(f, {{0, 1}, {2, 4}}), std::invalid_argument);
}

TEST_CASE("functional equations")
{
    const auto td = functional_equation_check("cp1", catalog("todd", 6), 5);
    REQUIRE(td.ok);
    CHECK(td.constant == P("-z", td.constant.ring()));

    const auto t2 = catalog("t2", 8);
    const auto cp2 = functional_equation_check("cp2", t2, 5);
    REQUIRE(cp2.ok);
    CHECK(cp2.constant == P("y*z", t2.ring()));
    // At y = 0 this is the todd constant -z.
    const auto cp1 = functional_equation_check("cp1", t2, 5);
    REQUIRE(cp1.ok);
    CHECK(cp1.constant == P("-y - z", t2.ring()));

    const auto kv = functional_equation_check("s6", krichever_exponential(9), 5);
    REQUIRE(kv.ok);
    CHECK(kv.constant == *rigidity_check(dataset("s6"), krichever_exponential(9), 5).genus_value);
    CHECK(kv.constant == P("p3", kv.constant.ring()));

    const auto hr = functional_equation_check("cp2", hurewicz_for(2, 4), 4);
    CHECK_FALSE(hr.ok);
    CHECK_FALSE(hr.message.empty());
    CHECK_THROWS_AS(functional_equation_check("cp7", t2, 3), std::invalid_argument);
}

TEST_CASE("datasets")
{
    const auto s6 = dataset("s6");
    CHECK(s6.n == 3);
    CHECK(s6.k == 2);
    CHECK(s6.points.size() == 2);
    const auto flag = dataset("flag3");
    CHECK(flag.points.size() == 6);
    for (const auto &p : flag.points) {
        CHECK(p.sign == 1);
        CHECK(p.weights.size() == 3);
    }
    const auto cp1 = dataset("cp1");
    CHECK(cp1.points.size() == 2);
    CHECK(cp1.points[0].weights == std::vector<LinearForm>{LinearForm{1}});
    CHECK(cp1.points[1].weights == std::vector<LinearForm>{LinearForm{-1}});
    CHECK(cp1.points[0].sign == 1);
    CHECK(cp1.points[1].sign == 1);
    CHECK(cp1 == cpn(1));
    CHECK_THROWS_AS(dataset("cp9"), std::invalid_argument);
}

TEST_CASE("property: Conner-Floyd vanishing over the corpus")
{
    std::vector<GenusSpec> genera;
    for (const auto &name : catalog_names()) {
        genera.push_back(catalog(name, 6));
    }
    genera.push_back(krichever_exponential(6));
    for (const auto &[name, f] : corpus()) {
        for (const auto &g : genera) {
            INFO(name << " / " << g.name());
            const auto r = check_conner_floyd(f, g, 1);
            REQUIRE(r.pass);
            for (int l = 0; l < f.n; ++l) {
                REQUIRE(r.cf.at(l).is_zero());
            }
        }
    }
}

TEST_CASE("property: homogeneity of cf coefficients")
{
    const std::vector<GenusSpec> genera{catalog("todd", 8), catalog("t2", 8), hurewicz_for(3, 2),
                                        krichever_exponential(8)};
    for (const auto &[name, f] : corpus()) {
        for (const auto &g : genera) {
            INFO(name << " / " << g.name());
            const auto cf = cf_series(f, g, 2);
            for (const auto &e : cf.coeffs) {
                if (e.l < f.n) {
                    continue;
                }
                REQUIRE(e.value);
                const int m = e.l - f.n;
                REQUIRE(e.value->order() == m);
                for (int d = 0; d < m; ++d) {
                    REQUIRE(e.value->layer(d).empty());
                }
            }
        }
    }
}

TEST_CASE("property: coordinate change u -> b(u)")
{
    const int order = 5;
    for (const char *name : {"cp1", "cp2", "s6"}) {
        INFO(name);
        const FixedPointData f = std::string(name) == "cp2" ? cpn(2) : dataset(name);
        const auto hr = hurewicz_for(f.n, order);
        const MultiSeries uni = phi(f, hr, Mode::universal, order);
        const MultiSeries lin = phi(f, hr, Mode::linear, order);
        const MultiSeries b = hr.at_order(order).exponential();
        std::vector<MultiSeries> images;
        for (int i = 0; i < f.k; ++i) {
            images.push_back(embed(b, f.k, i));
        }
        CHECK(substitute(uni, images) == lin);
        CHECK(uni.constant_term() == lin.constant_term());
    }
}

TEST_CASE("property: constant terms agree between modes")
{
    std::vector<GenusSpec> genera;
    for (const auto &name : catalog_names()) {
        genera.push_back(catalog(name, 5));
    }
    genera.push_back(krichever_exponential(5));
    for (const auto &[name, f] : corpus()) {
        if (f.n > 2) {
            continue;
        }
        for (const auto &g : genera) {
            INFO(name << " / " << g.name());
            REQUIRE(genus_value(f, g, Mode::linear) == genus_value(f, g, Mode::universal));
        }
    }
    const auto hr = hurewicz_for(3, 0);
    for (const char *name : {"s6", "flag3"}) {
        INFO(name);
        CHECK(genus_value(dataset(name), hr, Mode::linear) == genus_value(dataset(name), hr, Mode::universal));
    }
}

TEST_CASE("property: rational point oracle on localization sums")
{
    support::Gen g(0x10ca1e);
    std::vector<GenusSpec> genera;
    for (const auto &name : catalog_names()) {
        genera.push_back(catalog(name, 6));
    }
    const auto all = corpus();
    for (int i = 0; i < support::property_cases; ++i) {
        const auto &[name, f] = g.pick(all);
        const auto &genus = g.pick(genera);
        INFO(name << " / " << genus.name());
        const LocalizedSum ls = localized_sum(f, genus, Mode::linear, 1);
        const MultiSeries s = normalize(ls);
        const auto r = support::generic_point(g, ls);
        const auto lhs = support::rational_point_sum(ls, r);
        const auto rhs = support::degree_values(s, r);
        for (int e = -lhs.offset; e < 0; ++e) {
            REQUIRE(lhs.coeffs[static_cast<std::size_t>(e + lhs.offset)].is_zero());
        }
        for (int e = 0; e <= ls.order(); ++e) {
            REQUIRE(lhs.coeffs[static_cast<std::size_t>(e + lhs.offset)] == rhs[static_cast<std::size_t>(e)]);
        }
    }
}

TEST_CASE("property: sign sensitivity")
{
    const auto ag = catalog("augmentation", 4);
    for (const char *name : {"s6", "cp1"}) {
        const auto f = dataset(name);
        for (std::size_t i = 0; i < f.points.size(); ++i) {
            INFO(name << " point " << i);
            const auto r = check_conner_floyd(flip_sign(f, i), ag, 0);
            CHECK_FALSE(r.pass);
            CHECK(r.first_violation == 0);
        }
    }
}
