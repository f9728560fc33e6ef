#ifndef TORIC_QUASITORIC_HPP
#define TORIC_QUASITORIC_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <toric/matrix.hpp>
#include <toric/rational.hpp>
#include <toric/series.hpp>

namespace toric
{

struct FixedPoint {
    std::string label;
    int sign = 1;
    std::vector<LinearForm> weights;

    bool operator==(const FixedPoint &) const = default;
};

struct FixedPointData {
    int n = 0;
    int k = 0;
    std::vector<FixedPoint> points;

    bool operator==(const FixedPointData &) const = default;
};

// Structural violations of fixed-point data; empty when valid.
inline std::vector<std::string> check_fixed_point_data(const FixedPointData &f)
{
    std::vector<std::string> v;
    if (f.n < 0 || f.k < 0) {
        v.push_back("n and k must be nonnegative");
    }
    if (f.points.empty()) {
        v.push_back("fixed point list is empty");
    }
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const auto &p = f.points[i];
        const std::string where = "point " + std::to_string(i + 1) + " (" + p.label + ")";
        if (p.sign != 1 && p.sign != -1) {
            v.push_back(where + ": sign must be +1 or -1");
        }
        if (static_cast<int>(p.weights.size()) != f.n) {
            v.push_back(where + ": expected " + std::to_string(f.n) + " weights");
        }
        for (const auto &w : p.weights) {
            if (w.k() != f.k) {
                v.push_back(where + ": weight length must be " + std::to_string(f.k));
            }
        }
    }
    return v;
}

inline FixedPointData flip_orientation(FixedPointData f)
{
    for (auto &p : f.points) {
        p.sign = -p.sign;
    }
    return f;
}

// Facets are 1-based; each vertex lists the n facets meeting there.
struct Polytope {
    int n = 0;
    int m = 0;
    std::vector<std::vector<int>> vertices;
    // n x m, column i inward normal to facet i+1
    std::optional<Matrix<Rational>> normals;
    // Per vertex, an ordering of its facets whose normals form a positive basis.
    std::optional<std::vector<std::vector<int>>> orientations;
    std::vector<std::string> labels;

    std::string label(std::size_t v) const
    {
        return v < labels.size() ? labels[v] : "x" + std::to_string(v + 1);
    }
    bool operator==(const Polytope &) const = default;
};

using CharMatrix = Matrix<Integer>;

struct QuasitoricPair {
    std::string name;
    Polytope polytope;
    CharMatrix lambda;

    bool operator==(const QuasitoricPair &) const = default;
};

inline std::vector<int> sorted_facets(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

inline std::vector<std::size_t> zero_based(const std::vector<int> &facets)
{
    std::vector<std::size_t> r;
    for (int f : facets) {
        r.push_back(static_cast<std::size_t>(f - 1));
    }
    return r;
}

// Parity of the permutation taking `from` to `to` (same elements).
inline int permutation_sign(const std::vector<int> &from, const std::vector<int> &to)
{
    std::vector<std::size_t> pos;
    for (int x : to) {
        pos.push_back(static_cast<std::size_t>(std::find(from.begin(), from.end(), x) - from.begin()));
    }
    int s = 1;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            if (pos[i] > pos[j]) {
                s = -s;
            }
        }
    }
    return s;
}

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> violations;

    void fail(std::string msg)
    {
        valid = false;
        violations.push_back(std::move(msg));
    }
};

inline std::string facet_list(const std::vector<int> &v)
{
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + std::string("F") + std::to_string(v[i]);
    }
    return s + "}";
}

inline ValidationReport validate_polytope(const Polytope &P)
{
    ValidationReport r;
    if (P.n < 1 || P.m < P.n + 1) {
        r.fail("polytope needs n >= 1 and m >= n + 1 facets");
    }
    if (P.vertices.empty()) {
        r.fail("vertex list is empty");
    }
    std::set<std::vector<int>> seen;
    for (std::size_t v = 0; v < P.vertices.size(); ++v) {
        const auto &fs = P.vertices[v];
        const auto s = sorted_facets(fs);
        const std::string where = "vertex " + P.label(v) + " " + facet_list(s);
        if (static_cast<int>(fs.size()) != P.n) {
            r.fail(where + ": expected " + std::to_string(P.n) + " facets");
        }
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            r.fail(where + ": repeated facet");
        }
        if (std::any_of(s.begin(), s.end(), [&](int f) { return f < 1 || f > P.m; })) {
            r.fail(where + ": facet index out of range 1.." + std::to_string(P.m));
        }
        if (!seen.insert(s).second) {
            r.fail(where + ": duplicate vertex");
        }
    }
    if (!r.valid) {
        return r;
    }
    if (P.normals) {
        if (P.normals->rows() != static_cast<std::size_t>(P.n) || P.normals->cols() != static_cast<std::size_t>(P.m)) {
            r.fail("normals must be an n x m matrix");
        } else {
            for (std::size_t v = 0; v < P.vertices.size(); ++v) {
                const auto s = sorted_facets(P.vertices[v]);
                if (determinant(P.normals->columns(zero_based(s))) == 0) {
                    r.fail("vertex " + P.label(v) + " " + facet_list(s) + ": normals are linearly dependent");
                }
            }
        }
    }
    if (P.orientations) {
        if (P.orientations->size() != P.vertices.size()) {
            r.fail("orientations must list one facet ordering per vertex");
        } else {
            for (std::size_t v = 0; v < P.vertices.size(); ++v) {
                if (sorted_facets((*P.orientations)[v]) != sorted_facets(P.vertices[v])) {
                    r.fail("vertex " + P.label(v) + ": orientation is not an ordering of its facets");
                }
            }
        }
    }
    return r;
}

inline bool is_refined(const CharMatrix &L, int n)
{
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (L(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) != (i == j ? 1 : 0)) {
                return false;
            }
        }
    }
    return true;
}

inline ValidationReport validate_pair(const QuasitoricPair &pair)
{
    const auto &P = pair.polytope;
    ValidationReport r = validate_polytope(P);
    if (!r.valid) {
        return r;
    }
    if (pair.lambda.rows() != static_cast<std::size_t>(P.n) || pair.lambda.cols() != static_cast<std::size_t>(P.m)) {
        r.fail("characteristic matrix must be " + std::to_string(P.n) + " x " + std::to_string(P.m));
        return r;
    }
    if (!is_refined(pair.lambda, P.n)) {
        r.fail("characteristic matrix is not refined: columns 1.." + std::to_string(P.n) + " must form the identity");
    }
    std::vector<int> initial;
    for (int i = 1; i <= P.n; ++i) {
        initial.push_back(i);
    }
    const bool has_initial = std::any_of(P.vertices.begin(), P.vertices.end(),
                                         [&](const auto &v) { return sorted_facets(v) == initial; });
    if (!has_initial) {
        r.fail("facets F1..F" + std::to_string(P.n) + " do not meet in a vertex");
    }
    for (std::size_t v = 0; v < P.vertices.size(); ++v) {
        const auto s = sorted_facets(P.vertices[v]);
        const Rational det = determinant(pair.lambda.columns(zero_based(s)));
        if (det != 1 && det != -1) {
            r.fail("vertex " + P.label(v) + " " + facet_list(s) + ": |det| = " + to_string(abs(det))
                   + ", must be 1");
        }
    }
    return r;
}

// L * raw with L the inverse of the minor on facets 1..n.
inline CharMatrix refine(const Polytope &P, const CharMatrix &raw)
{
    if (raw.rows() != static_cast<std::size_t>(P.n) || raw.cols() != static_cast<std::size_t>(P.m)) {
        throw std::invalid_argument("characteristic matrix has the wrong shape");
    }
    std::vector<std::size_t> lead(static_cast<std::size_t>(P.n));
    for (std::size_t i = 0; i < lead.size(); ++i) {
        lead[i] = i;
    }
    const CharMatrix minor = raw.columns(lead);
    const Rational det = determinant(minor);
    if (det != 1 && det != -1) {
        throw std::domain_error("leading minor has determinant " + to_string(det) + ", not unimodular");
    }
    return integer_inverse(minor) * raw;
}

inline bool special_check(const CharMatrix &L)
{
    for (std::size_t c = 0; c < L.cols(); ++c) {
        Integer s = 0;
        for (std::size_t r = 0; r < L.rows(); ++r) {
            s += L(r, c);
        }
        if (s != 1) {
            return false;
        }
    }
    return true;
}

// Per vertex: weights are the columns of (Lambda_x^T)^{-1}, sign is
// sign(det Lambda_x * det N_x), facets in increasing order.
inline FixedPointData signs_and_weights(const QuasitoricPair &pair)
{
    const auto report = validate_pair(pair);
    if (!report.valid) {
        throw std::invalid_argument("invalid quasitoric pair: " + report.violations.front());
    }
    const auto &P = pair.polytope;
    if (!P.normals && !P.orientations) {
        throw std::invalid_argument("signs need facet normals or per-vertex orientations");
    }
    FixedPointData out{P.n, P.n, {}};
    for (std::size_t v = 0; v < P.vertices.size(); ++v) {
        const auto s = sorted_facets(P.vertices[v]);
        const auto idx = zero_based(s);
        const CharMatrix Lx = pair.lambda.columns(idx);
        const Rational dl = determinant(Lx);
        int orient;
        if (P.normals) {
            const Rational dn = determinant(P.normals->columns(idx));
            orient = dn > 0 ? 1 : -1;
        } else {
            orient = permutation_sign(s, (*P.orientations)[v]);
        }
        FixedPoint fp;
        fp.label = P.label(v);
        fp.sign = (dl > 0 ? 1 : -1) * orient;
        const CharMatrix W = integer_inverse(Lx.transpose());
        for (std::size_t j = 0; j < W.cols(); ++j) {
            fp.weights.emplace_back(W.column(j));
        }
        out.points.push_back(std::move(fp));
    }
    return out;
}

inline std::string eps_string(const std::vector<int> &eps)
{
    std::string s;
    for (int e : eps) {
        s += e > 0 ? '+' : '-';
    }
    return s;
}

// Delta^n with normals e_1..e_n, -(1,..,1) and Lambda = (I_n : eps). Vertex x_0
// is F_1 .. F_n; x_k omits F_k.
inline QuasitoricPair simplex_pair(int n, const std::vector<int> &eps)
{
    if (n < 1) {
        throw std::invalid_argument("simplex dimension must be >= 1");
    }
    if (static_cast<int>(eps.size()) != n) {
        throw std::invalid_argument("simplex needs " + std::to_string(n) + " signs");
    }
    for (int e : eps) {
        if (e != 1 && e != -1) {
            throw std::invalid_argument("simplex signs must be +1 or -1");
        }
    }
    const auto N = static_cast<std::size_t>(n);
    Polytope P;
    P.n = n;
    P.m = n + 1;
    Matrix<Rational> normals(N, N + 1);
    CharMatrix L(N, N + 1);
    for (std::size_t i = 0; i < N; ++i) {
        normals(i, i) = 1;
        normals(i, N) = -1;
        L(i, i) = 1;
        L(i, N) = eps[i];
    }
    P.normals = normals;
    for (int k = 0; k <= n; ++k) {
        std::vector<int> v;
        for (int f = 1; f <= n + 1; ++f) {
            if (f != k && !(k == 0 && f == n + 1)) {
                v.push_back(f);
            }
        }
        P.vertices.push_back(v);
        P.labels.push_back("x" + std::to_string(k));
    }
    return {"cp" + std::to_string(n) + ":eps=" + eps_string(eps), P, L};
}

// I^2 with normals e1, e2, -e1, -e2 and Lambda = [[1,0,e1,d2],[0,1,d1,e2]].
inline QuasitoricPair square_pair(int e1, int e2, long d1, long d2)
{
    if ((e1 != 1 && e1 != -1) || (e2 != 1 && e2 != -1)) {
        throw std::invalid_argument("square signs must be +1 or -1");
    }
    const long det = static_cast<long>(e1) * e2 - d1 * d2;
    if (det != 1 && det != -1) {
        throw std::invalid_argument("square pair needs e1*e2 - d1*d2 = +-1, got " + std::to_string(det));
    }
    Polytope P;
    P.n = 2;
    P.m = 4;
    P.normals = Matrix<Rational>{{1, 0, -1, 0}, {0, 1, 0, -1}};
    P.vertices = {{1, 2}, {2, 3}, {3, 4}, {1, 4}};
    P.labels = {"x1", "x2", "x3", "x4"};
    CharMatrix L{{1, 0, e1, d2}, {0, 1, d1, e2}};
    return {"square:eps=" + std::to_string(e1) + "," + std::to_string(e2) + ":delta=" + std::to_string(d1) + ","
                + std::to_string(d2),
            P, L};
}

// Facet order P_1..P_n1, Q_1..Q_n2, remaining P facets, remaining Q facets.
inline QuasitoricPair product_pair(const QuasitoricPair &p, const QuasitoricPair &q)
{
    for (const auto *x : {&p, &q}) {
        const auto r = validate_pair(*x);
        if (!r.valid) {
            throw std::invalid_argument("product factor '" + x->name + "' is invalid: " + r.violations.front());
        }
    }
    const auto &A = p.polytope, &B = q.polytope;
    const int n = A.n + B.n, m = A.m + B.m;
    auto mapA = [&](int f) { return f <= A.n ? f : n + (f - A.n); };
    auto mapB = [&](int f) { return f <= B.n ? A.n + f : n + (A.m - A.n) + (f - B.n); };
    Polytope P;
    P.n = n;
    P.m = m;
    CharMatrix L(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
    for (int f = 1; f <= A.m; ++f) {
        for (int r = 0; r < A.n; ++r) {
            L(static_cast<std::size_t>(r), static_cast<std::size_t>(mapA(f) - 1))
                = p.lambda(static_cast<std::size_t>(r), static_cast<std::size_t>(f - 1));
        }
    }
    for (int f = 1; f <= B.m; ++f) {
        for (int r = 0; r < B.n; ++r) {
            L(static_cast<std::size_t>(A.n + r), static_cast<std::size_t>(mapB(f) - 1))
                = q.lambda(static_cast<std::size_t>(r), static_cast<std::size_t>(f - 1));
        }
    }
    if (A.normals && B.normals) {
        Matrix<Rational> N(static_cast<std::size_t>(n), static_cast<std::size_t>(m));
        for (int f = 1; f <= A.m; ++f) {
            for (int r = 0; r < A.n; ++r) {
                N(static_cast<std::size_t>(r), static_cast<std::size_t>(mapA(f) - 1))
                    = (*A.normals)(static_cast<std::size_t>(r), static_cast<std::size_t>(f - 1));
            }
        }
        for (int f = 1; f <= B.m; ++f) {
            for (int r = 0; r < B.n; ++r) {
                N(static_cast<std::size_t>(A.n + r), static_cast<std::size_t>(mapB(f) - 1))
                    = (*B.normals)(static_cast<std::size_t>(r), static_cast<std::size_t>(f - 1));
            }
        }
        P.normals = N;
    }
    const bool orient = (A.normals || A.orientations) && (B.normals || B.orientations) && !P.normals;
    std::vector<std::vector<int>> orientations;
    for (std::size_t a = 0; a < A.vertices.size(); ++a) {
        for (std::size_t b = 0; b < B.vertices.size(); ++b) {
            std::vector<int> v;
            for (int f : A.vertices[a]) {
                v.push_back(mapA(f));
            }
            for (int f : B.vertices[b]) {
                v.push_back(mapB(f));
            }
            P.vertices.push_back(sorted_facets(v));
            P.labels.push_back("(" + A.label(a) + "," + B.label(b) + ")");
            if (orient) {
                // concatenated increasing orders carry sign sA * sB
                auto sgn = [](const Polytope &X, std::size_t i) {
                    const auto s = sorted_facets(X.vertices[i]);
                    if (X.orientations) {
                        return permutation_sign(s, (*X.orientations)[i]);
                    }
                    return determinant(X.normals->columns(zero_based(s))) > 0 ? 1 : -1;
                };
                std::vector<int> o;
                for (int f : sorted_facets(A.vertices[a])) {
                    o.push_back(mapA(f));
                }
                for (int f : sorted_facets(B.vertices[b])) {
                    o.push_back(mapB(f));
                }
                if (sgn(A, a) * sgn(B, b) < 0) {
                    std::swap(o[0], o[1]);
                }
                orientations.push_back(o);
            }
        }
    }
    if (orient) {
        P.orientations = orientations;
    }
    return {p.name + "*" + q.name, P, L};
}

// Weights w . nu of the circle nu in the torus.
inline FixedPointData restrict_to_subcircle(const FixedPointData &f, const std::vector<Integer> &nu)
{
    if (static_cast<int>(nu.size()) != f.k) {
        throw std::invalid_argument("subcircle vector must have length " + std::to_string(f.k));
    }
    Integer g = 0;
    for (const auto &x : nu) {
        g = gcd(g, x);
    }
    if (g != 1) {
        throw std::invalid_argument("subcircle vector must be primitive");
    }
    FixedPointData out{f.n, 1, {}};
    for (const auto &p : f.points) {
        FixedPoint q{p.label, p.sign, {}};
        for (const auto &w : p.weights) {
            Integer s = 0;
            for (std::size_t i = 0; i < nu.size(); ++i) {
                s += w[i] * nu[i];
            }
            if (s == 0) {
                throw std::invalid_argument("subcircle is not generic: a weight at " + p.label + " pairs to zero");
            }
            q.weights.emplace_back(std::vector<Integer>{s});
        }
        out.points.push_back(std::move(q));
    }
    return out;
}

} // namespace toric

#endif
