#ifndef TORIC_MANIFOLD_IO_HPP
#define TORIC_MANIFOLD_IO_HPP

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include <toric/localize.hpp>
#include <toric/quasitoric.hpp>

namespace toric
{

// Malformed or unreadable manifold input.
class input_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

using Manifold = std::variant<QuasitoricPair, FixedPointData>;

inline FixedPointData fixed_points_of(const Manifold &m)
{
    if (const auto *q = std::get_if<QuasitoricPair>(&m)) {
        return signs_and_weights(*q);
    }
    return std::get<FixedPointData>(m);
}

namespace detail
{

using nlohmann::json;

inline const json &field(const json &j, const std::string &path, const char *key)
{
    if (!j.is_object()) {
        throw input_error(path + ": expected an object");
    }
    auto it = j.find(key);
    if (it == j.end()) {
        throw input_error(path + ": missing field '" + key + "'");
    }
    return *it;
}

inline long get_int(const json &j, const std::string &path)
{
    if (!j.is_number_integer()) {
        throw input_error(path + ": expected an integer");
    }
    return j.get<long>();
}

inline Integer get_integer(const json &j, const std::string &path)
{
    if (j.is_number_integer()) {
        return Integer(j.get<long>());
    }
    if (j.is_string()) {
        try {
            return parse_integer(j.get<std::string>());
        } catch (const std::invalid_argument &) {
        }
    }
    throw input_error(path + ": expected an integer");
}

inline Rational get_rational(const json &j, const std::string &path)
{
    if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::invalid_argument &) {
        }
    }
    throw input_error(path + ": expected an integer or a \"p/q\" rational string");
}

inline const json &get_array(const json &j, const std::string &path)
{
    if (!j.is_array()) {
        throw input_error(path + ": expected an array");
    }
    return j;
}

inline std::vector<int> get_int_list(const json &j, const std::string &path)
{
    std::vector<int> v;
    const auto &a = get_array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i) {
        v.push_back(static_cast<int>(get_int(a[i], path + "/" + std::to_string(i))));
    }
    return v;
}

template <typename T, typename Get>
Matrix<T> get_matrix(const json &j, const std::string &path, std::size_t rows, std::size_t cols, Get get)
{
    const auto &a = get_array(j, path);
    if (a.size() != rows) {
        throw input_error(path + ": expected " + std::to_string(rows) + " rows");
    }
    Matrix<T> m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = path + "/" + std::to_string(r);
        const auto &row = get_array(a[r], rp);
        if (row.size() != cols) {
            throw input_error(rp + ": expected " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = get(row[c], rp + "/" + std::to_string(c));
        }
    }
    return m;
}

inline json integer_json(const Integer &z)
{
    if (z.fits_slong_p()) {
        return z.get_si();
    }
    return z.get_str();
}

inline json rational_json(const Rational &q)
{
    if (is_integer(q)) {
        return integer_json(q.get_num());
    }
    return to_string(q);
}

} // namespace detail

inline QuasitoricPair quasitoric_from_json(const nlohmann::json &j)
{
    using namespace detail;
    QuasitoricPair pair;
    if (auto it = j.find("name"); it != j.end()) {
        if (!it->is_string()) {
            throw input_error("/name: expected a string");
        }
        pair.name = it->get<std::string>();
    }
    const auto &pj = field(j, "", "polytope");
    Polytope &P = pair.polytope;
    P.n = static_cast<int>(get_int(field(pj, "/polytope", "n"), "/polytope/n"));
    P.m = static_cast<int>(get_int(field(pj, "/polytope", "m"), "/polytope/m"));
    if (P.n < 1 || P.m < 1) {
        throw input_error("/polytope: n and m must be positive");
    }
    const auto &vs = get_array(field(pj, "/polytope", "vertices"), "/polytope/vertices");
    for (std::size_t i = 0; i < vs.size(); ++i) {
        P.vertices.push_back(get_int_list(vs[i], "/polytope/vertices/" + std::to_string(i)));
    }
    const auto n = static_cast<std::size_t>(P.n), m = static_cast<std::size_t>(P.m);
    if (auto it = pj.find("normals"); it != pj.end()) {
        P.normals = get_matrix<Rational>(*it, "/polytope/normals", n, m, get_rational);
    }
    if (auto it = pj.find("orientations"); it != pj.end()) {
        const auto &os = get_array(*it, "/polytope/orientations");
        std::vector<std::vector<int>> o;
        for (std::size_t i = 0; i < os.size(); ++i) {
            o.push_back(get_int_list(os[i], "/polytope/orientations/" + std::to_string(i)));
        }
        P.orientations = std::move(o);
    }
    if (auto it = pj.find("labels"); it != pj.end()) {
        const auto &ls = get_array(*it, "/polytope/labels");
        for (std::size_t i = 0; i < ls.size(); ++i) {
            if (!ls[i].is_string()) {
                throw input_error("/polytope/labels/" + std::to_string(i) + ": expected a string");
            }
            P.labels.push_back(ls[i].get<std::string>());
        }
    }
    pair.lambda = get_matrix<Integer>(field(j, "", "lambda"), "/lambda", n, m, get_integer);
    return pair;
}

inline FixedPointData fixed_points_from_json(const nlohmann::json &j)
{
    using namespace detail;
    FixedPointData f;
    f.n = static_cast<int>(get_int(field(j, "", "n"), "/n"));
    f.k = static_cast<int>(get_int(field(j, "", "k"), "/k"));
    if (f.n < 0 || f.k < 0) {
        throw input_error("/n, /k: must be nonnegative");
    }
    const auto &ps = get_array(field(j, "", "points"), "/points");
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string path = "/points/" + std::to_string(i);
        FixedPoint p;
        if (auto it = ps[i].find("label"); it != ps[i].end() && it->is_string()) {
            p.label = it->get<std::string>();
        } else {
            p.label = "x" + std::to_string(i + 1);
        }
        p.sign = static_cast<int>(get_int(field(ps[i], path, "sign"), path + "/sign"));
        if (p.sign != 1 && p.sign != -1) {
            throw input_error(path + "/sign: must be +1 or -1");
        }
        const auto &ws = get_array(field(ps[i], path, "weights"), path + "/weights");
        if (ws.size() != static_cast<std::size_t>(f.n)) {
            throw input_error(path + "/weights: expected " + std::to_string(f.n) + " weight vectors");
        }
        for (std::size_t w = 0; w < ws.size(); ++w) {
            const std::string wp = path + "/weights/" + std::to_string(w);
            const auto &a = get_array(ws[w], wp);
            if (a.size() != static_cast<std::size_t>(f.k)) {
                throw input_error(wp + ": expected " + std::to_string(f.k) + " entries");
            }
            std::vector<Integer> v;
            for (std::size_t c = 0; c < a.size(); ++c) {
                v.push_back(get_integer(a[c], wp + "/" + std::to_string(c)));
            }
            try {
                p.weights.emplace_back(std::move(v));
            } catch (const std::invalid_argument &) {
                throw input_error(wp + ": weight vector must be nonzero");
            }
        }
        f.points.push_back(std::move(p));
    }
    if (f.points.empty()) {
        throw input_error("/points: at least one fixed point is required");
    }
    return f;
}

inline Manifold manifold_from_json(const nlohmann::json &j)
{
    const auto &t = detail::field(j, "", "type");
    if (!t.is_string()) {
        throw input_error("/type: expected a string");
    }
    const auto type = t.get<std::string>();
    if (type == "quasitoric") {
        return quasitoric_from_json(j);
    }
    if (type == "fixed_points") {
        return fixed_points_from_json(j);
    }
    throw input_error("/type: expected \"quasitoric\" or \"fixed_points\", got \"" + type + "\"");
}

inline nlohmann::json to_json(const QuasitoricPair &pair)
{
    using nlohmann::json;
    const auto &P = pair.polytope;
    json pj = {{"n", P.n}, {"m", P.m}, {"vertices", P.vertices}};
    if (P.normals) {
        json rows = json::array();
        for (std::size_t r = 0; r < P.normals->rows(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < P.normals->cols(); ++c) {
                row.push_back(detail::rational_json((*P.normals)(r, c)));
            }
            rows.push_back(row);
        }
        pj["normals"] = rows;
    }
    if (P.orientations) {
        pj["orientations"] = *P.orientations;
    }
    if (!P.labels.empty()) {
        pj["labels"] = P.labels;
    }
    json lam = json::array();
    for (std::size_t r = 0; r < pair.lambda.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < pair.lambda.cols(); ++c) {
            row.push_back(detail::integer_json(pair.lambda(r, c)));
        }
        lam.push_back(row);
    }
    return {{"type", "quasitoric"}, {"name", pair.name}, {"polytope", pj}, {"lambda", lam}};
}

inline nlohmann::json to_json(const FixedPointData &f)
{
    using nlohmann::json;
    json pts = json::array();
    for (const auto &p : f.points) {
        json ws = json::array();
        for (const auto &w : p.weights) {
            json v = json::array();
            for (const auto &x : w.coefficients()) {
                v.push_back(detail::integer_json(x));
            }
            ws.push_back(v);
        }
        pts.push_back({{"label", p.label}, {"sign", p.sign}, {"weights", ws}});
    }
    return {{"type", "fixed_points"}, {"n", f.n}, {"k", f.k}, {"points", pts}};
}

inline nlohmann::json to_json(const Manifold &m)
{
    return std::visit([](const auto &x) { return to_json(x); }, m);
}

namespace detail
{

inline std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto p = s.find(sep, start);
        out.emplace_back(s.substr(start, p == std::string_view::npos ? std::string_view::npos : p - start));
        if (p == std::string_view::npos) {
            return out;
        }
        start = p + 1;
    }
}

inline long parse_long(const std::string &s, const std::string &what)
{
    try {
        return to_long(parse_integer(s));
    } catch (const std::exception &) {
        throw input_error("builtin parameter " + what + ": '" + s + "' is not an integer");
    }
}

} // namespace detail

// "builtin:<family>[:<param>=<value>]*"
inline Manifold builtin_manifold(std::string_view id)
{
    const auto parts = detail::split(id, ':');
    if (parts.size() < 2 || parts[0] != "builtin") {
        throw input_error("builtin identifiers have the form builtin:<family>[:<param>=<value>]*");
    }
    const std::string &family = parts[1];
    std::map<std::string, std::string> params;
    for (std::size_t i = 2; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos) {
            throw input_error("builtin parameter '" + parts[i] + "' must be <name>=<value>");
        }
        params[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
    }
    auto reject_unknown = [&](std::initializer_list<const char *> allowed) {
        for (const auto &[k, v] : params) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char *a) { return k == a; })) {
                throw input_error("builtin '" + family + "' has no parameter '" + k + "'");
            }
        }
    };
    if (family.size() > 2 && family.compare(0, 2, "cp") == 0
        && family.find_first_not_of("0123456789", 2) == std::string::npos) {
        reject_unknown({"eps"});
        const int n = static_cast<int>(detail::parse_long(family.substr(2), "n"));
        if (n < 1 || n > 12) {
            throw input_error("builtin cp<n> needs 1 <= n <= 12");
        }
        std::vector<int> eps(static_cast<std::size_t>(n), -1);
        if (auto it = params.find("eps"); it != params.end()) {
            if (it->second.size() != static_cast<std::size_t>(n)
                || it->second.find_first_not_of("+-") != std::string::npos) {
                throw input_error("builtin cp" + std::to_string(n) + ": eps must be " + std::to_string(n)
                                  + " characters from '+' and '-'");
            }
            for (std::size_t i = 0; i < eps.size(); ++i) {
                eps[i] = it->second[i] == '+' ? 1 : -1;
            }
        }
        return simplex_pair(n, eps);
    }
    if (family == "square") {
        reject_unknown({"eps", "delta"});
        long e[2] = {-1, -1}, d[2] = {0, 0};
        auto pair_param = [&](const char *key, long *out) {
            if (auto it = params.find(key); it != params.end()) {
                const auto v = detail::split(it->second, ',');
                if (v.size() != 2) {
                    throw input_error(std::string("builtin square: ") + key + " needs two comma-separated integers");
                }
                out[0] = detail::parse_long(v[0], key);
                out[1] = detail::parse_long(v[1], key);
            }
        };
        pair_param("eps", e);
        pair_param("delta", d);
        try {
            return square_pair(static_cast<int>(e[0]), static_cast<int>(e[1]), d[0], d[1]);
        } catch (const std::invalid_argument &ex) {
            throw input_error(std::string("builtin square: ") + ex.what());
        }
    }
    if (family == "s6" || family == "flag3") {
        reject_unknown({});
        return dataset(family);
    }
    throw input_error("unknown builtin family '" + family + "'");
}

struct BuiltinInfo {
    std::string id;
    std::string kind;
    std::string n, k, points;
    std::string description;
};

inline std::vector<BuiltinInfo> list_builtins()
{
    return {
        {"builtin:cp<n>[:eps=<signs>]", "quasitoric", "n", "n", "n+1",
         "complex projective space over the simplex; eps defaults to all '-' (standard structure)"},
        {"builtin:cp1", "quasitoric", "1", "1", "2", "CP^1 standard"},
        {"builtin:cp2", "quasitoric", "2", "2", "3", "CP^2 standard"},
        {"builtin:cp3", "quasitoric", "3", "3", "4", "CP^3 standard"},
        {"builtin:cp4", "quasitoric", "4", "4", "5", "CP^4 standard"},
        {"builtin:square[:eps=<e1>,<e2>][:delta=<d1>,<d2>]", "quasitoric", "2", "2", "4",
         "square family, e1*e2 - d1*d2 = +-1; defaults eps=-1,-1 delta=0,0"},
        {"builtin:s6", "fixed_points", "3", "2", "2", "6-sphere with its almost complex T^2 action"},
        {"builtin:flag3", "fixed_points", "3", "3", "6", "flag manifold U(3)/T^3"},
    };
}

// A builtin identifier or a path to a JSON manifold file. Quasitoric input
// whose leading minor is unimodular is refined.
inline Manifold parse_manifold(const std::string &source)
{
    Manifold m;
    if (source.rfind("builtin:", 0) == 0) {
        m = builtin_manifold(source);
    } else {
        std::ifstream in(source);
        if (!in) {
            throw input_error("cannot open manifold file '" + source + "'");
        }
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error &e) {
            throw input_error(source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
        }
        try {
            m = manifold_from_json(j);
        } catch (const input_error &e) {
            throw input_error(source + ": " + e.what());
        }
    }
    if (auto *q = std::get_if<QuasitoricPair>(&m)) {
        const auto shape = validate_polytope(q->polytope);
        if (shape.valid && q->lambda.rows() == static_cast<std::size_t>(q->polytope.n)
            && q->lambda.cols() == static_cast<std::size_t>(q->polytope.m) && !is_refined(q->lambda, q->polytope.n)) {
            try {
                q->lambda = refine(q->polytope, q->lambda);
            } catch (const std::domain_error &) {
                // left unrefined; validation reports it
            }
        }
    }
    return m;
}

} // namespace toric

#endif
