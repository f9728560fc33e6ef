#ifndef TORIC_CLI_HPP
#define TORIC_CLI_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include <toric/fgl.hpp>
#include <toric/localize.hpp>
#include <toric/manifold_io.hpp>
#include <toric/quasitoric.hpp>
#include <toric/serialize.hpp>

namespace toric::cli
{

enum exit_code : int { pass = 0, input = 1, violation = 2 };

struct JobConfig {
    std::string command;
    std::string input;
    std::string genus = "hurewicz";
    // Hurewicz generator count; defaults to n + order.
    std::optional<int> genus_order;
    Mode mode = Mode::linear;
    int order = 6;
    std::string format = "text";
    bool flip_orientation = false;
    std::string pairing;
    bool search_pairings = false;
};

inline const std::vector<std::string> &commands()
{
    static const std::vector<std::string> c{"validate", "fixed-points",   "phi",     "genus",        "check-cf",
                                            "check-rigidity", "pairing", "special-check", "list-builtins"};
    return c;
}

inline void check_config(const JobConfig &job)
{
    if (std::find(commands().begin(), commands().end(), job.command) == commands().end()) {
        throw input_error("unknown command '" + job.command + "'");
    }
    if (job.order < 0) {
        throw input_error("--order must be >= 0");
    }
    if (std::find(catalog_names().begin(), catalog_names().end(), job.genus) == catalog_names().end()) {
        throw input_error("unknown genus '" + job.genus + "'");
    }
    if (job.genus_order && *job.genus_order < 0) {
        throw input_error("--genus-order must be >= 0");
    }
    if (job.format != "text" && job.format != "json") {
        throw input_error("--format must be text or json");
    }
    if (job.command != "list-builtins" && job.input.empty()) {
        throw input_error("--input is required for '" + job.command + "'");
    }
}

inline GenusSpec genus_for(const JobConfig &job, int n)
{
    const int working = std::max(job.order + n + 1, 1);
    if (job.genus == "hurewicz") {
        return catalog("hurewicz", working, job.genus_order.value_or(n + job.order));
    }
    return catalog(job.genus, working);
}

// "1-4,2-3" -> {{0,3},{1,2}}
inline std::vector<std::vector<std::size_t>> parse_blocks(const std::string &text)
{
    std::vector<std::vector<std::size_t>> blocks;
    for (const auto &b : detail::split(text, ',')) {
        std::vector<std::size_t> block;
        for (const auto &i : detail::split(b, '-')) {
            const long v = detail::parse_long(i, "--pairing");
            if (v < 1) {
                throw input_error("--pairing: point indices are 1-based");
            }
            block.push_back(static_cast<std::size_t>(v - 1));
        }
        blocks.push_back(std::move(block));
    }
    return blocks;
}

inline std::string block_string(const std::vector<std::size_t> &b)
{
    std::string s;
    for (std::size_t i : b) {
        s += (s.empty() ? "" : "-") + std::to_string(i + 1);
    }
    return s;
}

inline void print_fixed_points(const FixedPointData &f, std::ostream &out)
{
    out << "n: " << f.n << "\nk: " << f.k << "\npoints: " << f.points.size() << '\n';
    for (const auto &p : f.points) {
        out << p.label << ": sign " << (p.sign > 0 ? "+1" : "-1") << ", weights";
        for (const auto &w : p.weights) {
            out << ' ' << to_string(w);
        }
        out << '\n';
    }
}

inline nlohmann::json cf_json(const CfReport &r)
{
    nlohmann::json cf = nlohmann::json::array();
    for (const auto &e : r.cf.coeffs) {
        cf.push_back({{"l", e.l}, {"value", e.text}});
    }
    nlohmann::json j = {{"cf", cf}};
    j["genus_value"] = r.genus_value ? nlohmann::json(to_string(*r.genus_value)) : nlohmann::json(nullptr);
    j["pass"] = r.pass;
    j["first_violation"] = r.first_violation ? nlohmann::json(*r.first_violation) : nlohmann::json(nullptr);
    return j;
}

inline void print_cf(const CfReport &r, std::ostream &out)
{
    for (const auto &e : r.cf.coeffs) {
        out << "cf_" << e.l << ": " << e.text << '\n';
    }
    out << "genus_value: " << (r.genus_value ? to_string(*r.genus_value) : std::string("undefined")) << '\n';
    out << "pass: " << (r.pass ? "true" : "false") << '\n';
    if (r.first_violation) {
        out << "first_violation: cf_" << *r.first_violation << '\n';
    }
}

inline int run_list_builtins(const JobConfig &job, std::ostream &out)
{
    const auto list = list_builtins();
    if (job.format == "json") {
        nlohmann::json j = nlohmann::json::array();
        for (const auto &b : list) {
            j.push_back({{"id", b.id}, {"type", b.kind}, {"n", b.n}, {"k", b.k}, {"points", b.points},
                         {"description", b.description}});
        }
        out << j.dump(2) << '\n';
        return pass;
    }
    for (const auto &b : list) {
        out << b.id << "  " << b.kind << "  n=" << b.n << " k=" << b.k << " points=" << b.points << "  "
            << b.description << '\n';
    }
    return pass;
}

inline int run_validate(const JobConfig &job, const Manifold &m, std::ostream &out)
{
    ValidationReport r;
    if (const auto *q = std::get_if<QuasitoricPair>(&m)) {
        r = validate_pair(*q);
    } else {
        for (auto &v : check_fixed_point_data(std::get<FixedPointData>(m))) {
            r.fail(std::move(v));
        }
    }
    if (job.format == "json") {
        out << nlohmann::json{{"valid", r.valid}, {"violations", r.violations}}.dump(2) << '\n';
    } else {
        out << (r.valid ? "valid" : "invalid") << '\n';
        for (const auto &v : r.violations) {
            out << "  " << v << '\n';
        }
    }
    return r.valid ? pass : violation;
}

inline FixedPointData require_fixed_points(const JobConfig &job, const Manifold &m)
{
    if (const auto *q = std::get_if<QuasitoricPair>(&m)) {
        const auto r = validate_pair(*q);
        if (!r.valid) {
            throw input_error("invalid quasitoric pair: " + r.violations.front());
        }
    }
    FixedPointData f;
    try {
        f = fixed_points_of(m);
    } catch (const std::invalid_argument &e) {
        throw input_error(e.what());
    }
    if (auto v = check_fixed_point_data(f); !v.empty()) {
        throw input_error("invalid fixed point data: " + v.front());
    }
    return job.flip_orientation ? flip_orientation(std::move(f)) : f;
}

inline int run_command(const JobConfig &job, std::ostream &out)
{
    if (job.command == "list-builtins") {
        return run_list_builtins(job, out);
    }
    const Manifold m = parse_manifold(job.input);
    if (job.command == "validate") {
        return run_validate(job, m, out);
    }
    if (job.command == "special-check") {
        const auto *q = std::get_if<QuasitoricPair>(&m);
        if (!q) {
            throw input_error("special-check needs a quasitoric pair");
        }
        if (const auto r = validate_pair(*q); !r.valid) {
            throw input_error("invalid quasitoric pair: " + r.violations.front());
        }
        const bool special = special_check(q->lambda);
        if (!special) {
            if (job.format == "json") {
                out << nlohmann::json{{"special", false}, {"pass", false}}.dump(2) << '\n';
            } else {
                out << "special: false\npass: false\n";
            }
            return violation;
        }
        const auto r = special_vanishing_check(*q, job.order);
        if (job.format == "json") {
            nlohmann::json j = {{"special", true},
                                {"kv_value", to_string(r.kv_value)},
                                {"kv_rigid", r.kv_rigid},
                                {"pass", r.pass}};
            j["hr_value"] = r.hr_value ? nlohmann::json(to_string(*r.hr_value)) : nlohmann::json(nullptr);
            out << j.dump(2) << '\n';
        } else {
            out << "special: true\nkv_value: " << to_string(r.kv_value)
                << "\nkv_rigid: " << (r.kv_rigid ? "true" : "false") << '\n';
            if (r.hr_value) {
                out << "hr_value: " << to_string(*r.hr_value) << '\n';
            }
            out << "pass: " << (r.pass ? "true" : "false") << '\n';
        }
        return r.pass ? pass : violation;
    }

    const FixedPointData f = require_fixed_points(job, m);
    if (job.command == "fixed-points") {
        if (job.format == "json") {
            out << to_json(f).dump(2) << '\n';
        } else {
            print_fixed_points(f, out);
        }
        return pass;
    }
    if (job.command == "pairing") {
        if (job.search_pairings) {
            const auto found = search_vanishing_pairings(f);
            if (job.format == "json") {
                nlohmann::json j = nlohmann::json::array();
                for (const auto &p : found) {
                    nlohmann::json blocks = nlohmann::json::array();
                    for (const auto &b : p) {
                        blocks.push_back(block_string(b));
                    }
                    j.push_back(blocks);
                }
                out << nlohmann::json{{"vanishing_pairings", j}, {"pass", !found.empty()}}.dump(2) << '\n';
            } else {
                out << "vanishing_pairings: " << found.size() << '\n';
                for (const auto &p : found) {
                    std::string s;
                    for (const auto &b : p) {
                        s += (s.empty() ? "" : ",") + block_string(b);
                    }
                    out << "  " << s << '\n';
                }
                out << "pass: " << (found.empty() ? "false" : "true") << '\n';
            }
            return found.empty() ? violation : pass;
        }
        if (job.pairing.empty()) {
            throw input_error("pairing needs --pairing <blocks> or --search-pairings");
        }
        PairingReport r;
        try {
            r = pairing_obstruction(f, parse_blocks(job.pairing));
        } catch (const std::invalid_argument &e) {
            throw input_error(e.what());
        }
        if (job.format == "json") {
            nlohmann::json blocks = nlohmann::json::array();
            for (const auto &b : r.blocks) {
                blocks.push_back({{"block", block_string(b.points)}, {"vanishes", b.vanishes}});
            }
            out << nlohmann::json{{"blocks", blocks}, {"pass", r.vanishes}}.dump(2) << '\n';
        } else {
            for (const auto &b : r.blocks) {
                out << "block " << block_string(b.points) << ": " << (b.vanishes ? "vanishes" : "nonzero") << '\n';
            }
            out << "pass: " << (r.vanishes ? "true" : "false") << '\n';
        }
        return r.vanishes ? pass : violation;
    }

    const GenusSpec genus = genus_for(job, f.n);
    if (job.command == "phi") {
        try {
            const MultiSeries s = phi(f, genus, job.mode, job.order);
            if (job.format == "json") {
                out << nlohmann::json{{"phi", to_string(s)}, {"series", to_json(s)}, {"pass", true}}.dump(2) << '\n';
            } else {
                out << "phi: " << to_string(s) << '\n';
            }
            return pass;
        } catch (const not_divisible &e) {
            if (job.format == "json") {
                out << nlohmann::json{{"phi", nullptr}, {"error", e.what()}, {"pass", false}}.dump(2) << '\n';
            } else {
                out << "phi: undefined\nerror: " << e.what() << '\n';
            }
            return violation;
        }
    }
    if (job.command == "genus") {
        const auto r = check_conner_floyd(f, genus, 0, job.mode);
        if (job.format == "json") {
            out << cf_json(r).dump(2) << '\n';
        } else if (r.pass) {
            out << "genus_value: " << to_string(*r.genus_value) << '\n';
        } else {
            out << "genus_value: undefined\nfirst_violation: cf_" << *r.first_violation << '\n';
        }
        return r.pass ? pass : violation;
    }
    const auto r = job.command == "check-cf" ? check_conner_floyd(f, genus, job.order, job.mode)
                                             : rigidity_check(f, genus, job.order, job.mode);
    if (job.format == "json") {
        out << cf_json(r).dump(2) << '\n';
    } else {
        print_cf(r, out);
    }
    return r.pass ? pass : violation;
}

// Exit code: 0 pass, 1 input error, 2 relation or rigidity violation.
inline int run(const JobConfig &job, std::ostream &out, std::ostream &err)
{
    try {
        check_config(job);
        return run_command(job, out);
    } catch (const input_error &e) {
        err << "error: " << e.what() << '\n';
        return input;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return input;
    }
}

} // namespace toric::cli

#endif
