#pragma once

// Command-line front end. Needs CLI11.hpp and nlohmann/json (json.hpp) on the include path.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "embeddings.hpp"
#include "groups.hpp"
#include "metrics.hpp"
#include "weights.hpp"

namespace grpmetric::cli {

enum ExitCode : int { exit_pass = 0, exit_fail = 1, exit_error = 2 };

using Json = nlohmann::ordered_json;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

inline std::uint64_t to_uint(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 9) {
        throw std::invalid_argument("expected a non-negative integer for " + what + ", got '" + s + "'");
    }
    return std::stoull(s);
}

inline std::vector<std::uint64_t> numbers(const std::string& s, char sep, std::size_t count, const std::string& what) {
    const auto parts = split(s, sep);
    if (count != 0 && parts.size() != count) {
        throw std::invalid_argument(what + " expects " + std::to_string(count) + " numbers, got '" + s + "'");
    }
    std::vector<std::uint64_t> out;
    for (const auto& p : parts) out.push_back(to_uint(p, what));
    return out;
}

inline const FiniteGroup& need_group(const std::optional<FiniteGroup>& g, const std::string& kind) {
    if (!g) throw std::invalid_argument("metric '" + kind + "' needs --group");
    return *g;
}

inline MetricTable subgroup_base(const Subgroup& h, const std::string& base) {
    if (base == "hamming" || base == "ham" || base == "discrete") return discrete_metric(h.as_group());
    if (base == "lee") return lee_metric(h);
    throw std::invalid_argument("unknown base metric '" + base + "' (expected hamming or lee)");
}

inline MetricTable build_metric_raw(const std::optional<FiniteGroup>& group, const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
    const auto no_arg = [&] {
        if (colon != std::string::npos) throw std::invalid_argument("metric '" + kind + "' takes no arguments");
    };
    if (kind == "hamming" || kind == "ham") {
        no_arg();
        return hamming_metric(need_group(group, kind));
    }
    if (kind == "discrete") {
        no_arg();
        return discrete_metric(need_group(group, kind));
    }
    if (kind == "lee") {
        no_arg();
        const FiniteGroup& g = need_group(group, kind);
        if (!g.is_cyclic_family()) throw std::invalid_argument("lee needs a cyclic group, got " + g.name());
        return lee_metric(static_cast<std::uint32_t>(g.order()));
    }
    if (kind == "qadic" || kind == "rt") {
        const auto v = numbers(arg, ',', 2, kind);
        return kind == "qadic" ? qadic_metric(static_cast<std::uint32_t>(v[0]), static_cast<unsigned>(v[1]))
                               : rt_metric(static_cast<std::uint32_t>(v[0]), v[1]);
    }
    if (kind == "brt") {
        const auto comma = arg.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("brt expects brt:<q>,<m1>+<m2>+...");
        const auto q = to_uint(arg.substr(0, comma), "brt alphabet");
        std::vector<std::size_t> parts;
        for (auto v : numbers(arg.substr(comma + 1), '+', 0, "brt partition")) parts.push_back(v);
        return brt_metric(FiniteGroup::cyclic(static_cast<std::uint32_t>(q)), parts);
    }
    if (kind == "psi") {
        // psi:<h> routes Z_m through its subgroup of order h, giving words of length m/h.
        const FiniteGroup& g = need_group(group, kind);
        if (!g.is_cyclic_family()) throw std::invalid_argument("psi needs a cyclic group, got " + g.name());
        const auto h = to_uint(arg, "psi subgroup order");
        if (h == 0 || g.order() % h != 0) {
            throw std::invalid_argument("psi subgroup order " + arg + " does not divide " + std::to_string(g.order()));
        }
        return psi_metric(static_cast<std::uint32_t>(g.order()), static_cast<std::uint32_t>(g.order() / h));
    }
    if (kind == "chain") {
        const FiniteGroup& g = need_group(group, kind);
        if (arg.rfind("geometric:", 0) == 0) return chain_metric(geometric_chain(g, to_uint(arg.substr(10), "chain index")));
        std::vector<std::size_t> orders;
        for (auto v : numbers(arg, '|', 0, "chain orders")) orders.push_back(v);
        auto chain = chain_with_orders(g, orders);
        if (!chain) throw std::invalid_argument("no subgroup chain of " + g.name() + " with orders " + arg);
        return chain_metric(*chain);
    }
    if (kind == "ext") {
        const FiniteGroup& g = need_group(group, kind);
        const auto colon2 = arg.find(':');
        const auto k = to_uint(arg.substr(0, colon2), "ext subgroup order");
        const std::string base = colon2 == std::string::npos ? std::string("hamming") : arg.substr(colon2 + 1);
        auto h = smallest_subgroup_of_order(g, k);
        if (!h) throw std::invalid_argument(g.name() + " has no subgroup of order " + std::to_string(k));
        return extend_metric(g, *h, subgroup_base(*h, base));
    }
    if (kind == "hom" || kind == "homogeneous") {
        const auto v = numbers(arg, ',', 2, kind);
        return homogeneous_metric(static_cast<std::uint32_t>(v[0]), static_cast<unsigned>(v[1]));
    }
    if (kind == "diag" || kind == "diagonal") {
        // The group is the whole carrier X^(r^n); its first factor is X.
        const FiniteGroup& g = need_group(group, kind);
        const auto v = numbers(arg, ',', 2, kind);
        const auto len = checked_pow(v[0], v[1]);
        if (g.family() != FiniteGroup::Family::product || g.factors().size() != len) {
            throw std::invalid_argument("diag:" + arg + " needs a group with " + std::to_string(len) + " factors");
        }
        return diagonal_chain_metric(g.factors().front(), static_cast<std::uint32_t>(v[0]), static_cast<unsigned>(v[1]));
    }
    throw std::invalid_argument("unknown metric '" + spec + "'");
}

}  // namespace detail

/// Parses a metric spec; when a group is given the metric's carrier must carry the
/// same multiplication table.
inline MetricTable build_metric(const std::optional<FiniteGroup>& group, const std::string& spec) {
    MetricTable d = detail::build_metric_raw(group, spec);
    if (group) {
        if (!d.group() || !d.group()->same_table(*group)) {
            throw std::invalid_argument("metric '" + spec + "' does not live on " + group->name());
        }
        d = d.with_group(*group);
    }
    return d;
}

inline Json to_json(const EnumeratorPolynomial& p) {
    return Json{{"coeffs", p.coeffs()}, {"carrier", p.total()}};
}

inline Json to_json(const VerificationReport& r) {
    Json params = Json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    Json j{{"check", r.check}, {"params", params}, {"status", to_string(r.status)}};
    j["witness"] = r.witness ? Json(*r.witness) : Json(nullptr);
    j["pairs_checked"] = r.pairs_checked;
    j["triples_checked"] = r.triples_checked;
    j["notes"] = r.notes;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline Json to_json(const EmbeddingMap& f) {
    return Json{{"kind", to_string(f.kind())}, {"source", f.source().size()}, {"target", f.target().size()}, {"image", f.image()}};
}

inline Json to_json(const WordEmbedding& f) {
    Json words = Json::array();
    for (const auto& w : f.words()) words.push_back(w);
    return Json{{"kind", to_string(f.kind())}, {"source", f.source().size()}, {"alphabet", f.alphabet_size()},
                {"length", f.length()}, {"image", words}};
}

inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

/// Header row of element labels, then one row of distances per element.
inline std::string distmatrix_csv(const MetricTable& d) {
    std::ostringstream os;
    for (Element x = 0; x < d.size(); ++x) {
        if (x) os << ',';
        os << csv_cell(d.group() ? d.group()->label(x) : std::to_string(x));
    }
    os << '\n';
    for (Element x = 0; x < d.size(); ++x) {
        for (Element y = 0; y < d.size(); ++y) os << (y ? "," : "") << d(x, y);
        os << '\n';
    }
    return os.str();
}

/// Complete graph on element indices with distances as integer edge labels.
inline std::string distance_dot(const MetricTable& d) {
    std::ostringstream os;
    os << "graph {\n";
    for (Element x = 0; x < d.size(); ++x)
        for (Element y = x + 1; y < d.size(); ++y) os << "  " << x << " -- " << y << " [label=" << d(x, y) << "];\n";
    os << "}\n";
    return os.str();
}

namespace detail {

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << text;
    if (!f.flush()) throw std::runtime_error("failed writing '" + path + "'");
}

inline std::optional<FiniteGroup> group_option(const std::string& spec) {
    if (spec.empty()) return std::nullopt;
    return make_group(spec);
}

inline Element base_point(const MetricTable& d, const std::string& base) {
    if (base.empty()) return d.zero();
    if (base.find_first_not_of("0123456789") == std::string::npos) {
        const auto x = to_uint(base, "--base");
        if (x >= d.size()) throw std::out_of_range("--base " + base + " outside the carrier of size " + std::to_string(d.size()));
        return static_cast<Element>(x);
    }
    if (d.group())
        for (Element x = 0; x < d.size(); ++x)
            if (d.group()->label(x) == base) return x;
    throw std::invalid_argument("unknown base point '" + base + "'");
}

}  // namespace detail

/// Runs the tool on already split arguments (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Group metrics: enumerators, verifications and exports", "grpmetric"};
    app.require_subcommand(1);
    // verify takes --h (a subgroup order), so help is long-form only.
    app.set_help_flag("--help", "print this help and exit");

    std::string group_spec, metric_spec, base, output, kind;
    bool json = false, variants = false, listing = false, list_checks = false;
    std::string check;
    CheckParams params;
    std::map<std::string, std::string> raw;

    auto* enumerate = app.add_subcommand("enumerate", "weight enumerator of a metric");
    enumerate->add_option("--group", group_spec, "group descriptor, e.g. Z12, Z2^3, D4");
    enumerate->add_option("--metric", metric_spec, "metric spec, e.g. hamming, qadic:2,3, psi:2")->required();
    enumerate->add_option("--base", base, "base point (index or label); defaults to the identity");
    enumerate->add_flag("--json", json, "print JSON instead of the polynomial");

    auto* verify = app.add_subcommand("verify", "run a named verification");
    verify->set_help_flag("--help", "print this help and exit");
    verify->add_option("check", check, "check name");
    verify->add_flag("--list", list_checks, "list the available checks");
    for (const char* key : {"q", "n", "p", "m", "h", "group", "orders", "g1", "g2"}) {
        verify->add_option(std::string("--") + key, raw[key], "check parameter (see --list)");
    }
    verify->add_flag("--variants", variants, "also compare every coordinate/unit variant (m <= 24)");

    auto* exp = app.add_subcommand("export", "write a distance matrix, distance graph or embedding");
    std::string what;
    exp->add_option("what", what, "distmatrix | dot | embedding")->required()->check(CLI::IsMember({"distmatrix", "dot", "embedding"}));
    exp->add_option("--group", group_spec, "group descriptor");
    exp->add_option("--metric", metric_spec, "metric spec");
    exp->add_option("--kind", kind, "embedding kind: base_q | psi | rm1 | chain");
    std::string eq, en, em, ep, eorders;
    exp->add_option("--q", eq, "alphabet size (base_q, chain)");
    exp->add_option("--n", en, "exponent (base_q, rm1) or word length (psi)");
    exp->add_option("--m", em, "cyclic order (psi)");
    exp->add_option("--p", ep, "prime (rm1)");
    exp->add_option("--orders", eorders, "chain term orders a|b|c (chain)");
    exp->add_flag("--listing", listing, "one 'x |-> y' line per element instead of JSON");
    exp->add_option("--output,-o", output, "output path (default stdout)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_error;
    }

    try {
        if (enumerate->parsed()) {
            const auto g = detail::group_option(group_spec);
            const MetricTable d = build_metric(g, metric_spec);
            const auto poly = weight_enumerator(d, detail::base_point(d, base));
            out << (json ? to_json(poly).dump() : poly.to_string()) << '\n';
            return exit_pass;
        }
        if (verify->parsed()) {
            if (list_checks) {
                for (const auto& c : check_registry()) out << c.name << "  " << c.summary << '\n';
                return exit_pass;
            }
            if (check.empty()) throw std::invalid_argument("verify needs a check name (see verify --list)");
            for (const auto& [k, v] : raw)
                if (!v.empty()) params[k] = v;
            if (variants) params["variants"] = "1";
            const VerificationReport r = run_check(check, params);
            out << to_json(r).dump(2) << '\n';
            if (r.status == CheckStatus::error) err << "error: " << r.witness.value_or("") << '\n';
            return r.status == CheckStatus::pass ? exit_pass : r.status == CheckStatus::fail ? exit_fail : exit_error;
        }
        if (exp->parsed()) {
            std::string text;
            if (what == "embedding") {
                const auto num = [](const std::string& s, const char* name) {
                    if (s.empty()) throw std::invalid_argument(std::string("embedding needs --") + name);
                    return detail::to_uint(s, std::string("--") + name);
                };
                const auto render = [&](const auto& f) { return listing ? f.listing() : to_json(f).dump() + "\n"; };
                if (kind == "base_q") {
                    text = render(base_q_isometry(static_cast<std::uint32_t>(num(eq, "q")), static_cast<unsigned>(num(en, "n"))));
                } else if (kind == "psi") {
                    text = render(psi_embedding(static_cast<std::uint32_t>(num(em, "m")), static_cast<std::uint32_t>(num(en, "n"))));
                } else if (kind == "rm1") {
                    text = render(rm1_embedding(static_cast<std::uint32_t>(num(ep, "p")), static_cast<unsigned>(num(en, "n"))));
                } else if (kind == "chain") {
                    const FiniteGroup g = make_group(group_spec.empty() ? throw std::invalid_argument("chain embedding needs --group")
                                                                        : group_spec);
                    std::optional<SubgroupChain> chain;
                    if (!eorders.empty()) {
                        std::vector<std::size_t> orders;
                        for (auto v : detail::numbers(eorders, '|', 0, "--orders")) orders.push_back(v);
                        chain = chain_with_orders(g, orders);
                        if (!chain) throw std::invalid_argument("no chain of " + g.name() + " with orders " + eorders);
                    } else {
                        chain = geometric_chain(g, num(eq, "q"));
                    }
                    text = render(chain_isometry(*chain).map);
                } else {
                    throw std::invalid_argument("unknown embedding kind '" + kind + "' (base_q | psi | rm1 | chain)");
                }
            } else {
                if (metric_spec.empty()) throw std::invalid_argument(what + " needs --metric");
                const MetricTable d = build_metric(detail::group_option(group_spec), metric_spec);
                text = what == "dot" ? distance_dot(d) : distmatrix_csv(d);
            }
            detail::emit(text, output, out);
            return exit_pass;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

}  // namespace grpmetric::cli
