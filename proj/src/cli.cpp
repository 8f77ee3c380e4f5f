#include "cliffring/cli.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "cliffring/clifford.hpp"
#include "cliffring/groups.hpp"
#include "cliffring/orthogonal.hpp"
#include "cliffring/subalgebra.hpp"

namespace cliffring {

using nlohmann::json;

ConfigError::ConfigError(const std::string& what, size_t l, size_t c, std::string r)
    : Error(what), line(l), column(c), rule(std::move(r)) {}

Instance Config::instance() const {
    if (!ring) throw ConfigError("config: no ring given", 0, 0, "missing-ring");
    return Instance{*ring, qdiag, gram};
}

namespace {

class Parser {
public:
    Parser(std::string_view text, std::string_view source) : s_(text), src_(source) {}

    // Values keyed by "block.key" (or "key" at top level) with their positions.
    std::map<std::string, std::pair<json, std::pair<size_t, size_t>>> run() {
        std::map<std::string, std::pair<json, std::pair<size_t, size_t>>> out;
        std::string block;
        for (skip_space(); pos_ < s_.size(); skip_space()) {
            if (s_[pos_] == '[') {
                ++pos_;
                skip_inline();
                block = word();
                if (block.empty()) fail("expected a block name");
                skip_inline();
                expect(']');
                continue;
            }
            size_t l = line_, c = col();
            std::string key = word();
            if (key.empty()) fail(std::string("unexpected character '") + s_[pos_] + "'");
            skip_inline();
            expect('=');
            skip_inline();
            json v = value();
            std::string full = block.empty() ? key : block + "." + key;
            if (out.count(full)) throw ConfigError(where(l, c) + ": semantic error [duplicate-key]: " + full + " given twice", l, c, "duplicate-key");
            out[full] = {v, {l, c}};
        }
        return out;
    }

    std::string where(size_t l, size_t c) const { return std::string(src_) + ":" + std::to_string(l) + ":" + std::to_string(c); }

private:
    std::string_view s_;
    std::string_view src_;
    size_t pos_ = 0, line_ = 1, line_start_ = 0;

    size_t col() const { return pos_ - line_start_ + 1; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ConfigError(where(line_, col()) + ": syntax error: " + msg, line_, col(), "syntax");
    }

    void advance() {
        if (s_[pos_] == '\n') {
            ++line_;
            line_start_ = pos_ + 1;
        }
        ++pos_;
    }

    void skip_space() {
        while (pos_ < s_.size()) {
            char ch = s_[pos_];
            if (ch == '#') {
                while (pos_ < s_.size() && s_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(ch)) || ch == ';' || ch == ',') {
                advance();
            } else {
                break;
            }
        }
    }

    void skip_inline() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) advance();
    }

    void expect(char ch) {
        if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
        advance();
    }

    std::string word() {
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-')) advance();
        return std::string(s_.substr(start, pos_ - start));
    }

    json value() {
        if (pos_ >= s_.size()) fail("expected a value");
        char ch = s_[pos_];
        if (ch == '"') return quoted();
        if (ch == '[') return list();
        size_t start = pos_;
        while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != ',' && s_[pos_] != ';' &&
               s_[pos_] != ']' && s_[pos_] != '#')
            advance();
        std::string tok(s_.substr(start, pos_ - start));
        if (tok.empty()) fail("expected a value");
        return number_or_string(tok);
    }

    static json number_or_string(const std::string& tok) {
        size_t i = tok[0] == '-' || tok[0] == '+' ? 1 : 0;
        if (i < tok.size() && std::all_of(tok.begin() + i, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            try {
                return json(std::stoll(tok));
            } catch (const std::out_of_range&) {
            }
        }
        return json(tok);
    }

    json quoted() {
        advance();
        std::string out;
        while (true) {
            if (pos_ >= s_.size() || s_[pos_] == '\n') fail("unterminated string");
            char ch = s_[pos_];
            advance();
            if (ch == '"') break;
            if (ch == '\\') {
                if (pos_ >= s_.size()) fail("unterminated string");
                out += s_[pos_];
                advance();
                continue;
            }
            out += ch;
        }
        return out;
    }

    json list() {
        size_t l = line_, c = col();
        advance();
        json arr = json::array();
        while (true) {
            skip_space();
            if (pos_ >= s_.size()) throw ConfigError(where(l, c) + ": syntax error: unterminated list", l, c, "syntax");
            if (s_[pos_] == ']') {
                advance();
                return arr;
            }
            arr.push_back(value());
        }
    }
};

std::vector<int64_t> int_list(const json& v, const std::string& key, const std::string& where) {
    if (!v.is_array()) throw ConfigError(where + ": semantic error [int-list]: " + key + " must be a list of integers", 0, 0, "int-list");
    std::vector<int64_t> out;
    for (const auto& x : v) {
        if (!x.is_number_integer()) throw ConfigError(where + ": semantic error [int-list]: " + key + " must be a list of integers", 0, 0, "int-list");
        out.push_back(x.get<int64_t>());
    }
    return out;
}

}  // namespace

Config parse_config(std::string_view text, std::string_view source) {
    Parser p(text, source);
    auto entries = p.run();
    Config cfg;
    auto take = [&](const std::string& key) -> std::optional<std::pair<json, std::pair<size_t, size_t>>> {
        for (const std::string& k : {key, "module." + key}) {
            auto it = entries.find(k);
            if (it != entries.end()) {
                auto v = it->second;
                entries.erase(it);
                return v;
            }
        }
        return std::nullopt;
    };
    auto sem = [&](const std::pair<size_t, size_t>& at, const std::string& rule, const std::string& msg) {
        return ConfigError(p.where(at.first, at.second) + ": semantic error [" + rule + "]: " + msg, at.first, at.second, rule);
    };
    std::pair<size_t, size_t> ring_at{0, 0};
    if (auto r = take("ring")) {
        ring_at = r->second;
        if (!r->first.is_string()) throw sem(r->second, "ring-descriptor", "ring must be a string");
        try {
            RingDescriptor::parse(r->first.get<std::string>());
        } catch (const Error& e) {
            throw sem(r->second, "ring-descriptor", e.what());
        }
        cfg.ring = r->first.get<std::string>();
    }
    auto rank = take("rank");
    auto qdiag = take("qdiag");
    auto gram = take("gram");
    if (qdiag) cfg.qdiag = int_list(qdiag->first, "qdiag", p.where(qdiag->second.first, qdiag->second.second));
    if (rank) {
        if (!rank->first.is_number_integer() || rank->first.get<int64_t>() < 0) throw sem(rank->second, "rank", "rank must be a non-negative integer");
        size_t n = rank->first.get<size_t>();
        if (!qdiag) cfg.qdiag.assign(n, 0);
        else if (cfg.qdiag.size() != n)
            throw sem(qdiag->second, "rank-mismatch", "qdiag has " + std::to_string(cfg.qdiag.size()) + " entries, rank is " + std::to_string(n));
    }
    if (gram) {
        const auto& g = gram->first;
        std::vector<std::vector<int64_t>> rows;
        if (!g.is_array()) throw sem(gram->second, "gram-shape", "gram must be a list of rows");
        for (const auto& row : g) rows.push_back(int_list(row, "gram row", p.where(gram->second.first, gram->second.second)));
        size_t n = cfg.qdiag.size();
        if (rows.size() != n || std::any_of(rows.begin(), rows.end(), [&](auto& r) { return r.size() != n; }))
            throw sem(gram->second, "gram-shape", "gram must be " + std::to_string(n) + "x" + std::to_string(n));
        cfg.gram = rows;
    }
    if (cfg.ring) {
        try {
            cfg.instance().build();
        } catch (const Error& e) {
            std::string msg = e.what();
            std::string rule = msg.substr(0, msg.find(':'));
            auto at = gram ? gram->second : qdiag ? qdiag->second : ring_at;
            throw sem(at, rule, msg.substr(msg.find(':') == std::string::npos ? 0 : msg.find(':') + 2));
        }
    } else if (qdiag || gram || rank) {
        auto at = qdiag ? qdiag->second : gram ? gram->second : rank->second;
        throw sem(at, "missing-ring", "module given without a ring");
    }
    for (auto& [k, v] : entries) cfg.params[k] = v.first;
    return cfg;
}

namespace {

struct Session {
    Config cfg;
    QuadraticModule m;
    AlgebraPtr alg;
    uint64_t budget;
    uint64_t seed;
};

json vec_json(const Vec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.to_string());
    return a;
}

json mat_json(const Matrix& A) { return A.to_strings(); }

json sub_json(const Subalgebra& s) {
    json g = json::array();
    for (const auto& e : s.generators) g.push_back(e.to_string());
    return {{"kind", to_string(s.kind)}, {"generators", g}};
}

RingElement ring_param(const Session& s, const std::string& key) {
    if (!s.cfg.params.contains(key)) throw ConfigError("config: missing parameter " + key, 0, 0, "missing-parameter");
    const json& v = s.cfg.params[key];
    const Ring& r = s.m.ring();
    if (v.is_number_integer()) return r.from_int(v.get<int64_t>());
    if (v.is_string()) return r.parse_element(v.get<std::string>());
    throw ConfigError("config: parameter " + key + " must be a ring element", 0, 0, "ring-element");
}

Vec vec_param(const Session& s, const std::string& key, size_t n) {
    if (!s.cfg.params.contains(key)) throw ConfigError("config: missing parameter " + key, 0, 0, "missing-parameter");
    const json& v = s.cfg.params[key];
    if (!v.is_array() || v.size() != n)
        throw ConfigError("config: parameter " + key + " must be a list of " + std::to_string(n) + " entries", 0, 0, "vector-length");
    const Ring& r = s.m.ring();
    Vec out;
    for (const auto& x : v) {
        if (x.is_number_integer()) out.push_back(r.from_int(x.get<int64_t>()));
        else if (x.is_string()) out.push_back(r.parse_element(x.get<std::string>()));
        else throw ConfigError("config: parameter " + key + " has a non-scalar entry", 0, 0, "ring-element");
    }
    return out;
}

json member_json(const CliffordGroupElement& g) {
    json j{{"alpha", g.alpha.to_string()}, {"inverse", g.inverse.to_string()}, {"flavor", g.flavor()}, {"norm", g.norm.to_string()}};
    if (g.pi) j["pi"] = mat_json(*g.pi);
    if (g.pi_tilde) j["pi_tilde"] = mat_json(*g.pi_tilde);
    json w = json::array();
    for (const auto& e : homogeneity_witnesses(g.alpha)) w.push_back(e.to_string());
    j["homogeneity_witnesses"] = w;
    return j;
}

json cmd_mul(const Session& s, const std::vector<std::string>& a) {
    if (a.size() < 2) throw ConfigError("mul needs at least two elements", 0, 0, "usage");
    CliffordElement acc = s.alg->parse(a[0]);
    for (size_t i = 1; i < a.size(); ++i) acc = acc * s.alg->parse(a[i]);
    return {{"product", acc.to_string()}};
}

json cmd_invert(const Session& s, const std::vector<std::string>& a) {
    if (a.size() != 1) throw ConfigError("invert needs one element", 0, 0, "usage");
    auto inv = invert(s.alg->parse(a[0]));
    return {{"element", s.alg->parse(a[0]).to_string()}, {"invertible", inv.has_value()}, {"inverse", inv ? json(inv->to_string()) : json(nullptr)}};
}

json cmd_centers(const Session& s) {
    return {{"center", sub_json(center(s.alg))},
            {"even_center", sub_json(even_center(s.alg))},
            {"twisted_center", sub_json(twisted_center(s.alg))},
            {"centralizer_even", sub_json(centralizer_even(s.alg))},
            {"exterior_perp_image", sub_json(exterior_perp_image(s.alg))}};
}

json cmd_kernels(const Session& s) {
    auto kd = kernel_perp(s.m);
    json perp = json::array(), qperp = json::array();
    for (const auto& v : kd.perp) perp.push_back(vec_json(v));
    for (const auto& v : kd.qperp) qperp.push_back(vec_json(v));
    return {{"perp", perp}, {"qperp", qperp}, {"method", to_string(kd.method)}};
}

json cmd_reflect(const Session& s) {
    auto d = reflection_data(s.m, ring_param(s, "e"), vec_param(s, "x", s.m.rank()));
    Matrix A = e_reflection(s.m, d);
    auto lift = lift_reflection(s.alg, d.e, d.x);
    return {{"e", d.e.to_string()},         {"x", vec_json(d.x)},           {"t", d.t.to_string()},
            {"matrix", mat_json(A)},        {"det", determinant(A).to_string()}, {"trivial", is_trivial_reflection(s.m, d)},
            {"lift", member_json(lift)}};
}

json cmd_euler(const Session& s) {
    auto d = euler_data(s.m, vec_param(s, "u", s.m.rank()), vec_param(s, "x", s.m.rank()));
    Matrix A = euler_transformation(s.m, d);
    auto lift = lift_euler(s.alg, d.u, d.x);
    return {{"u", vec_json(d.u)},
            {"x", vec_json(d.x)},
            {"matrix", mat_json(A)},
            {"det", determinant(A).to_string()},
            {"det_condition", euler_det_condition(s.m, d)},
            {"lift", member_json(lift)}};
}

json cmd_gamma_test(const Session& s, const std::vector<std::string>& a) {
    if (a.size() != 1) throw ConfigError("gamma-test needs one element", 0, 0, "usage");
    CliffordElement x = s.alg->parse(a[0]);
    std::string why;
    auto g = classify(x, &why);
    json j{{"element", x.to_string()}, {"invertible", g.has_value()}};
    if (!why.empty()) j["reason"] = why;
    if (!g) return j;
    j["member"] = member_json(*g);
    json inv = json::array();
    for (const auto& [name, ok] : involution_action(*g).checks) inv.push_back({{"name", name}, {"ok", ok}});
    j["involutions"] = inv;
    return j;
}

json cmd_pi(const Session& s, const std::vector<std::string>& a) {
    if (a.size() != 1) throw ConfigError("pi needs one element", 0, 0, "usage");
    auto g = classify(s.alg->parse(a[0]));
    if (!g) throw PreconditionFailed("element is not invertible");
    json j{{"element", g->alpha.to_string()}, {"flavor", g->flavor()}};
    if (g->pi) j["pi"] = mat_json(*g->pi);
    if (g->pi_tilde) j["pi_tilde"] = mat_json(*g->pi_tilde);
    if (!g->pi && !g->pi_tilde) throw PreconditionFailed("element lies in neither Clifford group");
    return j;
}

json cmd_enumerate(const Session& s, const std::vector<std::string>& a) {
    std::string what = a.empty() ? "gamma" : a[0];
    json items = json::array();
    if (what == "orthogonal" || what == "orthogonal-perp") {
        auto maps = enumerate_orthogonal(s.m, what == "orthogonal" ? Restrict::All : Restrict::TrivialOnPerp, s.budget);
        for (const auto& f : maps) items.push_back({{"matrix", mat_json(f.mat)}, {"bijective", f.bijective}});
    } else if (what == "gamma" || what == "gamma-tilde") {
        for (const auto& g : enumerate_group(s.alg, what == "gamma" ? GroupFlavor::Clifford : GroupFlavor::Paravector, s.budget))
            items.push_back(member_json(g));
    } else if (what == "idempotents") {
        for (const auto& e : s.m.ring().idempotents()) items.push_back(e.to_string());
    } else {
        throw ConfigError("enumerate: unknown target " + what + " (orthogonal, orthogonal-perp, gamma, gamma-tilde, idempotents)", 0, 0,
                          "usage");
    }
    return {{"target", what}, {"count", items.size()}, {"items", items}};
}

Session session(const Config& cfg, uint64_t budget, uint64_t seed) {
    QuadraticModule m = cfg.instance().build();
    return Session{cfg, m, CliffordAlgebra::create(m), budget, seed};
}

// Renders a result object as indented key/value lines with matrices as rows.
void render(const json& j, std::ostream& out, int indent) {
    std::string pad(indent, ' ');
    auto is_matrix = [](const json& v) {
        return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json& r) { return r.is_array(); });
    };
    auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    for (auto it = j.begin(); it != j.end(); ++it) {
        const json& v = it.value();
        if (is_matrix(v)) {
            out << pad << it.key() << ":\n";
            for (const auto& row : v) {
                out << pad << "  ";
                for (size_t k = 0; k < row.size(); ++k) out << (k ? " " : "") << scalar(row[k]);
                out << "\n";
            }
        } else if (v.is_object()) {
            out << pad << it.key() << ":\n";
            render(v, out, indent + 2);
        } else if (v.is_array() && !v.empty() && v[0].is_object()) {
            out << pad << it.key() << ":\n";
            for (const auto& item : v) {
                render(item, out, indent + 4);
                out << "\n";
            }
        } else if (v.is_array()) {
            out << pad << it.key() << ": ";
            for (size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << scalar(v[k]);
            out << "\n";
        } else {
            out << pad << it.key() << ": " << scalar(v) << "\n";
        }
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Clifford algebras and Clifford groups of quadratic modules over commutative rings"};
    std::string config_path;
    bool pretty = false, as_json = false;
    uint64_t budget = 10'000'000, seed = 1;
    std::string command;
    std::vector<std::string> rest;
    app.add_option("--config", config_path, "config file (key=value, optional [module] block)");
    app.add_flag("--pretty", pretty, "human-readable tables instead of JSON");
    app.add_flag("--json", as_json, "JSON output (the default)");
    app.add_option("--budget", budget, "enumeration cap");
    app.add_option("--seed", seed, "seed for sampled checks");
    app.add_option("command", command, "mul, invert, centers, kernels, reflect, euler, gamma-test, pi, enumerate, check, suite")->required();
    app.add_option("args", rest, "elements, a check id, or extra key=value settings");
    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }
    if (as_json) pretty = false;

    std::string text;
    std::string source = "args";
    if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) {
            err << "cannot read config " << config_path << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
        source = config_path;
    }
    std::vector<std::string> positional;
    std::string inline_cfg;
    for (const auto& a : rest) {
        if (a.find('=') != std::string::npos) inline_cfg += a + "\n";
        else positional.push_back(a);
    }
    Config cfg;
    try {
        cfg = inline_cfg.empty() ? parse_config(text, source) : parse_config(text + "\n" + inline_cfg, source + "+args");
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        json result;
        if (command == "suite") {
            std::vector<CheckSpec> specs;
            if (cfg.has_module()) {
                for (const auto& id : positional) specs.push_back(CheckSpec{id, cfg.instance(), budget, seed});
            }
            bool defaults = !cfg.has_module() || positional.empty();
            std::vector<CheckReport> reports;
            if (!cfg.has_module() && !positional.empty()) {
                for (const auto& id : positional)
                    for (const auto& in : default_instances(id)) specs.push_back(CheckSpec{id, in, budget, seed});
                defaults = false;
            }
            reports = run_suite(specs, defaults, budget, seed);
            if (pretty) out << to_table(reports);
            else out << to_json(reports).dump(2) << "\n";
            return suite_passed(reports) ? 0 : 1;
        }
        if (command == "check") {
            if (positional.size() != 1) throw ConfigError("check needs exactly one id", 0, 0, "usage");
            const std::string& id = positional[0];
            if (!in_registry(id)) {
                err << "unknown check id: " << id << "\n";
                return 2;
            }
            std::vector<CheckSpec> specs;
            if (cfg.has_module()) specs.push_back(CheckSpec{id, cfg.instance(), budget, seed});
            else
                for (const auto& in : default_instances(id)) specs.push_back(CheckSpec{id, in, budget, seed});
            std::vector<CheckReport> reports;
            for (const auto& s : specs) reports.push_back(run_check(s));
            if (pretty) out << to_table(reports);
            else out << to_json(reports).dump(2) << "\n";
            return suite_passed(reports) ? 0 : 1;
        }
        if (!cfg.has_module()) throw ConfigError("command " + command + " needs a ring and module (ring=..., qdiag=[...])", 0, 0, "missing-ring");
        Session s = session(cfg, budget, seed);
        if (command == "mul") result = cmd_mul(s, positional);
        else if (command == "invert") result = cmd_invert(s, positional);
        else if (command == "centers") result = cmd_centers(s);
        else if (command == "kernels") result = cmd_kernels(s);
        else if (command == "reflect") result = cmd_reflect(s);
        else if (command == "euler") result = cmd_euler(s);
        else if (command == "gamma-test") result = cmd_gamma_test(s, positional);
        else if (command == "pi") result = cmd_pi(s, positional);
        else if (command == "enumerate") result = cmd_enumerate(s, positional);
        else {
            err << "unknown command: " << command << "\n";
            return 2;
        }
        json full{{"command", command}, {"instance", cfg.instance().to_json()}, {"result", result}};
        if (pretty) render(full, out, 0);
        else out << full.dump(2) << "\n";
        return 0;
    } catch (const ConfigError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace cliffring
