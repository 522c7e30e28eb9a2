#include "friedrichs/config.hpp"

#include "friedrichs/error.hpp"
#include "friedrichs/hydrogen.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace friedrichs {

namespace {

using nlohmann::json;

[[noreturn]] void parse_error(const std::string& origin, const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Parse, origin + ": " + where + ": " + what);
}

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& origin,
                const std::string& where) {
    if (!obj.is_object()) parse_error(origin, where, "expected an object");
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) parse_error(origin, where, "unknown key '" + key + "'");
    }
}

double number(const json& obj, const std::string& key, const std::string& origin, const std::string& where) {
    if (!obj.contains(key)) parse_error(origin, where, "missing '" + key + "'");
    const auto& v = obj.at(key);
    if (!v.is_number()) parse_error(origin, where + "/" + key, "expected a number");
    return v.get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& origin,
                 const std::string& where) {
    return obj.contains(key) ? number(obj, key, origin, where) : fallback;
}

cplx complex_pair(const json& v, const std::string& origin, const std::string& where) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
        parse_error(origin, where, "expected a number or a [re, im] pair");
    return {v[0].get<double>(), v[1].get<double>()};
}

FormFactor form_factor(const json& j, const std::string& origin, const std::string& where) {
    if (!j.is_object()) parse_error(origin, where, "expected an object");
    if (!j.contains("family") || !j.at("family").is_string()) parse_error(origin, where, "missing string 'family'");
    const std::string family = j.at("family").get<std::string>();
    const cplx q{number(j, "q_re", origin, where), number_or(j, "q_im", 0.0, origin, where)};
    const double p = number(j, "p", origin, where);
    const double r = number(j, "r", origin, where);
    if (family == "power_law_cutoff") {
        check_keys(j, {"family", "q_re", "q_im", "p", "r", "cutoff"}, origin, where);
        const double cutoff = number(j, "cutoff", origin, where);
        if (!(cutoff > 0.0)) parse_error(origin, where + "/cutoff", "cutoff must be positive");
        return FormFactor::power_law_cutoff(q, p, r, cutoff);
    }
    if (family == "tabulated") {
        check_keys(j, {"family", "q_re", "q_im", "p", "r", "samples"}, origin, where);
        if (!j.contains("samples") || !j.at("samples").is_array())
            parse_error(origin, where, "missing array 'samples'");
        std::vector<FormFactor::Sample> samples;
        std::size_t k = 0;
        for (const auto& s : j.at("samples")) {
            const std::string at = where + "/samples/" + std::to_string(k++);
            if (!s.is_array() || (s.size() != 2 && s.size() != 3))
                parse_error(origin, at, "expected [omega, v_re] or [omega, v_re, v_im]");
            for (const auto& x : s)
                if (!x.is_number()) parse_error(origin, at, "expected numbers");
            samples.push_back({s[0].get<double>(), cplx{s[1].get<double>(), s.size() == 3 ? s[2].get<double>() : 0.0}});
        }
        try {
            return FormFactor::tabulated(q, p, r, std::move(samples));
        } catch (const Error& e) {
            parse_error(origin, where + "/samples", e.what());
        }
    }
    parse_error(origin, where + "/family", "unknown family '" + family + "' (power_law_cutoff | tabulated)");
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::uint64_t fnv1a(const std::string& text) noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        std::ostringstream msg;
        msg << origin << ": line " << line_of(text, e.byte) << ": malformed JSON";
        throw Error(ErrorKind::Parse, msg.str());
    }
    check_keys(doc, {"lambda", "levels", "initial_state", "tolerance", "format", "seed", "output_dir"}, origin, "/");

    RunConfig cfg;
    cfg.source = origin;
    cfg.canonical = doc.dump();
    cfg.model.lambda = number(doc, "lambda", origin, "/");

    if (!doc.contains("levels") || !doc.at("levels").is_array()) parse_error(origin, "/", "missing array 'levels'");
    std::size_t k = 0;
    for (const auto& level : doc.at("levels")) {
        const std::string where = "/levels/" + std::to_string(k++);
        check_keys(level, {"omega", "form_factor"}, origin, where);
        if (!level.contains("form_factor")) parse_error(origin, where, "missing 'form_factor'");
        cfg.model.levels.push_back({number(level, "omega", origin, where),
                                    form_factor(level.at("form_factor"), origin, where + "/form_factor")});
    }

    if (doc.contains("initial_state")) {
        const auto& st = doc.at("initial_state");
        check_keys(st, {"c"}, origin, "/initial_state");
        if (!st.contains("c") || !st.at("c").is_array()) parse_error(origin, "/initial_state", "missing array 'c'");
        Eigen::VectorXcd c(static_cast<Eigen::Index>(st.at("c").size()));
        for (std::size_t i = 0; i < st.at("c").size(); ++i)
            c(static_cast<Eigen::Index>(i)) = complex_pair(st.at("c")[i], origin, "/initial_state/c/" + std::to_string(i));
        if (c.size() != static_cast<Eigen::Index>(cfg.model.size()))
            parse_error(origin, "/initial_state/c", "length must equal the number of levels");
        try {
            cfg.initial_state = normalize_state(c);
        } catch (const Error& e) {
            parse_error(origin, "/initial_state/c", e.what());
        }
    }

    cfg.tolerance = number_or(doc, "tolerance", cfg.tolerance, origin, "/");
    if (!(cfg.tolerance > 0.0)) parse_error(origin, "/tolerance", "must be positive");
    if (doc.contains("format")) {
        if (!doc.at("format").is_string()) parse_error(origin, "/format", "expected a string");
        cfg.format = doc.at("format").get<std::string>();
        if (cfg.format != "csv" && cfg.format != "json") parse_error(origin, "/format", "must be 'csv' or 'json'");
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_unsigned()) parse_error(origin, "/seed", "expected a non-negative integer");
        cfg.seed = doc.at("seed").get<std::uint64_t>();
    }
    if (doc.contains("output_dir")) {
        if (!doc.at("output_dir").is_string()) parse_error(origin, "/output_dir", "expected a string");
        cfg.output_dir = doc.at("output_dir").get<std::string>();
    }

    require_valid(cfg.model);
    return cfg;
}

RunConfig load_config(const std::string& spec) {
    static const std::regex builtin(R"(hydrogen\((\d+)\))");
    std::smatch m;
    if (std::regex_match(spec, m, builtin)) {
        const auto levels = static_cast<std::size_t>(std::stoul(m[1].str()));
        if (levels < 1) throw Error(ErrorKind::Validation, "hydrogen(N) needs N >= 1");
        RunConfig cfg;
        cfg.source = spec;
        cfg.canonical = spec;
        cfg.model = hydrogen::build_model(levels);
        cfg.hydrogen_levels = levels;
        return cfg;
    }
    std::ifstream in(spec, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, spec + ": cannot open model file");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), spec);
}

}  // namespace friedrichs
