#include "friedrichs/cli.hpp"

#include "friedrichs/asymptotics.hpp"
#include "friedrichs/config.hpp"
#include "friedrichs/error.hpp"
#include "friedrichs/hydrogen.hpp"
#include "friedrichs/oracle.hpp"
#include "friedrichs/spectral.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef FRIEDRICHS_VERSION
#define FRIEDRICHS_VERSION "0.0.0"
#endif

namespace friedrichs::cli {

const char* version() noexcept { return FRIEDRICHS_VERSION; }

namespace {

using nlohmann::json;

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string hex64(std::uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json vector_json(const Eigen::VectorXcd& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_json(v(i)));
    return out;
}

// Everything a subcommand produces: header metadata, an optional numeric table and an optional
// structured report, emitted as CSV or JSON.
struct Output {
    std::vector<std::pair<std::string, json>> meta;
    std::vector<std::string> notes;  // extra comment lines in CSV
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    json report;
};

void emit_csv(const Output& o, std::ostream& os) {
    for (const auto& [key, value] : o.meta)
        os << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    for (const auto& line : o.notes) os << "# " << line << '\n';
    if (!o.report.is_null() && o.columns.empty()) {
        for (const auto& [key, value] : o.report.items()) os << "# " << key << ": " << value.dump() << '\n';
    }
    if (o.columns.empty()) return;
    for (std::size_t k = 0; k < o.columns.size(); ++k) os << (k ? "," : "") << o.columns[k];
    os << '\n';
    for (const auto& row : o.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << num(row[k]);
        os << '\n';
    }
}

void emit_json(const Output& o, std::ostream& os) {
    json doc;
    json meta = json::object();
    for (const auto& [key, value] : o.meta) meta[key] = value;
    doc["meta"] = meta;
    if (!o.report.is_null()) doc["report"] = o.report;
    if (!o.columns.empty()) {
        doc["columns"] = o.columns;
        doc["rows"] = o.rows;
    }
    os << doc.dump(2) << '\n';
}

struct Common {
    std::string model;
    std::string format;
    std::string out_dir;
    std::string state{"auto"};
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
};

void add_common(CLI::App* sub, Common& c, bool with_model = true) {
    if (with_model)
        sub->add_option("--model", c.model, "model file (JSON, see docs/config.md) or hydrogen(N)")->required();
    sub->add_option("--format", c.format, "csv | json (default from config, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out-dir", c.out_dir, "write <subcommand>.<format> there instead of stdout");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--tolerance", c.tolerance, "relative quadrature tolerance off the cut")
        ->check(CLI::PositiveNumber);
}

struct Context {
    std::string subcommand;
    std::string command_line;
    std::optional<RunConfig> config;
    std::string format{"csv"};
    std::string out_dir;
    std::uint64_t seed{kDefaultSeed};
    double tolerance{1e-10};
};

Context make_context(const std::string& name, const std::string& command_line, const Common& c, bool with_model) {
    Context ctx;
    ctx.subcommand = name;
    ctx.command_line = command_line;
    if (with_model) {
        ctx.config = load_config(c.model);
        ctx.format = ctx.config->format;
        ctx.out_dir = ctx.config->output_dir;
        ctx.seed = ctx.config->seed;
        ctx.tolerance = ctx.config->tolerance;
    }
    if (!c.format.empty()) ctx.format = c.format;
    if (!c.out_dir.empty()) ctx.out_dir = c.out_dir;
    if (c.seed) ctx.seed = *c.seed;
    if (c.tolerance) ctx.tolerance = *c.tolerance;
    return ctx;
}

void header(const Context& ctx, Output& o) {
    const std::string canonical = ctx.config ? ctx.config->canonical : std::string();
    o.meta.insert(o.meta.begin(),
                  {{"version", std::string("friedrichs ") + version()},
                   {"command", ctx.command_line},
                   {"config", ctx.config ? ctx.config->source : std::string("none")},
                   {"config_hash", "fnv1a64:" + hex64(fnv1a(canonical + '\n' + ctx.command_line))},
                   {"seed", ctx.seed}});
}

void write(const Context& ctx, Output& o, std::ostream& out) {
    header(ctx, o);
    if (ctx.out_dir.empty()) {
        ctx.format == "json" ? emit_json(o, out) : emit_csv(o, out);
        return;
    }
    std::filesystem::create_directories(ctx.out_dir);
    const auto path = std::filesystem::path(ctx.out_dir) / (ctx.subcommand + "." + ctx.format);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorKind::Validation, "cannot write " + path.string());
    ctx.format == "json" ? emit_json(o, file) : emit_csv(o, file);
}

std::pair<double, double> parse_range(const std::string& text, const std::string& flag) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw Error(ErrorKind::Validation, flag + " expects a..b, got '" + text + "'");
    double a = 0.0, b = 0.0;
    try {
        std::size_t used = 0;
        a = std::stod(text.substr(0, dots), &used);
        if (used != dots) throw std::invalid_argument("trailing");
        const std::string rest = text.substr(dots + 2);
        b = std::stod(rest, &used);
        if (used != rest.size()) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::Validation, flag + " expects numbers a..b, got '" + text + "'");
    }
    if (!(a > 0.0) || !(b > a) || !std::isfinite(b))
        throw Error(ErrorKind::Validation, flag + " needs 0 < a < b, got '" + text + "'");
    return {a, b};
}

std::vector<double> log_grid(double a, double b, std::size_t points) {
    if (points < 2) throw Error(ErrorKind::Validation, "--points must be at least 2");
    std::vector<double> out(points);
    const double la = std::log10(a), lb = std::log10(b);
    for (std::size_t k = 0; k < points; ++k) out[k] = std::pow(10.0, la + (lb - la) * k / (points - 1.0));
    out.front() = a;
    out.back() = b;
    return out;
}

std::vector<double> rates(const RunConfig& cfg) {
    if (cfg.hydrogen_levels) return hydrogen::bethe_rates(*cfg.hydrogen_levels);
    return decay_rates(cfg.model);
}

// auto | config | maximizer | level:K | orthogonal:K | re,im;re,im;...
InitialState resolve_state(const RunConfig& cfg, const std::string& choice, const Resolvent& res) {
    const std::size_t n = cfg.model.size();
    auto index = [&](const std::string& text, std::size_t limit) {
        std::size_t k = 0, used = 0;
        try {
            k = std::stoul(text, &used);
        } catch (const std::logic_error&) {
            used = 0;
        }
        if (used != text.size() || k < 1 || k > limit)
            throw Error(ErrorKind::Validation, "--state index must be in 1.." + std::to_string(limit));
        return k - 1;
    };
    if (choice == "auto") return cfg.initial_state ? *cfg.initial_state : maximizing_state(asymptote_coeffs(res));
    if (choice == "config") {
        if (!cfg.initial_state) throw Error(ErrorKind::Validation, "--state config: model file has no initial_state");
        return *cfg.initial_state;
    }
    if (choice == "maximizer") return maximizing_state(asymptote_coeffs(res));
    if (choice.rfind("level:", 0) == 0) return localized_state(n, index(choice.substr(6), n));
    if (choice.rfind("orthogonal:", 0) == 0) {
        const auto basis = orthogonal_complement(asymptote_coeffs(res));
        return basis[index(choice.substr(11), basis.size())];
    }
    Eigen::VectorXcd c(static_cast<Eigen::Index>(n));
    std::stringstream ss(choice);
    std::string item;
    Eigen::Index k = 0;
    while (std::getline(ss, item, ';')) {
        double re = 0.0, im = 0.0;
        char comma = 0, extra = 0;
        std::istringstream is(item);
        is.imbue(std::locale::classic());
        if (!(is >> re) || (is >> comma && (comma != ',' || !(is >> im))) || (is >> extra) || k >= c.size())
            throw Error(ErrorKind::Validation, "--state: cannot parse '" + choice + "'");
        c(k++) = cplx{re, im};
    }
    if (k != c.size()) throw Error(ErrorKind::Validation, "--state needs one amplitude per level");
    return normalize_state(c);
}

void state_meta(Output& o, const std::string& choice, const InitialState& st) {
    o.meta.push_back({"state", choice});
    o.meta.push_back({"state_c", vector_json(st.coefficients())});
}

// ---- subcommands ----

struct DensityArgs {
    std::string range;
    std::size_t points{200};
};

Output run_density(const Context& ctx, const Common& c, const DensityArgs& a) {
    const auto& cfg = *ctx.config;
    const Resolvent res(cfg.model);
    const auto state = resolve_state(cfg, c.state, res);
    const auto [lo, hi] = a.range.empty() ? std::pair{1e-6 * cfg.model.levels.front().omega, res.cut_energy()}
                                          : parse_range(a.range, "--omega-log");
    const auto grid = log_grid(lo, hi, a.points);
    const auto rho = spectral_density(res, state, grid);
    Output o;
    state_meta(o, c.state, state);
    o.columns = {"omega", "density"};
    for (std::size_t k = 0; k < grid.size(); ++k) o.rows.push_back({grid[k], rho.density[k]});
    return o;
}

struct SurviveArgs {
    std::string range;
    std::size_t points{200};
};

Output run_survive(const Context& ctx, const Common& c, const SurviveArgs& a, bool& complete) {
    const auto& cfg = *ctx.config;
    const Resolvent res(cfg.model);
    const auto state = resolve_state(cfg, c.state, res);
    const double t1 = 1.0 / rates(cfg).front();
    const auto [lo, hi] = a.range.empty() ? std::pair{1e-2 * t1, 1e4 * t1} : parse_range(a.range, "--t-log");
    const auto times = log_grid(lo, hi, a.points);
    const auto series = survival_amplitude(res, state, times);
    complete = series.complete;
    Output o;
    state_meta(o, c.state, state);
    o.meta.push_back({"tail_error_bound", series.tail_error});
    o.meta.push_back({"complete", series.complete});
    o.columns = {"t", "re_A", "im_A", "abs2_A"};
    for (std::size_t k = 0; k < times.size(); ++k)
        o.rows.push_back({times[k], series.amplitude[k].real(), series.amplitude[k].imag(), series.probability[k]});
    return o;
}

CoefficientMode parse_mode(const std::string& mode) {
    return mode == "perturbative" ? CoefficientMode::Perturbative : CoefficientMode::Exact;
}

Output run_asymptote(const Context& ctx, const std::string& mode) {
    const auto& cfg = *ctx.config;
    const Resolvent res(cfg.model);
    const auto report = asymptote_coeffs(res, parse_mode(mode));
    const auto best = maximizing_state(report);
    const auto gammas = rates(cfg);
    json t_ep = nullptr;
    try {
        t_ep = crossover_time(cfg.model, best, gammas, report, CrossoverMode::Full).t_ep;
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoRoot) throw;
    }
    Output o;
    o.report = {{"p", report.p},
                {"lambda", report.lambda},
                {"f", vector_json(report.f)},
                {"chi_norm_sq", report.chi_norm_sq},
                {"maximizer", vector_json(best.coefficients())},
                {"coefficient_max", report.coefficient(best)},
                {"t_ep", t_ep},
                {"mode", std::string(to_string(report.mode))},
                {"crossover_mode", "full"},
                {"phase_convention", std::string(kPhaseConvention)}};
    if (ctx.format == "csv") {
        o.columns = {"n", "f_re", "f_im", "maximizer_re", "maximizer_im"};
        for (Eigen::Index n = 0; n < report.f.size(); ++n)
            o.rows.push_back({static_cast<double>(n + 1), report.f(n).real(), report.f(n).imag(), best[n].real(),
                              best[n].imag()});
        for (const auto& [key, value] : o.report.items())
            if (key != "f" && key != "maximizer") o.meta.push_back({key, value});
    }
    return o;
}

struct MaximizeArgs {
    std::size_t samples{1000};
};

Output run_maximize(const Context& ctx, const MaximizeArgs& a) {
    const auto& cfg = *ctx.config;
    const auto report = asymptote_coeffs(Resolvent(cfg.model));
    const auto best = maximizing_state(report);
    const auto sweep = schwarz_sweep(report, a.samples, ctx.seed);
    double largest = 0.0;
    std::size_t violations = 0;
    for (const auto& s : sweep.samples) {
        largest = std::max(largest, s.coefficient);
        // rounding allowance for states that coincide with the maximizer
        if (s.coefficient > sweep.maximum * (1.0 + 1e-12)) ++violations;
    }
    Output o;
    o.meta.push_back({"coefficient", sweep.maximum});
    o.meta.push_back({"random_samples", a.samples});
    o.meta.push_back({"largest_random_coefficient", largest});
    o.meta.push_back({"schwarz_violations", violations});
    o.columns = {"n", "c_re", "c_im"};
    for (std::size_t n = 0; n < best.size(); ++n)
        o.rows.push_back({static_cast<double>(n + 1), best[n].real(), best[n].imag()});
    return o;
}

Output run_orthogonal(const Context& ctx) {
    const auto report = asymptote_coeffs(Resolvent(ctx.config->model));
    const auto basis = orthogonal_complement(report);
    Output o;
    o.columns = {"k", "n", "re", "im", "abs_overlap_with_chi"};
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const double overlap = std::abs(report.overlap(basis[k]));
        for (std::size_t n = 0; n < basis[k].size(); ++n)
            o.rows.push_back(
                {static_cast<double>(k + 1), static_cast<double>(n + 1), basis[k][n].real(), basis[k][n].imag(), overlap});
    }
    return o;
}

Output run_crossover(const Context& ctx, const Common& c, const std::string& mode) {
    const auto& cfg = *ctx.config;
    const Resolvent res(cfg.model);
    const auto report = asymptote_coeffs(res, parse_mode(mode));
    const std::string choice = c.state == "auto" ? "maximizer" : c.state;
    const auto state = resolve_state(cfg, choice, res);
    const auto gammas = rates(cfg);
    Output o;
    state_meta(o, choice, state);
    o.meta.push_back({"rates", cfg.hydrogen_levels ? "bethe" : "golden_rule"});
    o.columns = {"mode", "t_ep", "roots", "window_lo", "window_hi"};
    for (auto m : {CrossoverMode::Full, CrossoverMode::Approximate}) {
        const auto r = crossover_time(cfg.model, state, gammas, report, m);
        o.meta.push_back({std::string("t_ep_") + std::string(to_string(m)), r.t_ep});
        o.rows.push_back({m == CrossoverMode::Full ? 0.0 : 1.0, r.t_ep, static_cast<double>(r.roots.size()),
                          r.window_lo, r.window_hi});
    }
    o.notes.push_back("mode column: 0 = full, 1 = approximate");
    return o;
}

Output run_hydrogen_table(const std::vector<std::size_t>& levels) {
    const auto rows = hydrogen::reproduce_table(levels);
    Output o;
    std::ostringstream line;
    line << std::setw(6) << "N" << std::setw(10) << "ratio" << std::setw(14) << "t_N (s)" << std::setw(14)
         << "t_ep (s)" << std::setw(14) << "t_ep full" << std::setw(14) << "|A(t_ep)|^2";
    o.notes.push_back(line.str());
    for (const auto& r : rows) {
        std::ostringstream l;
        l << std::setw(6) << r.levels << std::fixed << std::setprecision(4) << std::setw(10) << r.ratio
          << std::scientific << std::setprecision(3) << std::setw(14) << r.t_N << std::setw(14) << r.t_ep
          << std::setw(14) << r.t_ep_full << std::setw(14) << r.survival_at_crossover;
        o.notes.push_back(l.str());
    }
    o.columns = {"N", "ratio", "t_N_s", "t_ep_s"};
    for (const auto& r : rows) o.rows.push_back({static_cast<double>(r.levels), r.ratio, r.t_N, r.t_ep});
    return o;
}

struct OracleArgs {
    std::size_t modes{2000};
    double omega_max{0.0};
    double t_max{0.0};
    std::size_t points{101};
    double max_difference{1e-3};
};

Output run_oracle(const Context& ctx, const Common& c, const OracleArgs& a, bool& agree) {
    const auto& cfg = *ctx.config;
    const Resolvent res(cfg.model);
    const auto state = resolve_state(cfg, c.state, res);
    double scale = cfg.model.levels.back().omega;
    for (const auto& level : cfg.model.levels) scale = std::max(scale, level.form_factor.scale());
    const double omega_max = a.omega_max > 0.0 ? a.omega_max : 50.0 * scale;
    const double t_max = a.t_max > 0.0 ? a.t_max : 5.0 / rates(cfg).front();
    if (a.points < 2) throw Error(ErrorKind::Validation, "--points must be at least 2");
    std::vector<double> times(a.points);
    for (std::size_t k = 0; k < a.points; ++k) times[k] = t_max * k / (a.points - 1.0);
    const auto cmp = oracle::compare(cfg.model, state, times, a.modes, omega_max);
    const auto bound = oracle::no_bound_state_check(cfg.model, ctx.tolerance);
    agree = cmp.max_abs_difference <= a.max_difference;
    Output o;
    state_meta(o, c.state, state);
    o.meta.push_back({"modes", a.modes});
    o.meta.push_back({"omega_max", omega_max});
    o.meta.push_back({"heisenberg_time", cmp.heisenberg_time});
    o.meta.push_back({"max_abs_difference", cmp.max_abs_difference});
    o.meta.push_back({"agree", agree});
    o.meta.push_back({"bound_state_suspected", bound.bound_state_suspected()});
    o.meta.push_back({"min_eigenvalue_at_threshold", bound.min_eigenvalue_at_threshold});
    o.meta.push_back({"completeness", bound.completeness});
    o.columns = {"t", "spectral_re", "spectral_im", "oracle_re", "oracle_im", "abs_difference"};
    for (std::size_t k = 0; k < times.size(); ++k)
        o.rows.push_back({times[k], cmp.spectral[k].real(), cmp.spectral[k].imag(), cmp.oracle[k].real(),
                          cmp.oracle[k].imag(), std::abs(cmp.spectral[k] - cmp.oracle[k])});
    return o;
}

constexpr const char* kSchemaHelp =
    "Model files are JSON objects:\n"
    "  {\"lambda\": 0.01,\n"
    "   \"levels\": [{\"omega\": 1.0, \"form_factor\": {\"family\": \"power_law_cutoff\",\n"
    "                \"q_re\": 1.0, \"q_im\": 0.0, \"p\": 0.5, \"r\": 1.5, \"cutoff\": 3.0}}],\n"
    "   \"initial_state\": {\"c\": [[1.0, 0.0]]},\n"
    "   \"tolerance\": 1e-10, \"format\": \"csv\", \"seed\": 20240917, \"output_dir\": \"\"}\n"
    "Unknown keys are rejected. --model hydrogen(N) selects the built-in hydrogen series.\n"
    "Full schema: docs/config.md\n";

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Long-time survival amplitudes of multilevel unstable states"};
    app.set_version_flag("--version", std::string("friedrichs ") + version());
    app.require_subcommand(1);
    app.footer(kSchemaHelp);

    Common common;
    DensityArgs density;
    SurviveArgs survive;
    MaximizeArgs maximize;
    OracleArgs oracle_args;
    std::string coeff_mode{"exact"};
    std::vector<std::size_t> table_levels{1, 10, 50};

    auto* density_cmd = app.add_subcommand("density", "spectral density |<psi_w|psi>|^2 on a log grid");
    add_common(density_cmd, common);
    density_cmd->add_option("--state", common.state, "auto|config|maximizer|level:K|orthogonal:K|re,im;...");
    density_cmd->add_option("--omega-log", density.range, "a..b (default 1e-6 w_1 .. cut energy)");
    density_cmd->add_option("--points", density.points, "grid points");

    auto* survive_cmd = app.add_subcommand("survive", "survival amplitude A(t) on a log time grid");
    add_common(survive_cmd, common);
    survive_cmd->add_option("--state", common.state, "auto|config|maximizer|level:K|orthogonal:K|re,im;...");
    survive_cmd->add_option("--t-log", survive.range, "a..b (default 1e-2 .. 1e4 lifetimes of level 1)");
    survive_cmd->add_option("--points", survive.points, "time points");

    auto* asym_cmd = app.add_subcommand("asymptote", "power-law coefficients f_n, |chi|^2 and t_ep");
    add_common(asym_cmd, common);
    asym_cmd->add_option("--mode", coeff_mode, "exact | perturbative")->check(CLI::IsMember({"exact", "perturbative"}));

    auto* max_cmd = app.add_subcommand("maximize", "state with the largest asymptote, with a Schwarz sweep");
    add_common(max_cmd, common);
    max_cmd->add_option("--samples", maximize.samples, "random states in the sweep");

    auto* orth_cmd = app.add_subcommand("orthogonal", "orthonormal states orthogonal to chi");
    add_common(orth_cmd, common);

    auto* cross_cmd = app.add_subcommand("crossover", "crossover time t_ep in both modes");
    add_common(cross_cmd, common);
    cross_cmd->add_option("--state", common.state, "maximizer (default)|config|level:K|re,im;...");
    cross_cmd->add_option("--mode", coeff_mode, "exact | perturbative")->check(CLI::IsMember({"exact", "perturbative"}));

    auto* table_cmd = app.add_subcommand("hydrogen-table", "level-number table for the hydrogen np series");
    add_common(table_cmd, common, false);
    table_cmd->add_option("--levels", table_levels, "comma-separated level counts")->delimiter(',');

    auto* oracle_cmd = app.add_subcommand("oracle-check", "spectral A(t) against the discretized Hamiltonian");
    add_common(oracle_cmd, common);
    oracle_cmd->add_option("--state", common.state, "auto|config|maximizer|level:K|orthogonal:K|re,im;...");
    oracle_cmd->add_option("--modes", oracle_args.modes, "continuum modes M");
    oracle_cmd->add_option("--omega-max", oracle_args.omega_max, "continuum truncation (default 50 x largest scale)");
    oracle_cmd->add_option("--t-max", oracle_args.t_max, "end of the window (default 5 / gamma_1)");
    oracle_cmd->add_option("--points", oracle_args.points, "time points");
    oracle_cmd->add_option("--max-difference", oracle_args.max_difference, "agreement threshold");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kInputError;
    }

    std::string command_line;
    for (std::size_t k = 1; k < args.size(); ++k) command_line += (k > 1 ? " " : "") + args[k];

    try {
        int status = kOk;
        if (table_cmd->parsed()) {
            auto ctx = make_context("hydrogen-table", command_line, common, false);
            auto o = run_hydrogen_table(table_levels);
            write(ctx, o, out);
            return kOk;
        }
        CLI::App* sub = app.get_subcommands().front();
        auto ctx = make_context(sub->get_name(), command_line, common, true);
        Output o;
        if (sub == density_cmd) {
            o = run_density(ctx, common, density);
        } else if (sub == survive_cmd) {
            bool complete = true;
            o = run_survive(ctx, common, survive, complete);
            if (!complete) {
                err << "warning: density refinement hit the panel budget; results are partial\n";
                status = kNumericalError;
            }
        } else if (sub == asym_cmd) {
            o = run_asymptote(ctx, coeff_mode);
        } else if (sub == max_cmd) {
            o = run_maximize(ctx, maximize);
        } else if (sub == orth_cmd) {
            o = run_orthogonal(ctx);
        } else if (sub == cross_cmd) {
            o = run_crossover(ctx, common, coeff_mode);
        } else if (sub == oracle_cmd) {
            bool agree = true;
            o = run_oracle(ctx, common, oracle_args, agree);
            if (!agree) {
                err << "oracle-check: spectral and discretized amplitudes disagree\n";
                status = kNumericalError;
            }
        }
        write(ctx, o, out);
        return status;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        if (e.kind() == ErrorKind::Parse) err << '\n' << kSchemaHelp;
        return is_input_error(e.kind()) ? kInputError : kNumericalError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace friedrichs::cli
