#include "fsoturb/cli.hpp"

#include "fsoturb/analytic.hpp"
#include "fsoturb/errors.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

namespace fsoturb::cli {

namespace {

using json = nlohmann::ordered_json;

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, _] : obj.items()) {
        if (!ok.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
    }
}

template <class T>
void read(const json& obj, const char* key, const std::string& where, T& dst) {
    if (!obj.contains(key) || obj.at(key).is_null()) return;
    try {
        dst = obj.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + " has the wrong type");
    }
}

double read_number(const json& obj, const char* key, const std::string& where, double fallback) {
    double v = fallback;
    if (obj.contains(key) && !obj.at(key).is_null() && !obj.at(key).is_number()) {
        throw ConfigError(where + "." + key + " must be a number");
    }
    read(obj, key, where, v);
    return v;
}

std::string read_string(const json& obj, const char* key, const std::string& where, std::string fallback) {
    if (obj.contains(key) && !obj.at(key).is_null() && !obj.at(key).is_string()) {
        throw ConfigError(where + "." + key + " must be a string");
    }
    read(obj, key, where, fallback);
    return fallback;
}

template <class Fn>
auto enum_from(const std::string& value, const std::string& where, Fn&& parse) {
    try {
        return parse(value);
    } catch (const ParameterError& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

void validate_config(const RunConfig& cfg) {
    validate(cfg.turbulence);
    validate(cfg.beam);
    validate(cfg.simulation);
    if (cfg.max_level < 1) throw ParameterError("crosstalk.max_level must be >= 1");
    if (cfg.pdf.level < 0) throw ParameterError("pdf.level must be >= 0");
    if (cfg.pdf.points < 2) throw ParameterError("pdf.points must be >= 2");
    if (cfg.pdf.gamma && !(*cfg.pdf.gamma > 0.0)) throw ParameterError("pdf.gamma must be positive");
    if (cfg.estimate.method != "mle" && cfg.estimate.method != "histogram") {
        throw ParameterError("estimate.method must be 'mle' or 'histogram'");
    }
    if (!(cfg.estimate.confidence > 0.0 && cfg.estimate.confidence < 1.0)) {
        throw ParameterError("estimate.confidence must lie in (0, 1)");
    }
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool parse_double(const std::string& field, double& out) {
    const std::string f = trim(field);
    if (f.empty()) return false;
    const char* first = f.data();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, f.data() + f.size(), out);
    return ec == std::errc{} && ptr == f.data() + f.size();
}

// ---------------------------------------------------------------- output

void write_output(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
    if (!path) {
        out << text;
        return;
    }
    std::ofstream f(*path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + *path + "'");
    f << text;
    if (!f) throw ConfigError("failed writing '" + *path + "'");
}

std::string histogram_csv(const EmpiricalPdf& pdf) {
    std::ostringstream s;
    s << "bin_lo,bin_hi,density\n";
    for (std::size_t k = 0; k < pdf.bins(); ++k) {
        s << format_double(pdf.edges[k]) << ',' << format_double(pdf.edges[k + 1]) << ','
          << format_double(pdf.density[k]) << '\n';
    }
    return s.str();
}

json histogram_json(const EmpiricalPdf& pdf) {
    json bins = json::array();
    for (std::size_t k = 0; k < pdf.bins(); ++k) {
        bins.push_back({{"lo", pdf.edges[k]}, {"hi", pdf.edges[k + 1]}, {"density", pdf.density[k]}});
    }
    return bins;
}

std::string samples_text(const std::vector<double>& samples) {
    std::string s;
    s.reserve(samples.size() * 20);
    for (double v : samples) {
        s += format_double(v);
        s += '\n';
    }
    return s;
}

std::string key_value_csv(const json& doc) {
    std::ostringstream s;
    s << "name,value\n";
    for (const auto& [key, v] : doc.items()) {
        s << key << ',';
        if (v.is_number_float()) s << format_double(v.get<double>());
        else if (v.is_string()) s << v.get<std::string>();
        else s << v.dump();
        s << '\n';
    }
    return s.str();
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

// ------------------------------------------------------------- commands

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::string format;
    std::optional<double> r0, l0, L0, w;
    std::optional<std::uint64_t> samples;
    std::optional<std::string> order, engine, filter, gh_coupling;
    std::optional<bool> tracking;
    std::optional<int> level, max_level, points;
    std::optional<double> gamma;
    std::optional<unsigned> threads;
    std::optional<std::string> samples_out;
    std::string input;
};

RunConfig resolve(const Common& c) {
    RunConfig cfg = c.config_path.empty() ? RunConfig{} : load_config(c.config_path);
    if (c.r0) cfg.turbulence.r0 = *c.r0;
    if (c.l0) cfg.turbulence.l0 = *c.l0;
    if (c.L0) cfg.turbulence.L0 = *c.L0;
    if (c.w) cfg.beam.w = *c.w;
    if (c.seed) cfg.simulation.seed = *c.seed;
    if (c.samples) cfg.simulation.samples = *c.samples;
    if (c.order) cfg.simulation.order = order_from_string(*c.order);
    if (c.engine) cfg.simulation.engine = engine_from_string(*c.engine);
    if (c.filter) cfg.filter = filter_kind_from_string(*c.filter);
    if (c.gh_coupling) cfg.simulation.gh_coupling = gh_coupling_from_string(*c.gh_coupling);
    if (c.tracking) cfg.simulation.tracking = *c.tracking;
    if (c.level) cfg.pdf.level = *c.level;
    if (c.max_level) cfg.max_level = *c.max_level;
    if (c.points) cfg.pdf.points = *c.points;
    if (c.gamma) cfg.pdf.gamma = *c.gamma;
    if (c.threads) cfg.simulation.threads = *c.threads;
    if (c.samples_out) cfg.samples_out = *c.samples_out;
    validate_config(cfg);
    return cfg;
}

DistortionVariances variances_for(const RunConfig& cfg) {
    return compute_variances(cfg.turbulence, cfg.mode_filter(), cfg.simulation.gh_coupling);
}

int cmd_variances(const Common& c, std::ostream& out) {
    const RunConfig cfg = resolve(c);
    const DistortionVariances v = variances_for(cfg);
    const double kernel = c_a_kernel(cfg.turbulence.l0, cfg.turbulence.L0, cfg.mode_filter());
    json doc;
    doc["c_a"] = v.c_a;
    doc["c_g"] = v.c_g;
    doc["c_s"] = v.c_s;
    doc["vartheta"] = vartheta_constant();
    doc["K"] = kernel;
    doc["gamma"] = 2.0 / (cfg.beam.w * cfg.beam.w * v.c_a);
    doc["r0"] = cfg.turbulence.r0;
    doc["l0"] = cfg.turbulence.l0;
    doc["L0"] = cfg.turbulence.L0;
    doc["w"] = cfg.beam.w;
    doc["filter"] = std::string(to_string(cfg.filter));
    write_output(c.out, c.format == "csv" ? key_value_csv(doc) : dump(doc), out);
    return kExitOk;
}

int cmd_pdf(const Common& c, std::ostream& out) {
    const RunConfig cfg = resolve(c);
    const double gamma = cfg.pdf.gamma ? *cfg.pdf.gamma
                                       : 2.0 / (cfg.beam.w * cfg.beam.w * variances_for(cfg).c_a);
    const int level = cfg.pdf.level;
    const double t_max = level == 0 ? 1.0 : t_n_max(level);
    const auto ts = table_points(t_max, cfg.pdf.points, cfg.pdf.spacing);

    std::vector<double> dens;
    dens.reserve(ts.size());
    for (double t : ts) {
        dens.push_back(level == 0 ? pdf_fundamental(gamma, t) : pdf_crosstalk(level, 2.0 / gamma, t));
    }

    std::string text;
    if (c.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < ts.size(); ++i) rows.push_back({ts[i], dens[i]});
        text = dump({{"level", level}, {"gamma", gamma}, {"t_max", t_max}, {"table", rows}});
    } else {
        std::ostringstream s;
        s << "T,density\n";
        for (std::size_t i = 0; i < ts.size(); ++i) s << format_double(ts[i]) << ',' << format_double(dens[i]) << '\n';
        text = s.str();
    }
    write_output(c.out, text, out);
    return kExitOk;
}

int cmd_simulate(const Common& c, std::ostream& out) {
    const RunConfig cfg = resolve(c);
    const auto result = simulate_transmittance(variances_for(cfg), cfg.beam, cfg.simulation);
    std::string text;
    if (c.format == "json") {
        json doc;
        doc["samples"] = result.pdf.count;
        doc["mean"] = result.mean;
        doc["seed"] = cfg.simulation.seed;
        doc["order"] = std::string(to_string(cfg.simulation.order));
        doc["tracking"] = cfg.simulation.tracking;
        doc["engine"] = std::string(to_string(cfg.simulation.engine));
        doc["bins"] = histogram_json(result.pdf);
        text = dump(doc);
    } else {
        text = histogram_csv(result.pdf);
    }
    write_output(c.out, text, out);
    if (cfg.samples_out) write_output(cfg.samples_out, samples_text(result.samples), out);
    return kExitOk;
}

int cmd_crosstalk(const Common& c, std::ostream& out) {
    const RunConfig cfg = resolve(c);
    const auto result = simulate_crosstalk(variances_for(cfg), cfg.beam, cfg.simulation, cfg.max_level);
    std::string text;
    if (c.format == "json") {
        json levels = json::array();
        for (std::size_t n = 0; n < result.levels.size(); ++n) {
            levels.push_back({{"level", n}, {"mean", result.means[n]}, {"bins", histogram_json(result.levels[n])}});
        }
        text = dump({{"samples", cfg.simulation.samples}, {"seed", cfg.simulation.seed}, {"levels", levels}});
    } else {
        std::ostringstream s;
        s << "level,bin_lo,bin_hi,density\n";
        for (std::size_t n = 0; n < result.levels.size(); ++n) {
            const auto& pdf = result.levels[n];
            for (std::size_t k = 0; k < pdf.bins(); ++k) {
                s << n << ',' << format_double(pdf.edges[k]) << ',' << format_double(pdf.edges[k + 1]) << ','
                  << format_double(pdf.density[k]) << '\n';
            }
        }
        text = s.str();
    }
    write_output(c.out, text, out);
    if (cfg.samples_out) {
        std::ostringstream s;
        s << "level,T\n";
        for (std::size_t n = 0; n < result.samples.size(); ++n)
            for (double v : result.samples[n]) s << n << ',' << format_double(v) << '\n';
        write_output(cfg.samples_out, s.str(), out);
    }
    return kExitOk;
}

int cmd_estimate(const Common& c, std::ostream& out) {
    const RunConfig cfg = resolve(c);
    std::ifstream in(c.input, std::ios::binary);
    if (!in) throw ConfigError("cannot open input file '" + c.input + "'");
    const auto series = TransmittanceSeries::from_raw(read_transmittance_csv(in));
    const ModeFilter filter = cfg.mode_filter();

    FriedEstimate est = estimate_fried(series, cfg.beam, cfg.turbulence.l0, cfg.turbulence.L0, filter,
                                       cfg.estimate.confidence);
    if (cfg.estimate.method == "histogram") {
        const PowerLawFit fit = fit_power_law_histogram(series);
        const double scale = std::pow(fit.gamma / est.gamma, 0.6);
        est.gamma = fit.gamma;
        est.gamma_std_error = fit.std_error;
        est.c_a = c_a_from_gamma(fit.gamma, cfg.beam);
        est.r0 *= scale;
        est.r0_lo *= scale;
        est.r0_hi *= scale;
    }
    json doc;
    doc["gamma"] = est.gamma;
    doc["gamma_se"] = est.gamma_std_error;
    doc["c_a"] = est.c_a;
    doc["r0"] = est.r0;
    doc["ci_lo"] = est.r0_lo;
    doc["ci_hi"] = est.r0_hi;
    doc["confidence"] = cfg.estimate.confidence;
    doc["samples"] = est.n;
    doc["rejected_count"] = est.rejected;
    doc["method"] = cfg.estimate.method;
    write_output(c.out, c.format == "csv" ? key_value_csv(doc) : dump(doc), out);
    return kExitOk;
}

void add_common(CLI::App* sub, Common& c, bool simulation) {
    sub->add_option("--config", c.config_path, "JSON run configuration")->check(CLI::ExistingFile);
    sub->add_option("--out", c.out, "output path (default: stdout)");
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--r0", c.r0, "Fried parameter [m]");
    sub->add_option("--l0", c.l0, "inner scale [m]");
    sub->add_option("--L0", c.L0, "outer scale [m]");
    sub->add_option("--w", c.w, "beam waist [m]");
    sub->add_option("--filter", c.filter, "intensity-spectrum | field-spectrum");
    if (simulation) {
        sub->add_option("--seed", c.seed, "64-bit seed");
        sub->add_option("--samples", c.samples, "Monte Carlo sample count");
        sub->add_option("--order", c.order, "first | second");
        sub->add_option("--engine", c.engine, "closed-form | grid");
        sub->add_option("--gh-coupling", c.gh_coupling, "independent | correlated");
        sub->add_option("--tracking", c.tracking, "ideal tilt tracking (true/false)");
        sub->add_option("--threads", c.threads, "worker threads (0: FSOTURB_THREADS or all cores)");
        sub->add_option("--samples-out", c.samples_out, "write raw samples, one per line");
    }
}

}  // namespace

// ------------------------------------------------------------ public API

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    check_keys(doc, "config", {"turbulence", "beam", "filter", "simulation", "grid", "crosstalk", "pdf", "estimate", "output"});

    RunConfig cfg;
    if (doc.contains("turbulence")) {
        const auto& t = doc["turbulence"];
        check_keys(t, "turbulence", {"r0", "l0", "L0"});
        cfg.turbulence.r0 = read_number(t, "r0", "turbulence", cfg.turbulence.r0);
        cfg.turbulence.l0 = read_number(t, "l0", "turbulence", cfg.turbulence.l0);
        cfg.turbulence.L0 = read_number(t, "L0", "turbulence", cfg.turbulence.L0);
    }
    if (doc.contains("beam")) {
        const auto& b = doc["beam"];
        check_keys(b, "beam", {"w"});
        cfg.beam.w = read_number(b, "w", "beam", cfg.beam.w);
    }
    cfg.filter = enum_from(read_string(doc, "filter", "config", "intensity-spectrum"), "filter", filter_kind_from_string);

    auto& sim = cfg.simulation;
    if (doc.contains("simulation")) {
        const auto& s = doc["simulation"];
        check_keys(s, "simulation", {"order", "samples", "seed", "tracking", "gh_coupling", "engine", "bins", "binning", "log_min", "threads"});
        sim.order = enum_from(read_string(s, "order", "simulation", "second"), "simulation.order", order_from_string);
        sim.engine = enum_from(read_string(s, "engine", "simulation", "closed-form"), "simulation.engine", engine_from_string);
        sim.gh_coupling = enum_from(read_string(s, "gh_coupling", "simulation", "independent"), "simulation.gh_coupling", gh_coupling_from_string);
        sim.histogram.binning = enum_from(read_string(s, "binning", "simulation", "uniform"), "simulation.binning", binning_from_string);
        read(s, "samples", "simulation", sim.samples);
        read(s, "seed", "simulation", sim.seed);
        read(s, "tracking", "simulation", sim.tracking);
        read(s, "bins", "simulation", sim.histogram.bins);
        read(s, "threads", "simulation", sim.threads);
        sim.histogram.log_min = read_number(s, "log_min", "simulation", sim.histogram.log_min);
    }
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        check_keys(g, "grid", {"extent", "points", "tolerance", "check_accuracy"});
        sim.grid.extent = read_number(g, "extent", "grid", sim.grid.extent);
        sim.grid.tolerance = read_number(g, "tolerance", "grid", sim.grid.tolerance);
        read(g, "points", "grid", sim.grid.points);
        read(g, "check_accuracy", "grid", sim.grid.check_accuracy);
    }
    if (doc.contains("crosstalk")) {
        const auto& x = doc["crosstalk"];
        check_keys(x, "crosstalk", {"max_level"});
        read(x, "max_level", "crosstalk", cfg.max_level);
    }
    if (doc.contains("pdf")) {
        const auto& p = doc["pdf"];
        check_keys(p, "pdf", {"level", "points", "spacing", "gamma"});
        read(p, "level", "pdf", cfg.pdf.level);
        read(p, "points", "pdf", cfg.pdf.points);
        const std::string spacing = read_string(p, "spacing", "pdf", "clustered");
        if (spacing == "clustered") cfg.pdf.spacing = TableSpacing::Clustered;
        else if (spacing == "uniform") cfg.pdf.spacing = TableSpacing::Uniform;
        else throw ConfigError("pdf.spacing must be 'clustered' or 'uniform'");
        if (p.contains("gamma") && !p["gamma"].is_null()) cfg.pdf.gamma = read_number(p, "gamma", "pdf", 1.0);
    }
    if (doc.contains("estimate")) {
        const auto& e = doc["estimate"];
        check_keys(e, "estimate", {"confidence", "method"});
        cfg.estimate.confidence = read_number(e, "confidence", "estimate", cfg.estimate.confidence);
        cfg.estimate.method = read_string(e, "method", "estimate", cfg.estimate.method);
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        check_keys(o, "output", {"samples"});
        if (o.contains("samples") && !o["samples"].is_null()) cfg.samples_out = read_string(o, "samples", "output", "");
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return parse_config(s.str());
}

std::vector<double> read_transmittance_csv(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool seen_data = false;
    std::size_t bad_range = 0;
    std::size_t first_bad_range = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty() || row[0] == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ss(row);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);

        double t = 0.0;
        bool ok = false;
        if (fields.size() == 1) {
            ok = parse_double(fields[0], t);
        } else if (fields.size() == 2) {
            double time = 0.0;
            ok = parse_double(fields[0], time) && parse_double(fields[1], t);
        }
        if (!ok) {
            if (!seen_data) {  // header line
                seen_data = true;
                continue;
            }
            throw DataError("malformed row at line " + std::to_string(lineno) + ": '" + row + "'", 1);
        }
        seen_data = true;
        if (!std::isfinite(t) || t < 0.0 || t > 1.0 + 1e-9) {
            if (bad_range++ == 0) first_bad_range = lineno;
        }
        values.push_back(t);
    }
    if (bad_range > 0) {
        throw DataError(std::to_string(bad_range) + " transmittance value(s) outside [0, 1], first at line " +
                            std::to_string(first_bad_range),
                        bad_range);
    }
    return values;
}

std::vector<double> table_points(double t_max, int points, TableSpacing spacing) {
    if (points < 2) throw ParameterError("table needs at least 2 points");
    std::vector<double> ts(static_cast<std::size_t>(points));
    if (spacing == TableSpacing::Uniform) {
        for (int i = 0; i < points; ++i) ts[i] = t_max * (i + 0.5) / points;
        return ts;
    }
    // Double-exponential spacing T = t_max (1 + tanh(pi/2 sinh u)) / 2. The
    // lower end reaches ~1e-200 t_max, the upper end stops ~1e-12 t_max short
    // of t_max so 1 - T/t_max stays representable.
    const double u_lo = -5.7;
    const double u_hi = 2.87;
    for (int i = 0; i < points; ++i) {
        const double u = u_lo + (u_hi - u_lo) * i / (points - 1);
        const double z = 0.5 * std::numbers::pi * std::sinh(u);
        // (1 + tanh z)/2 = 1/(1 + e^{-2z}), stable for large |z|.
        ts[i] = t_max / (1.0 + std::exp(-2.0 * z));
    }
    return ts;
}

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Turbulence-induced loss and modal cross-talk statistics for single-mode free-space links"};
    app.require_subcommand(1);

    Common common;
    common.format = "";
    auto* variances = app.add_subcommand("variances", "tilt and curvature variances of the phase screen");
    auto* pdf = app.add_subcommand("pdf", "tabulate the analytic transmittance or cross-talk density");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo fundamental-mode transmittance histogram");
    auto* crosstalk = app.add_subcommand("crosstalk", "Monte Carlo per-level cross-talk histograms");
    auto* estimate = app.add_subcommand("estimate-r0", "estimate the Fried parameter from transmittance samples");

    add_common(variances, common, false);
    add_common(pdf, common, false);
    pdf->add_option("--level", common.level, "0 for the fundamental, N >= 1 for level-N cross-talk");
    pdf->add_option("--points", common.points, "table rows");
    pdf->add_option("--gamma", common.gamma, "power-law exponent override");
    add_common(simulate, common, true);
    add_common(crosstalk, common, true);
    crosstalk->add_option("--max-level", common.max_level, "highest power level N");
    add_common(estimate, common, false);
    estimate->add_option("input", common.input, "CSV of transmittance samples")->required();

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        if (*variances) {
            if (common.format.empty()) common.format = "json";
            return cmd_variances(common, out);
        }
        if (common.format.empty()) common.format = *estimate ? "json" : "csv";
        if (*pdf) return cmd_pdf(common, out);
        if (*simulate) return cmd_simulate(common, out);
        if (*crosstalk) return cmd_crosstalk(common, out);
        if (*estimate) return cmd_estimate(common, out);
    } catch (const DegenerateDataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ParameterError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitInput;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return kExitInput;
}

int run(int argc, char** argv) {
    return run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}

}  // namespace fsoturb::cli
