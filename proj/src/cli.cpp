#include "infogeo/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "infogeo/beta.hpp"
#include "infogeo/error.hpp"
#include "infogeo/expfam.hpp"
#include "infogeo/geometry.hpp"
#include "infogeo/locscale.hpp"

namespace infogeo::cli {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

// Raised after a diagnostic has been written.
struct Exit {
    int code;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// JSON output with fixed 17-digit numbers

Json number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

void write_json(std::ostream& os, const Json& j, int depth) {
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                os << "{}";
                return;
            }
            os << "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) os << ",\n";
                first = false;
                os << pad << Json(key).dump() << ": ";
                write_json(os, value, depth + 1);
            }
            os << "\n" << close << "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                os << "[]";
                return;
            }
            os << "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) os << ",\n";
                os << pad;
                write_json(os, j[i], depth + 1);
            }
            os << "\n" << close << "]";
            return;
        }
        case Json::value_t::number_float:
            os << format_number(j.get<double>());
            return;
        default:
            os << j.dump();
    }
}

void emit(std::ostream& out, const Json& doc) {
    write_json(out, doc, 0);
    out << "\n";
}

// ---------------------------------------------------------------------------
// Argument helpers

double parse_double(const std::string& text, const std::string& what) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || *end != '\0') throw UsageError(what + ": not a number: '" + text + "'");
    return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(item, what));
    return out;
}

Point2 parse_theta(const std::string& text, const std::string& what) {
    const auto v = parse_list(text, what);
    if (v.size() != 2) throw UsageError(what + ": expected two comma-separated numbers, got '" + text + "'");
    return {v[0], v[1]};
}

struct Axis {
    double lo;
    double hi;
    int steps;

    double at(int i, bool log_scale) const {
        if (steps == 1) return lo;
        const double f = static_cast<double>(i) / (steps - 1);
        return log_scale ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f;
    }
};

Axis parse_axis(const std::string& text, const std::string& what) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError(what + ": expected lo:hi:steps, got '" + text + "'");
    Axis a{parse_double(parts[0], what), parse_double(parts[1], what), 0};
    const double steps = parse_double(parts[2], what);
    if (steps < 1 || steps != std::floor(steps) || steps > 1e6)
        throw UsageError(what + ": steps must be a positive integer");
    a.steps = static_cast<int>(steps);
    return a;
}

// lo:hi:n,lo:hi:n
std::vector<Point2> parse_grid(const std::string& text, const std::string& what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw UsageError(what + ": expected lo:hi:n,lo:hi:n");
    const Axis a = parse_axis(text.substr(0, comma), what);
    const Axis b = parse_axis(text.substr(comma + 1), what);
    return linear_grid(a.lo, a.hi, a.steps, b.lo, b.hi, b.steps);
}

Expr parse_expression(const std::string& text, const std::string& option, std::ostream& err) {
    try {
        return parse(text);
    } catch (const ParseError& e) {
        err << "error: " << option << ": " << e.what() << "\n";
        throw Exit{kUsage};
    }
}

Json metric_json(const SymMatrix2& g) {
    return Json{{"g11", number(g.g11)}, {"g12", number(g.g12)}, {"g22", number(g.g22)}, {"det_g", number(g.det())}};
}

Json theta_json(const Point2& t) { return Json::array({number(t[0]), number(t[1])}); }

// curvature, classification, pipeline and note of a report.
void put_report(Json& doc, const CurvatureReport& r) {
    doc["curvature"] = number(r.curvature);
    doc["classification"] = std::string(to_string(r.classification));
    doc["pipeline"] = r.pipeline;
    if (!r.note.empty()) doc["note"] = r.note;
}

int exit_for(const CurvatureReport& r) { return r.classification == Classification::degenerate ? kDegenerate : kOk; }

Json header(const std::string& command) { return Json{{"tool", "infogeo"}, {"version", kVersion}, {"command", command}}; }

// ---------------------------------------------------------------------------
// Generatrix options shared by locscale and sweep

struct GeneratrixOptions {
    std::string generatrix;
    std::string density;
    std::string derivative;
    std::string support;
    std::string breakpoints;
    bool normalize = false;

    void add(CLI::App* app) {
        auto* g = app->add_option("--generatrix", generatrix, "Built-in generatrix")
                      ->check(CLI::IsMember(builtin_generatrix_names()));
        auto* d = app->add_option("--density-expr", density, "Density p(x) as an expression in x");
        g->excludes(d);
        app->add_option("--derivative-expr", derivative, "Override for p'(x)")->needs(d);
        app->add_option("--support", support, "Interval list, e.g. \"(-inf,0),(0,inf)\"")->needs(d);
        app->add_option("--breakpoints", breakpoints, "Comma-separated interior breakpoints")->needs(d);
        app->add_flag("--normalize", normalize, "Divide the density by its integral")->needs(d);
    }

    Generatrix build(std::ostream& err) const {
        if (!generatrix.empty()) return builtin_generatrix(generatrix);
        if (density.empty()) throw UsageError("one of --generatrix or --density-expr is required");
        if (support.empty()) throw UsageError("--density-expr requires --support");
        const Expr p = parse_expression(density, "--density-expr", err);
        std::optional<Expr> dp;
        if (!derivative.empty()) dp = parse_expression(derivative, "--derivative-expr", err);
        std::vector<double> bps;
        if (!breakpoints.empty()) bps = parse_list(breakpoints, "--breakpoints");
        return Generatrix(p, SupportSpec::parse(support, bps), normalize, dp);
    }

    Json input(const Generatrix& g) const {
        Json in;
        if (!generatrix.empty()) {
            in["generatrix"] = generatrix;
            in["density"] = builtin_density_text(generatrix);
            in["support"] = builtin_support_text(generatrix);
        } else {
            in["density"] = density;
            in["support"] = support;
        }
        Json bps = Json::array();
        for (double b : g.support().breakpoints()) bps.push_back(number(b));
        in["breakpoints"] = bps;
        in["derivative"] = to_string(g.derivative());
        in["normalize"] = normalize;
        in["normalization"] = number(g.normalization());
        return in;
    }
};

Json coefficients_json(const LSCoefficients& k) {
    return Json{{"a2", number(k.a2)},
                {"b2", number(k.b2)},
                {"c", number(k.c)},
                {"a2_error", number(k.a2_error)},
                {"b2_error", number(k.b2_error)},
                {"c_error", number(k.c_error)},
                {"gram_det", number(k.gram())}};
}

// ---------------------------------------------------------------------------
// Commands

int cmd_locscale(const GeneratrixOptions& opts, std::ostream& out, std::ostream& err) {
    const Generatrix g = opts.build(err);
    const LSCoefficients k = ls_coefficients(g);
    const CurvatureReport r = ls_curvature(k);

    Json doc = header("locscale");
    doc["input"] = opts.input(g);
    doc["coefficients"] = coefficients_json(k);
    put_report(doc, r);
    doc["singular"] = r.singular;
    if (r.classification != Classification::degenerate && !r.singular) {
        const Point2 at{0.0, 1.0};
        doc["cross_check"] = Json{{"pipeline", "ricci"},
                                  {"theta", theta_json(at)},
                                  {"curvature", number(scalar_curvature(ls_metric_field(k), at))}};
    }
    emit(out, doc);
    return exit_for(r);
}

int cmd_expfam(const std::string& psi_text, const std::string& theta_text, const std::string& grid_text,
               std::ostream& out, std::ostream& err) {
    const ExpFamilySpec spec(parse_expression(psi_text, "--psi-expr", err));
    const Point2 theta = parse_theta(theta_text, "--theta");
    const CurvatureReport r = ef_curvature(spec, theta);

    Json doc = header("expfam");
    doc["input"] = Json{{"psi", psi_text}, {"theta", theta_json(theta)}};
    doc["metric"] = metric_json(ef_metric(spec, theta));
    put_report(doc, r);
    if (r.classification != Classification::degenerate)
        doc["cross_check"] = Json{{"pipeline", "ricci"}, {"curvature", number(scalar_curvature(spec.field(), theta))}};
    if (!grid_text.empty()) {
        const auto f = ef_flatness_criteria(spec, parse_grid(grid_text, "--flatness-grid"));
        Json flat{{"grid", grid_text}, {"points", f.points}};
        flat["vanishing_entry"] = f.vanishing_entry;
        if (f.vanishing_entry) flat["vanishing_which"] = f.vanishing_which;
        flat["proportional"] = f.proportional;
        if (f.proportional) {
            flat["proportional_pair"] = f.proportional_pair;
            flat["lambda"] = number(f.lambda);
        }
        flat["single_parameter"] = f.single_parameter;
        if (f.single_parameter) flat["constant_in"] = f.constant_in;
        flat["any"] = f.any();
        flat["max_abs_curvature"] = number(f.max_abs_curvature);
        doc["flatness"] = flat;
    }
    emit(out, doc);
    return exit_for(r);
}

int cmd_beta_point(double alpha, double beta, std::ostream& out) {
    const BetaPoint p(alpha, beta);
    const CurvatureReport r = beta_curvature(p);
    Json doc = header("beta");
    doc["input"] = Json{{"alpha", number(alpha)}, {"beta", number(beta)}};
    doc["metric"] = metric_json(beta_metric(p));
    put_report(doc, r);
    doc["printed_closed_form"] = number(r.payload.at("printed_closed_form"));
    emit(out, doc);
    return exit_for(r);
}

int cmd_beta_asymptote(const std::string& direction, std::ostream& out, std::ostream& err) {
    const BetaAsymptote a = beta_asymptote(parse_beta_direction(direction));
    Json doc = header("beta");
    doc["input"] = Json{{"asymptote", direction}};
    Json seq = Json::array();
    for (std::size_t i = 0; i < a.values.size(); ++i)
        seq.push_back(Json{{"t", number(a.t[i])},
                           {"alpha", number(a.points[i].alpha)},
                           {"beta", number(a.points[i].beta)},
                           {"curvature", number(a.values[i])}});
    doc["sequence"] = seq;
    doc["extrapolation"] = "aitken";
    doc["limit"] = number(a.limit);
    doc["classification"] = std::string(to_string(classify(a.limit)));
    doc["monotone_tail"] = a.monotone_tail;
    if (!a.note.empty()) {
        doc["note"] = a.note;
        err << "warning: " << a.note << "\n";
    }
    emit(out, doc);
    return kOk;
}

struct MetricExprs {
    std::string g11, g12, g22;

    void add(CLI::App* app, bool required) {
        app->add_option("--g11", g11, "Metric entry g11(t1, t2)")->required(required);
        app->add_option("--g12", g12, "Metric entry g12(t1, t2)")->required(required);
        app->add_option("--g22", g22, "Metric entry g22(t1, t2)")->required(required);
    }

    MetricField field(std::ostream& err) const {
        if (g11.empty() || g12.empty() || g22.empty()) throw UsageError("--g11, --g12 and --g22 are required");
        return MetricField::symbolic(parse_expression(g11, "--g11", err), parse_expression(g12, "--g12", err),
                                     parse_expression(g22, "--g22", err));
    }
};

int cmd_metric(const MetricExprs& m, const std::string& theta_text, std::ostream& out, std::ostream& err) {
    const MetricField field = m.field(err);
    const Point2 theta = parse_theta(theta_text, "--theta");
    const CurvatureReport r = ricci_report(field, theta);
    Json doc = header("metric");
    doc["input"] = Json{{"g11", m.g11}, {"g12", m.g12}, {"g22", m.g22}, {"theta", theta_json(theta)}};
    doc["metric"] = metric_json(field.at(theta));
    put_report(doc, r);
    emit(out, doc);
    return exit_for(r);
}

struct SweepOptions {
    std::string family;
    std::string p1;
    std::string p2;
    bool log_scale = false;
    std::string output;
    GeneratrixOptions generatrix;
    std::string psi;
    MetricExprs metric;
};

struct Row {
    double x;
    double y;
    double curvature;
    std::string classification;
    double det_g;
};

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
    const Axis a = parse_axis(o.p1, "--p1");
    const Axis b = parse_axis(o.p2, "--p2");
    if (o.log_scale && (a.lo <= 0 || a.hi <= 0 || b.lo <= 0 || b.hi <= 0))
        throw UsageError("--log requires positive grid bounds");

    std::function<Row(double, double)> point;
    Json input{{"family", o.family}};
    if (o.family == "locscale") {
        const Generatrix g = o.generatrix.build(err);
        const LSCoefficients k = ls_coefficients(g);
        const CurvatureReport r = ls_curvature(k);
        input["generatrix"] = o.generatrix.input(g);
        point = [k, r](double l, double s) {
            const SymMatrix2 m = ls_metric_at(k, l, s);
            return Row{l, s, r.curvature, std::string(to_string(r.classification)), m.det()};
        };
    } else if (o.family == "expfam") {
        if (o.psi.empty()) throw UsageError("sweep --family expfam requires --psi-expr");
        const ExpFamilySpec spec(parse_expression(o.psi, "--psi-expr", err));
        input["psi"] = o.psi;
        point = [spec](double t1, double t2) {
            const auto r = ef_curvature(spec, {t1, t2});
            return Row{t1, t2, r.curvature, std::string(to_string(r.classification)), r.payload.at("det_g")};
        };
    } else if (o.family == "beta") {
        point = [](double alpha, double beta) {
            const auto r = beta_curvature({alpha, beta});
            return Row{alpha, beta, r.curvature, std::string(to_string(r.classification)), r.payload.at("det_g")};
        };
    } else {
        const MetricField field = o.metric.field(err);
        input["g11"] = o.metric.g11;
        input["g12"] = o.metric.g12;
        input["g22"] = o.metric.g22;
        point = [field](double t1, double t2) {
            const auto r = ricci_report(field, {t1, t2});
            return Row{t1, t2, r.curvature, std::string(to_string(r.classification)), r.payload.at("det_g")};
        };
    }

    std::ofstream csv(o.output);
    if (!csv) throw UsageError("cannot write output file '" + o.output + "'");
    csv << "param1,param2,S,classification,det_g\n";
    std::size_t rows = 0;
    std::size_t failures = 0;
    std::map<std::string, std::size_t> counts;
    for (int i = 0; i < a.steps; ++i)
        for (int j = 0; j < b.steps; ++j) {
            const double x = a.at(i, o.log_scale);
            const double y = b.at(j, o.log_scale);
            Row row;
            try {
                row = point(x, y);
            } catch (const std::exception& e) {
                row = Row{x, y, std::nan(""), "error", std::nan("")};
                err << "warning: (" << format_number(x) << ", " << format_number(y) << "): " << e.what() << "\n";
                ++failures;
            }
            csv << format_number(row.x) << "," << format_number(row.y) << "," << format_number(row.curvature) << ","
                << row.classification << "," << format_number(row.det_g) << "\n";
            ++counts[row.classification];
            ++rows;
        }
    csv.close();
    if (!csv) throw UsageError("failed writing output file '" + o.output + "'");

    Json doc = header("sweep");
    input["p1"] = o.p1;
    input["p2"] = o.p2;
    input["log"] = o.log_scale;
    doc["input"] = input;
    doc["output"] = o.output;
    doc["rows"] = rows;
    doc["errors"] = failures;
    Json by_class = Json::object();
    for (const auto& [name, n] : counts) by_class[name] = n;
    doc["classifications"] = by_class;
    emit(out, doc);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fisher metric and scalar curvature of two-parameter statistical manifolds", "infogeo"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* locscale = app.add_subcommand("locscale", "Location-scale family of a generatrix density");
    GeneratrixOptions ls_opts;
    ls_opts.add(locscale);

    auto* expfam = app.add_subcommand("expfam", "Exponential family from its log-partition function");
    std::string psi, ef_theta, flat_grid;
    expfam->add_option("--psi-expr", psi, "psi(t1, t2)")->required();
    expfam->add_option("--theta", ef_theta, "Point t1,t2")->required();
    expfam->add_option("--flatness-grid", flat_grid, "Grid lo:hi:n,lo:hi:n for the flatness criteria");

    auto* beta = app.add_subcommand("beta", "Beta family");
    double alpha = 0.0, beta_param = 0.0;
    std::string direction;
    auto* a_opt = beta->add_option("--alpha", alpha, "alpha > 0");
    auto* b_opt = beta->add_option("--beta", beta_param, "beta > 0");
    auto* dir_opt = beta->add_option("--asymptote", direction, "both-large, both-small, mixed or mixed-swapped");
    a_opt->needs(b_opt);
    b_opt->needs(a_opt);
    dir_opt->excludes(a_opt)->excludes(b_opt);

    auto* metric = app.add_subcommand("metric", "Arbitrary metric given by three expressions in t1, t2");
    MetricExprs m_exprs;
    m_exprs.add(metric, true);
    std::string m_theta;
    metric->add_option("--theta", m_theta, "Point t1,t2")->required();

    auto* sweep = app.add_subcommand("sweep", "Curvature over a parameter grid, written as CSV");
    SweepOptions sw;
    sweep->add_option("--family", sw.family, "locscale, expfam, beta or metric")
        ->required()
        ->check(CLI::IsMember({"locscale", "expfam", "beta", "metric"}));
    sweep->add_option("--p1", sw.p1, "First parameter lo:hi:steps")->required();
    sweep->add_option("--p2", sw.p2, "Second parameter lo:hi:steps")->required();
    sweep->add_flag("--log", sw.log_scale, "Logarithmic spacing on both axes");
    sweep->add_option("--output", sw.output, "CSV output path")->required();
    sw.generatrix.add(sweep);
    sweep->add_option("--psi-expr", sw.psi, "psi(t1, t2) for the expfam family");
    sw.metric.add(sweep, false);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        try {
            app.parse(reversed);
        } catch (const CLI::ParseError& e) {
            std::ostringstream o, r;
            const int code = app.exit(e, o, r);
            out << o.str();
            err << r.str();
            return code == 0 ? kOk : kUsage;
        }

        if (*locscale) return cmd_locscale(ls_opts, out, err);
        if (*expfam) return cmd_expfam(psi, ef_theta, flat_grid, out, err);
        if (*beta) {
            if (!direction.empty()) return cmd_beta_asymptote(direction, out, err);
            if (a_opt->count() == 0) throw UsageError("beta requires --alpha and --beta, or --asymptote");
            return cmd_beta_point(alpha, beta_param, out);
        }
        if (*metric) return cmd_metric(m_exprs, m_theta, out, err);
        return cmd_sweep(sw, out, err);
    } catch (const Exit& e) {
        return e.code;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DegenerateMetricError& e) {
        err << "error: " << e.what() << "\n";
        return kDegenerate;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace infogeo::cli
