#include "charfn/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include "charfn/coupling.hpp"
#include "charfn/extension_calc.hpp"
#include "charfn/invariant_suite.hpp"
#include "charfn/json_io.hpp"
#include "charfn/model_differentiation.hpp"
#include "charfn/model_oracle.hpp"
#include "charfn/moebius.hpp"

namespace charfn::cli {

namespace {

// Raised for bad flag values after CLI11 has accepted the syntax.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Report {
    Json json;
    // Function swept over the grid for CSV output.
    std::optional<AnalyticFn> sweep;
    bool verification_failed = false;
};

std::string csv_number(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const AnalyticFn& f, const EvaluationGrid& grid)
{
    out << "re,im,f_re,f_im\n";
    const auto values = evaluate_on_grid(f, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const auto& z = grid.points()[k];
        out << csv_number(z.re()) << ',' << csv_number(z.im()) << ',';
        if (values[k])
            out << csv_number(values[k]->real()) << ',' << csv_number(values[k]->imag());
        else
            out << "nan,nan";
        out << '\n';
    }
}

Json sweep_json(const AnalyticFn& f, const EvaluationGrid& grid)
{
    Json values = Json::array();
    const auto v = evaluate_on_grid(f, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
        values.push_back(Json{{"z", complex_to_json(grid.points()[k].value())},
                              {"f", v[k] ? complex_to_json(*v[k]) : Json(nullptr)}});
    }
    return values;
}

void attach_check(Report& r, std::string_view name, double deviation, double tolerance)
{
    const bool pass = std::isfinite(deviation) && deviation <= tolerance;
    r.json["check"] = std::string(name);
    r.json["max_deviation"] = deviation;
    r.json["tolerance"] = tolerance;
    r.json["pass"] = pass;
    r.verification_failed = !pass;
}

double require_unit_interval(double x, const char* flag)
{
    if (!(x >= 0.0 && x < 1.0))
        throw UsageError(std::string(flag) + " must lie in [0, 1)");
    return x;
}

double require_positive(double x, const char* flag)
{
    if (!std::isfinite(x) || !(x > 0.0))
        throw UsageError(std::string(flag) + " must be positive");
    return x;
}

HalfPlanePoint require_half_plane(std::string_view text)
{
    const Complex z = parse_complex(text);
    if (!(z.imag() > 0.0))
        throw UsageError("--eval point must lie in the open upper half-plane");
    return HalfPlanePoint(z);
}

void require_check(const std::string& check, std::initializer_list<const char*> allowed)
{
    if (check.empty())
        return;
    for (const char* a : allowed)
        if (check == a)
            return;
    std::string msg = "unknown --check '" + check + "'; expected one of:";
    for (const char* a : allowed)
        msg += std::string(" ") + a;
    throw UsageError(msg);
}

struct Flags {
    double length = 1.0;
    std::string eval;
    double kappa1 = 0.0;
    double kappa2 = 0.0;
    double alpha = 0.0;
    double k = 0.0;
    std::string atoms;
    std::string grid = "default";
    std::string check;
    std::string format = "json";
    std::string probe = "model";
    bool check_normalization = false;
};

TaggedCharacteristic tagged_model(double ell, double kappa)
{
    const VonNeumannParameter k(kappa);
    return TaggedCharacteristic(characteristic_from_livsic(model_closed_forms(ell).s, k), k);
}

double nunu_deviation(double ell, double k1, double k2, const EvaluationGrid& grid)
{
    const auto model = model_closed_forms(ell);
    const auto coupled = couple_livsic(model.s, model.s, coupling_angles(k1, k2));
    const auto lhs = characteristic_from_livsic(coupled, VonNeumannParameter(k1 * k2));
    const auto rhs = multiply_characteristic(tagged_model(ell, k1), tagged_model(ell, k2));
    return sup_deviation(lhs, rhs.fn(), grid);
}

Report run_model(const Flags& f, bool eval_given, bool grid_given, const EvaluationGrid& grid,
                 const std::optional<HalfPlanePoint>& z)
{
    const auto m = model_closed_forms(f.length);
    Report r;
    r.json["verb"] = "model";
    r.json["length"] = f.length;
    r.json["kappa"] = m.kappa.value().real();
    if (eval_given || !grid_given) {
        const HalfPlanePoint at = z.value_or(HalfPlanePoint(0.0, 1.0));
        r.json["z"] = complex_to_json(at.value());
        r.json["s"] = complex_to_json(m.s(at));
        r.json["S"] = complex_to_json(m.S(at));
    }
    if (grid_given) {
        r.json["grid"] = grid.description();
        r.json["values"] = sweep_json(m.s, grid);
    }
    r.sweep = m.s;

    if (f.check == "oracle") {
        QuadratureOptions opts;
        double worst = 0.0;
        for (const auto& p : grid)
            worst = std::max(worst, std::abs(model_livsic_quadrature(f.length, p, opts) - m.s(p)));
        attach_check(r, "oracle", worst, opts.tol);
    } else if (f.check == "inner-products") {
        double worst = 0.0;
        for (const auto& p : grid)
            worst = std::max(worst, std::abs(model_livsic_inner_products(f.length, p.value()) - m.s(p)));
        attach_check(r, "inner-products", worst, 1e-12);
    } else if (f.check == "split") {
        double worst = 0.0;
        double kappa = 0.0;
        for (double frac : {0.25, 0.5, 0.999}) {
            const auto sc = split_interval_check(f.length, frac, grid);
            worst = std::max({worst, sc.max_deviation, sc.kappa_deviation});
            kappa = std::max(kappa, sc.kappa_deviation);
        }
        r.json["kappa_tag_deviation"] = kappa;
        attach_check(r, "split", worst, 1e-14);
    } else if (f.check == "endpoints") {
        const auto gp = DeficiencyElement::g_plus(f.length);
        const auto gm = DeficiencyElement::g_minus(f.length);
        const double antiperiodic = std::abs((gp(0.0) - gm(0.0)) + (gp(f.length) - gm(f.length)));
        const double dissipative = std::abs(gp(0.0) - std::exp(-f.length) * gm(0.0));
        attach_check(r, "endpoints", std::max(antiperiodic, dissipative), 1e-12);
    } else if (f.check == "class-c") {
        const auto report = class_C_check(m.s);
        r.json["verdict"] = std::string(to_string(report.verdict));
        attach_check(r, "class-c", report.verdict == ClassVerdict::ConsistentWithC ? 0.0 : 1.0, 0.0);
    }
    return r;
}

Report run_couple(const Flags& f, const EvaluationGrid& grid, const std::optional<HalfPlanePoint>& z)
{
    const auto model = model_closed_forms(f.length);
    const auto angles = coupling_angles(f.kappa1, f.kappa2);
    const auto s = couple_livsic(model.s, model.s, angles);
    Report r;
    r.json["verb"] = "couple";
    r.json["kappa1"] = f.kappa1;
    r.json["kappa2"] = f.kappa2;
    r.json["length"] = f.length;
    r.json["angles"] = to_json(angles);
    r.json["grid"] = grid.description();
    if (z) {
        r.json["z"] = complex_to_json(z->value());
        r.json["s"] = complex_to_json(s(*z));
    }
    r.sweep = s;
    const std::string check = f.check.empty() ? "nunu" : f.check;
    if (check == "nunu") {
        attach_check(r, "nunu", nunu_deviation(f.length, f.kappa1, f.kappa2, grid), 1e-10);
    } else if (check == "formula1") {
        r.json["k"] = f.k;
        attach_check(r, "formula1",
                     general_k_identity_defect(f.k, model.s, model.s, angles, grid), 1e-10);
    } else {
        attach_check(r, "vanish-at-i", std::abs(s(kI)), 1e-14);
    }
    return r;
}

Report run_multiply(const Flags& f, const EvaluationGrid& grid, const std::optional<HalfPlanePoint>& z)
{
    const auto product = multiply_characteristic(tagged_model(f.length, f.kappa1),
                                                 tagged_model(f.length, f.kappa2));
    Report r;
    r.json["verb"] = "multiply";
    r.json["kappa1"] = f.kappa1;
    r.json["kappa2"] = f.kappa2;
    r.json["length"] = f.length;
    r.json["kappa"] = complex_to_json(product.kappa().value());
    r.json["S_at_i"] = complex_to_json(product.fn()(kI));
    if (z) {
        r.json["z"] = complex_to_json(z->value());
        r.json["S"] = complex_to_json(product.fn()(*z));
    }
    r.sweep = product.fn();
    if (f.check == "nunu") {
        r.json["grid"] = grid.description();
        attach_check(r, "nunu", nunu_deviation(f.length, f.kappa1, f.kappa2, grid), 1e-10);
    } else {
        attach_check(r, "kappa",
                     std::abs(extract_kappa(product.fn()).value() - f.kappa1 * f.kappa2), 1e-12);
    }
    return r;
}

Report run_add(const Flags& f, const EvaluationGrid& grid, const std::optional<HalfPlanePoint>& z)
{
    const auto measures = bundled_measures();
    const auto M = add_weyl(realize_herglotz(measures[0]), realize_herglotz(measures[1]), f.alpha);
    Report r;
    r.json["verb"] = "add";
    r.json["alpha"] = f.alpha;
    r.json["M_at_i"] = complex_to_json(M(kI));
    if (z) {
        r.json["z"] = complex_to_json(z->value());
        r.json["M"] = complex_to_json(M(*z));
    }
    r.sweep = M;
    if (f.check == "herglotz") {
        r.json["grid"] = grid.description();
        attach_check(r, "herglotz", std::max(0.0, -inf_imaginary(M, grid)), 0.0);
    } else {
        attach_check(r, "normalization", std::abs(M(kI) - kI), 1e-14);
    }
    return r;
}

Report run_measure(const Flags& f, const std::vector<Atom>& atoms, bool grid_given,
                   const EvaluationGrid& grid, const std::optional<HalfPlanePoint>& z)
{
    const BorelMeasureModel mu(atoms);
    const auto M = realize_herglotz(mu);
    Report r;
    r.json["verb"] = "measure";
    Json list = Json::array();
    for (const auto& a : atoms)
        list.push_back(Json{{"location", a.location}, {"weight", a.weight}});
    r.json["atoms"] = std::move(list);
    r.json["defect"] = normalization_defect(mu);
    r.json["M_at_i"] = complex_to_json(M(kI));
    if (z) {
        r.json["z"] = complex_to_json(z->value());
        r.json["M"] = complex_to_json(M(*z));
    }
    if (grid_given) {
        r.json["grid"] = grid.description();
        r.json["values"] = sweep_json(M, grid);
    }
    r.sweep = M;

    if (f.check_normalization || f.check == "normalization") {
        attach_check(r, "normalization", normalization_defect(mu), 1e-14);
    } else if (f.check == "invert") {
        const auto [lo, hi] = std::minmax_element(atoms.begin(), atoms.end(),
                                                  [](const Atom& x, const Atom& y) {
                                                      return x.location < y.location;
                                                  });
        const Window window{lo->location - 1.0, hi->location + 1.0};
        const std::vector<double> eps{1e-2, 1e-3, 1e-4};
        const auto inv = stieltjes_invert(M, window, eps);
        Json rec = Json::array();
        for (const auto& a : inv.atoms)
            rec.push_back(Json{{"location", a.location}, {"weight", a.weight}, {"residual", a.residual}});
        r.json["recovered"] = std::move(rec);
        r.json["scan_spacing"] = inv.scan_spacing;

        auto sorted = atoms;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Atom& x, const Atom& y) { return x.location < y.location; });
        double worst = inv.atoms.size() == sorted.size() ? 0.0 : 1.0;
        for (std::size_t k = 0; k < std::min(sorted.size(), inv.atoms.size()); ++k) {
            if (std::abs(inv.atoms[k].location - sorted[k].location) > inv.scan_spacing)
                worst = std::max(worst, 1.0);
            worst = std::max(worst, std::abs(inv.atoms[k].weight - sorted[k].weight) / sorted[k].weight);
        }
        attach_check(r, "invert", worst, ToleranceConfig{}.inversion_rel_tol);
    }
    return r;
}

Report run_check_class(const Flags& f)
{
    std::optional<AnalyticFn> s;
    if (f.probe == "model")
        s = model_closed_forms(f.length).s;
    else if (f.probe == "cayley")
        s = post_compose(MoebiusMap::cayley(), AnalyticFn([](Complex z) { return z; }, FnKind::Generic, "z"),
                         FnKind::Livsic, "cayley");
    else
        s = AnalyticFn::constant(0.5, FnKind::Livsic);
    const auto report = class_C_check(*s);
    Report r;
    r.json = to_json(report);
    r.json["probe"] = f.probe;
    r.sweep = *s;
    if (f.check == "consistent")
        attach_check(r, "consistent", report.verdict == ClassVerdict::ConsistentWithC ? 0.0 : 1.0, 0.0);
    return r;
}

Report run_verify_all()
{
    const auto results = run_invariant_suite();
    Report r;
    r.json = to_json(results);
    r.verification_failed = !r.json["pass"].get<bool>();
    return r;
}

} // namespace

Complex parse_complex(std::string_view text)
{
    static const std::regex pattern(
        R"(^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([+-](?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$)");
    std::match_results<std::string_view::const_iterator> m;
    if (!std::regex_match(text.begin(), text.end(), m, pattern))
        throw InvalidArgument("expected a complex number of the form a+bi or a-bi, got '"
                              + std::string(text) + "'");
    return {std::stod(m[1].str()), std::stod(m[2].str())};
}

std::vector<Atom> parse_atoms(std::string_view text)
{
    if (!text.empty() && text.back() == ',')
        throw InvalidArgument("--atoms has a trailing comma");
    std::vector<Atom> atoms;
    std::stringstream in{std::string(text)};
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw InvalidArgument("atom '" + item + "' is not of the form location:weight");
        std::size_t used_loc = 0;
        std::size_t used_w = 0;
        double loc = 0.0;
        double w = 0.0;
        try {
            const std::string ls = item.substr(0, colon);
            const std::string ws = item.substr(colon + 1);
            loc = std::stod(ls, &used_loc);
            w = std::stod(ws, &used_w);
            if (used_loc != ls.size() || used_w != ws.size())
                throw std::invalid_argument("trailing characters");
        } catch (const std::logic_error&) {
            throw InvalidArgument("atom '" + item + "' is not of the form location:weight");
        }
        atoms.push_back({loc, w});
    }
    if (atoms.empty())
        throw InvalidArgument("--atoms needs at least one location:weight pair");
    return atoms;
}

EvaluationGrid parse_grid(std::string_view text)
{
    if (text == "default")
        return default_grid();
    if (text.starts_with("file:")) {
        const std::string path(text.substr(5));
        std::ifstream in(path);
        if (!in)
            throw InvalidArgument("cannot open grid file '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return grid_from_json(buf.str());
    }
    throw InvalidArgument("--grid must be 'default' or 'file:<path>'");
}

int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Livsic, Weyl-Titchmarsh and characteristic function calculus", "charfn"};
    app.require_subcommand(1);
    Flags f;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    };
    auto add_grid = [&](CLI::App* sub) {
        return sub->add_option("--grid", f.grid, "default | file:<path>");
    };
    auto add_eval = [&](CLI::App* sub) {
        return sub->add_option("--eval", f.eval, "Evaluation point a+bi");
    };

    auto* model = app.add_subcommand("model", "Differentiation model on [0, l]");
    model->add_option("--length", f.length, "Interval length")->required();
    auto* model_eval = add_eval(model);
    auto* model_grid = add_grid(model);
    model->add_option("--check", f.check, "oracle | inner-products | split | endpoints | class-c");
    add_format(model);

    auto* couple = app.add_subcommand("couple", "Livsic coupling of two model functions");
    couple->add_option("--kappa1", f.kappa1)->required();
    couple->add_option("--kappa2", f.kappa2)->required();
    couple->add_option("--length", f.length, "Model interval length for both factors");
    couple->add_option("--k", f.k, "Parameter of the formula1 identity");
    auto* couple_eval = add_eval(couple);
    add_grid(couple);
    couple->add_option("--check", f.check, "nunu | formula1 | vanish-at-i");
    add_format(couple);

    auto* multiply = app.add_subcommand("multiply", "Product of tagged characteristic functions");
    multiply->add_option("--kappa1", f.kappa1)->required();
    multiply->add_option("--kappa2", f.kappa2)->required();
    multiply->add_option("--length", f.length, "Model interval length for both factors");
    auto* multiply_eval = add_eval(multiply);
    add_grid(multiply);
    multiply->add_option("--check", f.check, "kappa | nunu");
    add_format(multiply);

    auto* add = app.add_subcommand("add", "Convex combination of the bundled Weyl functions");
    add->add_option("--alpha", f.alpha)->required();
    auto* add_eval_opt = add_eval(add);
    add_grid(add);
    add->add_option("--check", f.check, "normalization | herglotz");
    add_format(add);

    auto* measure = app.add_subcommand("measure", "Herglotz realization of an atomic measure");
    measure->add_option("--atoms", f.atoms, "loc:weight,...")->required();
    measure->add_flag("--check-normalization", f.check_normalization);
    auto* measure_eval = add_eval(measure);
    auto* measure_grid = add_grid(measure);
    measure->add_option("--check", f.check, "normalization | invert");
    add_format(measure);

    auto* check_class = app.add_subcommand("check-class", "Heuristic Livsic class membership test");
    check_class->add_option("--length", f.length, "Model interval length");
    check_class->add_option("--probe", f.probe)->check(CLI::IsMember({"model", "cayley", "constant"}));
    check_class->add_option("--check", f.check, "consistent");
    add_format(check_class);

    auto* verify_all = app.add_subcommand("verify-all", "Run every invariant check");

    std::vector<const char*> argv{"charfn"};
    for (const auto& a : args)
        argv.push_back(a.c_str());

    Report report;
    std::optional<EvaluationGrid> grid;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        // Validate every flag before computing anything.
        std::optional<HalfPlanePoint> z;
        if (!f.eval.empty())
            z = require_half_plane(f.eval);
        grid = parse_grid(f.grid);
        if (model->parsed()) {
            require_positive(f.length, "--length");
            require_check(f.check, {"oracle", "inner-products", "split", "endpoints", "class-c"});
            report = run_model(f, model_eval->count() > 0, model_grid->count() > 0, *grid, z);
        } else if (couple->parsed()) {
            require_positive(f.length, "--length");
            require_unit_interval(f.kappa1, "--kappa1");
            require_unit_interval(f.kappa2, "--kappa2");
            require_unit_interval(f.k, "--k");
            require_check(f.check, {"nunu", "formula1", "vanish-at-i"});
            report = run_couple(f, *grid, z);
        } else if (multiply->parsed()) {
            require_positive(f.length, "--length");
            require_unit_interval(f.kappa1, "--kappa1");
            require_unit_interval(f.kappa2, "--kappa2");
            require_check(f.check, {"kappa", "nunu"});
            report = run_multiply(f, *grid, z);
        } else if (add->parsed()) {
            if (!std::isfinite(f.alpha))
                throw UsageError("--alpha must be finite");
            require_check(f.check, {"normalization", "herglotz"});
            report = run_add(f, *grid, z);
        } else if (measure->parsed()) {
            const auto atoms = parse_atoms(f.atoms);
            BorelMeasureModel{atoms};
            require_check(f.check, {"normalization", "invert"});
            report = run_measure(f, atoms, measure_grid->count() > 0, *grid, z);
        } else if (check_class->parsed()) {
            require_positive(f.length, "--length");
            require_check(f.check, {"consistent"});
            report = run_check_class(f);
        } else if (verify_all->parsed()) {
            report = run_verify_all();
        }
        (void)model_eval;
        (void)couple_eval;
        (void)multiply_eval;
        (void)add_eval_opt;
        (void)measure_eval;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const OutOfRange& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitVerificationFailed;
    }

    if (f.format == "csv") {
        if (!report.sweep) {
            err << "usage error: this command has no grid sweep for CSV output\n";
            return kExitUsage;
        }
        try {
            write_csv(out, *report.sweep, *grid);
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return kExitVerificationFailed;
        }
    } else {
        out << dump_fixed(report.json) << "\n";
    }
    return report.verification_failed ? kExitVerificationFailed : kExitOk;
}

} // namespace charfn::cli
