#include "charfn/function_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "charfn/json_io.hpp"

namespace charfn {

HalfPlanePoint::HalfPlanePoint(double re, double im) : re_(re), im_(im)
{
    if (!std::isfinite(re) || !std::isfinite(im) || !(im > 0.0)) {
        std::ostringstream msg;
        msg << "point " << re << (im < 0 ? "" : "+") << im << "i is not in the open upper half-plane";
        throw InvalidArgument(msg.str());
    }
}

std::string_view to_string(FnKind kind)
{
    switch (kind) {
    case FnKind::Livsic: return "livsic";
    case FnKind::Herglotz: return "herglotz";
    case FnKind::Characteristic: return "characteristic";
    case FnKind::Generic: return "generic";
    }
    return "unknown";
}

AnalyticFn::AnalyticFn(Evaluator evaluator, FnKind kind, std::string label)
    : evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))), kind_(kind),
      label_(std::move(label))
{
    if (!*evaluator_)
        throw InvalidArgument("AnalyticFn requires a callable evaluator");
}

Complex AnalyticFn::operator()(const HalfPlanePoint& z) const
{
    const Complex v = (*evaluator_)(z.value());
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > kOverflowGuard) {
        std::ostringstream msg;
        msg << label_ << " diverges at " << z.re() << "+" << z.im() << "i";
        throw PoleEncountered(msg.str());
    }
    return v;
}

AnalyticFn AnalyticFn::retagged(FnKind kind, std::string label) const
{
    AnalyticFn copy = *this;
    copy.kind_ = kind;
    copy.label_ = std::move(label);
    return copy;
}

AnalyticFn AnalyticFn::constant(Complex c, FnKind kind)
{
    std::ostringstream label;
    label << "constant " << c;
    return AnalyticFn([c](Complex) { return c; }, kind, label.str());
}

void ToleranceConfig::validate() const
{
    for (double t : {identity_tol, quadrature_tol, kappa2_zero_threshold, inversion_rel_tol}) {
        if (!(t > 0.0 && t < 1.0))
            throw InvalidArgument("tolerances must lie strictly between 0 and 1");
    }
}

EvaluationGrid::EvaluationGrid(std::vector<HalfPlanePoint> points, std::string description)
    : points_(std::move(points)), description_(std::move(description))
{
    if (points_.empty())
        throw InvalidArgument("evaluation grid is empty");
    std::vector<std::pair<double, double>> keys;
    keys.reserve(points_.size());
    for (const auto& p : points_)
        keys.emplace_back(p.re(), p.im());
    std::sort(keys.begin(), keys.end());
    if (std::adjacent_find(keys.begin(), keys.end()) != keys.end())
        throw InvalidArgument("evaluation grid contains duplicate points");
}

EvaluationGrid lattice_grid(double re_lo, double re_hi, double im_lo, double im_hi,
                            std::size_t nx, std::size_t ny)
{
    if (nx < 2 || ny < 2)
        throw InvalidArgument("lattice needs at least two points per axis");
    std::vector<HalfPlanePoint> pts;
    pts.reserve(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double im = im_lo + (im_hi - im_lo) * static_cast<double>(j) / static_cast<double>(ny - 1);
        for (std::size_t k = 0; k < nx; ++k) {
            const double re = re_lo + (re_hi - re_lo) * static_cast<double>(k) / static_cast<double>(nx - 1);
            pts.emplace_back(re, im);
        }
    }
    std::ostringstream desc;
    desc << nx << "x" << ny << " lattice on [" << re_lo << ", " << re_hi << "] x [" << im_lo << ", "
         << im_hi << "]";
    return EvaluationGrid(std::move(pts), desc.str());
}

EvaluationGrid default_grid()
{
    auto lattice = lattice_grid(-5.0, 5.0, 0.1, 5.0, 21, 21);
    std::vector<HalfPlanePoint> pts = lattice.points();
    pts.emplace_back(0.0, 1.0);
    return EvaluationGrid(std::move(pts), lattice.description() + " plus i");
}

EvaluationGrid grid_from_json(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InvalidArgument(std::string("grid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw InvalidArgument("grid JSON must be an object with a \"points\" array");
    std::vector<HalfPlanePoint> pts;
    for (const auto& p : j["points"]) {
        if (!p.is_object() || !p.contains("re") || !p.contains("im") || !p["re"].is_number()
            || !p["im"].is_number())
            throw InvalidArgument("grid point must be {\"re\": number, \"im\": number}");
        pts.emplace_back(p["re"].get<double>(), p["im"].get<double>());
    }
    std::string description = j.value("description", std::string{});
    return EvaluationGrid(std::move(pts), std::move(description));
}

std::string grid_to_json(const EvaluationGrid& grid)
{
    Json points = Json::array();
    for (const auto& p : grid)
        points.push_back(complex_to_json(p.value()));
    Json j;
    j["points"] = std::move(points);
    j["description"] = grid.description();
    return dump_fixed(j);
}

std::vector<std::optional<Complex>> evaluate_on_grid(const AnalyticFn& f, const EvaluationGrid& grid)
{
    std::vector<std::optional<Complex>> out;
    out.reserve(grid.size());
    for (const auto& z : grid) {
        try {
            out.emplace_back(f(z));
        } catch (const PoleEncountered&) {
            out.emplace_back(std::nullopt);
        }
    }
    return out;
}

double sup_deviation(const AnalyticFn& f, const AnalyticFn& g, const EvaluationGrid& grid)
{
    double worst = 0.0;
    for (const auto& z : grid)
        worst = std::max(worst, std::abs(f(z) - g(z)));
    return worst;
}

double sup_modulus(const AnalyticFn& f, const EvaluationGrid& grid)
{
    double worst = 0.0;
    for (const auto& z : grid)
        worst = std::max(worst, std::abs(f(z)));
    return worst;
}

double inf_imaginary(const AnalyticFn& f, const EvaluationGrid& grid)
{
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& z : grid)
        lowest = std::min(lowest, f(z).imag());
    return lowest;
}

bool satisfies_kind_bounds(const AnalyticFn& f, const EvaluationGrid& grid, double tol)
{
    switch (f.kind()) {
    case FnKind::Livsic:
    case FnKind::Characteristic:
        return sup_modulus(f, grid) <= 1.0 + tol;
    case FnKind::Herglotz:
        return inf_imaginary(f, grid) >= -tol;
    case FnKind::Generic:
        return true;
    }
    return true;
}

} // namespace charfn
