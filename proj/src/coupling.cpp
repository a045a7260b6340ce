#include "charfn/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace charfn {

CouplingAngles coupling_angles(double kappa1, double kappa2, double zero_threshold)
{
    if (!(kappa1 >= 0.0 && kappa1 < 1.0) || !(kappa2 >= 0.0 && kappa2 < 1.0))
        throw OutOfRange("coupling angles need kappa1, kappa2 in [0, 1)");
    if (kappa2 <= zero_threshold)
        return {std::numbers::pi / 2, std::asin(kappa1), true};

    // atan2 keeps alpha accurate as kappa2 -> 0; the kappa2 in
    // tan(beta) = kappa1 kappa2 tan(alpha) cancels against tan(alpha).
    const double ratio = std::sqrt((1.0 - kappa2 * kappa2) / (1.0 - kappa1 * kappa1));
    return {std::atan2(ratio, kappa2), std::atan(kappa1 * ratio), false};
}

TaggedCharacteristic::TaggedCharacteristic(AnalyticFn fn, VonNeumannParameter kappa, double tol)
    : fn_(std::move(fn)), kappa_(kappa)
{
    if (!(std::abs(fn_(kI) - kappa_.value()) < tol)) {
        std::ostringstream msg;
        msg << "tag kappa = " << kappa_.value() << " disagrees with " << fn_.label()
            << " at i = " << fn_(kI);
        throw InvalidArgument(msg.str());
    }
}

AnalyticFn couple_livsic(const AnalyticFn& s1, const AnalyticFn& s2, const CouplingAngles& angles)
{
    const double cc = std::cos(angles.alpha) * std::cos(angles.beta);
    const double ss = std::sin(angles.alpha) * std::sin(angles.beta);
    std::ostringstream label;
    label << "couple(" << s1.label() << ", " << s2.label() << ")";
    return AnalyticFn(
        [s1, s2, cc, ss](Complex z) {
            const Complex v1 = s1(z);
            const Complex v2 = s2(z);
            const Complex den = 1.0 - (ss * v1 + cc * v2);
            if (std::abs(den) < 1e-14)
                throw PoleEncountered("coupling formula denominator vanishes");
            return (cc * v1 - v1 * v2 + ss * v2) / den;
        },
        FnKind::Livsic, label.str());
}

double general_k_identity_defect(double k, const AnalyticFn& s1, const AnalyticFn& s2,
                                 const CouplingAngles& angles, const EvaluationGrid& grid)
{
    if (!(k >= 0.0 && k < 1.0))
        throw OutOfRange("k must lie in [0, 1)");
    const double cc = std::cos(angles.alpha) * std::cos(angles.beta);
    const double ss = std::sin(angles.alpha) * std::sin(angles.beta);
    const double a1 = cc + k * ss;
    const double a2 = ss + k * cc;
    const AnalyticFn s = couple_livsic(s1, s2, angles);

    double worst = 0.0;
    for (const auto& z : grid) {
        const Complex v = s(z);
        const Complex v1 = s1(z);
        const Complex v2 = s2(z);
        const Complex lhs_den = k * v - 1.0;
        const Complex rhs_den = a2 * v1 + a1 * v2 - k * v1 * v2 - 1.0;
        if (std::abs(lhs_den) < 1e-14 || std::abs(rhs_den) < 1e-14)
            throw PoleEncountered("general-k identity has a vanishing denominator on the grid");
        const Complex lhs = (v - k) / lhs_den;
        const Complex rhs = (a1 * v1 + a2 * v2 - v1 * v2 - k) / rhs_den;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

AnalyticFn add_weyl(const AnalyticFn& M1, const AnalyticFn& M2, double alpha)
{
    const double c2 = std::cos(alpha) * std::cos(alpha);
    const double s2 = std::sin(alpha) * std::sin(alpha);
    std::ostringstream label;
    label << "add(" << M1.label() << ", " << M2.label() << ", alpha=" << alpha << ")";
    return AnalyticFn([M1, M2, c2, s2](Complex z) { return c2 * M1(z) + s2 * M2(z); },
                      FnKind::Herglotz, label.str());
}

TaggedCharacteristic multiply_characteristic(const TaggedCharacteristic& t1,
                                             const TaggedCharacteristic& t2)
{
    const AnalyticFn f1 = t1.fn();
    const AnalyticFn f2 = t2.fn();
    AnalyticFn product([f1, f2](Complex z) { return f1(z) * f2(z); }, FnKind::Characteristic,
                       f1.label() + " * " + f2.label());
    return TaggedCharacteristic(std::move(product),
                                VonNeumannParameter(t1.kappa().value() * t2.kappa().value()));
}

bool ClassPropertiesReport::all_pass() const
{
    return std::all_of(properties.begin(), properties.end(),
                       [](const PropertyResult& p) { return p.pass; });
}

namespace {

bool contractive_kind(const AnalyticFn& f)
{
    return f.kind() == FnKind::Livsic || f.kind() == FnKind::Characteristic;
}

AnalyticFn product(const AnalyticFn& f, const AnalyticFn& g, FnKind kind)
{
    return AnalyticFn([f, g](Complex z) { return f(z) * g(z); }, kind,
                      f.label() + " * " + g.label());
}

void record(PropertyResult& p, double deviation, double tol)
{
    ++p.cases;
    p.worst_deviation = std::max(p.worst_deviation, deviation);
    p.pass = p.pass && deviation <= tol;
}

} // namespace

ClassPropertiesReport verify_class_properties(const std::vector<AnalyticFn>& samples,
                                              const ToleranceConfig& cfg,
                                              const EvaluationGrid& grid)
{
    cfg.validate();
    const double tol = cfg.identity_tol;
    PropertyResult convex{"(i) convexity of Herglotz class"};
    PropertyResult closed{"(ii) closure of characteristic class under products"};
    PropertyResult ideal{"(iii) kappa-zero factors form an ideal"};
    PropertyResult livsic{"(iv) closure of Livsic class under products"};

    std::vector<AnalyticFn> herglotz;
    for (const auto& f : samples)
        if (f.kind() == FnKind::Herglotz && std::abs(f(kI) - kI) < tol)
            herglotz.push_back(f);
    for (std::size_t a = 0; a < herglotz.size(); ++a) {
        for (std::size_t b = a; b < herglotz.size(); ++b) {
            for (double alpha : {std::numbers::pi / 6, std::numbers::pi / 4, std::numbers::pi / 3}) {
                const AnalyticFn sum = add_weyl(herglotz[a], herglotz[b], alpha);
                const double negative_im = std::max(0.0, -inf_imaginary(sum, grid));
                record(convex, std::max(negative_im, std::abs(sum(kI) - kI)), tol);
            }
        }
    }

    for (std::size_t a = 0; a < samples.size(); ++a) {
        for (std::size_t b = a; b < samples.size(); ++b) {
            const auto& f = samples[a];
            const auto& g = samples[b];
            if (!contractive_kind(f) || !contractive_kind(g))
                continue;
            const auto p = product(f, g, FnKind::Characteristic);
            const Complex k1 = f(kI);
            const Complex k2 = g(kI);
            const double excess = std::max(0.0, sup_modulus(p, grid) - 1.0);
            record(closed, std::max(excess, std::abs(p(kI) - k1 * k2)), tol);

            if (std::abs(k1) < tol || std::abs(k2) < tol)
                record(ideal, std::abs(p(kI)), tol);
            if (f.kind() == FnKind::Livsic && g.kind() == FnKind::Livsic)
                record(livsic, std::abs(p(kI)), tol);
        }
    }

    return {{convex, closed, ideal, livsic}, grid.description()};
}

Json to_json(const CouplingAngles& angles)
{
    return Json{{"alpha", angles.alpha},
                {"beta", angles.beta},
                {"kappa2_is_zero", angles.kappa2_is_zero}};
}

Json to_json(const ClassPropertiesReport& report)
{
    Json props = Json::array();
    for (const auto& p : report.properties) {
        props.push_back(Json{{"name", p.name},
                             {"cases", p.cases},
                             {"worst_deviation", p.worst_deviation},
                             {"pass", p.pass}});
    }
    return Json{{"grid", report.grid_description},
                {"properties", std::move(props)},
                {"pass", report.all_pass()}};
}

} // namespace charfn
