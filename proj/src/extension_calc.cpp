#include "charfn/extension_calc.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "charfn/moebius.hpp"

namespace charfn {

VonNeumannParameter::VonNeumannParameter(Complex kappa) : kappa_(kappa)
{
    if (!std::isfinite(kappa.real()) || !std::isfinite(kappa.imag()) || !(std::abs(kappa) < 1.0))
        throw OutOfRange("von Neumann parameter must satisfy |kappa| < 1");
}

ReferenceRotation::ReferenceRotation(double alpha) : alpha_(alpha)
{
    if (!(alpha >= 0.0 && alpha < std::numbers::pi))
        throw OutOfRange("reference rotation angle must lie in [0, pi)");
}

AnalyticFn characteristic_from_livsic(const AnalyticFn& s, const VonNeumannParameter& kappa)
{
    if (s.kind() != FnKind::Livsic && s.kind() != FnKind::Characteristic)
        throw InvalidArgument("characteristic_from_livsic expects a contractive (Livsic or "
                              "characteristic) function");
    std::ostringstream label;
    label << "characteristic(" << s.label() << ", kappa=" << kappa.value() << ")";
    return post_compose(MoebiusMap::disk_automorphism(kappa), s, FnKind::Characteristic, label.str());
}

VonNeumannParameter extract_kappa(const AnalyticFn& S)
{
    const Complex k = S(kI);
    if (!(std::abs(k) < 1.0)) {
        std::ostringstream msg;
        msg << S.label() << " has |S(i)| = " << std::abs(k) << " >= 1";
        throw NotContractive(msg.str());
    }
    return VonNeumannParameter(k);
}

AnalyticFn reference_change_livsic(const AnalyticFn& s, const ReferenceRotation& rot)
{
    const Complex factor = std::polar(1.0, -2.0 * rot.alpha());
    std::ostringstream label;
    label << "rotate(" << s.label() << ", alpha=" << rot.alpha() << ")";
    return AnalyticFn([s, factor](Complex z) { return factor * s(z); }, s.kind(), label.str());
}

AnalyticFn reference_change_weyl(const AnalyticFn& M, const ReferenceRotation& rot)
{
    std::ostringstream label;
    label << "rotate(" << M.label() << ", alpha=" << rot.alpha() << ")";
    return post_compose(MoebiusMap::half_plane_rotation(rot.alpha()), M, M.kind(), label.str());
}

AnalyticFn unimodular_multiple(const AnalyticFn& f, Complex theta)
{
    if (std::abs(std::abs(theta) - 1.0) > 1e-12)
        throw InvalidArgument("unimodular factor must have modulus one");
    std::ostringstream label;
    label << theta << " * " << f.label();
    return AnalyticFn([f, theta](Complex z) { return theta * f(z); }, f.kind(), label.str());
}

std::string_view to_string(ClassVerdict v)
{
    switch (v) {
    case ClassVerdict::ConsistentWithC: return "ConsistentWithC";
    case ClassVerdict::FailsAtI: return "FailsAtI";
    case ClassVerdict::FailsGrowth: return "FailsGrowth";
    }
    return "unknown";
}

ClassMembershipReport class_C_check(const AnalyticFn& s, const ToleranceConfig& cfg)
{
    cfg.validate();
    constexpr double pi = std::numbers::pi;
    constexpr int alpha_count = 16;
    constexpr double growth_floor = 1e3;
    const std::vector<double> thetas{pi / 4, pi / 2, 3 * pi / 4};
    const std::vector<double> radii{1e1, 1e2, 1e3, 1e4};

    ClassMembershipReport report;
    report.value_at_i = s(kI);
    report.vanishes_at_i = std::abs(report.value_at_i) < cfg.identity_tol;

    // Values along the rays do not depend on alpha.
    std::vector<std::vector<std::pair<Complex, Complex>>> samples;
    for (double theta : thetas) {
        auto& row = samples.emplace_back();
        for (double r : radii) {
            const Complex z = std::polar(r, theta);
            row.emplace_back(z, s(z));
        }
    }

    report.ray_growth_passed = true;
    for (int k = 0; k < alpha_count; ++k) {
        const double alpha = pi * k / alpha_count;
        const Complex target = std::polar(1.0, 2.0 * alpha);
        for (std::size_t t = 0; t < thetas.size(); ++t) {
            RayProbe probe{alpha, thetas[t], radii, {}, true};
            for (const auto& [z, v] : samples[t])
                probe.magnitudes.push_back(std::abs(z * (v - target)));
            for (std::size_t j = 1; j < probe.magnitudes.size(); ++j)
                probe.passed = probe.passed && probe.magnitudes[j] > probe.magnitudes[j - 1];
            probe.passed = probe.passed && probe.magnitudes.back() > growth_floor;
            report.ray_growth_passed = report.ray_growth_passed && probe.passed;
            report.ray_details.push_back(std::move(probe));
        }
    }

    if (!report.vanishes_at_i)
        report.verdict = ClassVerdict::FailsAtI;
    else if (!report.ray_growth_passed)
        report.verdict = ClassVerdict::FailsGrowth;
    else
        report.verdict = ClassVerdict::ConsistentWithC;
    return report;
}

Json to_json(const ClassMembershipReport& report)
{
    Json rays = Json::array();
    for (const auto& p : report.ray_details) {
        rays.push_back(Json{{"alpha", p.alpha},
                            {"theta", p.theta},
                            {"radii", p.radii},
                            {"magnitudes", p.magnitudes},
                            {"passed", p.passed}});
    }
    return Json{{"value_at_i", complex_to_json(report.value_at_i)},
                {"vanishes_at_i", report.vanishes_at_i},
                {"ray_growth_passed", report.ray_growth_passed},
                {"verdict", std::string(to_string(report.verdict))},
                {"ray_details", std::move(rays)}};
}

} // namespace charfn
