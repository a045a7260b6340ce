#include "charfn/model_differentiation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "charfn/extension_calc.hpp"

namespace charfn {

namespace {

void require_length(double ell)
{
    if (!std::isfinite(ell) || !(ell > 0.0))
        throw InvalidArgument("interval length must be positive");
}

std::string length_label(const char* name, double ell)
{
    std::ostringstream out;
    out << name << "(l=" << ell << ")";
    return out.str();
}

// e^w - 1 without cancellation near w = 0.
Complex expm1(Complex w)
{
    const double half_sin = std::sin(w.imag() / 2.0);
    const double re = std::expm1(w.real()) * std::cos(w.imag()) - 2.0 * half_sin * half_sin;
    return {re, std::exp(w.real()) * std::sin(w.imag())};
}

// (e^{r l} - 1) / r, continued to r = 0.
Complex exp_ramp(Complex r, double ell)
{
    if (r == Complex(0.0))
        return ell;
    return expm1(r * ell) / r;
}

} // namespace

Interval::Interval(double a, double b) : a_(a), b_(b)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw InvalidArgument("interval needs a < b");
}

DeficiencyElement::DeficiencyElement(DeficiencyKind kind, double length, Complex z)
    : kind_(kind), length_(length), z_(z)
{
    require_length(length);
}

DeficiencyElement DeficiencyElement::g_plus(double length)
{
    return {DeficiencyKind::GPlus, length, 0.0};
}

DeficiencyElement DeficiencyElement::g_minus(double length)
{
    return {DeficiencyKind::GMinus, length, 0.0};
}

DeficiencyElement DeficiencyElement::g_z(double length, Complex z)
{
    return {DeficiencyKind::GZ, length, z};
}

Complex DeficiencyElement::operator()(double x) const
{
    switch (kind_) {
    case DeficiencyKind::GPlus:
        return std::sqrt(2.0) / std::sqrt(std::expm1(2.0 * length_)) * std::exp(x);
    case DeficiencyKind::GMinus:
        return std::sqrt(2.0) / std::sqrt(-std::expm1(-2.0 * length_)) * std::exp(-x);
    case DeficiencyKind::GZ:
        return std::exp(-kI * z_ * x);
    }
    return 0.0;
}

ModelFunctions model_closed_forms(double ell)
{
    require_length(ell);
    const double kappa = std::exp(-ell);
    AnalyticFn s(
        [ell, kappa](Complex z) {
            const Complex e = std::exp(kI * ell * z);
            return (e - kappa) / (kappa * e - 1.0);
        },
        FnKind::Livsic, length_label("model_s", ell));
    AnalyticFn S([ell](Complex z) { return std::exp(kI * ell * z); }, FnKind::Characteristic,
                 length_label("exp_ilz", ell));
    return {std::move(s), std::move(S), VonNeumannParameter(kappa)};
}

Complex model_livsic_inner_products(double ell, Complex z)
{
    require_length(ell);
    // int_0^l e^{(-iz -+ 1) x} dx with the normalizations of g-, g+.
    const Complex minus_rate = -kI * z - 1.0;
    const Complex plus_rate = -kI * z + 1.0;
    const Complex gz_gminus = std::sqrt(2.0) / std::sqrt(-std::expm1(-2.0 * ell)) * exp_ramp(minus_rate, ell);
    const Complex gz_gplus = std::sqrt(2.0) / std::sqrt(std::expm1(2.0 * ell)) * exp_ramp(plus_rate, ell);
    return (z - kI) / (z + kI) * gz_gminus / gz_gplus;
}

SplitCheck split_interval_check(double ell, double gamma_fraction, const EvaluationGrid& grid)
{
    require_length(ell);
    if (!(gamma_fraction > 0.0 && gamma_fraction < 1.0))
        throw OutOfRange("split fraction must lie in (0, 1)");
    const double ell1 = gamma_fraction * ell;
    const double ell2 = ell - ell1;
    const auto whole = model_closed_forms(ell);
    const auto left = model_closed_forms(ell1);
    const auto right = model_closed_forms(ell2);

    const auto product = multiply_characteristic(TaggedCharacteristic(left.S, left.kappa),
                                                 TaggedCharacteristic(right.S, right.kappa));
    return {sup_deviation(whole.S, product.fn(), grid), product.kappa(),
            std::abs(product.kappa().value() - whole.kappa.value())};
}

} // namespace charfn
