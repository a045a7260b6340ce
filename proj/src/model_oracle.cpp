#include "charfn/model_oracle.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace charfn {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kWeights{0.2369268850561891, 0.4786286704993665,
                                         0.5688888888888889, 0.4786286704993665,
                                         0.2369268850561891};

template <typename F>
Complex composite_gauss(const F& integrand, double lo, double hi, std::size_t panels)
{
    const double width = (hi - lo) / static_cast<double>(panels);
    Complex total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = lo + width * (static_cast<double>(p) + 0.5);
        Complex panel = 0.0;
        for (std::size_t k = 0; k < kNodes.size(); ++k)
            panel += kWeights[k] * integrand(mid + 0.5 * width * kNodes[k]);
        total += 0.5 * width * panel;
    }
    return total;
}

} // namespace

Complex inner_product(const DeficiencyElement& f, const DeficiencyElement& g,
                      const QuadratureOptions& options)
{
    if (f.length() != g.length())
        throw InvalidArgument("inner product of elements on different intervals");
    const auto integrand = [&](double x) { return f(x) * std::conj(g(x)); };
    const double ell = f.length();

    Complex previous = composite_gauss(integrand, 0.0, ell, 1);
    for (std::size_t panels = 2; panels <= options.max_panels; panels *= 2) {
        const Complex current = composite_gauss(integrand, 0.0, ell, panels);
        const double scale = std::max(std::abs(current), 1e-300);
        if (std::abs(current - previous) < options.tol / 10.0 * scale)
            return current;
        previous = current;
    }
    std::ostringstream msg;
    msg << "inner product did not converge within " << options.max_panels << " panels";
    throw QuadratureFailed(msg.str());
}

Complex model_livsic_quadrature(double ell, const HalfPlanePoint& z, const QuadratureOptions& options)
{
    const Complex zz = z.value();
    const auto gz = DeficiencyElement::g_z(ell, zz);
    const Complex num = inner_product(gz, DeficiencyElement::g_minus(ell), options);
    const Complex den = inner_product(gz, DeficiencyElement::g_plus(ell), options);
    return (zz - kI) / (zz + kI) * num / den;
}

} // namespace charfn
