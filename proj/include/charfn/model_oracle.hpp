#pragma once

#include "charfn/function_core.hpp"
#include "charfn/model_differentiation.hpp"

namespace charfn {

struct QuadratureOptions {
    double tol = 1e-8;
    std::size_t max_panels = std::size_t{1} << 16;
};

// (f, g) = int_0^l f(x) conj(g(x)) dx by composite 5-point Gauss-Legendre,
// halving panels until successive estimates agree to tol / 10 relative to
// their magnitude. Throws QuadratureFailed when the panel budget runs out.
Complex inner_product(const DeficiencyElement& f, const DeficiencyElement& g,
                      const QuadratureOptions& options = {});

// s(z) = (z - i)/(z + i) (g_z, g-) / (g_z, g+) with both inner products
// computed numerically.
Complex model_livsic_quadrature(double ell, const HalfPlanePoint& z,
                                const QuadratureOptions& options = {});

} // namespace charfn
