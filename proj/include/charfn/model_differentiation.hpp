#pragma once

#include "charfn/coupling.hpp"
#include "charfn/extension_parameter.hpp"
#include "charfn/function_core.hpp"

// First-order differentiation -i d/dx on L^2(0, l): the dissipative
// realization with f(0) = 0 and the antiperiodic self-adjoint reference.

namespace charfn {

class Interval {
public:
    Interval(double a, double b);

    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }

private:
    double a_;
    double b_;
};

enum class DeficiencyKind { GPlus, GMinus, GZ };

/// Deficiency element of the differentiation model on [0, length]:
///   g+(x) = sqrt(2) / sqrt(e^{2l} - 1) e^x
///   g-(x) = sqrt(2) / sqrt(1 - e^{-2l}) e^{-x}
///   g_z(x) = e^{-i z x}
class DeficiencyElement {
public:
    static DeficiencyElement g_plus(double length);
    static DeficiencyElement g_minus(double length);
    static DeficiencyElement g_z(double length, Complex z);

    DeficiencyKind kind() const { return kind_; }
    double length() const { return length_; }
    Complex z() const { return z_; }

    Complex operator()(double x) const;

private:
    DeficiencyElement(DeficiencyKind kind, double length, Complex z);

    DeficiencyKind kind_;
    double length_;
    Complex z_;
};

struct ModelFunctions {
    AnalyticFn s;       // Livsic function
    AnalyticFn S;       // characteristic function e^{i l z}
    VonNeumannParameter kappa;  // e^{-l}
};

// s(z) = (e^{ilz} - e^{-l}) / (e^{-l} e^{ilz} - 1), S(z) = e^{ilz}, kappa = e^{-l}.
ModelFunctions model_closed_forms(double ell);

// The Livsic function from the closed-form inner products (g_z, g-) and
// (g_z, g+) (antiderivatives of e^{(-iz -+ 1) x}). Fast path for sweeps;
// the quadrature oracle lives in model_oracle.hpp.
Complex model_livsic_inner_products(double ell, Complex z);

struct SplitCheck {
    double max_deviation;            // sup |e^{ilz} - e^{il1 z} e^{il2 z}|
    VonNeumannParameter product_kappa;  // e^{-l1} e^{-l2}
    double kappa_deviation;          // |product_kappa - e^{-l}|
};

// Splits [0, l] at gamma_fraction * l and compares the characteristic
// function of the whole interval with the product over the pieces.
SplitCheck split_interval_check(double ell, double gamma_fraction, const EvaluationGrid& grid);

} // namespace charfn
