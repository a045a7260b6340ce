#pragma once

#include "charfn/function_core.hpp"

namespace charfn {

/// von Neumann extension parameter: a point of the open unit disk.
class VonNeumannParameter {
public:
    explicit VonNeumannParameter(Complex kappa);

    Complex value() const { return kappa_; }
    // The reference-independent invariant |kappa|.
    double modulus() const { return std::abs(kappa_); }

private:
    Complex kappa_;
};

/// Angle of a self-adjoint reference rotation, normalized to [0, pi).
class ReferenceRotation {
public:
    explicit ReferenceRotation(double alpha);

    double alpha() const { return alpha_; }

private:
    double alpha_;
};

} // namespace charfn
