#pragma once

#include <array>
#include <variant>

#include "charfn/extension_parameter.hpp"
#include "charfn/function_core.hpp"

namespace charfn {

/// Linear-fractional map z -> (a z + b) / (c z + d).
///
/// Coefficients are stored as given; equality is projective and is tested
/// by normalizing both matrices by their largest-magnitude entry.
class MoebiusMap {
public:
    MoebiusMap(Complex a, Complex b, Complex c, Complex d);

    static MoebiusMap identity() { return {1.0, 0.0, 0.0, 1.0}; }
    // K(z) = (z - i) / (z + i), upper half-plane onto the unit disk.
    static MoebiusMap cayley();
    static MoebiusMap inverse_cayley();
    // w -> (w - kappa) / (conj(kappa) w - 1). An involution of the disk.
    static MoebiusMap disk_automorphism(const VonNeumannParameter& kappa);
    // z -> (cos a z - sin a) / (cos a + sin a z).
    static MoebiusMap half_plane_rotation(double alpha);

    Complex a() const { return m_[0]; }
    Complex b() const { return m_[1]; }
    Complex c() const { return m_[2]; }
    Complex d() const { return m_[3]; }
    Complex determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

    // Throws PoleEncountered when |c z + d| < 1e-14 (|c| + |d|).
    Complex apply(Complex z) const;
    Complex operator()(Complex z) const { return apply(z); }

    MoebiusMap inverse() const { return {m_[3], -m_[1], -m_[2], m_[0]}; }

    // Projective equality up to tol after normalization.
    bool equivalent(const MoebiusMap& other, double tol = 1e-12) const;

private:
    std::array<Complex, 4> m_;
};

// compose(m1, m2)(z) == m1(m2(z)).
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);
inline MoebiusMap operator*(const MoebiusMap& m1, const MoebiusMap& m2) { return compose(m1, m2); }

namespace map_spec {
struct Cayley {};
struct InverseCayley {};
struct DiskAuto {
    VonNeumannParameter kappa;
};
struct HalfPlaneRotation {
    double alpha;
};
struct Raw {
    Complex a, b, c, d;
};
} // namespace map_spec

using MapSpec = std::variant<map_spec::Cayley, map_spec::InverseCayley, map_spec::DiskAuto,
                             map_spec::HalfPlaneRotation, map_spec::Raw>;

MoebiusMap make_map(const MapSpec& spec);

// f -> m o f, retagged with the given kind.
AnalyticFn post_compose(const MoebiusMap& m, const AnalyticFn& f, FnKind kind, std::string label);

} // namespace charfn
