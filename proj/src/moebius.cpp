#include "charfn/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace charfn {

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d) : m_{a, b, c, d}
{
    if (!(std::abs(determinant()) > 1e-14))
        throw DegenerateMap("linear-fractional map has vanishing determinant");
}

MoebiusMap MoebiusMap::cayley() { return {1.0, -kI, 1.0, kI}; }

MoebiusMap MoebiusMap::inverse_cayley() { return {kI, kI, -1.0, 1.0}; }

MoebiusMap MoebiusMap::disk_automorphism(const VonNeumannParameter& kappa)
{
    const Complex k = kappa.value();
    return {1.0, -k, std::conj(k), -1.0};
}

MoebiusMap MoebiusMap::half_plane_rotation(double alpha)
{
    const double c = std::cos(alpha);
    const double s = std::sin(alpha);
    return {c, -s, s, c};
}

Complex MoebiusMap::apply(Complex z) const
{
    const Complex den = m_[2] * z + m_[3];
    if (std::abs(den) < 1e-14 * (std::abs(m_[2]) + std::abs(m_[3])))
        throw PoleEncountered("linear-fractional map evaluated at its pole");
    return (m_[0] * z + m_[1]) / den;
}

namespace {

std::array<Complex, 4> normalized(const MoebiusMap& m)
{
    std::array<Complex, 4> e{m.a(), m.b(), m.c(), m.d()};
    const auto largest = *std::max_element(e.begin(), e.end(), [](Complex x, Complex y) {
        return std::abs(x) < std::abs(y);
    });
    for (auto& x : e)
        x /= largest;
    return e;
}

} // namespace

bool MoebiusMap::equivalent(const MoebiusMap& other, double tol) const
{
    // Normalizing by the largest entry fixes the scale but not the phase of
    // entries tied for largest modulus; compare the pivot entries of both.
    const auto x = normalized(*this);
    const auto y = normalized(other);
    for (std::size_t pivot = 0; pivot < 4; ++pivot) {
        if (std::abs(std::abs(x[pivot]) - 1.0) > tol || std::abs(y[pivot]) < tol)
            continue;
        const Complex scale = x[pivot] / y[pivot];
        bool same = true;
        for (std::size_t k = 0; k < 4 && same; ++k)
            same = std::abs(x[k] - scale * y[k]) <= tol;
        if (same)
            return true;
    }
    return false;
}

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2)
{
    return {m1.a() * m2.a() + m1.b() * m2.c(), m1.a() * m2.b() + m1.b() * m2.d(),
            m1.c() * m2.a() + m1.d() * m2.c(), m1.c() * m2.b() + m1.d() * m2.d()};
}

MoebiusMap make_map(const MapSpec& spec)
{
    return std::visit(
        [](const auto& s) -> MoebiusMap {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, map_spec::Cayley>)
                return MoebiusMap::cayley();
            else if constexpr (std::is_same_v<T, map_spec::InverseCayley>)
                return MoebiusMap::inverse_cayley();
            else if constexpr (std::is_same_v<T, map_spec::DiskAuto>)
                return MoebiusMap::disk_automorphism(s.kappa);
            else if constexpr (std::is_same_v<T, map_spec::HalfPlaneRotation>)
                return MoebiusMap::half_plane_rotation(s.alpha);
            else
                return MoebiusMap(s.a, s.b, s.c, s.d);
        },
        spec);
}

AnalyticFn post_compose(const MoebiusMap& m, const AnalyticFn& f, FnKind kind, std::string label)
{
    return AnalyticFn([m, f](Complex z) { return m.apply(f(z)); }, kind, std::move(label));
}

} // namespace charfn
