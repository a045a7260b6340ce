#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "charfn/coupling.hpp"
#include "charfn/extension_calc.hpp"
#include "charfn/herglotz_measure.hpp"
#include "charfn/invariant_suite.hpp"
#include "charfn/model_differentiation.hpp"

using namespace charfn;
using std::numbers::pi;

namespace {

const double kE1 = 0.36787944117144233;
const double kE2 = 0.1353352832366127;

// Product of the disk automorphism images of the factors, written out.
Complex automorphism_product(Complex s1, double k1, Complex s2, double k2)
{
    return (s1 - k1) / (k1 * s1 - 1.0) * (s2 - k2) / (k2 * s2 - 1.0);
}

TaggedCharacteristic tag(const AnalyticFn& s, double kappa)
{
    const VonNeumannParameter k(kappa);
    return TaggedCharacteristic(characteristic_from_livsic(s, k), k);
}

} // namespace

TEST_CASE("coupling_angles examples")
{
    const auto zero = coupling_angles(0.0, 0.0);
    CHECK(zero.kappa2_is_zero);
    CHECK(zero.alpha == pi / 2);
    CHECK(zero.beta == 0.0);

    const auto half = coupling_angles(0.5, 0.5);
    CHECK_FALSE(half.kappa2_is_zero);
    CHECK(half.alpha == doctest::Approx(1.1071487177940904).epsilon(1e-15));
    CHECK(half.beta == doctest::Approx(0.4636476090008061).epsilon(1e-15));
    CHECK(std::sin(half.beta) == doctest::Approx(0.5 * std::sin(half.alpha)).epsilon(1e-15));

    const auto degenerate = coupling_angles(0.6, 0.0);
    CHECK(degenerate.alpha == pi / 2);
    CHECK(degenerate.beta == doctest::Approx(0.6435011087932844).epsilon(1e-15));
    CHECK(std::cos(degenerate.beta) == doctest::Approx(0.8).epsilon(1e-15));

    CHECK_THROWS_AS(coupling_angles(1.0, 0.2), OutOfRange);
    CHECK_THROWS_AS(coupling_angles(0.2, -0.1), OutOfRange);
}

TEST_CASE("coupling angle relations over the kappa lattice")
{
    for (int a = 0; a < 10; ++a) {
        for (int b = 0; b < 10; ++b) {
            const double k1 = 0.1 * a;
            const double k2 = 0.1 * b;
            const auto ang = coupling_angles(k1, k2);
            CHECK(ang.alpha >= 0.0);
            CHECK(ang.alpha <= pi / 2);
            CHECK(ang.beta >= 0.0);
            CHECK(ang.beta < pi / 2);
            CHECK(std::abs(std::sin(ang.beta) - k1 * std::sin(ang.alpha)) < 1e-14);
            if (k2 > 0.0)
                CHECK(std::abs(std::cos(ang.beta) - std::cos(ang.alpha) / k2) < 1e-14);
            else
                CHECK(std::abs(std::cos(ang.beta) - std::sqrt(1.0 - k1 * k1)) < 1e-14);
            // The combinations entering the general-k identity reduce to the moduli.
            const double kk = k1 * k2;
            const double cc = std::cos(ang.alpha) * std::cos(ang.beta);
            const double ss = std::sin(ang.alpha) * std::sin(ang.beta);
            CHECK(std::abs(cc + kk * ss - k2) < 1e-14);
            CHECK(std::abs(ss + kk * cc - k1) < 1e-14);
        }
    }
}

TEST_CASE("the zero-kappa2 branch is continuous in this parametrization")
{
    // Observed behavior: alpha = atan2(., kappa2) and beta do not depend on
    // 1/kappa2, so the two sides of the threshold agree to O(kappa2).
    const auto near = coupling_angles(0.4, 1e-11);
    const auto at = coupling_angles(0.4, 0.0);
    CHECK_FALSE(near.kappa2_is_zero);
    CHECK(at.kappa2_is_zero);
    const auto s1 = model_closed_forms(1.0).s;
    const auto s2 = model_closed_forms(0.5).s;
    const double gap = sup_deviation(couple_livsic(s1, s2, near), couple_livsic(s1, s2, at), default_grid());
    MESSAGE("couple_livsic gap across the kappa2 threshold: " << gap);
    CHECK(gap < 1e-9);
}

TEST_CASE("couple_livsic examples")
{
    const auto g = default_grid();
    const auto s1 = model_closed_forms(1.0).s;
    const auto s2 = model_closed_forms(2.0).s;
    CHECK(sup_deviation(couple_livsic(s1, s2, {0.0, 0.0, false}), s1, g) < 1e-14);
    CHECK(sup_deviation(couple_livsic(s1, s2, {pi / 2, pi / 2, false}), s2, g) < 1e-14);

    const auto m = model_closed_forms(1.0);
    const auto ang = coupling_angles(kE1, kE1);
    const auto s = couple_livsic(m.s, m.s, ang);
    CHECK(s.kind() == FnKind::Livsic);
    CHECK(std::abs(s(kI)) < 1e-14);
    double worst = 0.0;
    for (const auto& z : g) {
        const Complex lhs = (s(z) - kE1 * kE1) / (kE1 * kE1 * s(z) - 1.0);
        worst = std::max(worst, std::abs(lhs - automorphism_product(m.s(z), kE1, m.s(z), kE1)));
    }
    CHECK(worst < 1e-10);
    // With kappa_j = e^{-l} the factors are e^{iz} each.
    CHECK(std::abs((s(Complex(0, 2)) - kE2) / (kE2 * s(Complex(0, 2)) - 1.0) - std::exp(-4.0)) < 1e-14);
}

TEST_CASE("general-k identity")
{
    const auto g = default_grid();
    const auto s1 = model_closed_forms(0.5).s;
    const auto s2 = model_closed_forms(1.0).s;
    const auto ang = coupling_angles(0.5, 0.5);
    CHECK(general_k_identity_defect(0.0, s1, s2, ang, g) < 1e-12);
    CHECK(general_k_identity_defect(0.37, s1, s2, ang, g) < 1e-10);
    // Holds for any angle pair, not just the matched ones.
    CHECK(general_k_identity_defect(0.8, s1, s2, {0.3, 1.2, false}, g) < 1e-10);

    // k = kappa1 kappa2 with matched angles: both sides equal the product.
    const double k1 = 0.25;
    const double k2 = 0.75;
    const auto matched = coupling_angles(k1, k2);
    CHECK(general_k_identity_defect(k1 * k2, s1, s2, matched, g) < 1e-10);
    const auto s = couple_livsic(s1, s2, matched);
    double worst = 0.0;
    for (const auto& z : g) {
        const Complex lhs = (s(z) - k1 * k2) / (k1 * k2 * s(z) - 1.0);
        worst = std::max(worst, std::abs(lhs - automorphism_product(s1(z), k1, s2(z), k2)));
    }
    CHECK(worst < 1e-10);
    CHECK_THROWS_AS(general_k_identity_defect(1.0, s1, s2, ang, g), OutOfRange);
}

TEST_CASE("add_weyl")
{
    const auto g = default_grid();
    const auto M1 = realize_herglotz(BorelMeasureModel({{0.0, 1.0}}));
    const auto M2 = realize_herglotz(BorelMeasureModel({{-1.0, 1.0}, {1.0, 1.0}}));
    CHECK(sup_deviation(add_weyl(M1, M2, 0.0), M1, g) == 0.0);
    CHECK(sup_deviation(add_weyl(M1, M2, pi / 2), M2, g) < 1e-15);
    const auto half = add_weyl(M1, M2, pi / 4);
    for (const auto& z : g)
        CHECK(std::abs(half(z) - 0.5 * (M1(z) + M2(z))) < 1e-14 * (1.0 + std::abs(half(z))));
    CHECK(std::abs(half(kI) - kI) < 1e-15);
    CHECK(half.kind() == FnKind::Herglotz);
    CHECK(inf_imaginary(half, g) > 0.0);
}

TEST_CASE("multiply_characteristic")
{
    const AnalyticFn e1([](Complex z) { return std::exp(kI * z); }, FnKind::Characteristic, "e^iz");
    const TaggedCharacteristic t(e1, VonNeumannParameter(kE1));
    const auto p = multiply_characteristic(t, t);
    CHECK(std::abs(p.kappa().value() - kE2) < 1e-16);
    const AnalyticFn e2([](Complex z) { return std::exp(2.0 * kI * z); }, FnKind::Characteristic, "e^2iz");
    CHECK(sup_deviation(p.fn(), e2, default_grid()) < 1e-15);

    const auto s = model_closed_forms(1.0).s;
    const auto ideal = multiply_characteristic(tag(s, 0.0), tag(s, 0.6));
    CHECK(ideal.kappa().value() == Complex(0.0));
    CHECK(std::abs(ideal.fn()(kI)) < 1e-15);

    const auto probe = multiply_characteristic(
        TaggedCharacteristic(AnalyticFn::constant(0.5, FnKind::Characteristic), VonNeumannParameter(0.5)),
        TaggedCharacteristic(AnalyticFn::constant(0.3, FnKind::Characteristic), VonNeumannParameter(0.3)));
    CHECK(std::abs(probe.kappa().value() - 0.15) < 1e-16);
    CHECK(std::abs(probe.fn()(kI) - 0.15) < 1e-12);

    CHECK_THROWS_AS(TaggedCharacteristic(e1, VonNeumannParameter(0.5)), InvalidArgument);
}

TEST_CASE("verify_class_properties")
{
    SUBCASE("two normalized Herglotz models")
    {
        const std::vector<AnalyticFn> corpus{realize_herglotz(BorelMeasureModel({{0.0, 1.0}})),
                                             realize_herglotz(BorelMeasureModel({{-1.0, 1.0}, {1.0, 1.0}}))};
        const auto r = verify_class_properties(corpus);
        CHECK(r.properties[0].pass);
        CHECK(r.properties[0].cases > 0);
    }
    SUBCASE("ideal property")
    {
        const auto m = model_closed_forms(1.0);
        const std::vector<AnalyticFn> corpus{m.S, characteristic_from_livsic(m.s, VonNeumannParameter(0.0))};
        const auto r = verify_class_properties(corpus);
        CHECK(r.properties[2].pass);
        CHECK(r.properties[2].cases > 0);
        CHECK(r.properties[2].worst_deviation < 1e-15);
    }
    SUBCASE("Livsic closure")
    {
        const std::vector<AnalyticFn> corpus{model_closed_forms(1.0).s, model_closed_forms(2.0).s};
        const auto r = verify_class_properties(corpus);
        CHECK(r.properties[3].pass);
        CHECK(r.properties[3].cases == 3);
    }
    SUBCASE("bundled corpus and a failing corpus")
    {
        CHECK(verify_class_properties(bundled_corpus()).all_pass());
        const std::vector<AnalyticFn> bad{AnalyticFn::constant(0.5, FnKind::Livsic)};
        const auto r = verify_class_properties(bad);
        CHECK_FALSE(r.properties[3].pass);
        CHECK(to_json(r)["pass"] == false);
    }
}
