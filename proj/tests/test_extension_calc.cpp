#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "charfn/extension_calc.hpp"
#include "charfn/herglotz_measure.hpp"
#include "charfn/model_differentiation.hpp"
#include "charfn/moebius.hpp"

using namespace charfn;
using std::numbers::pi;

namespace {

const double kE1 = 0.36787944117144233;  // e^{-1}

AnalyticFn blaschke()
{
    return AnalyticFn([](Complex z) { return (z - kI) / (z + kI); }, FnKind::Livsic, "blaschke");
}

} // namespace

TEST_CASE("parameter types")
{
    CHECK(VonNeumannParameter(Complex(0.6, 0.8 - 1e-12)).modulus() < 1.0);
    CHECK_THROWS_AS(VonNeumannParameter(Complex(0.6, 0.8)), OutOfRange);
    CHECK_NOTHROW(ReferenceRotation{0.0});
    CHECK_THROWS_AS(ReferenceRotation{pi}, OutOfRange);
    CHECK_THROWS_AS(ReferenceRotation{-0.1}, OutOfRange);
}

TEST_CASE("characteristic_from_livsic examples")
{
    const auto g = default_grid();
    const auto s = model_closed_forms(1.0).s;

    const auto minus = characteristic_from_livsic(s, VonNeumannParameter(0.0));
    CHECK(minus.kind() == FnKind::Characteristic);
    for (const auto& z : g)
        CHECK(std::abs(minus(z) + s(z)) == 0.0);

    const Complex kappa(0.2, -0.5);
    const auto from_zero = characteristic_from_livsic(AnalyticFn::constant(0.0, FnKind::Livsic),
                                                      VonNeumannParameter(kappa));
    CHECK(std::abs(from_zero(Complex(3.0, 0.2)) - kappa) < 1e-16);

    const AnalyticFn exp_iz([](Complex z) { return std::exp(kI * z); }, FnKind::Characteristic, "e^iz");
    CHECK(sup_deviation(characteristic_from_livsic(s, VonNeumannParameter(kE1)), exp_iz, g) < 1e-12);

    CHECK_THROWS_AS(characteristic_from_livsic(AnalyticFn::constant(kI, FnKind::Herglotz),
                                               VonNeumannParameter(0.0)),
                    InvalidArgument);
}

TEST_CASE("characteristic map is an involution")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> r(0.0, 0.9);
    std::uniform_real_distribution<double> phase(0.0, 2 * pi);
    std::uniform_real_distribution<double> len(0.2, 3.0);
    const auto g = default_grid();
    for (int trial = 0; trial < 40; ++trial) {
        const auto s = model_closed_forms(len(rng)).s;
        const VonNeumannParameter kappa(std::polar(r(rng), phase(rng)));
        const auto S = characteristic_from_livsic(s, kappa);
        CHECK(sup_deviation(characteristic_from_livsic(S, kappa), s, g) < 1e-12);
        // s(i) = 0 forces S(i) = kappa.
        CHECK(std::abs(extract_kappa(S).value() - kappa.value()) < 1e-15);
        CHECK(sup_modulus(S, g) <= 1.0 + 1e-12);
    }
}

TEST_CASE("extract_kappa examples")
{
    const AnalyticFn exp_iz([](Complex z) { return std::exp(kI * z); }, FnKind::Characteristic, "e^iz");
    CHECK(std::abs(extract_kappa(exp_iz).value() - kE1) < 1e-15);

    const auto s = model_closed_forms(2.0).s;
    CHECK(std::abs(extract_kappa(characteristic_from_livsic(s, VonNeumannParameter(0.0))).value()) == 0.0);
    CHECK(extract_kappa(AnalyticFn::constant(0.5, FnKind::Characteristic)).value() == Complex(0.5));
    CHECK_THROWS_AS(extract_kappa(AnalyticFn::constant(1.0, FnKind::Characteristic)), NotContractive);
}

TEST_CASE("unimodular closure")
{
    const auto S = characteristic_from_livsic(model_closed_forms(1.0).s,
                                              VonNeumannParameter(Complex(-0.3, 0.45)));
    const auto kappa = extract_kappa(S);
    for (double phase : {0.1, 1.0, 2.0, 4.0}) {
        const Complex theta = std::polar(1.0, phase);
        const auto k = extract_kappa(unimodular_multiple(S, theta));
        CHECK(std::abs(k.value() - theta * kappa.value()) < 1e-15);
        CHECK(k.modulus() == doctest::Approx(kappa.modulus()).epsilon(1e-14));
    }
    CHECK_THROWS_AS(unimodular_multiple(S, 0.5), InvalidArgument);
}

TEST_CASE("reference_change_livsic")
{
    const auto s = model_closed_forms(1.0).s;
    const auto g = default_grid();
    CHECK(sup_deviation(reference_change_livsic(s, ReferenceRotation(0.0)), s, g) == 0.0);

    const auto half = reference_change_livsic(s, ReferenceRotation(pi / 2));
    for (const auto& z : g)
        CHECK(std::abs(half(z) + s(z)) < 1e-15);

    const Complex c(0.3, 0.1);
    const auto quarter = reference_change_livsic(AnalyticFn::constant(c, FnKind::Livsic),
                                                 ReferenceRotation(pi / 4));
    CHECK(std::abs(quarter(kI) - (-kI * c)) < 1e-16);

    for (double alpha = 0.0; alpha < pi; alpha += 0.2) {
        const auto rotated = reference_change_livsic(s, ReferenceRotation(alpha));
        CHECK(rotated.kind() == FnKind::Livsic);
        for (const auto& z : g)
            CHECK(std::abs(std::abs(rotated(z)) - std::abs(s(z))) < 1e-15);
    }
}

TEST_CASE("reference_change_weyl")
{
    const auto g = default_grid();
    const auto M = realize_herglotz(BorelMeasureModel({{0.0, 1.0}}));
    CHECK(sup_deviation(reference_change_weyl(M, ReferenceRotation(0.0)), M, g) == 0.0);

    const auto rotated = reference_change_weyl(M, ReferenceRotation(pi / 2 - 1e-17));
    for (const auto& z : g)
        CHECK(std::abs(rotated(z) - z.value()) < 1e-14 * (1.0 + std::abs(z.value())));

    const auto pair = realize_herglotz(BorelMeasureModel({{-1.0, 1.0}, {1.0, 1.0}}));
    for (double alpha = 0.0; alpha < pi; alpha += 0.05) {
        const auto out = reference_change_weyl(pair, ReferenceRotation(alpha));
        CHECK(std::abs(out(kI) - kI) < 1e-12);
        CHECK(inf_imaginary(out, g) > 0.0);
    }
}

TEST_CASE("class_C_check verdicts")
{
    SUBCASE("model function is consistent with the class")
    {
        for (double ell : {0.5, 1.0, 2.0}) {
            const auto report = class_C_check(model_closed_forms(ell).s);
            CHECK(report.verdict == ClassVerdict::ConsistentWithC);
            CHECK(report.vanishes_at_i);
            CHECK(report.ray_growth_passed);
            CHECK(report.ray_details.size() == 16 * 3);
        }
        CHECK(std::abs(class_C_check(model_closed_forms(1.0).s).value_at_i) == 0.0);
    }
    SUBCASE("nonzero at i")
    {
        CHECK(class_C_check(AnalyticFn::constant(0.5, FnKind::Livsic)).verdict == ClassVerdict::FailsAtI);
    }
    SUBCASE("Cayley transform fails the growth condition at alpha = 0")
    {
        const auto report = class_C_check(blaschke());
        CHECK(report.vanishes_at_i);
        CHECK(report.verdict == ClassVerdict::FailsGrowth);
        for (const auto& ray : report.ray_details) {
            if (ray.alpha != 0.0)
                continue;
            CHECK_FALSE(ray.passed);
            // z (s - 1) = -2 i z / (z + i) -> -2i.
            CHECK(ray.magnitudes.back() == doctest::Approx(2.0).epsilon(1e-3));
        }
    }
    SUBCASE("report serializes with all ray diagnostics")
    {
        const auto j = to_json(class_C_check(blaschke()));
        CHECK(j["verdict"] == "FailsGrowth");
        CHECK(j["ray_details"].size() == 48);
        CHECK(j["ray_details"][0]["magnitudes"].size() == 4);
    }
    SUBCASE("pole on a probe ray")
    {
        const AnalyticFn bad([](Complex z) {
            if (std::abs(z - Complex(0.0, 10.0)) < 1e-9)
                throw PoleEncountered("pole");
            return (z - kI) / (z + kI);
        }, FnKind::Livsic, "pole at 10i");
        CHECK_THROWS_AS(class_C_check(bad), PoleEncountered);
    }
}
