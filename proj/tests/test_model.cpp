#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "charfn/extension_calc.hpp"
#include "charfn/model_differentiation.hpp"
#include "charfn/model_oracle.hpp"

using namespace charfn;

namespace {

// High-precision reference values of the model Livsic function.
const double kS1At2i = 0.244728471054797652;
const Complex kS2At1p1i(0.19217099135573624555, -0.1189528810116127500);

} // namespace

TEST_CASE("interval and deficiency elements")
{
    CHECK(Interval(0.0, 2.5).length() == 2.5);
    CHECK_THROWS_AS(Interval(1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(DeficiencyElement::g_plus(0.0), InvalidArgument);
    CHECK_THROWS_AS(model_closed_forms(-1.0), InvalidArgument);

    const auto gz = DeficiencyElement::g_z(2.0, Complex(0.0, 1.0));
    CHECK(gz(0.0) == Complex(1.0));
    CHECK(std::abs(gz(2.0) - std::exp(2.0)) < 1e-14);
}

TEST_CASE("closed forms")
{
    const auto m = model_closed_forms(1.0);
    CHECK(std::abs(m.s(kI)) < 1e-16);
    CHECK(m.kappa.value().real() == doctest::Approx(0.36787944117144233).epsilon(1e-16));
    CHECK(std::abs(m.s(Complex(0.0, 2.0)) - kS1At2i) < 1e-15);
    CHECK(std::abs(m.S(Complex(0.0, 2.0)) - 0.1353352832366127) < 1e-16);
    CHECK(std::abs(model_closed_forms(2.0).s(Complex(1.0, 1.0)) - kS2At1p1i) < 1e-15);
    CHECK(m.s.kind() == FnKind::Livsic);
    CHECK(m.S.kind() == FnKind::Characteristic);

    for (double ell : {0.5, 1.0, 2.0, 4.0}) {
        const auto mf = model_closed_forms(ell);
        CHECK(std::abs(extract_kappa(mf.S).value() - std::exp(-ell)) < 1e-12);
        const auto back = characteristic_from_livsic(mf.s, mf.kappa);
        CHECK(sup_deviation(back, mf.S, default_grid()) < 1e-12);
    }
}

TEST_CASE("deficiency elements have unit norm")
{
    for (double ell : {0.5, 1.0, 2.0, 5.0}) {
        const auto gp = DeficiencyElement::g_plus(ell);
        const auto gm = DeficiencyElement::g_minus(ell);
        QuadratureOptions tight;
        tight.tol = 1e-12;
        CHECK(std::abs(inner_product(gp, gp, tight) - 1.0) < 1e-10);
        CHECK(std::abs(inner_product(gm, gm, tight) - 1.0) < 1e-10);
    }
}

TEST_CASE("endpoint relations")
{
    for (double ell : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
        const auto gp = DeficiencyElement::g_plus(ell);
        const auto gm = DeficiencyElement::g_minus(ell);
        CHECK(std::abs(gp(0.0) - std::exp(-ell) * gm(0.0)) < 1e-12);
        CHECK(std::abs((gp(0.0) - gm(0.0)) + (gp(ell) - gm(ell))) < 1e-12);
    }
}

TEST_CASE("quadrature oracle")
{
    CHECK(std::abs(model_livsic_quadrature(1.0, HalfPlanePoint(0.0, 1.0))) < 1e-8);
    CHECK(std::abs(model_livsic_quadrature(1.0, HalfPlanePoint(0.0, 2.0)) - kS1At2i) < 1e-8);
    CHECK(std::abs(model_livsic_quadrature(2.0, HalfPlanePoint(1.0, 1.0)) - kS2At1p1i) < 1e-8);

    const auto g = default_grid();
    for (double ell : {0.5, 1.0, 2.0}) {
        const auto s = model_closed_forms(ell).s;
        double worst = 0.0;
        for (const auto& z : g)
            worst = std::max(worst, std::abs(model_livsic_quadrature(ell, z) - s(z)));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("quadrature budget")
{
    QuadratureOptions starved;
    starved.max_panels = 1;
    starved.tol = 1e-15;
    const auto gz = DeficiencyElement::g_z(5.0, Complex(4.0, 0.1));
    CHECK_THROWS_AS(inner_product(gz, DeficiencyElement::g_plus(5.0), starved), QuadratureFailed);
}

TEST_CASE("inner-product fast path")
{
    const auto g = default_grid();
    for (double ell : {0.5, 1.0, 2.0, 3.0}) {
        const auto s = model_closed_forms(ell).s;
        for (const auto& z : g)
            CHECK(std::abs(model_livsic_inner_products(ell, z.value()) - s(z)) < 1e-12);
    }
}

TEST_CASE("split examples")
{
    const auto g = default_grid();
    const auto half = split_interval_check(2.0, 0.5, g);
    CHECK(half.max_deviation < 1e-15);
    CHECK(std::abs(half.product_kappa.value() - 0.1353352832366127) < 1e-16);

    const auto quarter = split_interval_check(1.0, 0.25, g);
    CHECK(quarter.max_deviation < 1e-14);
    CHECK(quarter.kappa_deviation < 1e-15);

    CHECK(split_interval_check(3.0, 0.999, g).max_deviation < 1e-14);
    CHECK_THROWS_AS(split_interval_check(1.0, 1.0, g), OutOfRange);
}

TEST_CASE("fast path keeps relative accuracy next to i")
{
    CHECK(std::abs(model_livsic_inner_products(1.0, kI)) == 0.0);
    // High-precision value of s at 1e-7 + (1 + 1e-7) i for l = 1.
    const Complex ref(4.2545906436806936408e-8, -4.2545900825538730672e-8);
    const Complex got = model_livsic_inner_products(1.0, Complex(1e-7, 1.0 + 1e-7));
    CHECK(std::abs(got - ref) / std::abs(ref) < 1e-13);
}
