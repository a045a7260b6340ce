#include "charfn/invariant_suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "charfn/coupling.hpp"
#include "charfn/extension_calc.hpp"
#include "charfn/model_differentiation.hpp"
#include "charfn/model_oracle.hpp"
#include "charfn/moebius.hpp"

namespace charfn {

namespace {

constexpr double pi = std::numbers::pi;

class Collector {
public:
    void add(std::string module, std::string name, double deviation, double tolerance)
    {
        results_.push_back({std::move(module), std::move(name), deviation, tolerance,
                            std::isfinite(deviation) && deviation <= tolerance});
    }
    // Boolean checks report deviation 0 on success and 1 on failure.
    void require(std::string module, std::string name, bool ok)
    {
        add(std::move(module), std::move(name), ok ? 0.0 : 1.0, 0.0);
    }
    std::vector<InvariantResult> take() { return std::move(results_); }

private:
    std::vector<InvariantResult> results_;
};

template <typename F>
double worst_over_grid(const EvaluationGrid& grid, F&& deviation)
{
    double worst = 0.0;
    for (const auto& z : grid)
        worst = std::max(worst, deviation(z));
    return worst;
}

void function_core_checks(Collector& c, const EvaluationGrid& grid, const ToleranceConfig& cfg)
{
    const auto m1 = model_closed_forms(1.0);
    const auto m2 = model_closed_forms(2.0);
    const auto cay = post_compose(MoebiusMap::cayley(), AnalyticFn([](Complex z) { return z; },
                                                                   FnKind::Generic, "z"),
                                  FnKind::Livsic, "cayley");
    c.add("function-core", "sup_deviation(f, f) = 0", sup_deviation(m1.s, m1.s, grid), 0.0);
    const double fg = sup_deviation(m1.s, m2.s, grid);
    const double gf = sup_deviation(m2.s, m1.s, grid);
    c.add("function-core", "sup_deviation symmetric", std::abs(fg - gf), 0.0);
    const double fh = sup_deviation(m1.s, cay, grid);
    const double gh = sup_deviation(m2.s, cay, grid);
    c.require("function-core", "sup_deviation triangle inequality", fh <= fg + gh + 1e-15);
    for (const auto& f : {m1.s, m2.s, cay}) {
        c.require("function-core", "Livsic bound |s| <= 1 on grid: " + f.label(),
                  satisfies_kind_bounds(f, grid, cfg.identity_tol));
    }
}

void moebius_checks(Collector& c, const EvaluationGrid& grid)
{
    const auto K = MoebiusMap::cayley();
    const auto Kinv = MoebiusMap::inverse_cayley();
    c.require("moebius", "Cayley maps C+ into the unit disk",
              worst_over_grid(grid, [&](const HalfPlanePoint& z) { return std::abs(K(z.value())); })
                  < 1.0);
    c.add("moebius", "inverse Cayley round trip",
          worst_over_grid(grid,
                          [&](const HalfPlanePoint& z) {
                              return std::abs(Kinv(K(z.value())) - z.value());
                          }),
          1e-12);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> radius(0.0, 0.99);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    double worst = 0.0;
    for (int n = 0; n < 2000; ++n) {
        const VonNeumannParameter kappa(std::polar(radius(rng), angle(rng)));
        const Complex w = std::polar(radius(rng), angle(rng));
        const auto T = MoebiusMap::disk_automorphism(kappa);
        worst = std::max(worst, std::abs(T(T(w)) - w));
    }
    c.add("moebius", "disk automorphism is an involution", worst, 1e-12);

    double fix = 0.0;
    bool upper = true;
    for (double alpha = 0.0; alpha < pi; alpha += pi / 12) {
        const auto Ka = MoebiusMap::half_plane_rotation(alpha);
        fix = std::max(fix, std::abs(Ka(kI) - kI));
        for (const auto& z : grid)
            upper = upper && Ka(z.value()).imag() > 0.0;
    }
    c.add("moebius", "half-plane rotation fixes i", fix, 1e-15);
    c.require("moebius", "half-plane rotation preserves C+", upper);
}

void herglotz_checks(Collector& c, const EvaluationGrid& grid, const ToleranceConfig& cfg)
{
    for (const auto& mu : bundled_measures()) {
        const auto M = realize_herglotz(mu);
        const bool normalized = normalization_defect(mu) < cfg.identity_tol;
        const bool at_i = std::abs(M(kI) - kI) < 10.0 * cfg.identity_tol;
        c.require("herglotz-measure", "normalization <=> M(i) = i: " + M.label(), normalized == at_i);
        c.require("herglotz-measure", "Im M > 0 on grid: " + M.label(), inf_imaginary(M, grid) > 0.0);
        c.require("herglotz-measure", "|Cayley(M)| < 1 on grid: " + M.label(),
                  sup_modulus(livsic_from_weyl(M), grid) < 1.0);

        const std::vector<double> eps{1e-2, 1e-3, 1e-4};
        const auto inv = stieltjes_invert(M, {-2.0, 2.0}, eps);
        double worst = inv.atoms.size() == mu.atoms().size() ? 0.0 : 1.0;
        for (std::size_t k = 0; k < std::min(inv.atoms.size(), mu.atoms().size()); ++k) {
            const auto& want = mu.atoms()[k];
            const auto& got = inv.atoms[k];
            if (std::abs(got.location - want.location) > inv.scan_spacing)
                worst = std::max(worst, 1.0);
            worst = std::max(worst, std::abs(got.weight - want.weight) / want.weight);
        }
        c.add("herglotz-measure", "Stieltjes round trip: " + M.label(), worst, cfg.inversion_rel_tol);
    }
}

void extension_checks(Collector& c, const EvaluationGrid& grid)
{
    const auto model = model_closed_forms(1.0);
    double involution = 0.0;
    double extraction = 0.0;
    for (double r : {0.0, 0.3, 0.6, 0.9}) {
        for (double phase : {0.0, 1.0, 2.5}) {
            const VonNeumannParameter kappa(std::polar(r, phase));
            const auto S = characteristic_from_livsic(model.s, kappa);
            involution = std::max(involution,
                                  sup_deviation(characteristic_from_livsic(S, kappa), model.s, grid));
            extraction = std::max(extraction, std::abs(extract_kappa(S).value() - kappa.value()));
        }
    }
    c.add("extension-calc", "characteristic map is an involution", involution, 1e-12);
    c.add("extension-calc", "extract_kappa recovers kappa when s(i) = 0", extraction, 1e-12);

    double modulus = 0.0;
    double normalization = 0.0;
    const auto M = realize_herglotz(bundled_measures()[1]);
    for (double alpha = 0.0; alpha < pi; alpha += pi / 7) {
        const ReferenceRotation rot(alpha);
        const auto rotated = reference_change_livsic(model.s, rot);
        modulus = std::max(modulus, worst_over_grid(grid, [&](const HalfPlanePoint& z) {
                               return std::abs(std::abs(rotated(z)) - std::abs(model.s(z)));
                           }));
        normalization = std::max(normalization, std::abs(reference_change_weyl(M, rot)(kI) - kI));
    }
    c.add("extension-calc", "reference change preserves |s|", modulus, 1e-12);
    c.add("extension-calc", "reference change preserves M(i) = i", normalization, 1e-12);

    const auto S = characteristic_from_livsic(model.s, VonNeumannParameter(Complex(0.3, 0.2)));
    double closure = 0.0;
    for (double phase : {0.5, 1.5, 3.0}) {
        const Complex theta = std::polar(1.0, phase);
        const auto k = extract_kappa(unimodular_multiple(S, theta));
        closure = std::max(closure, std::abs(k.value() - theta * extract_kappa(S).value()));
    }
    c.add("extension-calc", "unimodular closure of characteristic functions", closure, 1e-12);
}

void coupling_checks(Collector& c, const EvaluationGrid& grid, const ToleranceConfig& cfg)
{
    double angles = 0.0;
    for (int a = 0; a < 10; ++a) {
        for (int b = 0; b < 10; ++b) {
            const double k1 = 0.1 * a;
            const double k2 = 0.1 * b;
            const auto ang = coupling_angles(k1, k2, cfg.kappa2_zero_threshold);
            angles = std::max(angles, std::abs(std::sin(ang.beta) - k1 * std::sin(ang.alpha)));
            if (k2 > 0.0)
                angles = std::max(angles, std::abs(std::cos(ang.beta) - std::cos(ang.alpha) / k2));
        }
    }
    c.add("coupling-engine", "coupling angle relations", angles, 1e-14);

    const auto m1 = model_closed_forms(0.5);
    const auto m2 = model_closed_forms(1.0);
    double chain = 0.0;
    double kappa_hat = 0.0;
    double vanish = 0.0;
    for (double k1 : {0.0, 0.25, 0.5, 0.75}) {
        for (double k2 : {0.0, 0.25, 0.5, 0.75}) {
            const auto ang = coupling_angles(k1, k2, cfg.kappa2_zero_threshold);
            const auto s = couple_livsic(m1.s, m2.s, ang);
            vanish = std::max(vanish, std::abs(s(kI)));
            const TaggedCharacteristic t1(characteristic_from_livsic(m1.s, VonNeumannParameter(k1)),
                                          VonNeumannParameter(k1));
            const TaggedCharacteristic t2(characteristic_from_livsic(m2.s, VonNeumannParameter(k2)),
                                          VonNeumannParameter(k2));
            const auto prod = multiply_characteristic(t1, t2);
            chain = std::max(chain, sup_deviation(characteristic_from_livsic(
                                                      s, VonNeumannParameter(k1 * k2)),
                                                  prod.fn(), grid));
            kappa_hat = std::max(kappa_hat, std::abs(extract_kappa(prod.fn()).modulus() - k1 * k2));
        }
    }
    c.add("coupling-engine", "multiplication chain", chain, 1e-10);
    c.add("coupling-engine", "kappa-hat multiplicativity", kappa_hat, 1e-12);
    c.add("coupling-engine", "coupling preserves s(i) = 0", vanish, 1e-14);

    const auto measures = bundled_measures();
    const auto M1 = realize_herglotz(measures[0]);
    const auto M2 = realize_herglotz(measures[1]);
    double addition = 0.0;
    for (double alpha : {0.0, pi / 6, pi / 4, pi / 3, pi / 2})
        addition = std::max(addition, std::abs(add_weyl(M1, M2, alpha)(kI) - kI));
    c.add("coupling-engine", "addition preserves M(i) = i", addition, 1e-14);

    const double first = sup_deviation(couple_livsic(m1.s, m2.s, {0.0, 0.0, false}), m1.s, grid);
    const double second =
        sup_deviation(couple_livsic(m1.s, m2.s, {pi / 2, pi / 2, false}), m2.s, grid);
    c.add("coupling-engine", "degenerate angles collapse to a factor", std::max(first, second), 1e-14);

    const auto props = verify_class_properties(bundled_corpus(), cfg, grid);
    for (const auto& p : props.properties)
        c.add("coupling-engine", "class property " + p.name, p.worst_deviation, cfg.identity_tol);
}

void model_checks(Collector& c, const EvaluationGrid& grid, const ToleranceConfig& cfg)
{
    double norms = 0.0;
    for (double ell : {0.5, 1.0, 2.0, 5.0}) {
        const auto gp = DeficiencyElement::g_plus(ell);
        const auto gm = DeficiencyElement::g_minus(ell);
        QuadratureOptions opts;
        opts.tol = 1e-12;
        norms = std::max(norms, std::abs(inner_product(gp, gp, opts) - 1.0));
        norms = std::max(norms, std::abs(inner_product(gm, gm, opts) - 1.0));
    }
    c.add("model-differentiation", "deficiency elements have unit norm", norms, 1e-10);

    double oracle = 0.0;
    double boundary = 0.0;
    bool consistent = true;
    for (double ell : {0.5, 1.0, 2.0}) {
        const auto m = model_closed_forms(ell);
        QuadratureOptions opts;
        opts.tol = cfg.quadrature_tol;
        oracle = std::max(oracle, worst_over_grid(grid, [&](const HalfPlanePoint& z) {
                              return std::abs(model_livsic_quadrature(ell, z, opts) - m.s(z));
                          }));
        const auto gp = DeficiencyElement::g_plus(ell);
        const auto gm = DeficiencyElement::g_minus(ell);
        boundary = std::max(boundary, std::abs((gp(0.0) - gm(0.0)) + (gp(ell) - gm(ell))));
        boundary = std::max(boundary, std::abs(gp(0.0) - std::exp(-ell) * gm(0.0)));
        consistent = consistent && class_C_check(m.s, cfg).verdict == ClassVerdict::ConsistentWithC;
    }
    c.add("model-differentiation", "quadrature oracle matches closed form", oracle, cfg.quadrature_tol);
    c.add("model-differentiation", "endpoint relations of g+ and g-", boundary, 1e-12);
    c.require("model-differentiation", "model s is consistent with the Livsic class", consistent);

    double split = 0.0;
    for (double ell : {1.0, 2.0, 3.0})
        for (double frac : {0.25, 0.5, 0.999})
            split = std::max(split, split_interval_check(ell, frac, grid).max_deviation);
    c.add("model-differentiation", "interval splitting multiplies characteristic functions", split,
          1e-14);
}

} // namespace

std::vector<BorelMeasureModel> bundled_measures()
{
    return {BorelMeasureModel({{0.0, 1.0}}), BorelMeasureModel({{-1.0, 1.0}, {1.0, 1.0}}),
            BorelMeasureModel({{1.0, 2.0}})};
}

std::vector<AnalyticFn> bundled_corpus()
{
    std::vector<AnalyticFn> corpus;
    for (const auto& mu : bundled_measures())
        corpus.push_back(realize_herglotz(mu));
    const auto m05 = model_closed_forms(0.5);
    const auto m1 = model_closed_forms(1.0);
    const auto m2 = model_closed_forms(2.0);
    corpus.push_back(m05.s);
    corpus.push_back(m1.s);
    corpus.push_back(m2.s);
    corpus.push_back(m1.S);
    corpus.push_back(m2.S);
    corpus.push_back(characteristic_from_livsic(m1.s, VonNeumannParameter(0.0)));
    corpus.push_back(characteristic_from_livsic(m05.s, VonNeumannParameter(Complex(0.3, -0.4))));
    return corpus;
}

std::vector<InvariantResult> run_invariant_suite(const ToleranceConfig& cfg)
{
    cfg.validate();
    const auto grid = default_grid();
    Collector c;
    function_core_checks(c, grid, cfg);
    moebius_checks(c, grid);
    herglotz_checks(c, grid, cfg);
    extension_checks(c, grid);
    coupling_checks(c, grid, cfg);
    model_checks(c, grid, cfg);
    return c.take();
}

Json to_json(const std::vector<InvariantResult>& results)
{
    Json checks = Json::array();
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        checks.push_back(Json{{"module", r.module},
                              {"name", r.name},
                              {"deviation", r.deviation},
                              {"tolerance", r.tolerance},
                              {"pass", r.pass}});
    }
    return Json{{"checks", std::move(checks)}, {"pass", all}};
}

} // namespace charfn
