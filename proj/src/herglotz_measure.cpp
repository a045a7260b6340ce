#include "charfn/herglotz_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "charfn/moebius.hpp"

namespace charfn {

namespace {

bool finite(double x) { return std::isfinite(x); }

Complex kernel_sum(const std::vector<Atom>& nodes, Complex z)
{
    Complex sum = 0.0;
    for (const auto& a : nodes)
        sum += a.weight * (1.0 / (a.location - z) - a.location / (1.0 + a.location * a.location));
    return sum;
}

// Polynomial through (x_k, y_k) evaluated at 0 (Neville).
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y)
{
    std::vector<double> p(y.begin(), y.end());
    const std::size_t n = p.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            p[i] = (x[i + m] * p[i] - x[i] * p[i + 1]) / (x[i + m] - x[i]);
    return p[0];
}

double median(std::vector<double> v)
{
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

} // namespace

std::vector<double> simpson_weights(std::size_t n, double h)
{
    if (n < 2)
        throw InvalidArgument("quadrature needs at least two samples");
    std::vector<double> w(n, 0.0);
    const std::size_t panels = n - 1;
    if (panels == 1) {
        w[0] = w[1] = h / 2.0;
        return w;
    }
    const std::size_t simpson_panels = panels % 2 == 0 ? panels : panels - 3;
    for (std::size_t k = 0; k + 2 <= simpson_panels; k += 2) {
        w[k] += h / 3.0;
        w[k + 1] += 4.0 * h / 3.0;
        w[k + 2] += h / 3.0;
    }
    if (simpson_panels != panels) {
        const std::size_t k = simpson_panels;
        w[k] += 3.0 * h / 8.0;
        w[k + 1] += 9.0 * h / 8.0;
        w[k + 2] += 9.0 * h / 8.0;
        w[k + 3] += 3.0 * h / 8.0;
    }
    return w;
}

BorelMeasureModel::BorelMeasureModel(std::vector<Atom> atoms, std::optional<SampledDensity> density)
    : atoms_(std::move(atoms)), density_(std::move(density))
{
    for (const auto& a : atoms_) {
        if (!finite(a.location) || !finite(a.weight) || !(a.weight > 0.0))
            throw InvalidArgument("atom weights must be finite and strictly positive");
    }
    std::vector<double> locs;
    for (const auto& a : atoms_)
        locs.push_back(a.location);
    std::sort(locs.begin(), locs.end());
    if (std::adjacent_find(locs.begin(), locs.end()) != locs.end())
        throw InvalidArgument("atom locations must be pairwise distinct");

    if (density_) {
        const auto& d = *density_;
        if (!finite(d.x_lo) || !finite(d.x_hi) || !(d.x_lo < d.x_hi) || !(d.h > 0.0))
            throw InvalidArgument("density window must satisfy x_lo < x_hi and h > 0");
        if (d.values.size() < 2)
            throw InvalidArgument("density needs at least two samples");
        const double end = d.node(d.values.size() - 1);
        if (std::abs(end - d.x_hi) > 1e-9 * std::max({1.0, std::abs(d.x_lo), std::abs(d.x_hi)}))
            throw InvalidArgument("density samples do not span [x_lo, x_hi] with spacing h");
        for (double v : d.values)
            if (!finite(v) || v < 0.0)
                throw InvalidArgument("density samples must be finite and nonnegative");
        const auto w = simpson_weights(d.values.size(), d.h);
        for (std::size_t k = 0; k < d.values.size(); ++k)
            if (d.values[k] > 0.0)
                density_nodes_.push_back({d.node(k), w[k] * d.values[k]});
    }
    if (!finite(normalization_integral()))
        throw InvalidArgument("normalization integral is not finite");
}

double BorelMeasureModel::normalization_integral() const
{
    double sum = 0.0;
    for (const auto& a : atoms_)
        sum += a.weight / (1.0 + a.location * a.location);
    for (const auto& a : density_nodes_)
        sum += a.weight / (1.0 + a.location * a.location);
    return sum;
}

double BorelMeasureModel::total_mass() const
{
    double sum = 0.0;
    for (const auto& a : atoms_)
        sum += a.weight;
    for (const auto& a : density_nodes_)
        sum += a.weight;
    return sum;
}

AnalyticFn realize_herglotz(const BorelMeasureModel& mu)
{
    if (!(mu.total_mass() > 0.0))
        throw EmptyMeasure("measure has neither atoms nor density mass");
    std::vector<Atom> nodes = mu.atoms();
    nodes.insert(nodes.end(), mu.density_nodes().begin(), mu.density_nodes().end());
    std::ostringstream label;
    label << "herglotz realization (" << mu.atoms().size() << " atoms"
          << (mu.density() ? ", sampled density)" : ")");
    return AnalyticFn([nodes = std::move(nodes)](Complex z) { return kernel_sum(nodes, z); },
                      FnKind::Herglotz, label.str());
}

double density_quadrature_error(const BorelMeasureModel& mu, const HalfPlanePoint& z)
{
    if (!mu.density())
        return 0.0;
    const auto& d = *mu.density();
    const std::size_t n = d.values.size();
    const Complex zz = z.value();
    auto term = [&](std::size_t k) {
        const double x = d.node(k);
        return d.values[k] * (1.0 / (x - zz) - x / (1.0 + x * x));
    };
    Complex fine = 0.0;
    for (const auto& a : mu.density_nodes())
        fine += a.weight * (1.0 / (a.location - zz) - a.location / (1.0 + a.location * a.location));

    // Every other sample; a trailing odd panel is closed with the trapezoid rule.
    const std::size_t last_even = (n - 1) % 2 == 0 ? n - 1 : n - 2;
    Complex coarse = 0.0;
    if (last_even >= 2) {
        const auto w = simpson_weights(last_even / 2 + 1, 2.0 * d.h);
        for (std::size_t k = 0; k <= last_even; k += 2)
            coarse += w[k / 2] * term(k);
    }
    if (last_even != n - 1)
        coarse += d.h / 2.0 * (term(n - 2) + term(n - 1));
    return std::abs(fine - coarse);
}

double normalization_defect(const BorelMeasureModel& mu)
{
    return std::abs(mu.normalization_integral() - 1.0);
}

AnalyticFn livsic_from_weyl(const AnalyticFn& M)
{
    if (M.kind() != FnKind::Herglotz)
        throw InvalidArgument("livsic_from_weyl expects a Herglotz function");
    return post_compose(MoebiusMap::cayley(), M, FnKind::Livsic, "cayley(" + M.label() + ")");
}

InversionResult stieltjes_invert(const AnalyticFn& M, Window window,
                                 std::span<const double> eps_schedule,
                                 const InversionOptions& options)
{
    if (!finite(window.lo) || !finite(window.hi) || !(window.lo < window.hi))
        throw InvalidArgument("inversion window must satisfy lo < hi");
    if (eps_schedule.size() < 2)
        throw InvalidArgument("eps schedule needs at least two values");
    for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
        if (!(eps_schedule[k] > 0.0) || (k > 0 && !(eps_schedule[k] < eps_schedule[k - 1])))
            throw InvalidArgument("eps schedule must be strictly decreasing and positive");
    }
    if (options.scan_points < 3)
        throw InvalidArgument("inversion scan needs at least three points");

    const std::size_t n = options.scan_points;
    const double h = (window.hi - window.lo) / static_cast<double>(n - 1);
    auto scan_x = [&](std::size_t j) { return window.lo + h * static_cast<double>(j); };
    auto im_m = [&](double x, double eps) { return M(HalfPlanePoint(x, eps)).imag(); };

    std::vector<std::vector<double>> im_values(eps_schedule.size(), std::vector<double>(n));
    for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
        auto& row = im_values[k];
        for (std::size_t j = 0; j < n; ++j)
            row[j] = im_m(scan_x(j), eps_schedule[k]);
        const double med = median(row);
        if (row.front() > 10.0 * med || row.back() > 10.0 * med) {
            std::ostringstream msg;
            msg << "mass leaks at the window boundary for eps = " << eps_schedule[k];
            throw WindowTooSmall(msg.str());
        }
    }

    const double eps_min = eps_schedule.back();
    const auto& sharpest = im_values.back();
    std::vector<InvertedAtom> atoms;
    for (std::size_t j = 1; j + 1 < n; ++j) {
        if (!(sharpest[j] > sharpest[j - 1] && sharpest[j] >= sharpest[j + 1]))
            continue;
        if (!(eps_min * sharpest[j] > options.atom_threshold))
            continue;

        // Golden-section search for the peak inside the neighbouring cells.
        const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = scan_x(j - 1);
        double b = scan_x(j + 1);
        double c = b - phi * (b - a);
        double d = a + phi * (b - a);
        double fc = im_m(c, eps_min);
        double fd = im_m(d, eps_min);
        for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
            if (fc > fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - phi * (b - a);
                fc = im_m(c, eps_min);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + phi * (b - a);
                fd = im_m(d, eps_min);
            }
        }
        const double peak = fc > fd ? c : d;

        if (!atoms.empty() && std::abs(atoms.back().location - peak) < h)
            continue;

        std::vector<double> w(eps_schedule.size());
        for (std::size_t k = 0; k < eps_schedule.size(); ++k)
            w[k] = eps_schedule[k] * im_m(peak, eps_schedule[k]);
        if (!(w.back() > options.atom_threshold))
            continue;
        bool stable = true;
        for (std::size_t k = 0; k + 1 < w.size() && stable; ++k)
            stable = std::abs(w[k + 1] - w[k]) <= options.stability * std::abs(w[k]);
        if (!stable)
            continue;

        const double weight = extrapolate_to_zero(eps_schedule, w);
        const double reduced = eps_schedule.size() > 2
            ? extrapolate_to_zero(eps_schedule.subspan(1), std::span<const double>(w).subspan(1))
            : w.back();
        if (weight > 0.0)
            atoms.push_back({peak, weight, std::abs(weight - reduced)});
    }

    std::optional<SampledDensity> density;
    {
        SampledDensity est{window.lo, window.hi, h, std::vector<double>(n)};
        std::vector<double> samples(eps_schedule.size());
        for (std::size_t j = 0; j < n; ++j) {
            const double x = scan_x(j);
            for (std::size_t k = 0; k < eps_schedule.size(); ++k) {
                double atom_part = 0.0;
                for (const auto& at : atoms)
                    atom_part += (at.weight / Complex(at.location - x, -eps_schedule[k])).imag();
                samples[k] = (im_values[k][j] - atom_part) / std::numbers::pi;
            }
            est.values[j] = std::max(0.0, extrapolate_to_zero(eps_schedule, samples));
        }
        const auto w = simpson_weights(n, h);
        double mass = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            mass += w[j] * est.values[j];
        if (mass > options.density_mass_threshold)
            density = std::move(est);
    }

    std::vector<Atom> model_atoms;
    for (const auto& a : atoms)
        model_atoms.push_back({a.location, a.weight});
    return {BorelMeasureModel(std::move(model_atoms), std::move(density)), std::move(atoms), h};
}

} // namespace charfn
