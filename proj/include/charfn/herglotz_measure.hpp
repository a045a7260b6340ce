#pragma once

#include <optional>
#include <span>
#include <vector>

#include "charfn/function_core.hpp"

namespace charfn {

struct Atom {
    double location;
    double weight;
};

/// Nonnegative density sampled at x_lo, x_lo + h, ..., x_hi.
struct SampledDensity {
    double x_lo;
    double x_hi;
    double h;
    std::vector<double> values;

    double node(std::size_t k) const { return x_lo + h * static_cast<double>(k); }
};

/// Finite model of the representing measure of a Herglotz function: point
/// masses plus a compactly sampled absolutely continuous part.
///
/// Only finite total mass is representable. The normalization
/// int dmu / (1 + x^2) = 1 is not enforced here; normalization_defect()
/// measures it.
class BorelMeasureModel {
public:
    explicit BorelMeasureModel(std::vector<Atom> atoms,
                               std::optional<SampledDensity> density = std::nullopt);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<SampledDensity>& density() const { return density_; }

    // Quadrature nodes and weights standing in for the density (composite
    // Simpson on the sample lattice, density values folded into the weights).
    const std::vector<Atom>& density_nodes() const { return density_nodes_; }

    double normalization_integral() const;
    double total_mass() const;

private:
    std::vector<Atom> atoms_;
    std::optional<SampledDensity> density_;
    std::vector<Atom> density_nodes_;
};

// Composite Simpson weights for n equally spaced samples with spacing h; an
// odd number of panels closes with the 3/8 rule.
std::vector<double> simpson_weights(std::size_t n, double h);

// M(z) = sum over mu of 1/(x - z) - x/(1 + x^2). Throws EmptyMeasure.
AnalyticFn realize_herglotz(const BorelMeasureModel& mu);

// Difference between the density contribution to M(z) on the sample lattice
// and on the lattice of every other sample; an error estimate for the
// density quadrature at z. Zero when there is no density.
double density_quadrature_error(const BorelMeasureModel& mu, const HalfPlanePoint& z);

// |int dmu / (1 + x^2) - 1|.
double normalization_defect(const BorelMeasureModel& mu);

// s = (M - i) / (M + i). Requires a Herglotz-kind input.
AnalyticFn livsic_from_weyl(const AnalyticFn& M);

struct Window {
    double lo;
    double hi;
};

struct InversionOptions {
    std::size_t scan_points = 4001;
    // Minimum eps * Im M at a peak for an atom candidate.
    double atom_threshold = 1e-6;
    // Maximum relative change of eps * Im M between consecutive eps values
    // for a candidate to count as an atom.
    double stability = 0.1;
    // Densities with estimated mass below this are dropped from the result.
    double density_mass_threshold = 1e-4;
};

struct InvertedAtom {
    double location;
    double weight;
    // |full extrapolation - extrapolation without the coarsest eps|.
    double residual;
};

struct InversionResult {
    BorelMeasureModel measure;
    std::vector<InvertedAtom> atoms;
    double scan_spacing;
};

// Recovers the measure of a Herglotz function from Im M(x + i eps) on the
// window, extrapolating eps -> 0 over the schedule.
//
// Atoms are the peaks of Im M(x + i eps_min) whose eps * Im M is stable
// across the schedule; their weights are the polynomial extrapolation of
// eps * Im M(x + i eps) to eps = 0. The density estimate is the extrapolated
// (1/pi) Im M with the detected atoms subtracted.
//
// Throws WindowTooSmall when Im M at a window edge exceeds ten times its
// median over the window, InvalidArgument on a bad schedule or window.
InversionResult stieltjes_invert(const AnalyticFn& M, Window window,
                                 std::span<const double> eps_schedule,
                                 const InversionOptions& options = {});

} // namespace charfn
