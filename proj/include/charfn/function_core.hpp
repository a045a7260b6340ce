#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charfn/errors.hpp"

namespace charfn {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Magnitude above which an evaluation is treated as a pole.
inline constexpr double kOverflowGuard = 1e12;

/// A point of the open upper half-plane.
class HalfPlanePoint {
public:
    HalfPlanePoint(double re, double im);
    explicit HalfPlanePoint(Complex z) : HalfPlanePoint(z.real(), z.imag()) {}

    double re() const { return re_; }
    double im() const { return im_; }
    Complex value() const { return {re_, im_}; }

    friend bool operator==(const HalfPlanePoint&, const HalfPlanePoint&) = default;

private:
    double re_;
    double im_;
};

enum class FnKind { Livsic, Herglotz, Characteristic, Generic };

std::string_view to_string(FnKind kind);

/// An analytic function on the upper half-plane, tagged with the class it is
/// meant to belong to.
///
/// The evaluator is shared and immutable, so copies are cheap and safe to use
/// from several threads. Evaluators may throw PoleEncountered themselves;
/// AnalyticFn additionally rejects non-finite values and values whose
/// magnitude exceeds kOverflowGuard.
class AnalyticFn {
public:
    using Evaluator = std::function<Complex(Complex)>;

    AnalyticFn(Evaluator evaluator, FnKind kind, std::string label);

    Complex operator()(const HalfPlanePoint& z) const;
    Complex operator()(Complex z) const { return (*this)(HalfPlanePoint(z)); }

    FnKind kind() const { return kind_; }
    const std::string& label() const { return label_; }

    // Same evaluator, different tag.
    AnalyticFn retagged(FnKind kind, std::string label) const;

    static AnalyticFn constant(Complex c, FnKind kind = FnKind::Generic);

private:
    std::shared_ptr<const Evaluator> evaluator_;
    FnKind kind_;
    std::string label_;
};

struct ToleranceConfig {
    double identity_tol = 1e-10;
    double quadrature_tol = 1e-8;
    double kappa2_zero_threshold = 1e-12;
    double inversion_rel_tol = 0.02;

    // Throws InvalidArgument unless every tolerance lies in (0, 1).
    void validate() const;
};

class EvaluationGrid {
public:
    EvaluationGrid(std::vector<HalfPlanePoint> points, std::string description);

    const std::vector<HalfPlanePoint>& points() const { return points_; }
    const std::string& description() const { return description_; }
    std::size_t size() const { return points_.size(); }

    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

private:
    std::vector<HalfPlanePoint> points_;
    std::string description_;
};

// 21x21 lattice on [-5, 5] x [0.1, 5] followed by the point i.
EvaluationGrid default_grid();

// Lattice of nx * ny points on [re_lo, re_hi] x [im_lo, im_hi].
EvaluationGrid lattice_grid(double re_lo, double re_hi, double im_lo, double im_hi,
                            std::size_t nx, std::size_t ny);

EvaluationGrid grid_from_json(std::string_view text);
std::string grid_to_json(const EvaluationGrid& grid);

// One entry per grid point; std::nullopt marks a pole at that point.
std::vector<std::optional<Complex>> evaluate_on_grid(const AnalyticFn& f,
                                                     const EvaluationGrid& grid);

// max over the grid of |f(z) - g(z)|. Throws PoleEncountered on a pole.
double sup_deviation(const AnalyticFn& f, const AnalyticFn& g, const EvaluationGrid& grid);

// max over the grid of |f(z)|.
double sup_modulus(const AnalyticFn& f, const EvaluationGrid& grid);

// min over the grid of Im f(z).
double inf_imaginary(const AnalyticFn& f, const EvaluationGrid& grid);

// Checks the range bound implied by the kind: |f| <= 1 + tol for Livsic and
// Characteristic, Im f >= -tol for Herglotz. Generic always passes.
bool satisfies_kind_bounds(const AnalyticFn& f, const EvaluationGrid& grid, double tol);

} // namespace charfn
