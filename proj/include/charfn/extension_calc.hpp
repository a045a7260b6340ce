#pragma once

#include <vector>

#include "charfn/extension_parameter.hpp"
#include "charfn/function_core.hpp"
#include "charfn/json_io.hpp"

namespace charfn {

// S = (s - kappa) / (conj(kappa) s - 1). Accepts Livsic or Characteristic
// input; the map is an involution, so applying it twice with the same kappa
// returns s.
AnalyticFn characteristic_from_livsic(const AnalyticFn& s, const VonNeumannParameter& kappa);

// kappa = S(i). Throws NotContractive if |S(i)| >= 1.
VonNeumannParameter extract_kappa(const AnalyticFn& S);

// z -> exp(-2 i alpha) s(z).
AnalyticFn reference_change_livsic(const AnalyticFn& s, const ReferenceRotation& rot);

// z -> (cos a M - sin a) / (cos a + sin a M).
AnalyticFn reference_change_weyl(const AnalyticFn& M, const ReferenceRotation& rot);

// z -> theta f(z) for |theta| = 1; kind is preserved.
AnalyticFn unimodular_multiple(const AnalyticFn& f, Complex theta);

enum class ClassVerdict { ConsistentWithC, FailsAtI, FailsGrowth };

std::string_view to_string(ClassVerdict v);

struct RayProbe {
    double alpha;
    double theta;
    std::vector<double> radii;
    std::vector<double> magnitudes;  // |z (s(z) - exp(2 i alpha))| along the ray
    bool passed;
};

struct ClassMembershipReport {
    Complex value_at_i;
    bool vanishes_at_i;
    bool ray_growth_passed;
    std::vector<RayProbe> ray_details;
    ClassVerdict verdict;
};

/// Heuristic test of the two conditions characterizing Livsic functions:
/// s(i) = 0 and |z (s(z) - exp(2 i alpha))| -> infinity inside every sector.
///
/// The growth condition is sampled on rays at pi/4, pi/2, 3pi/4 with radii
/// 10, 1e2, 1e3, 1e4 for 16 equally spaced alpha in [0, pi); a ray passes if
/// the magnitude is strictly increasing and ends above 1e3. FailsAtI and
/// FailsGrowth are conclusive; ConsistentWithC is only evidence.
ClassMembershipReport class_C_check(const AnalyticFn& s, const ToleranceConfig& cfg = {});

Json to_json(const ClassMembershipReport& report);

} // namespace charfn
