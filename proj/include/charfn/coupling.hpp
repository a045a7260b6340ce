#pragma once

#include <string>
#include <vector>

#include "charfn/extension_parameter.hpp"
#include "charfn/function_core.hpp"
#include "charfn/json_io.hpp"

namespace charfn {

/// Angles of the neutral subspace joining two deficiency bases.
struct CouplingAngles {
    double alpha;
    double beta;
    bool kappa2_is_zero;
};

// alpha = atan(sqrt((1 - k2^2) / (1 - k1^2)) / k2), tan(beta) = k1 k2 tan(alpha);
// for k2 <= zero_threshold, alpha = pi/2 and beta = asin(k1).
// Inputs are moduli; throws OutOfRange outside [0, 1).
CouplingAngles coupling_angles(double kappa1, double kappa2, double zero_threshold = 1e-12);

/// Characteristic function together with its von Neumann parameter; the
/// constructor checks |fn(i) - kappa| < tol.
class TaggedCharacteristic {
public:
    TaggedCharacteristic(AnalyticFn fn, VonNeumannParameter kappa, double tol = 1e-10);

    const AnalyticFn& fn() const { return fn_; }
    const VonNeumannParameter& kappa() const { return kappa_; }

private:
    AnalyticFn fn_;
    VonNeumannParameter kappa_;
};

// Livsic function of the coupled symmetric operator:
//   (cos a cos b s1 - s1 s2 + sin a sin b s2) / (1 - (sin a sin b s1 + cos a cos b s2)).
AnalyticFn couple_livsic(const AnalyticFn& s1, const AnalyticFn& s2, const CouplingAngles& angles);

// sup over the grid of |(s - k)/(k s - 1) - (a1 s1 + a2 s2 - s1 s2 - k)/(a2 s1 + a1 s2 - k s1 s2 - 1)|
// with s = couple_livsic(s1, s2, angles), a1 = cos a cos b + k sin a sin b,
// a2 = sin a sin b + k cos a cos b.
double general_k_identity_defect(double k, const AnalyticFn& s1, const AnalyticFn& s2,
                                 const CouplingAngles& angles, const EvaluationGrid& grid);

// cos^2(alpha) M1 + sin^2(alpha) M2.
AnalyticFn add_weyl(const AnalyticFn& M1, const AnalyticFn& M2, double alpha);

// Pointwise product, tagged with kappa1 * kappa2.
TaggedCharacteristic multiply_characteristic(const TaggedCharacteristic& t1,
                                             const TaggedCharacteristic& t2);

struct PropertyResult {
    std::string name;
    std::size_t cases = 0;  // zero means vacuously true
    double worst_deviation = 0.0;
    bool pass = true;
};

struct ClassPropertiesReport {
    std::vector<PropertyResult> properties;
    std::string grid_description;
    bool all_pass() const;
};

// Closure properties over all applicable pairs of the corpus:
//   (i)   convex combinations of normalized Herglotz samples stay Herglotz with M(i) = i
//   (ii)  products of contractive samples stay contractive and carry kappa1 kappa2 at i
//   (iii) a product with a factor vanishing at i vanishes at i
//   (iv)  products of Livsic samples vanish at i
ClassPropertiesReport verify_class_properties(const std::vector<AnalyticFn>& samples,
                                              const ToleranceConfig& cfg = {},
                                              const EvaluationGrid& grid = default_grid());

Json to_json(const CouplingAngles& angles);
Json to_json(const ClassPropertiesReport& report);

} // namespace charfn
