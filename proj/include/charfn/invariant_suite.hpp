#pragma once

#include <string>
#include <vector>

#include "charfn/function_core.hpp"
#include "charfn/herglotz_measure.hpp"
#include "charfn/json_io.hpp"

namespace charfn {

struct InvariantResult {
    std::string module;
    std::string name;
    double deviation;
    double tolerance;
    bool pass;
};

// {delta_0}, {delta_1 + delta_-1}, {2 delta_1}; all satisfy M(i) = i.
std::vector<BorelMeasureModel> bundled_measures();

// Herglotz, Livsic and characteristic samples used for class-property checks.
std::vector<AnalyticFn> bundled_corpus();

// Runs the invariant checks of every module on the default grid.
std::vector<InvariantResult> run_invariant_suite(const ToleranceConfig& cfg = {});

Json to_json(const std::vector<InvariantResult>& results);

} // namespace charfn
