#pragma once

#include <string>

#include <json.hpp>

#include "charfn/function_core.hpp"

namespace charfn {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const Json& j)
{
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

// Like Json::dump(2) but floating-point numbers are written with %.17g,
// so the text is fixed by the bit pattern alone. Non-finite values become null.
std::string dump_fixed(const Json& j);

} // namespace charfn
