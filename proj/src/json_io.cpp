#include "charfn/json_io.hpp"

#include <cmath>
#include <cstdio>

namespace charfn {

namespace {

void emit(const Json& j, int depth, std::string& out)
{
    const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
    const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first)
                out += ",\n";
            first = false;
            out += pad + Json(key).dump() + ": ";
            emit(value, depth + 1, out);
        }
        out += "\n" + close_pad + "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        for (std::size_t k = 0; k < j.size(); ++k) {
            if (k > 0)
                out += ",\n";
            out += pad;
            emit(j[k], depth + 1, out);
        }
        out += "\n" + close_pad + "]";
    } else if (j.is_number_float()) {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out += "null";
            return;
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
    } else {
        out += j.dump();
    }
}

} // namespace

std::string dump_fixed(const Json& j)
{
    std::string out;
    emit(j, 0, out);
    return out;
}

} // namespace charfn
