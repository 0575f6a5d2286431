#include "tscalc/harness.hpp"

#include <cmath>
#include <cstdio>

namespace tsc {

using nlohmann::ordered_json;

namespace {

std::string format_double(double v)
{
    if (!std::isfinite(v))
        return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_csv_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write(std::string& out, const ordered_json& j, int indent, int depth)
{
    const bool pretty = indent >= 0;
    const std::string pad = pretty ? std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close_pad = pretty ? std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    const char* newline = pretty ? "\n" : "";

    switch (j.type()) {
    case ordered_json::value_t::number_float: out += format_double(j.get<double>()); return;
    case ordered_json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[";
        out += newline;
        bool first = true;
        for (const auto& item : j) {
            if (!first) {
                out += ",";
                out += newline;
            }
            first = false;
            out += pad;
            write(out, item, indent, depth + 1);
        }
        out += newline;
        out += close_pad + "]";
        return;
    }
    case ordered_json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{";
        out += newline;
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) {
                out += ",";
                out += newline;
            }
            first = false;
            out += pad + ordered_json(key).dump() + (pretty ? ": " : ":");
            write(out, value, indent, depth + 1);
        }
        out += newline;
        out += close_pad + "}";
        return;
    }
    default: out += j.dump(); return;
    }
}

} // namespace

std::string dump_json(const ordered_json& j, int indent)
{
    std::string out;
    write(out, j, indent, 0);
    return out;
}

ordered_json report_to_json(const bound_report& r)
{
    ordered_json j;
    j["name"] = r.name;
    j["t"] = r.t ? ordered_json(*r.t) : ordered_json(nullptr);
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["slack"] = r.slack;
    j["holds"] = r.holds;
    j["tol_check"] = r.tol_check;
    ordered_json inputs;
    inputs["scale"] = r.inputs.scale;
    inputs["function"] = r.inputs.function;
    inputs["bounds_source"] = std::string(to_string(r.inputs.source));
    for (const auto& [key, value] : r.inputs.params)
        inputs[key] = value;
    j["inputs"] = inputs;
    if (!r.error.empty())
        j["error"] = r.error;
    return j;
}

std::string emit_report(const std::vector<bound_report>& reports, report_format format)
{
    if (format == report_format::json) {
        ordered_json arr = ordered_json::array();
        for (const bound_report& r : reports)
            arr.push_back(report_to_json(r));
        return dump_json(arr) + "\n";
    }
    std::string out = "name,t,lhs,rhs,slack,holds\n";
    for (const bound_report& r : reports) {
        out += r.name;
        out += ",";
        if (r.t)
            out += format_csv_double(*r.t);
        out += "," + format_csv_double(r.lhs) + "," + format_csv_double(r.rhs) + ","
               + format_csv_double(r.slack) + "," + (r.holds ? "true" : "false") + "\n";
    }
    return out;
}

} // namespace tsc
