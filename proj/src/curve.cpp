#include "basslab/curve.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace basslab {

std::string to_string(CurveSource source)
{
    switch (source) {
    case CurveSource::closed_form: return "closed_form";
    case CurveSource::ode: return "ode";
    case CurveSource::quadrature: return "quadrature";
    case CurveSource::oracle: return "oracle";
    case CurveSource::monte_carlo: return "monte_carlo";
    }
    return "closed_form";
}

std::vector<double> uniform_grid(double t_max, std::size_t points)
{
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be finite and >= 0");
    if (points == 0) throw std::invalid_argument("grid needs at least one point");
    std::vector<double> grid(points, 0.0);
    if (points == 1) return grid;
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = t_max * static_cast<double>(i) / static_cast<double>(points - 1);
    }
    grid.back() = t_max;
    return grid;
}

AdoptionCurve curve_from_nodes(std::span<const double> time, std::vector<std::vector<double>> per_node,
                               CurveSource source)
{
    if (per_node.empty()) throw std::invalid_argument("curve needs at least one node");
    AdoptionCurve curve;
    curve.time.assign(time.begin(), time.end());
    curve.f.assign(time.size(), 0.0);
    for (const auto& node : per_node) {
        if (node.size() != time.size()) throw std::invalid_argument("per-node series length mismatch");
        for (std::size_t g = 0; g < time.size(); ++g) curve.f[g] += node[g];
    }
    for (auto& v : curve.f) v /= static_cast<double>(per_node.size());
    curve.per_node = std::move(per_node);
    curve.source = source;
    return curve;
}

std::string check_curve(const AdoptionCurve& curve, double tol)
{
    if (curve.f.size() != curve.time.size()) return "f and time have different lengths";
    if (curve.f.empty()) return {};
    if (curve.time.front() == 0.0 && std::abs(curve.f.front()) > tol) return "f(0) != 0";
    for (std::size_t g = 0; g < curve.f.size(); ++g) {
        if (curve.f[g] < -tol || curve.f[g] > 1.0 + tol) return "f outside [0, 1] at index " + std::to_string(g);
        if (g > 0 && curve.f[g] < curve.f[g - 1] - tol) return "f decreases at index " + std::to_string(g);
    }
    return {};
}

std::string format_number(double value)
{
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_csv(std::ostream& out, const AdoptionCurve& curve, bool include_nodes)
{
    const bool with_err = !curve.std_error.empty();
    const bool with_nodes = include_nodes && !curve.per_node.empty();
    out << "t,f";
    if (with_err) out << ",stderr";
    if (with_nodes) {
        for (std::size_t j = 0; j < curve.per_node.size(); ++j) out << ",node_" << j + 1;
    }
    out << '\n';
    for (std::size_t g = 0; g < curve.time.size(); ++g) {
        out << format_number(curve.time[g]) << ',' << format_number(curve.f[g]);
        if (with_err) out << ',' << format_number(curve.std_error[g]);
        if (with_nodes) {
            for (const auto& node : curve.per_node) out << ',' << format_number(node[g]);
        }
        out << '\n';
    }
}

std::string to_csv(const AdoptionCurve& curve, bool include_nodes)
{
    std::ostringstream out;
    write_csv(out, curve, include_nodes);
    return out.str();
}

}  // namespace basslab
