// grid.hpp — Uniform parameter grids

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dimerheat {

// lo, lo + step, ..., hi; the last point is snapped to hi when it lands
// within 1e-9 step of it, so 0:0.05:1 has 21 entries.
inline std::vector<double> uniform_grid(double lo, double hi, double step)
{
    if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
    if (!(hi >= lo)) throw std::invalid_argument("grid upper bound below lower bound");
    const double span = (hi - lo) / step;
    const auto count = static_cast<long>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (long k = 0; k < count; ++k) out.push_back(lo + static_cast<double>(k) * step);
    if (std::abs(out.back() - hi) <= 1e-9 * step) out.back() = hi;
    return out;
}

// count points from 0 to t_final inclusive.
inline std::vector<double> time_grid(double t_final, std::size_t count)
{
    if (!(t_final > 0.0)) throw std::invalid_argument("t_final must be positive");
    if (count < 2) throw std::invalid_argument("time grid needs at least two points");
    std::vector<double> out(count);
    const double dt = t_final / static_cast<double>(count - 1);
    for (std::size_t k = 0; k < count; ++k) out[k] = dt * static_cast<double>(k);
    out.back() = t_final;
    return out;
}

} // namespace dimerheat
