#include "basslab/ode.hpp"

#include <cmath>

namespace basslab::ode {

void check_grid(std::span<const double> grid)
{
    if (grid.empty()) throw std::invalid_argument("time grid must not be empty");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i])) throw std::invalid_argument("time grid must be finite");
        if (i > 0 && grid[i] < grid[i - 1]) throw std::invalid_argument("time grid must be non-decreasing");
    }
}

}  // namespace basslab::ode
