#include "basslab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace basslab {

std::size_t worker_count(std::size_t requested)
{
    std::size_t n = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BASSLAB_THREADS")) {
        try {
            const auto cap = std::stoul(env);
            if (cap > 0) n = std::min<std::size_t>(n, cap);
        } catch (const std::exception&) {
            // ignore malformed values
        }
    }
    return std::max<std::size_t>(1, n);
}

}  // namespace basslab
