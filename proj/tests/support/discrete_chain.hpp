#pragma once

// Exact distribution of the synchronous discrete-time chain on adopter subsets.

#include "basslab/network.hpp"

#include <cstdint>
#include <vector>

namespace reference {

// Expected adopter fraction after each of `steps` steps (index 0 = time 0).
inline std::vector<double> discrete_chain_f(const basslab::Network& net, double dt, std::size_t steps)
{
    const std::size_t m = net.size();
    const std::size_t states = std::size_t{1} << m;
    std::vector<double> prob(states, 0.0), next(states);
    prob[0] = 1.0;
    auto fraction = [&] {
        double f = 0.0;
        for (std::size_t s = 0; s < states; ++s) f += prob[s] * __builtin_popcountll(s);
        return f / static_cast<double>(m);
    };
    std::vector<double> out{fraction()};
    for (std::size_t n = 0; n < steps; ++n) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t s = 0; s < states; ++s) {
            if (prob[s] == 0.0) continue;
            std::vector<double> pi(m, 0.0);
            std::size_t free_mask = 0;
            for (std::size_t j = 0; j < m; ++j) {
                if (s >> j & 1) continue;
                free_mask |= std::size_t{1} << j;
                double rate = net.external_rate(j);
                for (const auto& nb : net.in_neighbors(j))
                    if (s >> nb.node & 1) rate += nb.weight;
                pi[j] = rate * dt;
            }
            // enumerate subsets F of the free nodes
            for (std::size_t f = free_mask;; f = (f - 1) & free_mask) {
                double w = prob[s];
                for (std::size_t j = 0; j < m; ++j) {
                    if (!(free_mask >> j & 1)) continue;
                    w *= (f >> j & 1) ? pi[j] : 1.0 - pi[j];
                }
                next[s | f] += w;
                if (f == 0) break;
            }
        }
        prob.swap(next);
        out.push_back(fraction());
    }
    return out;
}

}  // namespace reference
