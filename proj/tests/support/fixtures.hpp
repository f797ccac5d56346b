#pragma once

#include <array>

namespace simrank::testing {

using Table5 = std::array<std::array<double, 5>, 5>;

// Published exact similarities for the two 5-vertex example graphs, 4 significant figures.
inline constexpr Table5 kGraph1Expected{{
    {1, 0, 0, 0.1323, 0.03388},
    {0, 1, 0, 0.4136, 0.1059},
    {0, 0, 1, 0.04235, 0.3308},
    {0.1323, 0.4136, 0.04235, 1, 0.08822},
    {0.03388, 0.1059, 0.3308, 0.08822, 1},
}};

inline constexpr Table5 kGraph2Expected{{
    {1, 0.1809, 0.2262, 0.1993, 0.5523},
    {0.1809, 1, 0.2933, 0.6209, 0.1702},
    {0.2262, 0.2933, 1, 0.3807, 0.2721},
    {0.1993, 0.6209, 0.3807, 1, 0.1744},
    {0.5523, 0.1702, 0.2721, 0.1744, 1},
}};

inline constexpr double kFixtureDecay = 0.8;
inline constexpr int kFixtureIterations = 30;

/// `value` printed with 4 significant figures equals `expected` printed the same way.
bool same_4_sig(double value, double expected);

}  // namespace simrank::testing
