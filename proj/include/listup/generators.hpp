#pragma once

#include "listup/instance.hpp"
#include "listup/trace.hpp"

#include <cstdint>
#include <random>

namespace listup {

// Deterministic random instance generators for the property corpora. All use
// a caller-seeded engine so corpora are reproducible.

// Time-window instance: n in [n_min, n_max], m in [1, m_max], rational
// windows with small denominators.
Instance random_tw_instance(std::mt19937_64& rng, int n_min, int n_max, int m_max);

// Classical list-update instance: zero-width windows at strictly increasing
// times.
Instance random_classical_instance(std::mt19937_64& rng, int n_max, int m_max);

// Delay instance: n <= n_max, m <= m_max, piecewise-linear delays with at
// most max_breakpoints breakpoints in total. Jumps are kept <= 2 and jump
// instants distinct across requests, matching the regime the per-event
// verification constants are stated for.
Instance random_delay_instance(std::mt19937_64& rng, int n_max, int m_max,
                               int max_breakpoints);

// A random valid adversary trace for a time-window instance: serves due
// requests at deadlines with random extra depth and random pre-access swaps.
ActionTrace random_valid_tw_trace(std::mt19937_64& rng, const Instance& inst);

} // namespace listup
