#pragma once

#include "listup/instance.hpp"
#include "listup/trace.hpp"

#include <string>
#include <utility>

namespace listup {

struct OptResult {
    ActionTrace trace; // OPT actions: per decision time, swaps then one access
    Rat cost;
};

// Exhaustive offline optimum for time-window instances. Decision times are the
// sorted distinct deadlines (serve-at-deadline schedules are optimal); at each,
// the search picks any permutation (Kendall-tau swap cost) and an access
// depth. DP over (time-index, permutation, served-set). Guard: n <= 5, m <= 6
// unless `unsafe`.
OptResult brute_force_opt_tw(const Instance& inst, bool unsafe = false);

// Exhaustive offline optimum for delay instances. Candidate action times are
// arrivals plus all delay breakpoints (within a breakpoint-free segment,
// earlier service weakly dominates); serving a request at time t costs its
// left-limit delay; unserved requests pay their limit. Guard: n <= 4, m <= 5,
// <= 8 breakpoints total unless `unsafe`. Throws if a request with unbounded
// delay cannot be scheduled.
OptResult brute_force_opt_delay(const Instance& inst, bool unsafe = false);

// The hand-crafted adversary schedule for counterexample `which` (1..9) at
// size n with parameter eps, plus its closed-form cost.
struct ScriptedAdversary {
    ActionTrace trace;
    Rat closed_form_cost;
};
ScriptedAdversary scripted_adversary(int which, int n, const Rat& eps);

} // namespace listup
