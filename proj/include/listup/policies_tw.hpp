#pragma once

#include "listup/instance.hpp"
#include "listup/trace.hpp"

#include <vector>

namespace listup {

// One deadline-triggered event of the time-window algorithm.
struct TwEvent {
    Rat time;
    int trigger_k = 0;      // triggering request id (lowest id on the farthest due element)
    int trigger_element = 0;
    int trigger_pos = 0;    // i = position of the trigger element at the event
    int depth = 0;          // min(2i-1, n)
    int swaps = 0;          // move-to-front cost (i-1)
    std::vector<int> served; // request ids served by this access (ascending)
};

struct TwRun {
    ActionTrace trace;           // ALG actions: Access then MTF swaps per event
    std::vector<TwEvent> events;
    // serve position x_k: position of e_k in ALG's list when ALG served r_k
    std::vector<int> serve_position; // index k-1
};

// Deadline-driven online algorithm: upon a deadline, let the trigger be the
// farthest element holding a due active request at position i; access depth
// min(2i-1, n) (serving every pending request in that prefix) and move the
// trigger to the front.
TwRun run_tw(const Instance& inst);

// Move-to-front on classical (zero-width-window) instances: each request is an
// Access(position) followed by MTF swaps, processed in (time, id) order.
TwRun run_mtf(const Instance& inst);

// Sub-instance of triggering requests (ids renumbered 1..m', order preserved).
// Re-running the algorithm on it yields an identical ActionTrace.
struct FilterResult {
    Instance inst;
    std::vector<int> original_ids; // original_ids[i] = old id of new request i+1
};
FilterResult filter_non_triggers(const Instance& inst, const TwRun& run_on_full);

// Structural invariants of the algorithm on trigger-only instances, checked
// along a run: at every state change the active requests sit on distinct
// elements whose positions pairwise double (2x <= x'), there are at most
// floor(log2 n) + 1 of them, and each element's position is frozen over its
// request's window.
struct TwInvariantReport {
    bool ok = true;
    std::string detail; // first violation, if any
};
TwInvariantReport check_tw_invariants(const Instance& filtered_inst);

} // namespace listup
