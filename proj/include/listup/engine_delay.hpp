#pragma once

#include "listup/instance.hpp"
#include "listup/trace.hpp"

#include <optional>
#include <string>
#include <vector>

namespace listup {

// Request lifecycle under the delay algorithm's counters.
enum class ReqStatus { Unarrived, Active, FrozenWithRc, FrozenWithoutRc, Deleted };

enum class DelayEventKind {
    Arrival,      // k
    DelayTick,    // k, eps > 0, pending flags per actor at accrual time
    OptSwap,      // pos
    OptAccess,    // depth, served (OPT-side) ids
    PrefixEvent,  // l, depth, served ids (newly frozen), rc_deleted ids
    ElementEvent, // e, pos l, depth, served ids, deleted ids (requests for e)
};

struct DelayEvent {
    Rat time;
    DelayEventKind kind;
    int k = 0;          // DelayTick / Arrival
    Rat eps;            // DelayTick
    bool alg_pending = false; // DelayTick: active in ALG when the delay accrued
    bool opt_pending = false; // DelayTick: not yet served by OPT
    int arg = 0;        // OptSwap: pos; OptAccess: depth; PrefixEvent: l; ElementEvent: e
    int pos = 0;        // ElementEvent: position of e at firing
    int depth = 0;      // access depth of ALG events / OptAccess
    std::vector<int> served;     // newly served request ids (by the acting side)
    std::vector<int> rc_deleted; // PrefixEvent/ElementEvent: RCs removed
    std::vector<int> deleted;    // ElementEvent: requests leaving the lifecycle
};

// State snapshot at a quiescent boundary (after an ALG event's cascade step),
// used by the counter-invariant checks.
struct CounterSnapshot {
    Rat time;
    std::vector<int> order;      // ALG list order
    std::vector<ReqStatus> status; // per request (index k-1)
    std::vector<Rat> rc;         // live value, 0 if deleted
    std::vector<Rat> ec;         // per element (index e-1)
    Rat access_swap_cost;        // ALG access+swap cost so far
    Rat sum_dk_t;                // sum of suffered delay so far over all requests
};

struct Alg2Run {
    ActionTrace trace;               // ALG actions
    std::vector<DelayEvent> log;     // joint event log (OPT actions included when given)
    std::vector<Rat> d_k;            // final suffered delay per request (index k-1)
    std::vector<std::optional<Rat>> alg_serve_time; // index k-1
    std::vector<CounterSnapshot> snapshots;
};

// Run the counter-based delay algorithm (request counters + element counters,
// prefix and element events) on `inst`, optionally replaying an adversary
// trace on a second list to classify every delay increment by which actors
// still hold the request pending. Jumps are accrued as instantaneous linear
// ramps: counters stop exactly at each threshold, the event cascade runs, and
// only still-active requests accrue the remainder (the steep-ramp limit of the
// continuous model). Within one instant: arrivals, adversary actions, delay
// accrual, then ALG events to quiescence.
Alg2Run run_algorithm2(const Instance& inst, const ActionTrace* opt_trace = nullptr,
                       bool record_snapshots = false);

// Event-log JSONL (one DelayEvent per line); consumed by the CLI.
std::string delay_log_to_jsonl(const std::vector<DelayEvent>& log);

// --- failed policy variants A1..A9: element counters only ---

struct FailedRun {
    ActionTrace trace;
    int events = 0;
};

// which in [1,9]. A1 fires on element-counter events (EC_e reaches the
// element's position); A2..A9 fire on prefix element-counter events (sum of
// the first l element counters reaches l) and differ in which element they
// move to front and which counters they zero. The counters commit each
// request's full eventual delay at arrival and keep it until zeroed (serving
// does not remove mass), so events fire only at arrival instants; requires
// every request's delay to have a finite limit.
FailedRun run_failed_policy(int which, const Instance& inst);

} // namespace listup
