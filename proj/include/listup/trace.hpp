#pragma once

#include "listup/instance.hpp"
#include "listup/list_state.hpp"
#include "listup/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace listup {

enum class Actor { ALG, OPT };

struct Action {
    Rat time;
    Actor actor = Actor::ALG;
    enum class Kind { Swap, Access } kind = Kind::Access;
    int arg = 0; // Swap: position in [1, n-1]; Access: depth in [1, n]

    bool operator==(const Action& o) const {
        return time == o.time && actor == o.actor && kind == o.kind && arg == o.arg;
    }
};

inline Action make_swap(const Rat& t, Actor a, int pos) {
    return Action{t, a, Action::Kind::Swap, pos};
}
inline Action make_access(const Rat& t, Actor a, int depth) {
    return Action{t, a, Action::Kind::Access, depth};
}

// A single-actor action sequence with nondecreasing times, replayed from the
// identity list.
struct ActionTrace {
    std::vector<Action> actions;

    // Throws if times decrease, an arg is out of range for an n-element list,
    // or actors are mixed.
    void check_well_formed(int n) const;
};

struct CostBreakdown {
    Rat access_cost;
    Rat swap_cost;
    Rat delay_cost;       // served requests, left limit at serve time
    Rat penalty_unserved; // unserved requests' limits (finite part)
    bool unbounded = false; // some unserved request has an infinite limit
    Rat total() const { return access_cost + swap_cost + delay_cost + penalty_unserved; }
};

// Earliest serve time per request: the first access at time >= a_k whose depth
// covers the element's position in the actor's list at that moment. At equal
// times all requests arrived at t can be served by an access at t.
std::map<int, std::optional<Rat>> serve_times(const ActionTrace& trace, const Instance& inst);

struct TwViolation {
    int k;
    std::optional<Rat> serve_time; // nullopt: never served
};

// ok iff every request is served within [a_k, q_k].
std::optional<TwViolation> validate_time_windows(const ActionTrace& trace, const Instance& inst);

// Exact cost of a trace. TimeWindows: access + swap; throws std::runtime_error
// naming the first violated request if the trace is invalid. Delays: adds each
// request's delay (left limit at its serve time; unserved requests contribute
// their limit, +infinity flagged via `unbounded`).
CostBreakdown cost(const ActionTrace& trace, const Instance& inst);

// Serve-at-deadline normalization: every access is delayed to
// the earliest deadline among pooled (already-served-by-the-input, not yet
// served-by-the-output) requests; swaps are deferred so the output's list at
// each access matches the input's list at that time; trailing swaps are
// dropped. cost(output) <= cost(input).
ActionTrace normalize_serve_at_deadline(const ActionTrace& trace, const Instance& inst);

// Emit exactly the adjacent swaps (at time t, for `actor`) that transform
// `from` into `to`, in Kendall-tau-minimal count.
std::vector<Action> swap_script(const ListState& from, const ListState& to, const Rat& t,
                                Actor actor);

// --- serialization ---

// One JSON object per line: {"t":"p/q","actor":"ALG|OPT","kind":"swap|access","arg":int}
std::string trace_to_jsonl(const ActionTrace& trace);
ActionTrace trace_from_jsonl(const std::string& text);

// CSV row "instance_id,actor,access,swap,delay,penalty,total".
std::string cost_csv_header();
std::string cost_csv_row(const std::string& instance_id, Actor actor, const CostBreakdown& c);

} // namespace listup
