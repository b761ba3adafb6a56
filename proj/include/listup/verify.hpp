#pragma once

#include "listup/engine_delay.hpp"
#include "listup/instance.hpp"
#include "listup/policies_tw.hpp"
#include "listup/trace.hpp"

#include <string>
#include <vector>

namespace listup {

// One verified event. slack = bound_const * opt_cost - (alg_cost + delta_phi)
// and must be >= 0 on every row (and exactly 0 where the lemma is an
// equality).
struct LedgerRow {
    Rat time;
    std::string event_type;
    Rat alg_cost;
    Rat opt_cost;
    Rat delta_phi;
    Rat bound_const;
    Rat slack;
    bool ok = true;
};

struct PotentialLedger {
    std::vector<LedgerRow> rows;
    Rat alg_total;   // sum of charged ALG costs
    Rat opt_total;   // sum of charged OPT costs
    Rat phi_end;     // final potential (>= 0)
    bool all_ok = true;
    std::string first_violation;
};

std::string ledger_to_csv(const PotentialLedger& ledger);

// Time-window potential verification: Phi = 4*phi + sum psi(x_k,y_k) +
// 4*sum mu_k over OPT-served-ALG-pending requests. Event bounds: ALG-serve
// <= 0, OPT-serve <= 24*OPT^p, OPT-swap <= 8*OPT^p. Requires a trigger-only
// instance (every request is a trigger of the deadline algorithm) and a
// serve-at-deadline adversary trace; throws otherwise.
PotentialLedger verify_tw(const Instance& inst, const TwRun& alg_run,
                          const ActionTrace& adversary_trace);

// Delay potential verification over the engine's joint event log (first pass
// supplies the eventual total d_k per request). Event-type bounds
// (42, 0, 1, 0, 0, 336, 84); ALG charged 6*eps per unit of suffered delay and
// 0 for accesses/swaps.
PotentialLedger verify_delay(const Instance& inst, const Alg2Run& alg_run,
                             const ActionTrace& adversary_trace);

// psi of the time-window potential: 7x for x <= y, 8y - x for y <= x <= 8y,
// 0 beyond.
Rat psi(const Rat& x, const Rat& y);

// Brute-force oracle for the doubling-constrained maximization
//   max sum_{x in U} f(x), U subset of the grid {i*a/D : 0 < i*a/D < 8a},
//   x < y in U implies 2x <= y,
// where f(x) = psi(x, a). Returns the exact maximum and a witness.
struct LemmaQResult {
    Rat max_value;
    std::vector<Rat> witness; // descending
};
LemmaQResult lemma_q_oracle(const Rat& a, long grid_denominator);

// Same maximization over the integer grid {1, .., 8a-1} (a integral).
LemmaQResult lemma_q_integer(long a);

// Value of the truncated canonical witness {4a/2^i : i = 0..terms-1}.
Rat lemma_q_witness_value(const Rat& a, int terms);

} // namespace listup
