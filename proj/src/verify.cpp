#include "listup/verify.hpp"

#include "listup/list_state.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace listup {

Rat psi(const Rat& x, const Rat& y) {
    if (x <= 0 || y <= 0) throw std::invalid_argument("psi needs positive arguments");
    if (x <= y) return 7 * x;
    if (x <= 8 * y) return 8 * y - x;
    return Rat(0);
}

std::string ledger_to_csv(const PotentialLedger& ledger) {
    std::ostringstream os;
    os << "time,event_type,alg_cost,opt_cost,delta_phi,bound_const,slack\n";
    for (const auto& r : ledger.rows)
        os << format_rat(r.time) << ',' << r.event_type << ',' << format_rat(r.alg_cost) << ','
           << format_rat(r.opt_cost) << ',' << format_rat(r.delta_phi) << ','
           << format_rat(r.bound_const) << ',' << format_rat(r.slack) << '\n';
    return os.str();
}

namespace {

void flag(PotentialLedger& ledger, LedgerRow& row, const std::string& what) {
    row.ok = false;
    ledger.all_ok = false;
    if (ledger.first_violation.empty())
        ledger.first_violation = what + " at t=" + format_rat(row.time) +
                                 " (slack " + format_rat(row.slack) + ")";
}

void push_row(PotentialLedger& ledger, LedgerRow row, bool require_equality = false) {
    row.slack = row.bound_const * row.opt_cost - row.alg_cost - row.delta_phi;
    if (row.slack < 0)
        flag(ledger, row, row.event_type + " bound violated");
    else if (require_equality && row.slack != 0)
        flag(ledger, row, row.event_type + " expected exact equality");
    ledger.alg_total += row.alg_cost;
    ledger.opt_total += row.opt_cost;
    ledger.rows.push_back(std::move(row));
}

} // namespace

// ---------- time windows ----------

namespace {

struct TwLambdaEntry {
    int element = 0;
    Rat x, y;   // positions at the moment the adversary served the request
    long mu = 0; // adversary backward swaps of the element since then
};

struct TwPotential {
    ListState alg, opt;
    std::map<int, TwLambdaEntry> lambda; // request id -> entry

    explicit TwPotential(int n) : alg(n), opt(n) {}

    Rat value() const {
        Rat v = 4 * Rat(alg.inversions_against(opt));
        for (const auto& [k, ent] : lambda) {
            (void)k;
            v += psi(ent.x, ent.y) + 4 * Rat(ent.mu);
        }
        return v;
    }
};

} // namespace

PotentialLedger verify_tw(const Instance& inst, const TwRun& alg_run,
                          const ActionTrace& adversary_trace) {
    if (inst.model != Model::TimeWindows)
        throw std::invalid_argument("time-window verifier needs a time-window instance");
    inst.validate();
    adversary_trace.check_well_formed(inst.n);

    // Precondition: the run must be the deadline algorithm's run on this
    // instance, and every request must be one of its triggers.
    TwRun fresh = run_tw(inst);
    if (!(fresh.trace.actions == alg_run.trace.actions))
        throw std::invalid_argument("run does not match the deadline algorithm on this instance");
    FilterResult filt = filter_non_triggers(inst, fresh);
    if (filt.original_ids.size() != inst.requests.size())
        throw std::invalid_argument(
            "instance is not trigger-only; filter it before verification");

    // Precondition: the adversary trace is valid and serves at deadlines.
    if (validate_time_windows(adversary_trace, inst))
        throw std::invalid_argument("adversary trace does not serve every window");
    {
        ListState opt_list(inst.n);
        std::vector<bool> served(static_cast<size_t>(inst.m()), false);
        for (const auto& a : adversary_trace.actions) {
            if (a.kind == Action::Kind::Swap) {
                opt_list.swap_adjacent(a.arg);
                continue;
            }
            bool at_deadline = false;
            for (const auto& r : inst.requests) {
                if (served[static_cast<size_t>(r.k) - 1]) continue;
                if (r.arrival <= a.time && a.time <= *r.deadline &&
                    opt_list.position(r.element) <= a.arg) {
                    served[static_cast<size_t>(r.k) - 1] = true;
                    if (*r.deadline == a.time) at_deadline = true;
                }
            }
            if (!at_deadline)
                throw std::invalid_argument(
                    "adversary access at t=" + format_rat(a.time) +
                    " serves no request at its deadline; normalize the trace first");
        }
    }

    PotentialLedger ledger;
    ledger.alg_total = ledger.opt_total = Rat(0);

    TwPotential st(inst.n);
    std::vector<bool> alg_served(static_cast<size_t>(inst.m()), false);
    std::vector<bool> opt_served(static_cast<size_t>(inst.m()), false);

    // Merge adversary actions with the algorithm's events; at equal times the
    // adversary acts first.
    size_t oi = 0, ai = 0;
    const auto& events = alg_run.events;
    while (oi < adversary_trace.actions.size() || ai < events.size()) {
        bool take_opt;
        if (oi >= adversary_trace.actions.size())
            take_opt = false;
        else if (ai >= events.size())
            take_opt = true;
        else
            take_opt = adversary_trace.actions[oi].time <= events[ai].time;

        Rat before = st.value();
        LedgerRow row;
        if (take_opt) {
            const Action& a = adversary_trace.actions[oi++];
            row.time = a.time;
            if (a.kind == Action::Kind::Swap) {
                row.event_type = "opt_swap";
                row.alg_cost = 0;
                row.opt_cost = 1;
                row.bound_const = 8;
                int back = st.opt.element_at(a.arg); // the element moving backward
                st.opt.swap_adjacent(a.arg);
                for (auto& [k, ent] : st.lambda) {
                    (void)k;
                    if (ent.element == back) ent.mu += 1;
                }
            } else {
                row.event_type = "opt_serve";
                row.alg_cost = 0;
                row.opt_cost = a.arg;
                row.bound_const = 24;
                std::vector<Rat> new_x;
                for (const auto& r : inst.requests) {
                    if (opt_served[static_cast<size_t>(r.k) - 1]) continue;
                    if (r.arrival > a.time || *r.deadline < a.time) continue;
                    if (st.opt.position(r.element) > a.arg) continue;
                    opt_served[static_cast<size_t>(r.k) - 1] = true;
                    if (!alg_served[static_cast<size_t>(r.k) - 1]) {
                        TwLambdaEntry ent;
                        ent.element = r.element;
                        ent.x = st.alg.position(r.element);
                        ent.y = st.opt.position(r.element);
                        st.lambda[r.k] = ent;
                        new_x.push_back(ent.x);
                    }
                }
                // Positions of simultaneously tracked requests must at least
                // double: the hypothesis the 24a maximization rests on.
                std::sort(new_x.begin(), new_x.end());
                for (size_t i = 1; i < new_x.size(); ++i)
                    if (2 * new_x[i - 1] > new_x[i])
                        throw std::logic_error(
                            "tracked positions fail pairwise doubling at t=" +
                            format_rat(a.time));
            }
        } else {
            const TwEvent& ev = events[ai++];
            row.time = ev.time;
            row.event_type = "alg_serve";
            row.alg_cost = Rat(ev.depth) + Rat(ev.swaps);
            row.opt_cost = 0;
            row.bound_const = 0;
            for (int k : ev.served) {
                alg_served[static_cast<size_t>(k) - 1] = true;
                st.lambda.erase(k);
            }
            st.alg.move_to_front(ev.trigger_element);
        }
        row.delta_phi = st.value() - before;
        push_row(ledger, std::move(row));
    }

    ledger.phi_end = st.value();
    if (ledger.phi_end < 0) {
        ledger.all_ok = false;
        if (ledger.first_violation.empty()) ledger.first_violation = "negative final potential";
    }

    // Cross-check the charged totals against the cost function.
    CostBreakdown ac = cost(alg_run.trace, inst);
    CostBreakdown oc = cost(adversary_trace, inst);
    if (ledger.alg_total != ac.total() || ledger.opt_total != oc.total())
        throw std::logic_error("ledger totals disagree with the cost function");
    return ledger;
}

// ---------- delays ----------

namespace {

struct DelayLambdaEntry {
    Rat x, y;   // positions when the adversary served the request
    long mu = 0; // adversary backward swaps of the element since then
};

struct DelayPotential {
    const Instance* inst;
    const std::vector<Rat>* d_final; // total eventual suffered delay per request
    ListState alg, opt;
    std::vector<ReqStatus> status;     // engine lifecycle per request
    std::vector<bool> opt_served;      // per request
    std::vector<Rat> dk_t;             // suffered so far per request
    std::vector<Rat> ec;               // per element
    std::vector<long> mu_e;            // per element
    std::map<int, DelayLambdaEntry> l2; // OPT-served requests still in lambda

    DelayPotential(const Instance& i, const std::vector<Rat>& d)
        : inst(&i), d_final(&d), alg(i.n), opt(i.n),
          status(static_cast<size_t>(i.m()), ReqStatus::Unarrived),
          opt_served(static_cast<size_t>(i.m()), false),
          dk_t(static_cast<size_t>(i.m()), Rat(0)), ec(static_cast<size_t>(i.n), Rat(0)),
          mu_e(static_cast<size_t>(i.n), 0) {}

    bool in_lambda(int k) const {
        ReqStatus s = status[static_cast<size_t>(k) - 1];
        return s == ReqStatus::Active || s == ReqStatus::FrozenWithRc ||
               s == ReqStatus::FrozenWithoutRc;
    }

    long i_set_size(int e) const {
        long c = 0;
        int pe = alg.position(e);
        for (int i = 1; i <= inst->n; ++i) {
            int other = alg.element_at(i);
            if (i < pe && opt.position(other) > opt.position(e)) ++c;
        }
        return c;
    }

    Rat value() const {
        Rat v(0);
        for (int e = 1; e <= inst->n; ++e) {
            long isz = i_set_size(e);
            if (isz != 0)
                v += Rat(isz) * (Rat(28) - 8 * ec[static_cast<size_t>(e) - 1] /
                                               Rat(alg.position(e)));
            v += 48 * Rat(mu_e[static_cast<size_t>(e) - 1]);
        }
        for (const auto& r : inst->requests) {
            if (!in_lambda(r.k)) continue;
            size_t i = static_cast<size_t>(r.k) - 1;
            if (!opt_served[i]) {
                v += 36 * dk_t[i];
            } else {
                auto it = l2.find(r.k);
                if (it == l2.end())
                    throw std::logic_error("request in lambda_2 without a serve snapshot");
                const DelayLambdaEntry& ent = it->second;
                if (ent.x <= 4 * ent.y) v += 42 * (*d_final)[i] - 6 * dk_t[i];
                v += 8 * (((*d_final)[i] - dk_t[i]) / Rat(alg.position(r.element))) *
                     Rat(ent.mu);
            }
        }
        return v;
    }
};

} // namespace

PotentialLedger verify_delay(const Instance& inst, const Alg2Run& alg_run,
                             const ActionTrace& adversary_trace) {
    if (inst.model != Model::Delays)
        throw std::invalid_argument("delay verifier needs a delay instance");
    inst.validate();
    adversary_trace.check_well_formed(inst.n);

    // The event log must embed exactly the given adversary trace.
    {
        size_t oi = 0;
        for (const auto& ev : alg_run.log) {
            if (ev.kind == DelayEventKind::OptSwap || ev.kind == DelayEventKind::OptAccess) {
                if (oi >= adversary_trace.actions.size())
                    throw std::invalid_argument("event log has adversary actions beyond the trace");
                const Action& a = adversary_trace.actions[oi++];
                bool swap = ev.kind == DelayEventKind::OptSwap;
                if (a.time != ev.time || swap != (a.kind == Action::Kind::Swap) ||
                    a.arg != ev.arg)
                    throw std::invalid_argument("event log diverges from the adversary trace");
            }
        }
        if (oi != adversary_trace.actions.size())
            throw std::invalid_argument("adversary trace has actions missing from the event log");
    }

    PotentialLedger ledger;
    ledger.alg_total = ledger.opt_total = Rat(0);
    DelayPotential st(inst, alg_run.d_k);

    for (const auto& ev : alg_run.log) {
        LedgerRow row;
        row.time = ev.time;
        switch (ev.kind) {
        case DelayEventKind::Arrival: {
            // Joins lambda_1 with zero suffered delay: no potential change.
            Rat before = st.value();
            st.status[static_cast<size_t>(ev.k) - 1] = ReqStatus::Active;
            if (st.value() != before)
                throw std::logic_error("arrival changed the potential");
            continue;
        }
        case DelayEventKind::DelayTick: {
            size_t i = static_cast<size_t>(ev.k) - 1;
            int e = inst.requests[i].element;
            Rat before = st.value();
            if (ev.alg_pending) {
                st.dk_t[i] += ev.eps;
                st.ec[static_cast<size_t>(e) - 1] += ev.eps;
            }
            row.delta_phi = st.value() - before;
            if (ev.alg_pending && ev.opt_pending) {
                row.event_type = "tick_both";
                row.alg_cost = 6 * ev.eps;
                row.opt_cost = ev.eps;
                row.bound_const = 42;
            } else if (ev.alg_pending) {
                row.event_type = "tick_alg";
                row.alg_cost = 6 * ev.eps;
                row.opt_cost = 0;
                row.bound_const = 0;
            } else if (ev.opt_pending) {
                row.event_type = "tick_opt";
                row.alg_cost = 0;
                row.opt_cost = ev.eps;
                row.bound_const = 1;
            } else {
                throw std::logic_error("delay tick pending for neither actor");
            }
            break;
        }
        case DelayEventKind::PrefixEvent: {
            Rat before = st.value();
            for (int k : ev.served)
                st.status[static_cast<size_t>(k) - 1] = ReqStatus::FrozenWithRc;
            for (int k : ev.rc_deleted)
                st.status[static_cast<size_t>(k) - 1] = ReqStatus::FrozenWithoutRc;
            row.delta_phi = st.value() - before;
            row.event_type = "prefix_event";
            row.alg_cost = 0;
            row.opt_cost = 0;
            row.bound_const = 0;
            push_row(ledger, std::move(row), /*require_equality=*/true);
            continue;
        }
        case DelayEventKind::ElementEvent: {
            size_t ei = static_cast<size_t>(ev.arg) - 1;
            // Bookkeeping identity: a full counter triggered the event.
            if (st.ec[ei] != Rat(st.alg.position(ev.arg)))
                throw std::logic_error("element event without a full counter at t=" +
                                       format_rat(ev.time));
            Rat before = st.value();
            Rat rho_before(0);
            for (int e = 1; e <= inst.n; ++e) {
                long isz = st.i_set_size(e);
                if (isz != 0)
                    rho_before += Rat(isz) * (Rat(28) - 8 * st.ec[static_cast<size_t>(e) - 1] /
                                                            Rat(st.alg.position(e)));
            }
            long i_e = st.i_set_size(ev.arg);
            Rat x_e(st.alg.position(ev.arg));

            for (int k : ev.served)
                st.status[static_cast<size_t>(k) - 1] = ReqStatus::FrozenWithRc;
            for (int k : ev.rc_deleted)
                st.status[static_cast<size_t>(k) - 1] = ReqStatus::FrozenWithoutRc;
            for (int k : ev.deleted) {
                st.status[static_cast<size_t>(k) - 1] = ReqStatus::Deleted;
                st.l2.erase(k);
            }
            st.ec[ei] = 0;
            st.mu_e[ei] = 0;
            st.alg.move_to_front(ev.arg);

            // The change of the inversion term is bounded by what one full
            // counter and the vanished inversions of e can pay for.
            Rat rho_after(0);
            for (int e = 1; e <= inst.n; ++e) {
                long isz = st.i_set_size(e);
                if (isz != 0)
                    rho_after += Rat(isz) * (Rat(28) - 8 * st.ec[static_cast<size_t>(e) - 1] /
                                                           Rat(st.alg.position(e)));
            }
            if (rho_after - rho_before > 36 * x_e - 48 * Rat(i_e)) {
                ledger.all_ok = false;
                if (ledger.first_violation.empty())
                    ledger.first_violation =
                        "inversion-term change exceeds its event budget at t=" +
                        format_rat(ev.time);
            }

            row.delta_phi = st.value() - before;
            row.event_type = "element_event";
            row.alg_cost = 0;
            row.opt_cost = 0;
            row.bound_const = 0;
            break;
        }
        case DelayEventKind::OptSwap: {
            Rat before = st.value();
            int back = st.opt.element_at(ev.arg);
            st.opt.swap_adjacent(ev.arg);
            st.mu_e[static_cast<size_t>(back) - 1] += 1;
            for (auto& [k, ent] : st.l2)
                if (inst.requests[static_cast<size_t>(k) - 1].element == back) ent.mu += 1;
            row.delta_phi = st.value() - before;
            row.event_type = "opt_swap";
            row.alg_cost = 0;
            row.opt_cost = 1;
            row.bound_const = 84;
            break;
        }
        case DelayEventKind::OptAccess: {
            Rat before = st.value();
            for (int k : ev.served) {
                size_t i = static_cast<size_t>(k) - 1;
                st.opt_served[i] = true;
                if (st.in_lambda(k)) {
                    DelayLambdaEntry ent;
                    ent.x = st.alg.position(inst.requests[i].element);
                    ent.y = st.opt.position(inst.requests[i].element);
                    st.l2[k] = ent;
                }
            }
            row.delta_phi = st.value() - before;
            row.event_type = "opt_access";
            row.alg_cost = 0;
            row.opt_cost = ev.depth;
            row.bound_const = 336;
            break;
        }
        }
        push_row(ledger, std::move(row));
    }

    ledger.phi_end = st.value();
    if (ledger.phi_end < 0) {
        ledger.all_ok = false;
        if (ledger.first_violation.empty()) ledger.first_violation = "negative final potential";
    }

    // Charged adversary total must equal the cost function on its trace, and
    // the charged algorithm total is six times the total suffered delay.
    CostBreakdown oc = cost(adversary_trace, inst);
    if (oc.unbounded || ledger.opt_total != oc.total())
        throw std::logic_error("charged adversary total disagrees with the cost function");
    Rat sum_d(0);
    for (const auto& d : alg_run.d_k) sum_d += d;
    if (ledger.alg_total != 6 * sum_d)
        throw std::logic_error("charged algorithm total is not six times the suffered delay");
    return ledger;
}

// ---------- the doubling-constrained maximization ----------

namespace {

LemmaQResult lemma_q_dp(const std::vector<Rat>& xs, const Rat& a) {
    const size_t N = xs.size();
    std::vector<Rat> g(N);
    std::vector<long> parent(N, -1);
    LemmaQResult res;
    res.max_value = Rat(0);
    long best = -1;
    for (size_t i = 0; i < N; ++i) {
        g[i] = psi(xs[i], a);
        // Best extension: any chain whose largest point is at most half x_i.
        Rat best_tail(0);
        long best_j = -1;
        for (size_t j = 0; j < i; ++j) {
            if (2 * xs[j] > xs[i]) break;
            if (g[j] > best_tail) {
                best_tail = g[j];
                best_j = static_cast<long>(j);
            }
        }
        g[i] += best_tail;
        parent[i] = best_j;
        if (g[i] > res.max_value) {
            res.max_value = g[i];
            best = static_cast<long>(i);
        }
    }
    for (long i = best; i >= 0; i = parent[static_cast<size_t>(i)])
        res.witness.push_back(xs[static_cast<size_t>(i)]);
    return res;
}

} // namespace

LemmaQResult lemma_q_oracle(const Rat& a, long grid_denominator) {
    if (a <= 0) throw std::invalid_argument("maximization needs a > 0");
    if (grid_denominator < 8) throw std::invalid_argument("grid denominator must be >= 8");
    std::vector<Rat> xs;
    for (long i = 1; i < 8 * grid_denominator; ++i) xs.push_back(Rat(i) * a / grid_denominator);
    return lemma_q_dp(xs, a);
}

LemmaQResult lemma_q_integer(long a) {
    if (a <= 0) throw std::invalid_argument("maximization needs a > 0");
    std::vector<Rat> xs;
    for (long i = 1; i < 8 * a; ++i) xs.push_back(Rat(i));
    return lemma_q_dp(xs, Rat(a));
}

Rat lemma_q_witness_value(const Rat& a, int terms) {
    if (a <= 0 || terms < 1) throw std::invalid_argument("need a > 0 and at least one term");
    Rat v(0), x = 4 * a;
    for (int i = 0; i < terms; ++i) {
        v += psi(x, a);
        x /= 2;
    }
    return v;
}

} // namespace listup
