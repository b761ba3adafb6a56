#include "listup/engine_delay.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace listup {

using nlohmann::json;

namespace {

struct EngineState {
    const Instance* inst = nullptr;
    const ActionTrace* opt = nullptr;
    size_t opt_i = 0; // next unprocessed adversary action

    ListState alg_list;
    ListState opt_list;
    std::vector<ReqStatus> status; // index k-1
    std::vector<Rat> rc;           // live value; meaningful for Active/FrozenWithRc
    std::vector<Rat> suffered;     // d_k(t): total delay suffered in ALG so far
    std::vector<bool> opt_served;
    std::vector<Rat> ec; // index e-1

    Alg2Run* run = nullptr;
    bool record_snapshots = false;
    Rat access_swap_cost;

    int n() const { return inst->n; }
    int m() const { return inst->m(); }

    bool rc_live(int k) const {
        ReqStatus s = status[static_cast<size_t>(k) - 1];
        return s == ReqStatus::Active || s == ReqStatus::FrozenWithRc;
    }
    bool active(int k) const { return status[static_cast<size_t>(k) - 1] == ReqStatus::Active; }

    // Sum of live request counters over the first l elements of ALG's list.
    Rat prefix_rc(int l) const {
        Rat s(0);
        for (const auto& r : inst->requests)
            if (rc_live(r.k) && alg_list.position(r.element) <= l)
                s += rc[static_cast<size_t>(r.k) - 1];
        return s;
    }

    // Accrual rates at time t+ (constant until the next breakpoint).
    std::vector<Rat> rates_after(const Rat& t) const {
        std::vector<Rat> rt(static_cast<size_t>(m()), Rat(0));
        for (const auto& r : inst->requests)
            if (active(r.k)) rt[static_cast<size_t>(r.k) - 1] = r.delay->slope_after(t);
        return rt;
    }
};

void log_tick(EngineState& st, const Rat& t, int k, const Rat& eps, bool alg_pending,
              bool opt_pending) {
    if (eps <= 0) return;
    DelayEvent ev;
    ev.time = t;
    ev.kind = DelayEventKind::DelayTick;
    ev.k = k;
    ev.eps = eps;
    ev.alg_pending = alg_pending;
    ev.opt_pending = opt_pending;
    st.run->log.push_back(std::move(ev));
}

// Record one increment of suffered delay for an ALG-active request: counters
// and the suffered total move together.
void accrue(EngineState& st, int k, const Rat& eps) {
    st.suffered[static_cast<size_t>(k) - 1] += eps;
    st.rc[static_cast<size_t>(k) - 1] += eps;
    int e = st.inst->requests[static_cast<size_t>(k) - 1].element;
    st.ec[static_cast<size_t>(e) - 1] += eps;
}

// Serve all ALG-active requests within the first `depth` list positions.
void alg_serve_prefix(EngineState& st, const Rat& t, int depth, std::vector<int>& served_out) {
    for (const auto& r : st.inst->requests) {
        if (!st.active(r.k)) continue;
        if (st.alg_list.position(r.element) <= depth) {
            st.status[static_cast<size_t>(r.k) - 1] = ReqStatus::FrozenWithRc;
            st.run->alg_serve_time[static_cast<size_t>(r.k) - 1] = t;
            served_out.push_back(r.k);
        }
    }
}

// Fire eligible ALG counter events at instant t until none remains. Element
// events first (lowest position), then prefix events (smallest l).
void cascade(EngineState& st, const Rat& t) {
    for (;;) {
        // Element event: EC_e has reached e's position.
        int fire_e = 0, fire_pos = 0;
        for (int p = 1; p <= st.n(); ++p) {
            int e = st.alg_list.element_at(p);
            if (st.ec[static_cast<size_t>(e) - 1] >= p) {
                fire_e = e;
                fire_pos = p;
                break;
            }
        }
        if (fire_e != 0) {
            DelayEvent ev;
            ev.time = t;
            ev.kind = DelayEventKind::ElementEvent;
            ev.arg = fire_e;
            ev.pos = fire_pos;
            ev.depth = std::min(2 * fire_pos, st.n());
            st.run->trace.actions.push_back(make_access(t, Actor::ALG, ev.depth));
            st.access_swap_cost += ev.depth;
            alg_serve_prefix(st, t, ev.depth, ev.served);
            for (const auto& r : st.inst->requests) {
                if (r.element != fire_e) continue;
                ReqStatus& s = st.status[static_cast<size_t>(r.k) - 1];
                if (s == ReqStatus::FrozenWithRc) {
                    ev.rc_deleted.push_back(r.k);
                    s = ReqStatus::FrozenWithoutRc;
                    st.rc[static_cast<size_t>(r.k) - 1] = 0;
                }
                if (s == ReqStatus::FrozenWithoutRc) {
                    s = ReqStatus::Deleted;
                    ev.deleted.push_back(r.k);
                }
            }
            st.ec[static_cast<size_t>(fire_e) - 1] = 0;
            for (int p = fire_pos - 1; p >= 1; --p) {
                st.run->trace.actions.push_back(make_swap(t, Actor::ALG, p));
                st.access_swap_cost += 1;
                st.alg_list.swap_adjacent(p);
            }
            st.run->log.push_back(std::move(ev));
            continue;
        }
        // Prefix event: live request counters over the first l sum to l.
        int fire_l = 0;
        for (int l = 1; l <= st.n(); ++l)
            if (st.prefix_rc(l) >= l) {
                fire_l = l;
                break;
            }
        if (fire_l != 0) {
            DelayEvent ev;
            ev.time = t;
            ev.kind = DelayEventKind::PrefixEvent;
            ev.arg = fire_l;
            ev.depth = std::min(2 * fire_l, st.n());
            st.run->trace.actions.push_back(make_access(t, Actor::ALG, ev.depth));
            st.access_swap_cost += ev.depth;
            alg_serve_prefix(st, t, ev.depth, ev.served);
            for (const auto& r : st.inst->requests) {
                if (!st.rc_live(r.k)) continue;
                if (st.alg_list.position(r.element) <= fire_l) {
                    ReqStatus& s = st.status[static_cast<size_t>(r.k) - 1];
                    // Everything active in the first l was just served; all
                    // live counters in the prefix are deleted.
                    s = ReqStatus::FrozenWithoutRc;
                    st.rc[static_cast<size_t>(r.k) - 1] = 0;
                    ev.rc_deleted.push_back(r.k);
                }
            }
            st.run->log.push_back(std::move(ev));
            continue;
        }
        break;
    }
}

// Instantaneous jump accrual in the steep-ramp limit: all ALG-active requests
// with pending jump mass accrue proportionally until the first counter reaches
// its threshold; the cascade runs; requests frozen by it drop their remainder.
void accrue_jumps_split(EngineState& st, const Rat& t, std::map<int, Rat>& remaining) {
    for (;;) {
        // Drop non-active holders (served/deleted requests stop suffering for
        // ALG); a remainder still pending in OPT is logged as an opt-only tick
        // so the adversary's charge matches the cost function.
        for (auto it = remaining.begin(); it != remaining.end();) {
            if (!st.active(it->first) || it->second <= 0) {
                if (it->second > 0 && !st.opt_served[static_cast<size_t>(it->first) - 1])
                    log_tick(st, t, it->first, it->second, false, true);
                it = remaining.erase(it);
            } else {
                ++it;
            }
        }
        if (remaining.empty()) return;

        // Fraction s* in (0,1] of the remaining masses at which the first
        // threshold is reached.
        Rat s_star(1);
        bool hit = false;
        // Element thresholds.
        for (int p = 1; p <= st.n(); ++p) {
            int e = st.alg_list.element_at(p);
            Rat mass(0);
            for (const auto& [k, j] : remaining)
                if (st.inst->requests[static_cast<size_t>(k) - 1].element == e) mass += j;
            if (mass <= 0) continue;
            Rat gap = Rat(p) - st.ec[static_cast<size_t>(e) - 1];
            if (gap <= mass) {
                Rat s = gap <= 0 ? Rat(0) : gap / mass;
                if (s < s_star) s_star = s, hit = true;
                else if (s == s_star) hit = true;
            }
        }
        // Prefix thresholds.
        for (int l = 1; l <= st.n(); ++l) {
            Rat mass(0);
            for (const auto& [k, j] : remaining)
                if (st.alg_list.position(
                        st.inst->requests[static_cast<size_t>(k) - 1].element) <= l)
                    mass += j;
            if (mass <= 0) continue;
            Rat gap = Rat(l) - st.prefix_rc(l);
            if (gap <= mass) {
                Rat s = gap <= 0 ? Rat(0) : gap / mass;
                if (s < s_star) s_star = s, hit = true;
                else if (s == s_star) hit = true;
            }
        }

        if (!hit) {
            // No threshold in reach: accrue everything.
            for (auto& [k, j] : remaining) {
                log_tick(st, t, k, j, true, !st.opt_served[static_cast<size_t>(k) - 1]);
                accrue(st, k, j);
                j = 0;
            }
            continue; // next loop iteration clears the map and returns
        }
        for (auto& [k, j] : remaining) {
            Rat d = j * s_star;
            if (d > 0) {
                log_tick(st, t, k, d, true, !st.opt_served[static_cast<size_t>(k) - 1]);
                accrue(st, k, d);
                j -= d;
            }
        }
        cascade(st, t);
    }
}

void process_opt_actions_at(EngineState& st, const Rat& t) {
    if (!st.opt) return;
    while (st.opt_i < st.opt->actions.size() && st.opt->actions[st.opt_i].time == t) {
        const Action& a = st.opt->actions[st.opt_i++];
        if (a.kind == Action::Kind::Swap) {
            st.opt_list.swap_adjacent(a.arg);
            DelayEvent ev;
            ev.time = t;
            ev.kind = DelayEventKind::OptSwap;
            ev.arg = a.arg;
            st.run->log.push_back(std::move(ev));
        } else {
            DelayEvent ev;
            ev.time = t;
            ev.kind = DelayEventKind::OptAccess;
            ev.arg = a.arg;
            ev.depth = a.arg;
            for (const auto& r : st.inst->requests) {
                if (st.opt_served[static_cast<size_t>(r.k) - 1]) continue;
                if (r.arrival > t) continue;
                if (st.opt_list.position(r.element) <= a.arg) {
                    st.opt_served[static_cast<size_t>(r.k) - 1] = true;
                    ev.served.push_back(r.k);
                }
            }
            st.run->log.push_back(std::move(ev));
        }
    }
}

void quiescence_checks(EngineState& st, const Rat& t) {
    for (int l = 1; l <= st.n(); ++l)
        if (st.prefix_rc(l) > l)
            throw std::logic_error("prefix counter above threshold after cascade at t=" +
                                   format_rat(t));
    for (int e = 1; e <= st.n(); ++e)
        if (st.ec[static_cast<size_t>(e) - 1] > st.alg_list.position(e))
            throw std::logic_error("element counter above position after cascade at t=" +
                                   format_rat(t));
    if (st.record_snapshots) {
        CounterSnapshot snap;
        snap.time = t;
        snap.order = st.alg_list.order();
        snap.status.assign(st.status.begin(), st.status.end());
        snap.rc = st.rc;
        snap.ec = st.ec;
        snap.access_swap_cost = st.access_swap_cost;
        Rat s(0);
        for (const auto& d : st.suffered) s += d;
        snap.sum_dk_t = s;
        st.run->snapshots.push_back(std::move(snap));
    }
}

} // namespace

Alg2Run run_algorithm2(const Instance& inst, const ActionTrace* opt_trace,
                       bool record_snapshots) {
    if (inst.model != Model::Delays)
        throw std::invalid_argument("delay algorithm needs a delay instance");
    inst.validate();
    if (opt_trace) opt_trace->check_well_formed(inst.n);

    Alg2Run run;
    run.d_k.assign(static_cast<size_t>(inst.m()), Rat(0));
    run.alg_serve_time.assign(static_cast<size_t>(inst.m()), std::nullopt);

    EngineState st;
    st.inst = &inst;
    st.opt = opt_trace;
    st.alg_list = ListState(inst.n);
    st.opt_list = ListState(inst.n);
    st.status.assign(static_cast<size_t>(inst.m()), ReqStatus::Unarrived);
    st.rc.assign(static_cast<size_t>(inst.m()), Rat(0));
    st.suffered.assign(static_cast<size_t>(inst.m()), Rat(0));
    st.opt_served.assign(static_cast<size_t>(inst.m()), false);
    st.ec.assign(static_cast<size_t>(inst.n), Rat(0));
    st.run = &run;
    st.record_snapshots = record_snapshots;

    // Discrete boundaries: arrivals, breakpoints, adversary action times.
    std::set<Rat> boundaries;
    for (const auto& r : inst.requests) {
        boundaries.insert(r.arrival);
        for (const auto& b : r.delay->breakpoints()) boundaries.insert(b.t);
    }
    if (opt_trace)
        for (const auto& a : opt_trace->actions) boundaries.insert(a.time);

    Rat t_cur(-1);
    bool started = false;

    for (;;) {
        // Next discrete boundary.
        std::optional<Rat> nb;
        for (const Rat& b : boundaries)
            if (!started || b > t_cur) {
                nb = b;
                break;
            }
        // Next continuous counter crossing strictly after t_cur.
        std::optional<Rat> tc;
        if (started) {
            auto rates = st.rates_after(t_cur);
            // Element counters.
            for (int p = 1; p <= inst.n; ++p) {
                int e = st.alg_list.element_at(p);
                Rat rate(0);
                for (const auto& r : inst.requests)
                    if (r.element == e) rate += rates[static_cast<size_t>(r.k) - 1];
                if (rate <= 0) continue;
                Rat gap = Rat(p) - st.ec[static_cast<size_t>(e) - 1];
                Rat cand = t_cur + gap / rate;
                if (!tc || cand < *tc) tc = cand;
            }
            // Prefix request-counter sums.
            for (int l = 1; l <= inst.n; ++l) {
                Rat rate(0);
                for (const auto& r : inst.requests)
                    if (st.alg_list.position(r.element) <= l)
                        rate += rates[static_cast<size_t>(r.k) - 1];
                if (rate <= 0) continue;
                Rat gap = Rat(l) - st.prefix_rc(l);
                Rat cand = t_cur + gap / rate;
                if (!tc || cand < *tc) tc = cand;
            }
            if (tc && nb && *nb <= *tc) tc.reset(); // boundary first; re-evaluated after
        }

        std::optional<Rat> t_next;
        if (nb && tc)
            t_next = std::min(*nb, *tc);
        else if (nb)
            t_next = nb;
        else if (tc)
            t_next = tc;
        if (!t_next) break;
        const Rat t = *t_next;

        // 1. Continuous accrual over (t_cur, t): classification is constant on
        // the open interval.
        if (started && t > t_cur) {
            for (const auto& r : inst.requests) {
                Rat eps = r.delay->left_limit_at(t) - r.delay->value_at(t_cur);
                if (eps <= 0) continue;
                bool alg_p = st.active(r.k);
                bool opt_p = !st.opt_served[static_cast<size_t>(r.k) - 1];
                if (!alg_p && !opt_p) continue;
                log_tick(st, t, r.k, eps, alg_p, opt_p);
                if (alg_p) accrue(st, r.k, eps);
            }
        }

        // 2. Arrivals at t.
        for (const auto& r : inst.requests) {
            if (r.arrival == t && st.status[static_cast<size_t>(r.k) - 1] == ReqStatus::Unarrived) {
                st.status[static_cast<size_t>(r.k) - 1] = ReqStatus::Active;
                DelayEvent ev;
                ev.time = t;
                ev.kind = DelayEventKind::Arrival;
                ev.k = r.k;
                run.log.push_back(std::move(ev));
            }
        }

        // 3. Adversary actions at t (before jumps: serving at a deadline
        // avoids its penalty).
        process_opt_actions_at(st, t);

        // 4. Jumps at t. ALG-active holders accrue in the steep-ramp limit;
        // requests pending only in OPT log a plain tick.
        std::map<int, Rat> jumps;
        for (const auto& r : inst.requests) {
            Rat j = r.delay->value_at(t) - r.delay->left_limit_at(t);
            if (j <= 0) continue;
            bool alg_p = st.active(r.k);
            bool opt_p = !st.opt_served[static_cast<size_t>(r.k) - 1];
            if (alg_p)
                jumps[r.k] = j;
            else if (opt_p)
                log_tick(st, t, r.k, j, false, true);
        }
        accrue_jumps_split(st, t, jumps);

        // 5. Remaining eligible events (continuous crossings, arrivals that
        // shifted prefixes, etc.).
        cascade(st, t);
        quiescence_checks(st, t);

        t_cur = t;
        started = true;
    }

    // Horizon: everything with positive remaining delay mass must have been
    // resolved for any actor that still holds it pending.
    for (const auto& r : inst.requests) {
        if (!r.delay->limit()) {
            if (st.active(r.k))
                throw std::logic_error("unbounded-delay request never triggered an event");
            if (opt_trace && !st.opt_served[static_cast<size_t>(r.k) - 1])
                throw std::runtime_error(
                    "adversary trace never serves request " + std::to_string(r.k) +
                    " whose delay is unbounded");
        }
    }

    run.d_k = st.suffered;
    return run;
}

std::string delay_log_to_jsonl(const std::vector<DelayEvent>& log) {
    std::ostringstream os;
    for (const auto& ev : log) {
        json j;
        j["t"] = format_rat(ev.time);
        switch (ev.kind) {
        case DelayEventKind::Arrival:
            j["kind"] = "arrival";
            j["k"] = ev.k;
            break;
        case DelayEventKind::DelayTick:
            j["kind"] = "delay_tick";
            j["k"] = ev.k;
            j["eps"] = format_rat(ev.eps);
            j["alg_pending"] = ev.alg_pending;
            j["opt_pending"] = ev.opt_pending;
            break;
        case DelayEventKind::OptSwap:
            j["kind"] = "opt_swap";
            j["pos"] = ev.arg;
            break;
        case DelayEventKind::OptAccess:
            j["kind"] = "opt_access";
            j["depth"] = ev.depth;
            j["served"] = ev.served;
            break;
        case DelayEventKind::PrefixEvent:
            j["kind"] = "prefix_event";
            j["l"] = ev.arg;
            j["depth"] = ev.depth;
            j["served"] = ev.served;
            j["rc_deleted"] = ev.rc_deleted;
            break;
        case DelayEventKind::ElementEvent:
            j["kind"] = "element_event";
            j["e"] = ev.arg;
            j["pos"] = ev.pos;
            j["depth"] = ev.depth;
            j["served"] = ev.served;
            j["rc_deleted"] = ev.rc_deleted;
            j["deleted"] = ev.deleted;
            break;
        }
        os << j.dump() << "\n";
    }
    return os.str();
}

// ---------- failed element-counter policies ----------

namespace {

struct FailedState {
    const Instance* inst = nullptr;
    int which = 1;
    ListState list;
    std::vector<bool> arrived, served;
    std::vector<Rat> ec; // per element: committed penalty mass, removed only by zeroing
    FailedRun* run = nullptr;

    int n() const { return inst->n; }
    bool pending(int k) const {
        return arrived[static_cast<size_t>(k) - 1] && !served[static_cast<size_t>(k) - 1];
    }
};

void failed_serve_prefix(FailedState& st, const Rat& t, int depth) {
    for (const auto& r : st.inst->requests)
        if (st.pending(r.k) && st.list.position(r.element) <= depth)
            st.served[static_cast<size_t>(r.k) - 1] = true;
    (void)t;
}

// Pick the element the policy moves to front for a prefix event on l.
int failed_pick_element(const FailedState& st, int l) {
    switch (st.which) {
    case 2:
    case 3:
        return st.list.element_at(l);
    case 4:
    case 5: {
        int best = 0, best_pos = 0;
        Rat best_v(-1);
        for (int p = 1; p <= l; ++p) {
            int e = st.list.element_at(p);
            const Rat& v = st.ec[static_cast<size_t>(e) - 1];
            if (v > best_v || (v == best_v && p > best_pos)) {
                best_v = v;
                best = e;
                best_pos = p;
            }
        }
        return best;
    }
    case 6:
    case 7: {
        Rat mx(0);
        for (int p = 1; p <= l; ++p)
            mx = std::max(mx, st.ec[static_cast<size_t>(st.list.element_at(p)) - 1]);
        int best = st.list.element_at(1);
        for (int p = 1; p <= l; ++p) {
            int e = st.list.element_at(p);
            if (2 * st.ec[static_cast<size_t>(e) - 1] >= mx) best = e; // farthest wins
        }
        return best;
    }
    case 8:
    case 9: {
        int best = 0, best_pos = 0;
        Rat best_v(-1), f(0);
        for (int p = 1; p <= l; ++p) {
            int e = st.list.element_at(p);
            Rat v = f + 2 * st.ec[static_cast<size_t>(e) - 1];
            if (v > best_v || (v == best_v && p > best_pos)) {
                best_v = v;
                best = e;
                best_pos = p;
            }
            f += st.ec[static_cast<size_t>(e) - 1];
        }
        return best;
    }
    default:
        throw std::logic_error("prefix pick for element-event policy");
    }
}

void failed_cascade(FailedState& st, const Rat& t) {
    for (;;) {
        if (st.which == 1) {
            // Element-counter event: EC_e reaches e's position.
            int fire_e = 0, fire_pos = 0;
            for (int p = 1; p <= st.n(); ++p) {
                int e = st.list.element_at(p);
                if (st.ec[static_cast<size_t>(e) - 1] >= p) {
                    fire_e = e;
                    fire_pos = p;
                    break;
                }
            }
            if (fire_e == 0) break;
            int depth = std::min(2 * fire_pos, st.n());
            st.run->trace.actions.push_back(make_access(t, Actor::ALG, depth));
            failed_serve_prefix(st, t, depth);
            st.ec[static_cast<size_t>(fire_e) - 1] = 0;
            for (int p = fire_pos - 1; p >= 1; --p) {
                st.run->trace.actions.push_back(make_swap(t, Actor::ALG, p));
                st.list.swap_adjacent(p);
            }
            ++st.run->events;
            continue;
        }
        // Prefix element-counter event: smallest l with sum >= l.
        int fire_l = 0;
        Rat run_sum(0);
        for (int l = 1; l <= st.n(); ++l) {
            run_sum += st.ec[static_cast<size_t>(st.list.element_at(l)) - 1];
            if (run_sum >= l) {
                fire_l = l;
                break;
            }
        }
        if (fire_l == 0) break;
        int e = failed_pick_element(st, fire_l);
        int depth = std::min(2 * fire_l, st.n());
        st.run->trace.actions.push_back(make_access(t, Actor::ALG, depth));
        failed_serve_prefix(st, t, depth);
        const bool zero_all = st.which == 3 || st.which == 5 || st.which == 7 || st.which == 9;
        if (zero_all) {
            for (int p = 1; p <= fire_l; ++p)
                st.ec[static_cast<size_t>(st.list.element_at(p)) - 1] = 0;
        } else {
            st.ec[static_cast<size_t>(e) - 1] = 0;
        }
        for (int p = st.list.position(e) - 1; p >= 1; --p) {
            st.run->trace.actions.push_back(make_swap(t, Actor::ALG, p));
            st.list.swap_adjacent(p);
        }
        ++st.run->events;
        continue;
    }
}

} // namespace

// The element counters of these policies commit each request's entire
// eventual delay (its limit) at arrival and keep that mass until a firing
// rule explicitly zeroes it; serving or expiry does not remove it. Events can
// therefore only fire at arrival instants, with overshoot retained.
FailedRun run_failed_policy(int which, const Instance& inst) {
    if (which < 1 || which > 9) throw std::invalid_argument("policy index must be 1..9");
    if (inst.model != Model::Delays)
        throw std::invalid_argument("element-counter policies need a delay instance");
    inst.validate();
    for (const auto& r : inst.requests)
        if (!r.delay->limit())
            throw std::invalid_argument(
                "element-counter policies need a finite total delay per request");

    FailedRun run;
    FailedState st;
    st.inst = &inst;
    st.which = which;
    st.list = ListState(inst.n);
    st.arrived.assign(static_cast<size_t>(inst.m()), false);
    st.served.assign(static_cast<size_t>(inst.m()), false);
    st.ec.assign(static_cast<size_t>(inst.n), Rat(0));
    st.run = &run;

    std::set<Rat> arrivals;
    for (const auto& r : inst.requests) arrivals.insert(r.arrival);

    for (const Rat& t : arrivals) {
        for (const auto& r : inst.requests) {
            if (r.arrival != t) continue;
            st.arrived[static_cast<size_t>(r.k) - 1] = true;
            st.ec[static_cast<size_t>(r.element) - 1] += *r.delay->limit();
        }
        failed_cascade(st, t);
    }

    return run;
}

} // namespace listup
