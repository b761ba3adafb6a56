#include "listup/policies_tw.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace listup {

namespace {

// Observer invoked at every state change (after arrivals at t, and after each
// deadline event) with the current time, active request ids and ALG list.
using TwObserver =
    std::function<void(const Rat&, const std::vector<int>&, const ListState&)>;

TwRun run_tw_impl(const Instance& inst, const TwObserver& observe) {
    if (inst.model != Model::TimeWindows)
        throw std::invalid_argument("time-window algorithm needs a time-window instance");
    inst.validate();

    TwRun run;
    run.serve_position.assign(static_cast<size_t>(inst.m()), 0);
    ListState list(inst.n);
    std::vector<bool> served(static_cast<size_t>(inst.m()) + 1, false);

    // Timeline: sorted distinct arrival and deadline instants.
    std::set<Rat> times;
    for (const auto& r : inst.requests) {
        times.insert(r.arrival);
        times.insert(*r.deadline);
    }

    for (const Rat& t : times) {
        auto collect_active = [&]() {
            std::vector<int> ids;
            for (const auto& r : inst.requests)
                if (!served[static_cast<size_t>(r.k)] && r.arrival <= t) ids.push_back(r.k);
            return ids;
        };
        if (observe) {
            bool arrived_now = false;
            for (const auto& r : inst.requests)
                if (r.arrival == t) arrived_now = true;
            if (arrived_now) observe(t, collect_active(), list);
        }
        // Deadline event: any active request due exactly now?
        std::vector<int> due;
        for (const auto& r : inst.requests)
            if (!served[static_cast<size_t>(r.k)] && r.arrival <= t && *r.deadline == t)
                due.push_back(r.k);
        if (due.empty()) continue;

        // Trigger: farthest due element; lowest request id on it.
        int trig_k = 0, trig_e = 0, trig_pos = 0;
        for (int k : due) {
            int e = inst.requests[static_cast<size_t>(k) - 1].element;
            int p = list.position(e);
            if (p > trig_pos) {
                trig_pos = p;
                trig_e = e;
                trig_k = k;
            } else if (p == trig_pos && k < trig_k) {
                trig_k = k;
            }
        }

        TwEvent ev;
        ev.time = t;
        ev.trigger_k = trig_k;
        ev.trigger_element = trig_e;
        ev.trigger_pos = trig_pos;
        ev.depth = std::min(2 * trig_pos - 1, inst.n);

        run.trace.actions.push_back(make_access(t, Actor::ALG, ev.depth));
        for (const auto& r : inst.requests) {
            if (served[static_cast<size_t>(r.k)] || r.arrival > t) continue;
            if (list.position(r.element) <= ev.depth) {
                served[static_cast<size_t>(r.k)] = true;
                run.serve_position[static_cast<size_t>(r.k) - 1] = list.position(r.element);
                ev.served.push_back(r.k);
            }
        }
        // Every due request sits at a position <= the trigger's, so none can
        // remain unserved past its deadline.
        for (int k : due)
            if (!served[static_cast<size_t>(k)])
                throw std::logic_error("deadline algorithm left a due request unserved");

        ev.swaps = trig_pos - 1;
        for (int p = trig_pos - 1; p >= 1; --p) {
            run.trace.actions.push_back(make_swap(t, Actor::ALG, p));
            list.swap_adjacent(p);
        }
        run.events.push_back(std::move(ev));
        if (observe) observe(t, collect_active(), list);
    }
    return run;
}

} // namespace

TwRun run_tw(const Instance& inst) { return run_tw_impl(inst, nullptr); }

TwRun run_mtf(const Instance& inst) {
    if (inst.model != Model::TimeWindows)
        throw std::invalid_argument("mtf needs a (zero-width) time-window instance");
    inst.validate();
    TwRun run;
    run.serve_position.assign(static_cast<size_t>(inst.m()), 0);
    ListState list(inst.n);

    std::vector<int> order(static_cast<size_t>(inst.m()));
    for (int i = 0; i < inst.m(); ++i) order[static_cast<size_t>(i)] = i + 1;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return inst.requests[static_cast<size_t>(a) - 1].arrival <
               inst.requests[static_cast<size_t>(b) - 1].arrival;
    });

    for (int k : order) {
        const auto& r = inst.requests[static_cast<size_t>(k) - 1];
        int p = list.position(r.element);
        run.serve_position[static_cast<size_t>(k) - 1] = p;
        TwEvent ev;
        ev.time = r.arrival;
        ev.trigger_k = k;
        ev.trigger_element = r.element;
        ev.trigger_pos = p;
        ev.depth = p;
        ev.swaps = p - 1;
        ev.served = {k};
        run.trace.actions.push_back(make_access(r.arrival, Actor::ALG, p));
        for (int q = p - 1; q >= 1; --q) {
            run.trace.actions.push_back(make_swap(r.arrival, Actor::ALG, q));
            list.swap_adjacent(q);
        }
        run.events.push_back(std::move(ev));
    }
    return run;
}

FilterResult filter_non_triggers(const Instance& inst, const TwRun& run_on_full) {
    std::set<int> triggers;
    for (const auto& ev : run_on_full.events) triggers.insert(ev.trigger_k);
    FilterResult out;
    out.inst.n = inst.n;
    out.inst.model = Model::TimeWindows;
    for (const auto& r : inst.requests) {
        if (!triggers.count(r.k)) continue;
        Request nr = r;
        nr.k = static_cast<int>(out.inst.requests.size()) + 1;
        out.inst.requests.push_back(nr);
        out.original_ids.push_back(r.k);
    }
    return out;
}

TwInvariantReport check_tw_invariants(const Instance& filtered_inst) {
    TwInvariantReport rep;
    int cap = 1;
    {
        int n = filtered_inst.n;
        int lg = 0;
        while ((1 << (lg + 1)) <= n) ++lg;
        cap = lg + 1;
    }
    // Position of each active request's element at its arrival.
    std::map<int, int> arrival_pos;

    auto observer = [&](const Rat& t, const std::vector<int>& active, const ListState& list) {
        if (!rep.ok) return;
        std::ostringstream os;
        std::vector<int> positions;
        std::set<int> elements;
        for (int k : active) {
            int e = filtered_inst.requests[static_cast<size_t>(k) - 1].element;
            if (!elements.insert(e).second) {
                os << "two active requests on element " << e << " at t=" << format_rat(t);
                rep.ok = false;
                rep.detail = os.str();
                return;
            }
            positions.push_back(list.position(e));
            auto it = arrival_pos.find(k);
            if (it == arrival_pos.end()) {
                arrival_pos[k] = list.position(e);
            } else if (it->second != list.position(e)) {
                os << "request " << k << " element moved during its window at t=" << format_rat(t);
                rep.ok = false;
                rep.detail = os.str();
                return;
            }
        }
        if (static_cast<int>(positions.size()) > cap) {
            os << positions.size() << " active requests exceed cap " << cap
               << " at t=" << format_rat(t);
            rep.ok = false;
            rep.detail = os.str();
            return;
        }
        std::sort(positions.begin(), positions.end());
        for (size_t i = 0; i + 1 < positions.size(); ++i) {
            if (2 * positions[i] > positions[i + 1]) {
                os << "doubling violated: positions " << positions[i] << "," << positions[i + 1]
                   << " at t=" << format_rat(t);
                rep.ok = false;
                rep.detail = os.str();
                return;
            }
        }
    };
    run_tw_impl(filtered_inst, observer);
    return rep;
}

} // namespace listup
