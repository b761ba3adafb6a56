#include "listup/generators.hpp"

#include <algorithm>
#include <set>

namespace listup {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

// Small-denominator rational in [lo, hi] with denominator 1, 2 or 4.
Rat small_rat(std::mt19937_64& rng, int lo_quarters, int hi_quarters) {
    return Rat(uniform_int(rng, lo_quarters, hi_quarters)) / 4;
}

} // namespace

Instance random_tw_instance(std::mt19937_64& rng, int n_min, int n_max, int m_max) {
    Instance inst;
    inst.n = uniform_int(rng, n_min, n_max);
    inst.model = Model::TimeWindows;
    int m = uniform_int(rng, 1, m_max);
    struct Raw {
        int element;
        Rat a, q;
    };
    std::vector<Raw> raw;
    for (int i = 0; i < m; ++i) {
        Raw r;
        r.element = uniform_int(rng, 1, inst.n);
        r.a = small_rat(rng, 0, 40);
        r.q = r.a + small_rat(rng, 0, 24);
        raw.push_back(r);
    }
    std::stable_sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) { return x.a < y.a; });
    for (int i = 0; i < m; ++i) {
        Request r;
        r.k = i + 1;
        r.element = raw[static_cast<size_t>(i)].element;
        r.arrival = raw[static_cast<size_t>(i)].a;
        r.deadline = raw[static_cast<size_t>(i)].q;
        inst.requests.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

Instance random_classical_instance(std::mt19937_64& rng, int n_max, int m_max) {
    Instance inst;
    inst.n = uniform_int(rng, 2, n_max);
    inst.model = Model::TimeWindows;
    int m = uniform_int(rng, 1, m_max);
    for (int i = 0; i < m; ++i) {
        Request r;
        r.k = i + 1;
        r.element = uniform_int(rng, 1, inst.n);
        r.arrival = Rat(i + 1); // strictly increasing, one request per instant
        r.deadline = r.arrival;
        inst.requests.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

Instance random_delay_instance(std::mt19937_64& rng, int n_max, int m_max,
                               int max_breakpoints) {
    Instance inst;
    inst.n = uniform_int(rng, 2, n_max);
    inst.model = Model::Delays;
    int m = uniform_int(rng, 1, m_max);
    int budget = max_breakpoints;
    std::set<Rat> used_jump_times; // jump instants stay distinct across requests

    struct Raw {
        Rat a;
        int element;
        DelayFunction f;
    };
    std::vector<Raw> raw;
    for (int i = 0; i < m; ++i) {
        Raw r;
        r.element = uniform_int(rng, 1, inst.n);
        r.a = small_rat(rng, 0, 24);
        int want = uniform_int(rng, 0, std::min(2, budget));
        std::vector<Breakpoint> bps;
        Rat t = r.a, prev_val(0);
        for (int b = 0; b < want; ++b) {
            t += small_rat(rng, b == 0 ? 0 : 1, 12);
            Breakpoint bp;
            bp.t = t;
            bp.v = b == 0 ? Rat(0) : prev_val + small_rat(rng, 0, 8); // ramp since last point
            // Jumps are small and never simultaneous across requests.
            int jq = uniform_int(rng, 0, 4); // quarters: jump in [0, 1]
            if (jq > 0 && used_jump_times.count(t)) jq = 0;
            bp.jump = Rat(jq) / 4 * 2; // up to 2 in halves
            if (bp.jump > 0) used_jump_times.insert(t);
            prev_val = bp.v + bp.jump;
            bps.push_back(bp);
        }
        budget -= static_cast<int>(bps.size());
        r.f = DelayFunction(std::move(bps), Rat(0));
        raw.push_back(std::move(r));
    }
    std::stable_sort(raw.begin(), raw.end(), [](const Raw& x, const Raw& y) { return x.a < y.a; });
    for (int i = 0; i < m; ++i) {
        Request r;
        r.k = i + 1;
        r.element = raw[static_cast<size_t>(i)].element;
        r.arrival = raw[static_cast<size_t>(i)].a;
        r.delay = raw[static_cast<size_t>(i)].f;
        inst.requests.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

ActionTrace random_valid_tw_trace(std::mt19937_64& rng, const Instance& inst) {
    if (inst.model != Model::TimeWindows)
        throw std::invalid_argument("trace generator needs a time-window instance");
    ActionTrace trace;
    ListState list(inst.n);
    std::vector<bool> served(static_cast<size_t>(inst.m()), false);
    std::set<Rat> deadlines;
    for (const auto& r : inst.requests) deadlines.insert(*r.deadline);
    for (const Rat& t : deadlines) {
        // A few random swaps first.
        if (inst.n > 1) {
            int s = uniform_int(rng, 0, 2);
            for (int i = 0; i < s; ++i) {
                int p = uniform_int(rng, 1, inst.n - 1);
                trace.actions.push_back(make_swap(t, Actor::OPT, p));
                list.swap_adjacent(p);
            }
        }
        // Access deep enough for every request whose window closes now.
        int need = 0;
        for (const auto& r : inst.requests)
            if (!served[static_cast<size_t>(r.k) - 1] && *r.deadline == t)
                need = std::max(need, list.position(r.element));
        if (need == 0) continue;
        int depth = std::min(inst.n, need + uniform_int(rng, 0, 1));
        trace.actions.push_back(make_access(t, Actor::OPT, depth));
        for (const auto& r : inst.requests)
            if (!served[static_cast<size_t>(r.k) - 1] && r.arrival <= t && t <= *r.deadline &&
                list.position(r.element) <= depth)
                served[static_cast<size_t>(r.k) - 1] = true;
    }
    return trace;
}

} // namespace listup
