#include "listup/offline.hpp"

#include "listup/list_state.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

namespace listup {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

std::vector<std::vector<int>> all_permutations(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 1);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int kendall(const std::vector<int>& a, const std::vector<int>& b) {
    // Number of element pairs ordered differently: the minimum adjacent-swap
    // cost to go from order a to order b.
    int n = static_cast<int>(a.size());
    std::vector<int> pos_b(static_cast<size_t>(n) + 1);
    for (int i = 0; i < n; ++i) pos_b[static_cast<size_t>(b[static_cast<size_t>(i)])] = i;
    int inv = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (pos_b[static_cast<size_t>(a[static_cast<size_t>(i)])] >
                pos_b[static_cast<size_t>(a[static_cast<size_t>(j)])])
                ++inv;
    return inv;
}

struct Parent {
    int prev_perm = -1;
    unsigned prev_mask = 0;
    int depth = 0;
};

// Emit swaps turning `from` into `to` (bubble; Kendall-minimal), then an
// access of the given depth, all at time t.
void emit_step(ActionTrace& trace, const Rat& t, const std::vector<int>& from,
               const std::vector<int>& to, int depth) {
    ListState cur = ListState::from_order(from);
    ListState target = ListState::from_order(to);
    for (const Action& a : swap_script(cur, target, t, Actor::OPT)) trace.actions.push_back(a);
    if (depth > 0) trace.actions.push_back(make_access(t, Actor::OPT, depth));
}

} // namespace

OptResult brute_force_opt_tw(const Instance& inst, bool unsafe) {
    if (inst.model != Model::TimeWindows)
        throw std::invalid_argument("time-window optimum needs a time-window instance");
    inst.validate();
    const int n = inst.n;
    const int m = inst.m();
    if (!unsafe && (n > 5 || m > 6))
        throw std::invalid_argument(
            "exhaustive search guarded to n <= 5 and m <= 6 (pass unsafe to override)");
    if (m > 20) throw std::invalid_argument("served-set mask limited to 20 requests");

    std::vector<Rat> times;
    for (const auto& r : inst.requests) times.push_back(*r.deadline);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    const int T = static_cast<int>(times.size());

    const auto perms = all_permutations(n);
    const int P = static_cast<int>(perms.size());
    std::vector<std::vector<int>> kd(static_cast<size_t>(P), std::vector<int>(static_cast<size_t>(P)));
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) kd[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            kendall(perms[static_cast<size_t>(i)], perms[static_cast<size_t>(j)]);
    // Position of each element under each permutation.
    std::vector<std::vector<int>> pos(static_cast<size_t>(P),
                                      std::vector<int>(static_cast<size_t>(n) + 1));
    for (int i = 0; i < P; ++i)
        for (int p = 1; p <= n; ++p)
            pos[static_cast<size_t>(i)][static_cast<size_t>(
                perms[static_cast<size_t>(i)][static_cast<size_t>(p - 1)])] = p;

    int identity = 0; // all_permutations starts from the sorted order

    const unsigned full = (1u << m) - 1u;
    const size_t layer = static_cast<size_t>(P) << m;
    auto idx = [m](int perm, unsigned mask) {
        return (static_cast<size_t>(perm) << m) | mask;
    };
    std::vector<std::int64_t> cur(layer, kInf), nxt(layer);
    std::vector<std::vector<Parent>> parents(static_cast<size_t>(T),
                                             std::vector<Parent>(layer));
    cur[idx(identity, 0)] = 0;

    for (int ti = 0; ti < T; ++ti) {
        const Rat& t = times[static_cast<size_t>(ti)];
        std::fill(nxt.begin(), nxt.end(), kInf);
        // Requests whose window closes now must be covered after this step.
        unsigned due = 0, servable = 0;
        for (const auto& r : inst.requests) {
            if (*r.deadline == t) due |= 1u << (r.k - 1);
            if (r.arrival <= t && *r.deadline >= t) servable |= 1u << (r.k - 1);
        }
        for (int pp = 0; pp < P; ++pp) {
            for (unsigned mask = 0; mask <= full; ++mask) {
                std::int64_t base = cur[idx(pp, mask)];
                if (base >= kInf) continue;
                for (int np = 0; np < P; ++np) {
                    std::int64_t moved =
                        base + kd[static_cast<size_t>(pp)][static_cast<size_t>(np)];
                    for (int d = n; d >= 0; --d) {
                        unsigned nm = mask;
                        if (d > 0) {
                            for (const auto& r : inst.requests) {
                                unsigned bit = 1u << (r.k - 1);
                                if ((servable & bit) && !(mask & bit) &&
                                    pos[static_cast<size_t>(np)][static_cast<size_t>(r.element)] <= d)
                                    nm |= bit;
                            }
                        }
                        if ((nm & due) != due) continue;
                        std::int64_t c = moved + d;
                        size_t id = idx(np, nm);
                        if (c < nxt[id]) {
                            nxt[id] = c;
                            parents[static_cast<size_t>(ti)][id] = Parent{pp, mask, d};
                        }
                    }
                }
            }
        }
        cur.swap(nxt);
    }

    std::int64_t best = kInf;
    int best_perm = -1;
    for (int pp = 0; pp < P; ++pp)
        if (cur[idx(pp, full)] < best) {
            best = cur[idx(pp, full)];
            best_perm = pp;
        }
    if (best >= kInf) throw std::runtime_error("no feasible schedule serves every window");

    // Walk parents back, then emit forward.
    std::vector<Parent> steps(static_cast<size_t>(T));
    int perm_i = best_perm;
    unsigned mask_i = full;
    for (int ti = T - 1; ti >= 0; --ti) {
        Parent par = parents[static_cast<size_t>(ti)][idx(perm_i, mask_i)];
        steps[static_cast<size_t>(ti)] = par;
        steps[static_cast<size_t>(ti)].depth = par.depth;
        int next_perm = perm_i;
        perm_i = par.prev_perm;
        mask_i = par.prev_mask;
        steps[static_cast<size_t>(ti)].prev_perm = next_perm; // reuse: perm reached at t_i
    }

    OptResult res;
    res.cost = Rat(best);
    int from = identity;
    for (int ti = 0; ti < T; ++ti) {
        int to = steps[static_cast<size_t>(ti)].prev_perm;
        emit_step(res.trace, times[static_cast<size_t>(ti)], perms[static_cast<size_t>(from)],
                  perms[static_cast<size_t>(to)], steps[static_cast<size_t>(ti)].depth);
        from = to;
    }
    return res;
}

OptResult brute_force_opt_delay(const Instance& inst, bool unsafe) {
    if (inst.model != Model::Delays)
        throw std::invalid_argument("delay optimum needs a delay instance");
    inst.validate();
    const int n = inst.n;
    const int m = inst.m();
    size_t total_bps = 0;
    for (const auto& r : inst.requests) total_bps += r.delay->breakpoints().size();
    if (!unsafe && (n > 4 || m > 5 || total_bps > 8))
        throw std::invalid_argument(
            "exhaustive search guarded to n <= 4, m <= 5, 8 breakpoints (pass unsafe to "
            "override)");
    if (m > 20) throw std::invalid_argument("served-set mask limited to 20 requests");

    std::set<Rat> cand;
    for (const auto& r : inst.requests) {
        cand.insert(r.arrival);
        for (const auto& b : r.delay->breakpoints()) cand.insert(b.t);
    }
    std::vector<Rat> times(cand.begin(), cand.end());
    const int T = static_cast<int>(times.size());

    const auto perms = all_permutations(n);
    const int P = static_cast<int>(perms.size());
    std::vector<std::vector<int>> kd(static_cast<size_t>(P),
                                     std::vector<int>(static_cast<size_t>(P)));
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j) kd[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            kendall(perms[static_cast<size_t>(i)], perms[static_cast<size_t>(j)]);
    std::vector<std::vector<int>> pos(static_cast<size_t>(P),
                                      std::vector<int>(static_cast<size_t>(n) + 1));
    for (int i = 0; i < P; ++i)
        for (int p = 1; p <= n; ++p)
            pos[static_cast<size_t>(i)][static_cast<size_t>(
                perms[static_cast<size_t>(i)][static_cast<size_t>(p - 1)])] = p;

    const unsigned full = (1u << m) - 1u;
    const size_t layer = static_cast<size_t>(P) << m;
    auto idx = [m](int perm, unsigned mask) {
        return (static_cast<size_t>(perm) << m) | mask;
    };
    const Rat INF(-1); // sentinel: negative marks "unreachable"
    auto unreachable = [](const Rat& v) { return v < 0; };
    std::vector<Rat> cur(layer, INF), nxt(layer);
    std::vector<std::vector<Parent>> parents(static_cast<size_t>(T),
                                             std::vector<Parent>(layer));
    cur[idx(0, 0)] = Rat(0);

    for (int ti = 0; ti < T; ++ti) {
        const Rat& t = times[static_cast<size_t>(ti)];
        std::fill(nxt.begin(), nxt.end(), INF);
        std::vector<bool> arrived(static_cast<size_t>(m) + 1, false);
        std::vector<Rat> pay(static_cast<size_t>(m) + 1, Rat(0));
        for (const auto& r : inst.requests) {
            arrived[static_cast<size_t>(r.k)] = r.arrival <= t;
            pay[static_cast<size_t>(r.k)] = r.delay->left_limit_at(t);
        }
        for (int pp = 0; pp < P; ++pp) {
            for (unsigned mask = 0; mask <= full; ++mask) {
                const Rat& base = cur[idx(pp, mask)];
                if (unreachable(base)) continue;
                for (int np = 0; np < P; ++np) {
                    Rat moved = base + kd[static_cast<size_t>(pp)][static_cast<size_t>(np)];
                    for (int d = n; d >= 0; --d) {
                        unsigned nm = mask;
                        Rat c = moved + d;
                        if (d > 0) {
                            for (const auto& r : inst.requests) {
                                unsigned bit = 1u << (r.k - 1);
                                if (arrived[static_cast<size_t>(r.k)] && !(mask & bit) &&
                                    pos[static_cast<size_t>(np)][static_cast<size_t>(r.element)] <=
                                        d) {
                                    nm |= bit;
                                    c += pay[static_cast<size_t>(r.k)];
                                }
                            }
                        }
                        size_t id = idx(np, nm);
                        if (unreachable(nxt[id]) || c < nxt[id]) {
                            nxt[id] = c;
                            parents[static_cast<size_t>(ti)][id] = Parent{pp, mask, d};
                        }
                    }
                }
            }
        }
        cur.swap(nxt);
    }

    // Close out: unserved requests pay their limits; unbounded limits make the
    // branch infeasible.
    Rat best(-1);
    int best_perm = -1;
    unsigned best_mask = 0;
    for (int pp = 0; pp < P; ++pp) {
        for (unsigned mask = 0; mask <= full; ++mask) {
            const Rat& base = cur[idx(pp, mask)];
            if (unreachable(base)) continue;
            Rat c = base;
            bool ok = true;
            for (const auto& r : inst.requests) {
                if (mask & (1u << (r.k - 1))) continue;
                auto lim = r.delay->limit();
                if (!lim) {
                    ok = false;
                    break;
                }
                c += *lim;
            }
            if (!ok) continue;
            if (unreachable(best) || c < best) {
                best = c;
                best_perm = pp;
                best_mask = mask;
            }
        }
    }
    if (unreachable(best))
        throw std::runtime_error("no feasible schedule serves every unbounded-delay request");

    std::vector<Parent> steps(static_cast<size_t>(T));
    int perm_i = best_perm;
    unsigned mask_i = best_mask;
    for (int ti = T - 1; ti >= 0; --ti) {
        Parent par = parents[static_cast<size_t>(ti)][idx(perm_i, mask_i)];
        steps[static_cast<size_t>(ti)] = par;
        int reached = perm_i;
        perm_i = par.prev_perm;
        mask_i = par.prev_mask;
        steps[static_cast<size_t>(ti)].prev_perm = reached;
    }

    OptResult res;
    res.cost = best;
    int from = 0;
    for (int ti = 0; ti < T; ++ti) {
        int to = steps[static_cast<size_t>(ti)].prev_perm;
        emit_step(res.trace, times[static_cast<size_t>(ti)], perms[static_cast<size_t>(from)],
                  perms[static_cast<size_t>(to)], steps[static_cast<size_t>(ti)].depth);
        from = to;
    }
    return res;
}

namespace {

long isqrt_exact(int n) {
    long r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r != static_cast<long>(n))
        throw std::invalid_argument("construction needs n to be a perfect square");
    return r;
}

} // namespace

ScriptedAdversary scripted_adversary(int which, int n, const Rat& eps) {
    if (which < 1 || which > 9) throw std::invalid_argument("adversary index must be 1..9");
    if (n < 2) throw std::invalid_argument("adversary needs n >= 2");
    ScriptedAdversary adv;
    switch (which) {
    case 1: {
        // Serve every request together at time 0 with a full-list access.
        adv.trace.actions.push_back(make_access(Rat(0), Actor::OPT, n));
        adv.closed_form_cost = Rat(n);
        break;
    }
    case 2:
    case 3: {
        // Serve all front-element requests together at their common deadline;
        // forfeit the n-1 interior requests.
        adv.trace.actions.push_back(make_access(Rat(2 * n), Actor::OPT, 1));
        adv.closed_form_cost = Rat(1) + Rat(n - 1) * (Rat(1) + eps);
        break;
    }
    case 4:
    case 6: {
        // Do nothing; pay every penalty.
        long s = isqrt_exact(n);
        adv.closed_form_cost = Rat(s) * (Rat(s) - 4) + Rat(n - s) * (4 * Rat(s));
        break;
    }
    case 5:
    case 7: {
        // Move the last sqrt(n) elements to the front, then serve each wave of
        // tail-element requests at its deadline; forfeit the head requests.
        long s = isqrt_exact(n);
        for (long j = 1; j <= s; ++j) {
            // Element c_{n-s+j} bubbles from position n-s+j up to position j.
            for (long p = n - s + j - 1; p >= j; --p)
                adv.trace.actions.push_back(make_swap(Rat(0), Actor::OPT, static_cast<int>(p)));
        }
        for (long l = n - s; l >= 1; --l)
            adv.trace.actions.push_back(
                make_access(Rat(n - l), Actor::OPT, static_cast<int>(s)));
        adv.closed_form_cost = 6 * Rat(s) * Rat(n - s);
        break;
    }
    case 8:
    case 9: {
        // Serve each wave's cheap head requests at their deadline; forfeit the
        // expensive requests.
        long s = isqrt_exact(n);
        for (long l = s; l <= n; ++l)
            adv.trace.actions.push_back(
                make_access(Rat(l), Actor::OPT, static_cast<int>(s - 1)));
        Rat access = Rat(n - s + 1) * Rat(s - 1);
        Rat sum_l = Rat(n) * Rat(n + 1) / 2 - Rat(s - 1) * Rat(s) / 2; // sum of l over s..n
        adv.closed_form_cost = access + sum_l / Rat(s);
        break;
    }
    default:
        break;
    }
    (void)eps;
    return adv;
}

} // namespace listup
