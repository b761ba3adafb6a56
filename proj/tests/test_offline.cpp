#include "doctest.h"

#include "listup/counterexamples.hpp"
#include "listup/generators.hpp"
#include "listup/offline.hpp"

using namespace listup;

namespace {

Instance tw_instance(int n, std::vector<std::tuple<int, Rat, Rat>> reqs) {
    Instance inst;
    inst.n = n;
    inst.model = Model::TimeWindows;
    for (auto& [e, a, q] : reqs) {
        Request r;
        r.k = inst.m() + 1;
        r.element = e;
        r.arrival = a;
        r.deadline = q;
        inst.requests.push_back(r);
    }
    inst.validate();
    return inst;
}

} // namespace

TEST_CASE("time-window optimum on hand instances") {
    // Single request to c2: an access of depth 2 is unavoidable and swaps
    // cannot help.
    Instance one = tw_instance(2, {{2, Rat(0), Rat(1)}});
    OptResult r1 = brute_force_opt_tw(one);
    CHECK(r1.cost == 2);
    CHECK(cost(r1.trace, one).total() == 2);

    // c1 then c2 with disjoint unit windows: either two accesses (1 + 2) or a
    // swap plus two depth-1 accesses (also 3).
    Instance two = tw_instance(2, {{1, Rat(0), Rat(0)}, {2, Rat(1), Rat(1)}});
    OptResult r2 = brute_force_opt_tw(two);
    CHECK(r2.cost == 3);
    CHECK(!validate_time_windows(r2.trace, two));

    // Overlapping windows pooled into one deep access.
    Instance pooled = tw_instance(3, {{3, Rat(0), Rat(2)}, {2, Rat(1), Rat(2)}, {1, Rat(0), Rat(2)}});
    CHECK(brute_force_opt_tw(pooled).cost == 3);
}

TEST_CASE("time-window optimum never loses to random valid traces") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 80; ++i) {
        Instance inst = random_tw_instance(rng, 2, 4, 5);
        OptResult opt = brute_force_opt_tw(inst);
        ActionTrace t = random_valid_tw_trace(rng, inst);
        CHECK(opt.cost <= cost(t, inst).total());
        CHECK(cost(opt.trace, inst).total() == opt.cost);
    }
}

TEST_CASE("delay optimum weighs service against penalties") {
    Instance inst;
    inst.n = 2;
    inst.model = Model::Delays;
    inst.requests.push_back(prize_collecting(1, 2, Rat(0), Rat(1), Rat(3)));
    CHECK(brute_force_opt_delay(inst).cost == 2); // serve c2 rather than pay 3

    inst.requests[0] = prize_collecting(1, 2, Rat(0), Rat(1), Rat(1));
    OptResult cheap = brute_force_opt_delay(inst);
    CHECK(cheap.cost == 1); // paying the penalty beats a depth-2 access
    CHECK(cheap.trace.actions.empty());

    // Unbounded delay forces service.
    inst.requests[0] = Request{1, 2, Rat(0), std::nullopt,
                               DelayFunction({Breakpoint{Rat(0), Rat(0), Rat(0)}}, Rat(1))};
    OptResult forced = brute_force_opt_delay(inst);
    CHECK(forced.cost == 2); // serve immediately, zero accrued delay
}

TEST_CASE("search guards reject desk-scale overruns unless unsafe") {
    Instance big = tw_instance(6, {{1, Rat(0), Rat(0)}});
    CHECK_THROWS_AS(brute_force_opt_tw(big), std::invalid_argument);

    Instance many;
    many.n = 2;
    many.model = Model::Delays;
    for (int k = 1; k <= 6; ++k)
        many.requests.push_back(prize_collecting(k, 1, Rat(k), Rat(k), Rat(1)));
    CHECK_THROWS_AS(brute_force_opt_delay(many), std::invalid_argument);
    CHECK_NOTHROW(brute_force_opt_delay(many, true));
}

TEST_CASE("scripted adversary traces achieve their closed-form costs") {
    struct Case { int which; int n; };
    // n must be a perfect square >= 25 for variants 4..7, a square for 8..9.
    std::vector<Case> cases = {{1, 5}, {2, 4}, {3, 4}, {4, 25}, {5, 25},
                               {6, 25}, {7, 25}, {8, 9}, {9, 9}};
    for (auto [which, n] : cases) {
        CAPTURE(which);
        Instance inst = generate_counterexample(which, n, Rat(1) / 2);
        ScriptedAdversary adv = scripted_adversary(which, n, Rat(1) / 2);
        CHECK(cost(adv.trace, inst).total() == adv.closed_form_cost);
    }
    // Spot-check two closed forms directly.
    CHECK(scripted_adversary(1, 5, Rat(1) / 2).closed_form_cost == 5);
    // Variant 5 at n=25, sqrt(n)=5: 6*5*(25-5) = 600.
    CHECK(scripted_adversary(5, 25, Rat(1) / 2).closed_form_cost == 600);
}
