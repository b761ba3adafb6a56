#include "doctest.h"

#include "listup/generators.hpp"
#include "listup/trace.hpp"

using namespace listup;

namespace {

Instance tw1() {
    Instance inst;
    inst.n = 3;
    inst.model = Model::TimeWindows;
    auto add = [&](int e, const Rat& a, const Rat& q) {
        Request r;
        r.k = inst.m() + 1;
        r.element = e;
        r.arrival = a;
        r.deadline = q;
        inst.requests.push_back(r);
    };
    add(3, Rat(0), Rat(2));
    add(1, Rat(1), Rat(3));
    return inst;
}

} // namespace

TEST_CASE("well-formedness rejects bad traces") {
    ActionTrace t;
    t.actions.push_back(make_access(Rat(1), Actor::OPT, 2));
    t.actions.push_back(make_access(Rat(0), Actor::OPT, 1));
    CHECK_THROWS_AS(t.check_well_formed(3), std::invalid_argument);
    t.actions.clear();
    t.actions.push_back(make_swap(Rat(0), Actor::OPT, 3)); // n-1 = 2 max
    CHECK_THROWS_AS(t.check_well_formed(3), std::invalid_argument);
    t.actions.clear();
    t.actions.push_back(make_access(Rat(0), Actor::OPT, 1));
    t.actions.push_back(make_access(Rat(1), Actor::ALG, 1));
    CHECK_THROWS_AS(t.check_well_formed(3), std::invalid_argument);
}

TEST_CASE("serve_times uses the first covering access after arrival") {
    Instance inst = tw1();
    ActionTrace t;
    t.actions.push_back(make_access(Rat(0), Actor::OPT, 3)); // serves r1, not r2 (arrives at 1)
    t.actions.push_back(make_access(Rat(2), Actor::OPT, 1)); // serves r2
    auto st = serve_times(t, inst);
    CHECK(st[1].value() == 0);
    CHECK(st[2].value() == 2);
    CHECK(!validate_time_windows(t, inst));
    CostBreakdown c = cost(t, inst);
    CHECK(c.access_cost == 4);
    CHECK(c.swap_cost == 0);
    CHECK(c.total() == 4);
}

TEST_CASE("time-window cost throws on invalid traces, naming the request") {
    Instance inst = tw1();
    ActionTrace t; // serves nothing
    CHECK_THROWS_WITH_AS(cost(t, inst), doctest::Contains("request 1"), std::runtime_error);
    t.actions.push_back(make_access(Rat(3), Actor::OPT, 3)); // r1's window ended at 2
    auto v = validate_time_windows(t, inst);
    REQUIRE(v);
    CHECK(v->k == 1);
    CHECK(v->serve_time.value() == 3);
}

TEST_CASE("delay cost: left limit at serve time, limits for the unserved") {
    Instance inst;
    inst.n = 2;
    inst.model = Model::Delays;
    inst.requests.push_back(prize_collecting(1, 2, Rat(0), Rat(1), Rat(5)));
    inst.requests.push_back(prize_collecting(2, 1, Rat(0), Rat(2), Rat(3)));

    ActionTrace t;
    t.actions.push_back(make_access(Rat(1), Actor::OPT, 2)); // serves both at r1's deadline
    CostBreakdown c = cost(t, inst);
    CHECK(c.access_cost == 2);
    CHECK(c.delay_cost == 0); // serving at the jump instant avoids the penalty
    CHECK(c.penalty_unserved == 0);
    CHECK(c.total() == 2);

    ActionTrace empty;
    CostBreakdown ce = cost(empty, inst);
    CHECK(ce.penalty_unserved == 8);
    CHECK(!ce.unbounded);

    // A request with unbounded delay flags the breakdown.
    Instance unb = inst;
    Request r3;
    r3.k = 3;
    r3.element = 1;
    r3.arrival = Rat(0);
    r3.delay = DelayFunction({Breakpoint{Rat(0), Rat(0), Rat(0)}}, Rat(1));
    unb.requests.push_back(r3);
    CHECK(cost(empty, unb).unbounded);
    CHECK(!cost(t, unb).unbounded); // the access serves it at t=1 after delay 1
    CHECK(cost(t, unb).delay_cost == 1);
}

TEST_CASE("swap_script is Kendall-minimal and exact") {
    ListState from = ListState::from_order({1, 2, 3, 4});
    ListState to = ListState::from_order({3, 1, 4, 2});
    auto script = swap_script(from, to, Rat(0), Actor::OPT);
    CHECK(script.size() == static_cast<size_t>(from.inversions_against(to)));
    ListState work = from;
    for (const auto& a : script) work.swap_adjacent(a.arg);
    CHECK(work == to);
}

TEST_CASE("normalization serves at deadlines and never costs more") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        Instance inst = random_tw_instance(rng, 2, 5, 6);
        ActionTrace t = random_valid_tw_trace(rng, inst);
        ActionTrace norm = normalize_serve_at_deadline(t, inst);
        CHECK(!validate_time_windows(norm, inst));
        CHECK(cost(norm, inst).total() <= cost(t, inst).total());
        // Every access sits at some request's deadline.
        for (const auto& a : norm.actions) {
            if (a.kind != Action::Kind::Access) continue;
            bool at_deadline = false;
            for (const auto& r : inst.requests)
                if (*r.deadline == a.time) at_deadline = true;
            CHECK(at_deadline);
        }
        // Idempotent on its own output.
        ActionTrace norm2 = normalize_serve_at_deadline(norm, inst);
        CHECK(cost(norm2, inst).total() == cost(norm, inst).total());
    }
}

TEST_CASE("trace JSONL round-trips") {
    ActionTrace t;
    t.actions.push_back(make_swap(Rat(1) / 2, Actor::OPT, 1));
    t.actions.push_back(make_access(Rat(3), Actor::OPT, 2));
    ActionTrace back = trace_from_jsonl(trace_to_jsonl(t));
    REQUIRE(back.actions.size() == 2);
    CHECK(back.actions[0] == t.actions[0]);
    CHECK(back.actions[1] == t.actions[1]);
    CHECK_THROWS_AS(trace_from_jsonl("{\"t\":\"1\"}"), std::invalid_argument);
}

TEST_CASE("cost CSV rendering") {
    CostBreakdown c;
    c.access_cost = 3;
    c.swap_cost = 1;
    c.delay_cost = Rat(1) / 2;
    c.penalty_unserved = 0;
    CHECK(cost_csv_header() == "instance_id,actor,access,swap,delay,penalty,total");
    CHECK(cost_csv_row("i1", Actor::ALG, c) == "i1,ALG,3,1,1/2,0,9/2");
    c.unbounded = true;
    CHECK(cost_csv_row("i1", Actor::OPT, c) == "i1,OPT,3,1,1/2,inf,inf");
}
