#pragma once

#include "listup/instance.hpp"
#include "listup/rational.hpp"

#include <string>

namespace listup {

// The nine adversarial constructions against the failed element-counter
// policies, as prize-collecting delay instances.
// Guards: 0 < eps < 1; n >= 2; A4..A9 need n a perfect square, A4/A5 (and
// their twins A6/A7, which reuse the same instances) additionally n >= 25 so
// the penalty sqrt(n) - 4 is positive.
Instance generate_counterexample(int which, int n, const Rat& eps);

struct CounterexampleReport {
    std::string algorithm; // "a1".."a9"
    int n = 0;
    Rat eps;
    Rat alg_cost;       // simulated raw cost: access + swap + delay/penalties
    Rat adversary_cost; // simulated cost of the scripted adversary trace
    Rat ratio() const { return alg_cost / adversary_cost; }
    std::string expected_order; // "n" or "sqrt_n"
};

CounterexampleReport measure_counterexample(int which, int n, const Rat& eps);

std::string counterexample_csv_header();
std::string counterexample_csv_row(const CounterexampleReport& r);

} // namespace listup
