#include "listup/counterexamples.hpp"

#include "listup/engine_delay.hpp"
#include "listup/offline.hpp"
#include "listup/trace.hpp"

#include <sstream>
#include <stdexcept>

namespace listup {

namespace {

long isqrt_exact(int n) {
    long r = 0;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r != static_cast<long>(n))
        throw std::invalid_argument("construction needs n to be a perfect square");
    return r;
}

} // namespace

Instance generate_counterexample(int which, int n, const Rat& eps) {
    if (which < 1 || which > 9) throw std::invalid_argument("policy index must be 1..9");
    if (n < 2) throw std::invalid_argument("construction needs n >= 2");
    if (eps <= 0 || eps >= 1) throw std::invalid_argument("construction needs 0 < eps < 1");

    Instance inst;
    inst.n = n;
    inst.model = Model::Delays;
    int k = 0;

    switch (which) {
    case 1: {
        // One zero-width request per element; the penalty l - eps stays just
        // under every element-counter threshold, so the policy never acts.
        for (int l = 1; l <= n; ++l)
            inst.requests.push_back(prize_collecting(++k, l, Rat(0), Rat(0), Rat(l) - eps));
        break;
    }
    case 2:
    case 3: {
        // A long-lived front-element request plus alternating zero-width
        // interior requests and front-element refills drive quadratic churn.
        inst.requests.push_back(prize_collecting(++k, 1, Rat(0), Rat(2 * n), Rat(1) - eps));
        for (int l = 1; l <= n - 1; ++l) {
            inst.requests.push_back(
                prize_collecting(++k, l + 1, Rat(2 * l), Rat(2 * l), Rat(1) + eps));
            Rat refill = which == 2 ? Rat(1) : Rat(l + 1) - eps;
            inst.requests.push_back(
                prize_collecting(++k, 1, Rat(2 * l + 1), Rat(2 * n), refill));
        }
        break;
    }
    case 4:
    case 6: {
        long s = isqrt_exact(n);
        if (n < 25) throw std::invalid_argument("construction needs n >= 25");
        // Zombie mass on the tail elements at time 0, then one expensive
        // zero-width request per head element, farthest first.
        for (long j = 1; j <= s; ++j)
            inst.requests.push_back(prize_collecting(++k, static_cast<int>(n - s + j), Rat(0),
                                                     Rat(0), Rat(s) - 4));
        for (long l = n - s; l >= 1; --l)
            inst.requests.push_back(prize_collecting(++k, static_cast<int>(l), Rat(n - l),
                                                     Rat(n - l), 4 * Rat(s)));
        break;
    }
    case 5:
    case 7: {
        long s = isqrt_exact(n);
        if (n < 25) throw std::invalid_argument("construction needs n >= 25");
        // Same head requests, but the tail mass is re-issued in every wave so
        // zeroing all prefix counters does not help.
        for (long l = n - s; l >= 1; --l) {
            inst.requests.push_back(prize_collecting(++k, static_cast<int>(l), Rat(n - l),
                                                     Rat(n - l), 4 * Rat(s)));
            for (long j = 1; j <= s; ++j)
                inst.requests.push_back(prize_collecting(++k, static_cast<int>(n - s + j),
                                                         Rat(n - l), Rat(n - l), Rat(s) - 4));
        }
        break;
    }
    case 8:
    case 9: {
        long s = isqrt_exact(n);
        // Each wave pairs one increasingly expensive request far in the list
        // with cheap requests on the first s-1 elements.
        for (long l = s; l <= n; ++l) {
            inst.requests.push_back(prize_collecting(++k, static_cast<int>(l), Rat(l), Rat(l),
                                                     Rat(l) / Rat(s)));
            Rat cheap = which == 8 ? Rat(1) / Rat(s) : Rat(l) / Rat(s);
            for (long j = 1; j <= s - 1; ++j)
                inst.requests.push_back(
                    prize_collecting(++k, static_cast<int>(j), Rat(l), Rat(l), cheap));
        }
        break;
    }
    default:
        break;
    }
    inst.validate();
    return inst;
}

CounterexampleReport measure_counterexample(int which, int n, const Rat& eps) {
    Instance inst = generate_counterexample(which, n, eps);
    FailedRun alg = run_failed_policy(which, inst);
    CostBreakdown alg_cost = cost(alg.trace, inst);
    if (alg_cost.unbounded) throw std::runtime_error("policy run left unbounded delay");

    ScriptedAdversary adv = scripted_adversary(which, n, eps);
    CostBreakdown adv_cost = cost(adv.trace, inst);
    if (adv_cost.unbounded) throw std::runtime_error("adversary trace left unbounded delay");
    if (adv_cost.total() != adv.closed_form_cost)
        throw std::logic_error("adversary cost " + format_rat(adv_cost.total()) +
                               " differs from closed form " +
                               format_rat(adv.closed_form_cost));

    CounterexampleReport rep;
    rep.algorithm = "a" + std::to_string(which);
    rep.n = n;
    rep.eps = eps;
    rep.alg_cost = alg_cost.total();
    rep.adversary_cost = adv_cost.total();
    rep.expected_order = which <= 3 ? "n" : "sqrt_n";
    return rep;
}

std::string counterexample_csv_header() {
    return "algorithm,n,eps,alg_cost,adversary_cost,ratio,expected_order";
}

std::string counterexample_csv_row(const CounterexampleReport& r) {
    std::ostringstream os;
    os << r.algorithm << ',' << r.n << ',' << format_rat(r.eps) << ','
       << format_rat(r.alg_cost) << ',' << format_rat(r.adversary_cost) << ','
       << format_rat(r.ratio()) << ',' << r.expected_order;
    return os.str();
}

} // namespace listup
