// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is property-based over a seeded random corpus or a
// frozen hand value; all arithmetic is exact.

#include "listup/counterexamples.hpp"
#include "listup/engine_delay.hpp"
#include "listup/generators.hpp"
#include "listup/instance.hpp"
#include "listup/offline.hpp"
#include "listup/policies_tw.hpp"
#include "listup/rational.hpp"
#include "listup/trace.hpp"
#include "listup/verify.hpp"

#include <chrono>
#include <cstdio>
#include <exception>
#include <random>
#include <string>
#include <vector>

using namespace listup;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok, const std::string& detail,
            double seconds) {
    std::printf("%s  %d. %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(), seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++g_failures;
}

template <typename Fn>
void criterion(int number, const std::string& name, Fn body) {
    auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(number, name, ok, detail, seconds);
}

std::vector<Instance> tw_corpus(std::uint64_t seed, int count, int n_min, int n_max, int m_max) {
    std::mt19937_64 rng(seed);
    std::vector<Instance> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back(random_tw_instance(rng, n_min, n_max, m_max));
    return out;
}

int position_of(const std::vector<int>& order, int element) {
    for (int i = 0; i < static_cast<int>(order.size()); ++i)
        if (order[i] == element) return i + 1;
    return -1;
}

} // namespace

int main() {
    const std::vector<Instance> tw_small = tw_corpus(20260826, 500, 2, 5, 6);

    criterion(1, "deadline algorithm is 24-competitive vs brute-force OPT (500 instances)",
              [&](std::string& detail) {
                  for (std::size_t i = 0; i < tw_small.size(); ++i) {
                      const Instance& inst = tw_small[i];
                      Rat alg = cost(run_tw(inst).trace, inst).total();
                      Rat opt = brute_force_opt_tw(inst).cost;
                      if (alg > 24 * opt) {
                          detail = "instance " + std::to_string(i) + ": alg " + format_rat(alg) +
                                   " > 24 * " + format_rat(opt);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(2, "time-window potential ledger: every row within its per-type bound",
              [&](std::string& detail) {
                  for (std::size_t i = 0; i < tw_small.size(); ++i) {
                      FilterResult filtered =
                          filter_non_triggers(tw_small[i], run_tw(tw_small[i]));
                      const Instance& inst = filtered.inst;
                      TwRun run = run_tw(inst);
                      ActionTrace adv =
                          normalize_serve_at_deadline(brute_force_opt_tw(inst).trace, inst);
                      PotentialLedger ledger = verify_tw(inst, run, adv);
                      if (!ledger.all_ok) {
                          detail = "instance " + std::to_string(i) + ": " +
                                   ledger.first_violation;
                          return false;
                      }
                  }
                  return true;
              });

    criterion(3, "delay algorithm: 6*sum(d_k) <= 336*OPT and exact per-event bounds (300 instances)",
              [&](std::string& detail) {
                  std::mt19937_64 rng(20260827);
                  for (int i = 0; i < 300; ++i) {
                      Instance inst = random_delay_instance(rng, 4, 5, 8);
                      OptResult opt = brute_force_opt_delay(inst);
                      Alg2Run run = run_algorithm2(inst, &opt.trace);
                      Rat sum_d(0);
                      for (const Rat& d : run.d_k) sum_d += d;
                      if (6 * sum_d > 336 * opt.cost) {
                          detail = "instance " + std::to_string(i) + ": 6*sum d_k " +
                                   format_rat(6 * sum_d) + " > 336 * " + format_rat(opt.cost);
                          return false;
                      }
                      PotentialLedger ledger = verify_delay(inst, run, opt.trace);
                      if (!ledger.all_ok) {
                          detail = "instance " + std::to_string(i) + ": " +
                                   ledger.first_violation;
                          return false;
                      }
                  }
                  return true;
              });

    criterion(4, "doubling-sum oracle: maximum in [23.5a, 24a], truncated witness exact",
              [&](std::string& detail) {
                  for (long a = 1; a <= 3; ++a) {
                      LemmaQResult res = lemma_q_oracle(Rat(a), 64);
                      if (res.max_value > Rat(24 * a) || 2 * res.max_value < Rat(47 * a)) {
                          detail = "a=" + std::to_string(a) + ": max " +
                                   format_rat(res.max_value);
                          return false;
                      }
                      Rat expect = Rat(24 * a) - 7 * (Rat(4 * a) / 512);
                      if (lemma_q_witness_value(Rat(a), 10) != expect) {
                          detail = "a=" + std::to_string(a) + ": witness value != " +
                                   format_rat(expect);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(5, "counterexamples: exact a1 ratio at n=100 and linear/sqrt growth at two scales",
              [&](std::string& detail) {
                  const Rat eps(1, 2);
                  CounterexampleReport a1 = measure_counterexample(1, 100, eps);
                  if (a1.alg_cost != 5000 || a1.adversary_cost != 100 || a1.ratio() != 50) {
                      detail = "a1 n=100: alg " + format_rat(a1.alg_cost) + ", adversary " +
                               format_rat(a1.adversary_cost);
                      return false;
                  }
                  // measure_counterexample cross-checks the scripted adversary
                  // against its closed-form cost and throws on mismatch.
                  for (int which = 1; which <= 9; ++which) {
                      int small = 100, large = (which <= 3) ? 200 : 400;
                      Rat lo(which <= 3 ? Rat(9, 5) : Rat(8, 5));
                      Rat hi(which <= 3 ? Rat(11, 5) : Rat(12, 5));
                      Rat r_small = measure_counterexample(which, small, eps).ratio();
                      Rat r_large = measure_counterexample(which, large, eps).ratio();
                      Rat growth = r_large / r_small;
                      if (growth < lo || growth > hi) {
                          detail = "a" + std::to_string(which) + ": growth " +
                                   format_rat(growth);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(6, "deadline-algorithm structural invariants on trigger-only runs (1000 instances)",
              [&](std::string& detail) {
                  std::mt19937_64 rng(20260828);
                  for (int i = 0; i < 1000; ++i) {
                      Instance inst = random_tw_instance(rng, 2, 16, 10);
                      FilterResult filtered = filter_non_triggers(inst, run_tw(inst));
                      TwInvariantReport rep = check_tw_invariants(filtered.inst);
                      if (!rep.ok) {
                          detail = "instance " + std::to_string(i) + ": " + rep.detail;
                          return false;
                      }
                  }
                  return true;
              });

    criterion(7, "delay-algorithm counter invariants hold at every event boundary",
              [&](std::string& detail) {
                  std::mt19937_64 rng(20260829);
                  for (int i = 0; i < 300; ++i) {
                      Instance inst = random_delay_instance(rng, 4, 5, 8);
                      Alg2Run run = run_algorithm2(inst, nullptr, /*record_snapshots=*/true);
                      const int n = inst.n;
                      for (const CounterSnapshot& s : run.snapshots) {
                          // prefix request-counter mass never exceeds the prefix length
                          for (int l = 1; l <= n; ++l) {
                              Rat prefix(0);
                              for (int k = 1; k <= inst.m(); ++k) {
                                  int p = position_of(s.order, inst.requests[k - 1].element);
                                  if (p <= l) prefix += s.rc[k - 1];
                              }
                              if (prefix > l) {
                                  detail = "instance " + std::to_string(i) +
                                           ": prefix RC sum " + format_rat(prefix) +
                                           " > l=" + std::to_string(l);
                                  return false;
                              }
                          }
                          // element counters never exceed the element's position
                          for (int e = 1; e <= n; ++e) {
                              if (s.ec[e - 1] > position_of(s.order, e)) {
                                  detail = "instance " + std::to_string(i) + ": EC_" +
                                           std::to_string(e) + " = " +
                                           format_rat(s.ec[e - 1]) + " above position";
                                  return false;
                              }
                          }
                          // raw access+swap cost so far is within 6x suffered delay
                          if (s.access_swap_cost > 6 * s.sum_dk_t) {
                              detail = "instance " + std::to_string(i) + ": cost " +
                                       format_rat(s.access_swap_cost) + " > 6 * " +
                                       format_rat(s.sum_dk_t);
                              return false;
                          }
                      }
                      // at each prefix event on l, the firing requests' eventual
                      // suffered delay totals at most 2l
                      for (const DelayEvent& ev : run.log) {
                          if (ev.kind != DelayEventKind::PrefixEvent) continue;
                          Rat total(0);
                          for (int k : ev.rc_deleted) total += run.d_k[k - 1];
                          if (total > 2 * ev.arg) {
                              detail = "instance " + std::to_string(i) +
                                       ": prefix event l=" + std::to_string(ev.arg) +
                                       " has sum d_k " + format_rat(total);
                              return false;
                          }
                      }
                  }
                  return true;
              });

    criterion(8, "move-to-front is 4-competitive on classical instances (200 instances)",
              [&](std::string& detail) {
                  std::mt19937_64 rng(20260830);
                  for (int i = 0; i < 200; ++i) {
                      Instance inst = random_classical_instance(rng, 4, 6);
                      Rat alg = cost(run_mtf(inst).trace, inst).total();
                      Rat opt = brute_force_opt_tw(inst).cost;
                      if (alg > 4 * opt) {
                          detail = "instance " + std::to_string(i) + ": mtf " +
                                   format_rat(alg) + " > 4 * " + format_rat(opt);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(9, "oracle cross-checks: OPT lower-bounds fuzz traces; normalization and filtering",
              [&](std::string& detail) {
                  std::mt19937_64 rng(20260831);
                  for (int i = 0; i < 1000; ++i) {
                      Instance inst = random_tw_instance(rng, 2, 5, 6);
                      Rat opt = brute_force_opt_tw(inst).cost;
                      ActionTrace fuzz = random_valid_tw_trace(rng, inst);
                      Rat fuzz_cost = cost(fuzz, inst).total();
                      if (opt > fuzz_cost) {
                          detail = "instance " + std::to_string(i) + ": OPT " +
                                   format_rat(opt) + " above a valid trace's cost " +
                                   format_rat(fuzz_cost);
                          return false;
                      }
                      ActionTrace norm = normalize_serve_at_deadline(fuzz, inst);
                      if (cost(norm, inst).total() > fuzz_cost) {
                          detail = "instance " + std::to_string(i) +
                                   ": normalization increased the cost";
                          return false;
                      }
                      TwRun run = run_tw(inst);
                      FilterResult filtered = filter_non_triggers(inst, run);
                      if (!(run_tw(filtered.inst).trace.actions == run.trace.actions)) {
                          detail = "instance " + std::to_string(i) +
                                   ": filtered rerun changed the trace";
                          return false;
                      }
                  }
                  return true;
              });

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
