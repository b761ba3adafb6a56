// Micro-benchmark for batch throughput: runs the deadline algorithm plus the
// exhaustive optimum over a corpus of random time-window instances, serially
// and (when built with OpenMP) in parallel across instances, and reports both
// wall times plus a checksum so the two paths can be compared.
#include "listup/generators.hpp"
#include "listup/offline.hpp"
#include "listup/policies_tw.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <vector>

using namespace listup;

namespace {

Rat work_item(const Instance& inst) {
    TwRun run = run_tw(inst);
    OptResult opt = brute_force_opt_tw(inst);
    return cost(run.trace, inst).total() + opt.cost;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
    int count = argc > 1 ? std::atoi(argv[1]) : 200;
    unsigned long seed = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 1;

    std::mt19937_64 rng(seed);
    std::vector<Instance> corpus;
    corpus.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) corpus.push_back(random_tw_instance(rng, 2, 5, 6));

    auto t0 = std::chrono::steady_clock::now();
    Rat serial_sum(0);
    for (const Instance& inst : corpus) serial_sum += work_item(inst);
    double serial_s = seconds_since(t0);
    std::cout << "serial   " << serial_s << " s, checksum " << format_rat(serial_sum) << "\n";

#ifdef _OPENMP
    t0 = std::chrono::steady_clock::now();
    std::vector<Rat> partial(corpus.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < static_cast<long>(corpus.size()); ++i)
        partial[static_cast<size_t>(i)] = work_item(corpus[static_cast<size_t>(i)]);
    Rat parallel_sum(0);
    for (const Rat& r : partial) parallel_sum += r;
    double parallel_s = seconds_since(t0);
    std::cout << "parallel " << parallel_s << " s (" << omp_get_max_threads()
              << " threads), checksum " << format_rat(parallel_sum) << "\n";
    if (parallel_sum != serial_sum) {
        std::cerr << "checksum mismatch between serial and parallel runs\n";
        return 1;
    }
#else
    std::cout << "parallel n/a (built without OpenMP)\n";
#endif
    return 0;
}
