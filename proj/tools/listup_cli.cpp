// Batch front end: simulate policies, verify potential ledgers, compute
// brute-force optima, measure counterexamples, and generate instances.
// Exit codes: 0 success, 2 usage or guard violation, 3 verification failure.
#include "CLI11.hpp"

#include "listup/counterexamples.hpp"
#include "listup/engine_delay.hpp"
#include "listup/generators.hpp"
#include "listup/instance.hpp"
#include "listup/offline.hpp"
#include "listup/policies_tw.hpp"
#include "listup/trace.hpp"
#include "listup/verify.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace listup;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

Instance load_instance(const std::string& path) { return instance_from_json(slurp(path)); }

std::string stem_of(const std::string& path) {
    size_t slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
}

int which_of(const std::string& name) {
    if (name.size() == 2 && name[0] == 'a' && name[1] >= '1' && name[1] <= '9')
        return name[1] - '0';
    throw std::invalid_argument("unknown failed policy \"" + name + "\" (want a1..a9)");
}

int cmd_simulate(const std::string& policy, const std::string& instance_path,
                 const std::string& out_dir) {
    Instance inst = load_instance(instance_path);
    std::string prefix = out_dir + "/" + stem_of(instance_path);
    ActionTrace trace;
    std::string events_jsonl;
    if (policy == "tw" || policy == "mtf") {
        if (inst.model != Model::TimeWindows)
            throw std::invalid_argument("policy " + policy + " needs a time-window instance");
        TwRun run = policy == "tw" ? run_tw(inst) : run_mtf(inst);
        trace = run.trace;
    } else if (policy == "delay") {
        if (inst.model != Model::Delays)
            throw std::invalid_argument("policy delay needs a delay instance");
        Alg2Run run = run_algorithm2(inst);
        trace = run.trace;
        events_jsonl = delay_log_to_jsonl(run.log);
    } else {
        FailedRun run = run_failed_policy(which_of(policy), inst);
        trace = run.trace;
    }
    spill(prefix + ".alg.jsonl", trace_to_jsonl(trace));
    if (!events_jsonl.empty()) spill(prefix + ".events.jsonl", events_jsonl);
    CostBreakdown c = cost(trace, inst);
    spill(prefix + ".costs.csv",
          cost_csv_header() + "\n" + cost_csv_row(stem_of(instance_path), Actor::ALG, c) + "\n");
    std::cout << "total " << format_rat(c.total()) << (c.unbounded ? " (unbounded)" : "") << "\n";
    return kExitOk;
}

int cmd_verify(const std::string& model, const std::string& instance_path,
               std::string alg_trace_path, std::string opt_trace_path, bool brute, bool unsafe,
               const std::string& ledger_path) {
    Instance inst = load_instance(instance_path);
    // With a single trace positional, read it as the adversary trace.
    if (!brute && opt_trace_path.empty()) {
        opt_trace_path = alg_trace_path;
        alg_trace_path.clear();
    }
    if (!brute && opt_trace_path.empty())
        throw std::invalid_argument("need an adversary trace or --brute-opt");
    ActionTrace opt_trace;
    if (brute) {
        OptResult opt = inst.model == Model::TimeWindows ? brute_force_opt_tw(inst, unsafe)
                                                         : brute_force_opt_delay(inst, unsafe);
        opt_trace = opt.trace;
        if (inst.model == Model::TimeWindows)
            opt_trace = normalize_serve_at_deadline(opt_trace, inst);
    } else {
        opt_trace = trace_from_jsonl(slurp(opt_trace_path));
    }

    PotentialLedger ledger;
    if (model == "tw") {
        if (inst.model != Model::TimeWindows)
            throw std::invalid_argument("--model tw needs a time-window instance");
        TwRun run = run_tw(inst);
        FilterResult filtered = filter_non_triggers(inst, run);
        if (filtered.inst.m() != inst.m())
            throw std::invalid_argument(
                "instance has non-triggering requests; verify the filtered sub-instance");
        if (!alg_trace_path.empty() &&
            trace_to_jsonl(trace_from_jsonl(slurp(alg_trace_path))) != trace_to_jsonl(run.trace)) {
            std::cerr << "algorithm trace does not match a fresh run on this instance\n";
            return kExitVerification;
        }
        ledger = verify_tw(inst, run, opt_trace);
    } else if (model == "delay") {
        if (inst.model != Model::Delays)
            throw std::invalid_argument("--model delay needs a delay instance");
        Alg2Run run = run_algorithm2(inst, &opt_trace);
        if (!alg_trace_path.empty() &&
            trace_to_jsonl(trace_from_jsonl(slurp(alg_trace_path))) != trace_to_jsonl(run.trace)) {
            std::cerr << "algorithm trace does not match a fresh run on this instance\n";
            return kExitVerification;
        }
        ledger = verify_delay(inst, run, opt_trace);
    } else {
        throw std::invalid_argument("--model must be tw or delay");
    }

    if (!ledger_path.empty()) spill(ledger_path, ledger_to_csv(ledger));
    if (!ledger.all_ok) {
        std::cerr << "verification failed: " << ledger.first_violation << "\n";
        std::cerr << ledger_to_csv(ledger);
        return kExitVerification;
    }
    std::cout << "ok alg_total=" << format_rat(ledger.alg_total)
              << " opt_total=" << format_rat(ledger.opt_total)
              << " phi_end=" << format_rat(ledger.phi_end) << "\n";
    return kExitOk;
}

int cmd_brute_opt(const std::string& instance_path, bool unsafe, const std::string& out_path) {
    Instance inst = load_instance(instance_path);
    OptResult opt = inst.model == Model::TimeWindows ? brute_force_opt_tw(inst, unsafe)
                                                     : brute_force_opt_delay(inst, unsafe);
    if (!out_path.empty()) spill(out_path, trace_to_jsonl(opt.trace));
    std::cout << "optimal " << format_rat(opt.cost) << "\n";
    return kExitOk;
}

int cmd_counterexample(const std::string& alg, int n, const std::string& eps_str,
                       const std::string& csv_path) {
    CounterexampleReport r = measure_counterexample(which_of(alg), n, parse_rat(eps_str));
    std::string csv = counterexample_csv_header() + "\n" + counterexample_csv_row(r) + "\n";
    if (!csv_path.empty()) spill(csv_path, csv);
    std::cout << csv;
    return kExitOk;
}

int cmd_lemma_q(const std::string& a_str, long grid, bool integer_grid) {
    Rat a = parse_rat(a_str);
    LemmaQResult r;
    if (integer_grid) {
        if (rat_den(a) != 1) throw std::invalid_argument("--integer needs an integral a");
        r = lemma_q_integer(rat_num(a).convert_to<long>());
    } else {
        r = lemma_q_oracle(a, grid);
    }
    std::cout << "max " << format_rat(r.max_value) << "\nwitness";
    for (const Rat& x : r.witness) std::cout << ' ' << format_rat(x);
    std::cout << "\n";
    return kExitOk;
}

int cmd_gen(const std::string& model, unsigned long seed, int n_max, int m_max, int breakpoints,
            const std::string& out_path) {
    std::mt19937_64 rng(seed);
    Instance inst;
    if (model == "tw")
        inst = random_tw_instance(rng, 2, n_max, m_max);
    else if (model == "classical")
        inst = random_classical_instance(rng, n_max, m_max);
    else if (model == "delay")
        inst = random_delay_instance(rng, n_max, m_max, breakpoints);
    else
        throw std::invalid_argument("--model must be tw, classical, or delay");
    std::string json = instance_to_json(inst);
    if (!out_path.empty())
        spill(out_path, json);
    else
        std::cout << json << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"list-update simulation, verification, and counterexample toolkit"};
    app.require_subcommand(1);

    std::string policy, instance_path, out_dir = ".";
    auto* sim = app.add_subcommand("simulate", "run a policy and write trace/cost artifacts");
    sim->add_option("--policy", policy, "tw | mtf | delay | a1..a9")->required();
    sim->add_option("--instance", instance_path, "instance JSON path")->required();
    sim->add_option("--out-dir", out_dir, "artifact directory (default .)");

    std::string model, alg_trace_path, opt_trace_path, ledger_path;
    bool brute = false, unsafe = false;
    auto* ver = app.add_subcommand("verify-potential", "replay a run and check per-event bounds");
    ver->add_option("--model", model, "tw | delay")->required();
    ver->add_option("instance", instance_path)->required();
    ver->add_option("alg_trace", alg_trace_path, "expected algorithm trace (JSONL, optional)");
    ver->add_option("opt_trace", opt_trace_path, "adversary trace (JSONL)");
    ver->add_flag("--brute-opt", brute, "compute the adversary by exhaustive search");
    ver->add_flag("--unsafe", unsafe, "lift brute-force size guards");
    ver->add_option("--ledger", ledger_path, "write the ledger CSV here");

    std::string opt_out;
    auto* bo = app.add_subcommand("brute-opt", "exhaustive offline optimum");
    bo->add_option("instance", instance_path)->required();
    bo->add_flag("--unsafe", unsafe, "lift size guards");
    bo->add_option("--out", opt_out, "write the optimal trace JSONL here");

    std::string alg, eps_str = "1/2", csv_path;
    int n = 0;
    auto* ce = app.add_subcommand("counterexample", "measure a failed policy against its adversary");
    ce->add_option("--alg", alg, "a1..a9")->required();
    ce->add_option("--n", n, "list length")->required();
    ce->add_option("--eps", eps_str, "epsilon as p/q (default 1/2)");
    ce->add_option("--csv", csv_path, "write the report CSV here");

    std::string a_str = "1";
    long grid = 64;
    bool integer_grid = false;
    auto* lq = app.add_subcommand("lemma-q", "doubling-constrained maximization oracle");
    lq->add_option("--a", a_str, "parameter a as p/q (default 1)");
    lq->add_option("--grid", grid, "grid denominator (default 64)");
    lq->add_flag("--integer", integer_grid, "use the integer grid 1..8a-1");

    std::string gen_model = "tw", gen_out;
    unsigned long seed = 0;
    int n_max = 5, m_max = 6, breakpoints = 8;
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--model", gen_model, "tw | classical | delay (default tw)");
    gen->add_option("--seed", seed, "RNG seed")->required();
    gen->add_option("--n-max", n_max, "maximum list length (default 5)");
    gen->add_option("--m-max", m_max, "maximum request count (default 6)");
    gen->add_option("--breakpoints", breakpoints, "delay model: breakpoint budget (default 8)");
    gen->add_option("--out", gen_out, "write the instance JSON here (default stdout)");

    try {
        app.parse(argc, argv);
        if (sim->parsed()) return cmd_simulate(policy, instance_path, out_dir);
        if (ver->parsed())
            return cmd_verify(model, instance_path, alg_trace_path, opt_trace_path, brute, unsafe,
                              ledger_path);
        if (bo->parsed()) return cmd_brute_opt(instance_path, unsafe, opt_out);
        if (ce->parsed()) return cmd_counterexample(alg, n, eps_str, csv_path);
        if (lq->parsed()) return cmd_lemma_q(a_str, grid, integer_grid);
        if (gen->parsed()) return cmd_gen(gen_model, seed, n_max, m_max, breakpoints, gen_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerification;
    }
}
