#include "listup/trace.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace listup {

using nlohmann::json;

void ActionTrace::check_well_formed(int n) const {
    const Rat* prev = nullptr;
    const Actor* actor = nullptr;
    for (const Action& a : actions) {
        if (prev && a.time < *prev)
            throw std::invalid_argument("trace times must be nondecreasing");
        if (actor && a.actor != *actor)
            throw std::invalid_argument("trace must contain a single actor");
        if (a.kind == Action::Kind::Swap) {
            if (a.arg < 1 || a.arg > n - 1)
                throw std::invalid_argument("swap position out of range");
        } else {
            if (a.arg < 1 || a.arg > n)
                throw std::invalid_argument("access depth out of range");
        }
        prev = &a.time;
        actor = &a.actor;
    }
}

std::map<int, std::optional<Rat>> serve_times(const ActionTrace& trace, const Instance& inst) {
    trace.check_well_formed(inst.n);
    std::map<int, std::optional<Rat>> out;
    for (const auto& r : inst.requests) out[r.k] = std::nullopt;
    ListState list(inst.n);
    for (const Action& a : trace.actions) {
        if (a.kind == Action::Kind::Swap) {
            list.swap_adjacent(a.arg);
            continue;
        }
        for (const auto& r : inst.requests) {
            if (out[r.k]) continue;
            if (r.arrival > a.time) continue;
            if (list.position(r.element) <= a.arg) out[r.k] = a.time;
        }
    }
    return out;
}

std::optional<TwViolation> validate_time_windows(const ActionTrace& trace, const Instance& inst) {
    if (inst.model != Model::TimeWindows)
        throw std::invalid_argument("validate_time_windows on a delay instance");
    auto st = serve_times(trace, inst);
    for (const auto& r : inst.requests) {
        const auto& s = st[r.k];
        if (!s) return TwViolation{r.k, std::nullopt};
        if (*s < r.arrival || *s > *r.deadline) return TwViolation{r.k, s};
    }
    return std::nullopt;
}

CostBreakdown cost(const ActionTrace& trace, const Instance& inst) {
    trace.check_well_formed(inst.n);
    CostBreakdown c;
    for (const Action& a : trace.actions) {
        if (a.kind == Action::Kind::Swap)
            c.swap_cost += 1;
        else
            c.access_cost += a.arg;
    }
    if (inst.model == Model::TimeWindows) {
        if (auto v = validate_time_windows(trace, inst)) {
            std::ostringstream os;
            os << "invalid time-window trace: request " << v->k
               << (v->serve_time ? " served at " + format_rat(*v->serve_time) + " outside its window"
                                 : " never served");
            throw std::runtime_error(os.str());
        }
        return c;
    }
    auto st = serve_times(trace, inst);
    for (const auto& r : inst.requests) {
        const auto& s = st[r.k];
        if (s) {
            // Left limit: serving exactly at a jump instant avoids the jump.
            c.delay_cost += r.delay->left_limit_at(*s);
        } else {
            auto lim = r.delay->limit();
            if (lim)
                c.penalty_unserved += *lim;
            else
                c.unbounded = true;
        }
    }
    return c;
}

std::vector<Action> swap_script(const ListState& from, const ListState& to, const Rat& t,
                                Actor actor) {
    if (from.size() != to.size())
        throw std::invalid_argument("swap_script over mismatched sizes");
    std::vector<Action> out;
    ListState work = from;
    for (int p = 1; p <= to.size(); ++p) {
        int e = to.element_at(p);
        int pp = work.position(e);
        for (int q = pp - 1; q >= p; --q) {
            work.swap_adjacent(q);
            out.push_back(make_swap(t, actor, q));
        }
    }
    return out;
}

ActionTrace normalize_serve_at_deadline(const ActionTrace& trace, const Instance& inst) {
    if (inst.model != Model::TimeWindows)
        throw std::invalid_argument("normalize_serve_at_deadline needs a time-window instance");
    if (auto v = validate_time_windows(trace, inst))
        throw std::invalid_argument("normalize_serve_at_deadline: input trace invalid (request " +
                                    std::to_string(v->k) + ")");
    auto st = serve_times(trace, inst);

    const Actor actor = trace.actions.empty() ? Actor::OPT : trace.actions.front().actor;
    ActionTrace out;
    std::set<int> unserved;
    for (const auto& r : inst.requests) unserved.insert(r.k);

    ListState blist(inst.n);
    size_t next_action = 0; // index into the input trace while tracking its list
    ListState alist(inst.n);

    while (!unserved.empty()) {
        // Next service time: the earliest deadline among output-unserved
        // requests (each was input-served no later than its deadline, so it is
        // pooled by then).
        Rat tstar;
        bool first = true;
        for (int k : unserved) {
            const Rat& q = *inst.requests[static_cast<size_t>(k) - 1].deadline;
            if (first || q < tstar) tstar = q, first = false;
        }
        // Advance the input list to just after all input actions at time <= t*.
        while (next_action < trace.actions.size() &&
               trace.actions[next_action].time <= tstar) {
            const Action& a = trace.actions[next_action++];
            if (a.kind == Action::Kind::Swap) alist.swap_adjacent(a.arg);
        }
        // Deferred swaps: match the input's current list, then one access
        // covering every pooled request.
        auto swaps = swap_script(blist, alist, tstar, actor);
        for (const auto& s : swaps) {
            out.actions.push_back(s);
            blist.swap_adjacent(s.arg);
        }
        int depth = 0;
        for (int k : unserved) {
            const auto& r = inst.requests[static_cast<size_t>(k) - 1];
            if (st[k] && *st[k] <= tstar)
                depth = std::max(depth, blist.position(r.element));
        }
        if (depth == 0)
            throw std::logic_error("normalization found no pooled request at a deadline");
        out.actions.push_back(make_access(tstar, actor, depth));
        // Mark everything this access serves (it may cover extra pending
        // requests; serving early is valid).
        for (auto it = unserved.begin(); it != unserved.end();) {
            const auto& r = inst.requests[static_cast<size_t>(*it) - 1];
            if (r.arrival <= tstar && blist.position(r.element) <= depth)
                it = unserved.erase(it);
            else
                ++it;
        }
    }
    return out;
}

// --- serialization ---

std::string trace_to_jsonl(const ActionTrace& trace) {
    std::ostringstream os;
    for (const Action& a : trace.actions) {
        json j;
        j["t"] = format_rat(a.time);
        j["actor"] = a.actor == Actor::ALG ? "ALG" : "OPT";
        j["kind"] = a.kind == Action::Kind::Swap ? "swap" : "access";
        j["arg"] = a.arg;
        os << j.dump() << "\n";
    }
    return os.str();
}

ActionTrace trace_from_jsonl(const std::string& text) {
    ActionTrace out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw std::invalid_argument("trace line " + std::to_string(lineno) + ": " + e.what());
        }
        Action a;
        const std::string where = "trace line " + std::to_string(lineno);
        if (!j.contains("t") || !j.contains("actor") || !j.contains("kind") || !j.contains("arg"))
            throw std::invalid_argument(where + ": need fields t, actor, kind, arg");
        a.time = parse_rat(j["t"].get<std::string>());
        const std::string actor = j["actor"].get<std::string>();
        if (actor == "ALG")
            a.actor = Actor::ALG;
        else if (actor == "OPT")
            a.actor = Actor::OPT;
        else
            throw std::invalid_argument(where + ": actor must be ALG or OPT");
        const std::string kind = j["kind"].get<std::string>();
        if (kind == "swap")
            a.kind = Action::Kind::Swap;
        else if (kind == "access")
            a.kind = Action::Kind::Access;
        else
            throw std::invalid_argument(where + ": kind must be swap or access");
        a.arg = j["arg"].get<int>();
        out.actions.push_back(a);
    }
    return out;
}

std::string cost_csv_header() { return "instance_id,actor,access,swap,delay,penalty,total"; }

std::string cost_csv_row(const std::string& instance_id, Actor actor, const CostBreakdown& c) {
    std::ostringstream os;
    os << instance_id << "," << (actor == Actor::ALG ? "ALG" : "OPT") << ","
       << format_rat(c.access_cost) << "," << format_rat(c.swap_cost) << ","
       << format_rat(c.delay_cost) << ","
       << (c.unbounded ? "inf" : format_rat(c.penalty_unserved)) << ","
       << (c.unbounded ? "inf" : format_rat(c.total()));
    return os.str();
}

} // namespace listup
