#include "listup/instance.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace listup {

using nlohmann::json;

namespace {

Rat rat_field(const json& j, const std::string& where) {
    if (j.is_number_integer())
        return Rat(static_cast<long long>(j.get<long long>()));
    if (!j.is_string())
        throw std::invalid_argument(where + ": expected rational string \"p/q\"");
    try {
        return parse_rat(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(where + ": " + e.what());
    }
}

} // namespace

Instance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("instance JSON parse error: ") + e.what());
    }
    Instance inst;
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("instance: missing integer field 'n'");
    inst.n = j["n"].get<int>();
    if (!j.contains("model") || !j["model"].is_string())
        throw std::invalid_argument("instance: missing string field 'model'");
    const std::string model = j["model"].get<std::string>();
    if (model == "time_windows")
        inst.model = Model::TimeWindows;
    else if (model == "delays")
        inst.model = Model::Delays;
    else
        throw std::invalid_argument("instance: model must be 'time_windows' or 'delays'");
    if (!j.contains("requests") || !j["requests"].is_array())
        throw std::invalid_argument("instance: missing array field 'requests'");

    int idx = 0;
    for (const auto& rj : j["requests"]) {
        ++idx;
        const std::string where = "requests[" + std::to_string(idx) + "]";
        Request r;
        if (!rj.contains("id") || !rj["id"].is_number_integer())
            throw std::invalid_argument(where + ": missing integer 'id'");
        r.k = rj["id"].get<int>();
        if (!rj.contains("element") || !rj["element"].is_number_integer())
            throw std::invalid_argument(where + ": missing integer 'element'");
        r.element = rj["element"].get<int>();
        if (!rj.contains("arrival"))
            throw std::invalid_argument(where + ": missing 'arrival'");
        r.arrival = rat_field(rj["arrival"], where + ".arrival");

        const bool has_deadline = rj.contains("deadline") && !rj["deadline"].is_null();
        const bool has_delay = rj.contains("delay") && !rj["delay"].is_null();
        if (has_deadline == has_delay)
            throw std::invalid_argument(where + ": exactly one of 'deadline'/'delay' required");
        if (has_deadline) {
            r.deadline = rat_field(rj["deadline"], where + ".deadline");
        } else {
            const auto& dj = rj["delay"];
            if (!dj.contains("breakpoints") || !dj["breakpoints"].is_array())
                throw std::invalid_argument(where + ".delay: missing 'breakpoints' array");
            std::vector<Breakpoint> bps;
            int bi = 0;
            for (const auto& bj : dj["breakpoints"]) {
                ++bi;
                const std::string bw = where + ".delay.breakpoints[" + std::to_string(bi) + "]";
                if (!bj.is_array() || bj.size() != 3)
                    throw std::invalid_argument(bw + ": expected [t, v, jump]");
                bps.push_back(Breakpoint{rat_field(bj[0], bw + ".t"), rat_field(bj[1], bw + ".v"),
                                         rat_field(bj[2], bw + ".jump")});
            }
            if (!dj.contains("final_slope"))
                throw std::invalid_argument(where + ".delay: missing 'final_slope'");
            Rat fs = rat_field(dj["final_slope"], where + ".delay.final_slope");
            try {
                r.delay = DelayFunction(std::move(bps), fs);
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(where + ".delay: " + e.what());
            }
        }
        inst.requests.push_back(std::move(r));
    }
    try {
        inst.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("instance invariant: ") + e.what());
    }
    return inst;
}

std::string instance_to_json(const Instance& inst) {
    json j;
    j["n"] = inst.n;
    j["model"] = inst.model == Model::TimeWindows ? "time_windows" : "delays";
    j["requests"] = json::array();
    for (const auto& r : inst.requests) {
        json rj;
        rj["id"] = r.k;
        rj["element"] = r.element;
        rj["arrival"] = format_rat(r.arrival);
        if (r.deadline) {
            rj["deadline"] = format_rat(*r.deadline);
            rj["delay"] = nullptr;
        } else {
            rj["deadline"] = nullptr;
            json dj;
            dj["breakpoints"] = json::array();
            for (const auto& b : r.delay->breakpoints())
                dj["breakpoints"].push_back(
                    json::array({format_rat(b.t), format_rat(b.v), format_rat(b.jump)}));
            dj["final_slope"] = format_rat(r.delay->final_slope());
            rj["delay"] = dj;
        }
        j["requests"].push_back(rj);
    }
    return j.dump(2);
}

} // namespace listup
