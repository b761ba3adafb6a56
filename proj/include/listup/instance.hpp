#pragma once

#include "listup/delay_function.hpp"
#include "listup/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace listup {

enum class Model { TimeWindows, Delays };

// One request: element e_k, arrival a_k, and either a deadline q_k
// (time-window model) or a monotone delay function (delay model). The delay
// function is given on absolute time and is 0 before a_k.
struct Request {
    int k = 0;        // 1-based request id
    int element = 0;  // 1-based element id, rendered "c<element>"
    Rat arrival;
    std::optional<Rat> deadline;       // TimeWindows
    std::optional<DelayFunction> delay; // Delays
};

struct Instance {
    int n = 0;
    Model model = Model::TimeWindows;
    std::vector<Request> requests;

    int m() const { return static_cast<int>(requests.size()); }

    void validate() const {
        if (n < 1) throw std::invalid_argument("instance needs n >= 1");
        for (size_t i = 0; i < requests.size(); ++i) {
            const Request& r = requests[i];
            if (r.k != static_cast<int>(i) + 1)
                throw std::invalid_argument("request ids must be 1..m in order");
            if (r.element < 1 || r.element > n)
                throw std::invalid_argument("request element out of range");
            if (r.arrival < 0) throw std::invalid_argument("negative arrival");
            if (model == Model::TimeWindows) {
                if (!r.deadline || r.delay)
                    throw std::invalid_argument("time-window request needs a deadline only");
                if (*r.deadline < r.arrival)
                    throw std::invalid_argument("deadline before arrival");
            } else {
                if (!r.delay || r.deadline)
                    throw std::invalid_argument("delay request needs a delay function only");
                for (const auto& b : r.delay->breakpoints())
                    if (b.t < r.arrival)
                        throw std::invalid_argument("delay accrues before arrival");
            }
        }
    }
};

// A prize-collecting request: no cost if served in [a, q], penalty p after q
// (step delay function with a jump of p at q).
inline Request prize_collecting(int k, int element, const Rat& a, const Rat& q, const Rat& p) {
    if (q < a) throw std::invalid_argument("prize_collecting: q < a");
    if (p < 0) throw std::invalid_argument("prize_collecting: negative penalty");
    Request r;
    r.k = k;
    r.element = element;
    r.arrival = a;
    if (p == 0)
        r.delay = DelayFunction::zero();
    else
        r.delay = DelayFunction::step(q, p);
    return r;
}

// JSON (de)serialization; see README for the schema. Throws
// std::invalid_argument with a field diagnostic on malformed input.
Instance instance_from_json(const std::string& text);
std::string instance_to_json(const Instance& inst);

} // namespace listup
