#pragma once

#include "listup/rational.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace listup {

// One breakpoint of a piecewise-linear monotone delay function: at time t the
// accumulated value reaches v (via the linear segment ending here) and then
// jumps by `jump` (right-continuous).
struct Breakpoint {
    Rat t;
    Rat v;
    Rat jump; // >= 0
};

// Monotone nondecreasing, nonnegative, piecewise-linear function of time with
// jumps. Value is 0 before the first breakpoint; linear between breakpoints
// (from v_i + jump_i at t_i to v_{i+1} at t_{i+1}); after the last breakpoint
// it grows at final_slope.
class DelayFunction {
public:
    DelayFunction() = default;

    DelayFunction(std::vector<Breakpoint> bps, Rat final_slope)
        : bps_(std::move(bps)), final_slope_(std::move(final_slope)) {
        if (final_slope_ < 0) throw std::invalid_argument("negative final slope");
        Rat prev_t(-1), prev_val(0);
        for (size_t i = 0; i < bps_.size(); ++i) {
            const auto& b = bps_[i];
            if (b.jump < 0) throw std::invalid_argument("negative jump");
            if (b.t < 0) throw std::invalid_argument("negative breakpoint time");
            if (i > 0 && b.t <= prev_t)
                throw std::invalid_argument("breakpoint times must be strictly increasing");
            if (b.v < prev_val)
                throw std::invalid_argument("delay values must be nondecreasing");
            if (i == 0 && b.v < 0) throw std::invalid_argument("negative delay value");
            prev_t = b.t;
            prev_val = b.v + b.jump;
        }
    }

    // The identically-zero function.
    static DelayFunction zero() { return DelayFunction({}, Rat(0)); }

    // Step function: 0 before t, value p from t on (right-continuous).
    static DelayFunction step(const Rat& t, const Rat& p) {
        return DelayFunction({Breakpoint{t, Rat(0), p}}, Rat(0));
    }

    const std::vector<Breakpoint>& breakpoints() const { return bps_; }
    const Rat& final_slope() const { return final_slope_; }

    // Accumulated delay at time t, right-continuous (a jump at t is included).
    Rat value_at(const Rat& t) const {
        if (bps_.empty()) return Rat(0);
        if (t < bps_.front().t) return Rat(0);
        // Find the last breakpoint with time <= t.
        size_t i = 0;
        while (i + 1 < bps_.size() && bps_[i + 1].t <= t) ++i;
        const auto& b = bps_[i];
        Rat base = b.v + b.jump;
        if (i + 1 < bps_.size()) {
            // Linear segment toward the next breakpoint's v.
            const auto& nb = bps_[i + 1];
            Rat span = nb.t - b.t;
            return base + (nb.v - base) * (t - b.t) / span;
        }
        return base + final_slope_ * (t - b.t);
    }

    // Left limit sup_{s<t} f(s): the accumulated delay "strictly before" t.
    // A request served at t has suffered exactly this much (serving at a
    // prize-collecting deadline avoids its jump).
    Rat left_limit_at(const Rat& t) const {
        if (bps_.empty()) return Rat(0);
        if (t <= bps_.front().t) return Rat(0);
        size_t i = 0;
        while (i + 1 < bps_.size() && bps_[i + 1].t < t) ++i;
        const auto& b = bps_[i];
        if (i + 1 < bps_.size() && bps_[i + 1].t == t) return bps_[i + 1].v;
        Rat base = b.v + b.jump;
        if (i + 1 < bps_.size()) {
            const auto& nb = bps_[i + 1];
            return base + (nb.v - base) * (t - b.t) / (nb.t - b.t);
        }
        return base + final_slope_ * (t - b.t);
    }

    // sup_t f(t); nullopt means +infinity (final_slope > 0).
    std::optional<Rat> limit() const {
        if (final_slope_ > 0) return std::nullopt;
        if (bps_.empty()) return Rat(0);
        return bps_.back().v + bps_.back().jump;
    }

    // Slope of f at t+ (the rate of accrual just after t, ignoring jumps).
    Rat slope_after(const Rat& t) const {
        if (bps_.empty()) return Rat(0);
        if (t < bps_.front().t) {
            // Heading into the first breakpoint's v from 0? The function is
            // defined as 0 before the first breakpoint, so the first
            // breakpoint's v must be 0 (enforced by callers building sensible
            // functions); slope before it is 0.
            return Rat(0);
        }
        size_t i = 0;
        while (i + 1 < bps_.size() && bps_[i + 1].t <= t) ++i;
        const auto& b = bps_[i];
        if (i + 1 < bps_.size()) {
            const auto& nb = bps_[i + 1];
            return (nb.v - b.v - b.jump) / (nb.t - b.t);
        }
        return final_slope_;
    }

    // Time of the next breakpoint strictly after t, if any.
    std::optional<Rat> next_breakpoint_after(const Rat& t) const {
        for (const auto& b : bps_)
            if (b.t > t) return b.t;
        return std::nullopt;
    }

    // Earliest s >= t0 with f(s) - f(t0) >= threshold; nullopt if never.
    // A jump may overshoot the threshold; the crossing time is the jump
    // instant.
    std::optional<Rat> crossing_time(const Rat& t0, const Rat& threshold) const {
        if (threshold <= 0) return t0;
        const Rat target = value_at(t0) + threshold;
        // Walk segments from t0 forward.
        Rat t = t0;
        while (true) {
            Rat slope = slope_after(t);
            std::optional<Rat> nb = next_breakpoint_after(t);
            Rat vt = value_at(t);
            if (nb) {
                // Check for a linear crossing inside (t, nb).
                if (slope > 0) {
                    Rat tc = t + (target - vt) / slope;
                    if (tc <= *nb && value_at(tc) >= target) return tc;
                }
                if (value_at(*nb) >= target) {
                    // Crossed by the segment endpoint or the jump at nb.
                    if (slope > 0) {
                        Rat tc = t + (target - vt) / slope;
                        if (tc <= *nb) return tc;
                    }
                    return *nb;
                }
                t = *nb;
            } else {
                if (slope > 0) {
                    Rat tc = t + (target - vt) / slope;
                    return tc;
                }
                return std::nullopt;
            }
        }
    }

    bool operator==(const DelayFunction& o) const {
        if (final_slope_ != o.final_slope_ || bps_.size() != o.bps_.size()) return false;
        for (size_t i = 0; i < bps_.size(); ++i)
            if (bps_[i].t != o.bps_[i].t || bps_[i].v != o.bps_[i].v ||
                bps_[i].jump != o.bps_[i].jump)
                return false;
        return true;
    }

private:
    std::vector<Breakpoint> bps_;
    Rat final_slope_{0};
};

} // namespace listup
