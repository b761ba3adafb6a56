#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace listup {

// Exact rational arithmetic. Every time, cost, counter and potential value in
// this library is a Rat; there is no floating point anywhere on a verified
// path.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

// Canonical rendering: integers as "p", everything else as "p/q" (q > 0).
inline std::string format_rat(const Rat& r) {
    if (rat_den(r) == 1) return rat_num(r).str();
    return rat_num(r).str() + "/" + rat_den(r).str();
}

// Accepts "p" or "p/q" with optional leading '-'. Throws std::invalid_argument
// with a description on malformed input (including q == 0).
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty())
            throw std::invalid_argument("missing numerator or denominator");
        Int d(den);
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rat(Int(num), d);
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: '" + s + "'");
    }
}

} // namespace listup
