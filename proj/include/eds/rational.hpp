#pragma once

// Exact scalar types. Everything in this library computes over the rationals;
// no floating point is used anywhere in the analysis pipeline.

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace eds {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

// Parse "p", "-p", or "p/q" (q != 0).  Whitespace around tokens is tolerated
// so tableau files can be formatted freely.  Throws std::invalid_argument on
// anything else; exactness is non-negotiable, so there is no lenient mode.
inline Rat parse_rat(const std::string& text) {
    auto trim = [](std::string s) {
        const char* ws = " \t\r\n";
        auto b = s.find_first_not_of(ws);
        auto e = s.find_last_not_of(ws);
        if (b == std::string::npos) return std::string();
        return s.substr(b, e - b + 1);
    };
    std::string t = trim(text);
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    std::string num = t, den = "1";
    if (auto slash = t.find('/'); slash != std::string::npos) {
        num = trim(t.substr(0, slash));
        den = trim(t.substr(slash + 1));
        if (num.empty() || den.empty() || den.find('/') != std::string::npos)
            throw std::invalid_argument("malformed rational literal: " + text);
    }
    Int p, q;
    try {
        p = Int(num);
        q = Int(den);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + text);
    }
    if (q == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rat(p, q);
}

// Canonical rendering: "p" for integers, "p/q" otherwise (q > 0, gcd reduced —
// mpq_rational keeps values canonical by construction).
inline std::string rat_str(const Rat& x) { return x.str(); }

inline Int rat_num(const Rat& x) { return Int(numerator(x)); }
inline Int rat_den(const Rat& x) { return Int(denominator(x)); }

}  // namespace eds
