#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdlib>
#include <sstream>
#include <string>

#include "bjlab/errors.hpp"

namespace bjlab {

// Exact rational scalar. GMP keeps values in canonical reduced form with a
// positive denominator, which is exactly the invariant the wire format
// ("p/q" or "p") relies on.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline std::string format_rat(const Rat& r) {
    std::ostringstream os;
    os << r;  // prints "p/q", or "p" when the denominator is 1
    return os.str();
}

namespace detail {

inline bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
    return true;
}

}  // namespace detail

// Parses "p/q" or "p". Rejects zero denominators and anything that is not a
// plain integer pair; construction goes through integer division because the
// mpq string constructor does not reduce its input.
inline Rat parse_rat(const std::string& text) {
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    if (!detail::is_integer_literal(num))
        throw Error("bad rational literal: '" + text + "'");
    if (slash == std::string::npos) return Rat(Int(num));
    const std::string den = text.substr(slash + 1);
    if (!detail::is_integer_literal(den))
        throw Error("bad rational literal: '" + text + "'");
    const Int d(den);
    if (d == 0) throw Error("zero denominator in rational literal: '" + text + "'");
    return Rat(Int(num)) / Rat(d);
}

inline int sign(const Rat& r) { return r.sign(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Height of a rational: max(|numerator|, denominator). Used to bound the
// complexity of randomly drawn data.
inline Int rat_height(const Rat& r) {
    Int n = numerator(r);
    if (n < 0) n = -n;
    const Int d = denominator(r);
    return n > d ? n : d;
}

}  // namespace bjlab
