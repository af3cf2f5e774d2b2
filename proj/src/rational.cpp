#include "graphonlab/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace graphonlab {

namespace {

// cpp_int treats a leading zero as an octal prefix; force base 10.
BigInt parse_int(std::string s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.erase(0, 1);
    }
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw Error("bad integer literal '" + s + "'");
    std::size_t nz = s.find_first_not_of('0');
    s = (nz == std::string::npos) ? "0" : s.substr(nz);
    BigInt v(s);
    return neg ? -v : v;
}

}  // namespace

Rational rat_from_string(const std::string& text) {
    if (text.empty()) throw Error("empty rational literal");
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num = parse_int(text.substr(0, slash));
            BigInt den = parse_int(text.substr(slash + 1));
            if (den == 0) throw Error("zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(parse_int(text));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(parse_int(digits), den);
    } catch (const std::runtime_error& e) {
        throw Error("bad rational literal '" + text + "': " + e.what());
    }
}

std::size_t big_popcount(const BigInt& v) {
    if (v < 0) throw Error("popcount of negative value");
    if (v == 0) return 0;
    std::vector<std::uint64_t> limbs;
    export_bits(v, std::back_inserter(limbs), 64);
    std::size_t total = 0;
    for (std::uint64_t w : limbs) total += static_cast<std::size_t>(__builtin_popcountll(w));
    return total;
}

BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

}  // namespace graphonlab
