#include "mvd/rational.hpp"

#include "mvd/errors.hpp"

namespace mvd {

BigInt binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;  // exact: r is always an integral binomial prefix
    }
    return r;
}

BigInt ipow(const BigInt& base, int exp) {
    BigInt r = 1, b = base;
    for (; exp > 0; exp >>= 1) {
        if (exp & 1) r *= b;
        b *= b;
    }
    return r;
}

std::string formatRational(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) {
        s += "/";
        s += denominator(r).str();
    }
    return s;
}

Rat parseRational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rat(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw InputError("rational with zero denominator: " + text);
        return Rat(num, den);
    } catch (const InputError&) {
        throw;
    } catch (const std::runtime_error&) {
        throw InputError("malformed rational: '" + text + "'");
    }
}

}  // namespace mvd
