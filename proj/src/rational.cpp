#include "starprod/rational.hpp"

namespace starprod {

std::string rat_str(const Rat& r) {
    std::string out = rat_num(r).str();
    if (!rat_is_integer(r)) {
        out += '/';
        out += rat_den(r).str();
    }
    return out;
}

Rat rat_parse(std::string_view s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string_view::npos)
            return Rat(BigInt(std::string(s)));
        BigInt num{std::string(s.substr(0, slash))};
        BigInt den{std::string(s.substr(slash + 1))};
        if (den == 0) throw std::invalid_argument("rational with zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("malformed rational literal '" + std::string(s) + "'");
    }
}

BigInt factorial(int n) {
    if (n < 0) throw std::invalid_argument("factorial of negative argument");
    BigInt acc = 1;
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

BigInt binomial(const BigInt& n, const BigInt& k) {
    if (k < 0 || k > n) return 0;
    BigInt acc = 1;
    for (BigInt i = 0; i < k; ++i) {
        acc *= (n - i);
        acc /= (i + 1); // exact at each step: product of j consecutive integers is divisible by j!
    }
    return acc;
}

} // namespace starprod
