#include "metarep/numth.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace metarep {

std::vector<long> divisors_of(long n) {
    if (n <= 0) throw std::domain_error("divisors_of needs n >= 1");
    std::vector<long> out;
    for (long d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    for (long p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    if (n > 1) out.push_back(n);
    return out;
}

int mobius(long n) {
    auto f = prime_factors(n);
    for (size_t i = 1; i < f.size(); ++i)
        if (f[i] == f[i - 1]) return 0;
    return f.size() % 2 == 0 ? 1 : -1;
}

long euler_phi(long n) {
    long out = n;
    auto f = prime_factors(n);
    f.erase(std::unique(f.begin(), f.end()), f.end());
    for (long p : f) out = out / p * (p - 1);
    return out;
}

long lcm_long(long a, long b) { return std::lcm(a, b); }

} // namespace metarep
