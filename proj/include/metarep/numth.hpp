#pragma once

#include <vector>

namespace metarep {

std::vector<long> divisors_of(long n);
/// Prime factorization with multiplicity, ascending.
std::vector<long> prime_factors(long n);
int mobius(long n);
long euler_phi(long n);
long lcm_long(long a, long b);

} // namespace metarep
