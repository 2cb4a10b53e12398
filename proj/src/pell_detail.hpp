#pragma once

#include "revpell/mat2z.hpp"

#include <utility>
#include <vector>

// Internal number-theory helpers backing the Pell class search.  Not part of
// the public interface; exposed in a header only so the tests can cross-check
// them against brute force.
namespace revpell::detail {

// n >= 1 as (prime, exponent) pairs, primes ascending; empty for n = 1.
// Perfect squares factor through their square root, so n of the form (2b)^2
// costs a trial division of 2b, not of n.
std::vector<std::pair<Int, unsigned>> factorize(const Int& n);

// Square roots of a modulo p^k, each in [0, p^k); p prime, k >= 1.
std::vector<Int> sqrt_mod_prime_power(const Int& a, const Int& p, unsigned k);

// All z in (-m/2, m/2] with z^2 = a (mod m); m >= 1.
std::vector<Int> sqrt_mod(const Int& a, const Int& m);

} // namespace revpell::detail
