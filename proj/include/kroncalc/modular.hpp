#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "kroncalc/rational.hpp"

namespace kroncalc {

bool is_prime_u64(std::uint64_t n);
std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p);

// Primes p < 2^62 with p = 1 mod Q, in decreasing order, skipping the first `skip`.
std::vector<std::uint64_t> select_primes(long Q, int count, int skip = 0);

// Element of order exactly Q in (Z/p)^*.
std::uint64_t primitive_root_of_unity(long Q, std::uint64_t p);

// Integer x with x = residues[i] mod primes[i], 0 <= x < prod primes.
Integer crt(const std::vector<std::uint64_t>& residues, const std::vector<std::uint64_t>& primes);

// a/b with |a|, b <= sqrt(m/2) and a = x b mod m, if it exists.
std::optional<Rational> rational_reconstruct(const Integer& x, const Integer& m);

// Montgomery arithmetic modulo a single odd prime below 2^63.
struct Montgomery {
    std::uint64_t p = 0, pinv = 0, r2 = 0;  // pinv = -p^{-1} mod 2^64, r2 = 2^128 mod p

    explicit Montgomery(std::uint64_t prime = 3);

    std::uint64_t reduce(unsigned __int128 t) const {
        std::uint64_t m = static_cast<std::uint64_t>(t) * pinv;
        std::uint64_t u = static_cast<std::uint64_t>((t + static_cast<unsigned __int128>(m) * p) >> 64);
        return u >= p ? u - p : u;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return reduce(static_cast<unsigned __int128>(a) * b);
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
    std::uint64_t to_mont(std::uint64_t a) const { return mul(a % p, r2); }
    std::uint64_t from_mont(std::uint64_t a) const { return reduce(a); }
    std::uint64_t inv(std::uint64_t a) const;  // Montgomery in, Montgomery out
};

}  // namespace kroncalc
