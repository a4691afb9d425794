#include "kroncalc/modular.hpp"

#include "kroncalc/errors.hpp"

namespace kroncalc {

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    unsigned __int128 r = 1, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t s : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % s == 0) return n == s;
    std::uint64_t d = n - 1;
    int r = 0;
    while (!(d & 1)) d >>= 1, ++r;
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < r && comp; ++i) {
            x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
            if (x == n - 1) comp = false;
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::uint64_t> select_primes(long Q, int count, int skip) {
    std::vector<std::uint64_t> out;
    std::uint64_t q = static_cast<std::uint64_t>(Q < 2 ? 2 : Q);
    std::uint64_t p = ((1ULL << 62) - 1) / q * q + 1;
    if (p >= (1ULL << 62)) p -= q;
    int found = 0;
    for (; p > q && static_cast<int>(out.size()) < count; p -= q) {
        if (!is_prime_u64(p)) continue;
        if (found++ >= skip) out.push_back(p);
    }
    return out;
}

std::uint64_t primitive_root_of_unity(long Q, std::uint64_t p) {
    if (Q == 1) return 1;
    std::vector<long> factors;
    long m = Q;
    for (long f = 2; f * f <= m; ++f)
        if (m % f == 0) {
            factors.push_back(f);
            while (m % f == 0) m /= f;
        }
    if (m > 1) factors.push_back(m);
    for (std::uint64_t g = 2;; ++g) {
        std::uint64_t w = pow_mod(g, (p - 1) / Q, p);
        bool ok = true;
        for (long f : factors)
            if (pow_mod(w, Q / f, p) == 1) ok = false;
        if (ok) return w;
    }
}

Integer crt(const std::vector<std::uint64_t>& residues, const std::vector<std::uint64_t>& primes) {
    Integer x = 0, m = 1;
    for (size_t i = 0; i < primes.size(); ++i) {
        Integer p = Integer(std::to_string(primes[i]));
        Integer r = Integer(std::to_string(residues[i]));
        // x + m*t = r mod p
        Integer inv;
        Integer mm = m % p;
        mpz_invert(inv.get_mpz_t(), mm.get_mpz_t(), p.get_mpz_t());
        Integer t = ((r - x) % p + p) % p * inv % p;
        x += m * t;
        m *= p;
    }
    return x;
}

std::optional<Rational> rational_reconstruct(const Integer& x, const Integer& m) {
    Integer bound;
    Integer half = m / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    Integer r0 = m, r1 = ((x % m) + m) % m, s0 = 0, s1 = 1;
    while (r1 > bound) {
        Integer q = r0 / r1;
        Integer t = r0 - q * r1;
        r0 = r1;
        r1 = t;
        t = s0 - q * s1;
        s0 = s1;
        s1 = t;
    }
    if (s1 == 0 || abs(s1) > bound) return std::nullopt;
    if (s1 < 0) s1 = -s1, r1 = -r1;
    Integer g = gcd(r1, s1);
    if (g != 1) return std::nullopt;
    return Rational(r1, s1);
}

Montgomery::Montgomery(std::uint64_t prime) : p(prime) {
    std::uint64_t inv = 1;
    for (int i = 0; i < 6; ++i) inv *= 2 - p * inv;
    pinv = ~inv + 1;
    unsigned __int128 r = (static_cast<unsigned __int128>(1) << 64) % p;
    r2 = static_cast<std::uint64_t>(r * r % p);
}

std::uint64_t Montgomery::inv(std::uint64_t a) const {
    std::uint64_t x = from_mont(a);
    if (x == 0) throw Error(ErrorKind::ReconstructionFailed, "division by zero modulo a working prime");
    return to_mont(pow_mod(x, p - 2, p));
}

}  // namespace kroncalc
