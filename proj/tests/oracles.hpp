#ifndef QMBOUND_TESTS_ORACLES_HPP
#define QMBOUND_TESTS_ORACLES_HPP

// Slow, obviously-correct reference computations. Nothing in here calls into
// the library except for plain value types.

#include <cstdint>
#include <cstdlib>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline bool trial_is_prime(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    unsigned __int128 r = 1, x = b % m;
    while (e) {
        if (e & 1)
            r = (r * x) % m;
        x = (x * x) % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(r);
}

// Legendre symbol by Euler's criterion, p an odd prime.
inline int legendre(std::int64_t a, std::uint64_t p)
{
    std::int64_t r = a % static_cast<std::int64_t>(p);
    if (r < 0)
        r += static_cast<std::int64_t>(p);
    if (r == 0)
        return 0;
    return powmod(static_cast<std::uint64_t>(r), (p - 1) / 2, p) == 1 ? 1 : -1;
}

// Kronecker (D|a) for a > 0 and D = 0,1 mod 4, by factoring a.
inline int kronecker_disc(std::int64_t D, std::uint64_t a)
{
    auto at_prime = [D](std::uint64_t p) {
        if (p != 2)
            return legendre(D, p);
        std::int64_t r = ((D % 8) + 8) % 8;
        return (D % 2 == 0) ? 0 : (r == 1 || r == 7) ? 1 : -1;
    };
    int result = 1;
    for (std::uint64_t p = 2; p * p <= a; ++p)
        while (a % p == 0) {
            a /= p;
            result *= at_prime(p);
        }
    if (a > 1)
        result *= at_prime(a);
    return result;
}

// Dirichlet's class number formula for D < 0 fundamental.
inline long dirichlet_class_number(std::int64_t D)
{
    std::int64_t const n = -D;
    long w = D == -3 ? 6 : D == -4 ? 4 : 2;
    long long sum = 0;
    for (std::int64_t a = 1; a < n; ++a)
        sum += kronecker_disc(D, static_cast<std::uint64_t>(a)) * a;
    return static_cast<long>(w * std::llabs(sum) / (2 * n));
}

// Trace of gamma^e for gamma^2 = t gamma - n, via exact binary powering of
// u + v gamma in Z[gamma].
inline mpz_class ring_power_trace(mpz_class const & t, mpz_class const & n, unsigned long e)
{
    using pair = std::pair<mpz_class, mpz_class>;
    auto mul = [&](pair const & x, pair const & y) {
        // (a + b g)(c + d g) = ac + (ad + bc) g + bd g^2, g^2 = t g - n
        mpz_class bd = x.second * y.second;
        return pair{x.first * y.first - n * bd, x.first * y.second + x.second * y.first + t * bd};
    };
    pair r{1, 0}, b{0, 1};
    while (e) {
        if (e & 1)
            r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return 2 * r.first + r.second * t;
}

// (x + y sqrt D)/2 arithmetic, repeated squaring with a norm check at each step.
struct half_int
{
    mpz_class x, y;
};

inline half_int half_mul(mpz_class const & D, half_int const & u, half_int const & v)
{
    return {(u.x * v.x + D * u.y * v.y) / 2, (u.x * v.y + u.y * v.x) / 2};
}

inline mpz_class half_norm(mpz_class const & D, half_int const & u)
{
    return (u.x * u.x - D * u.y * u.y) / 4;
}

// Trace of beta^(2^k), checking N(beta^(2^j)) = N(beta)^(2^j) along the way.
inline mpz_class trace_by_squaring(mpz_class const & D, half_int beta, unsigned k, bool & norm_ok)
{
    mpz_class n = half_norm(D, beta);
    norm_ok = true;
    for (unsigned j = 0; j < k; ++j) {
        beta = half_mul(D, beta, beta);
        n = n * n;
        norm_ok = norm_ok && half_norm(D, beta) == n;
    }
    return beta.x;
}

// All (x, y) with x^2 - D y^2 = 4 N and x = D y mod 2: every element of norm N.
inline std::vector<half_int> elements_of_norm(long D, long N)
{
    std::vector<half_int> out;
    for (long y = 0; -D * y * y <= 4 * N; ++y) {
        long rest = 4 * N + D * y * y;
        for (long x = 0; x * x <= rest; ++x) {
            if (x * x != rest || ((x - D * y) % 2 + 2) % 2 != 0)
                continue;
            for (int sx : {1, -1})
                for (int sy : {1, -1})
                    out.push_back({sx * x, sy * y});
        }
    }
    return out;
}

} // namespace oracle

#endif
