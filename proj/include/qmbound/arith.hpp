#ifndef QMBOUND_ARITH_HPP
#define QMBOUND_ARITH_HPP

#include <chrono>
#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

namespace qmbound {

using Int = mpz_class;

/* Decimal rendering; used for JSON, cache lines and error messages. */
std::string to_string(Int const & n);
Int parse_int(std::string const & s);

/* Kronecker symbol (a|n), n != 0. Throws domain_error for n = 0. */
int kronecker(Int const & a, Int const & n);
int kronecker(std::int64_t a, std::int64_t n);

enum class primality { composite, prime, probable_prime };

/*
 * Strong base-a Miller-Rabin for the first 13 primes, which is a proof of
 * primality below 3.317e24. Above that threshold the answer is a
 * Baillie-PSW test (base-2 strong test plus strong Lucas test, Selfridge
 * parameters) and a pass is reported as probable_prime.
 */
primality primality_test(Int const & n);
bool is_prime(Int const & n);
bool is_prime(std::uint64_t n);

/* floor(sqrt(n)); throws domain_error for n < 0. */
Int isqrt(Int const & n);

/* Some r with r^2 = a mod p for an odd prime p (Tonelli-Shanks); nullopt for non-residues. */
std::optional<Int> sqrt_mod_prime(Int const & a, Int const & p);

/* Sieve of Eratosthenes; exactly the primes <= bound (empty if bound < 2). */
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

/* Effort limits for factor(). */
struct factor_budget
{
    std::uint32_t trial_bound = 1000000;
    std::uint64_t rho_iterations = 10000000;
    std::chrono::milliseconds time_per_int{10000};

    bool operator==(factor_budget const &) const = default;
};

struct prime_power
{
    Int prime;
    unsigned exponent;

    bool operator==(prime_power const &) const = default;
};

/*
 * value = sign * prod(p^e) * cofactor. A cofactor is present only when the
 * budget ran out: it is the product of the composite parts left over, it is
 * > 1, and it has no prime factor below the trial bound.
 */
struct factored_integer
{
    Int value;
    int sign = 1;
    std::vector<prime_power> prime_powers;
    std::optional<Int> cofactor;

    bool complete() const { return !cofactor.has_value(); }
    Int reconstruct() const;
    bool operator==(factored_integer const &) const = default;
};

/*
 * Trial division to budget.trial_bound, then Brent's variant of Pollard rho
 * with x -> x^2 + c, c = 1, 2, 3, ... started at x0 = 2. The iteration cap
 * is shared by all rho attempts on one composite. Deterministic unless the
 * wall-clock cap fires.
 */
factored_integer factor(Int const & n, factor_budget const & budget = {});

/*
 * Thread-safe memo of factorizations keyed by value. Only complete entries
 * are served back, so a table never changes what factor() would return.
 */
class factor_table
{
    mutable std::mutex mutex_;
    std::unordered_map<std::string, factored_integer> entries_;

  public:
    factor_table() = default;
    factor_table(factor_table const & o);
    factor_table & operator=(factor_table const & o);

    std::optional<factored_integer> lookup(Int const & n) const;
    void insert(factored_integer const & f);
    std::size_t size() const;
    /* Entries in ascending order of value. */
    std::vector<factored_integer> entries() const;
};

/* factor(), consulting and filling `table` when it is non-null. */
factored_integer factor_cached(Int const & n, factor_budget const & budget, factor_table * table);

} // namespace qmbound

#endif
