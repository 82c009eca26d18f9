#include "qmbound/arith.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <memory>

#include "qmbound/errors.hpp"

namespace qmbound {

std::string to_string(Int const & n)
{
    return n.get_str(10);
}

Int parse_int(std::string const & s)
{
    if (s.empty())
        throw domain_error("empty integer literal");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size())
        throw domain_error("malformed integer literal '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw domain_error("malformed integer literal '" + s + "'");
    Int r;
    r.set_str(s[0] == '+' ? s.substr(1) : s, 10);
    return r;
}

int kronecker(Int const & a, Int const & n)
{
    if (n == 0)
        throw domain_error("kronecker symbol with n = 0");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

int kronecker(std::int64_t a, std::int64_t n)
{
    if (n == 0)
        throw domain_error("kronecker symbol with n = 0");
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    /* factor of 2 in n: (a|2) = 0 if a even, else +1 for a = +-1 mod 8 */
    int twos = 0;
    while ((n & 1) == 0) {
        n >>= 1;
        ++twos;
    }
    if (twos > 0) {
        if ((a & 1) == 0)
            return 0;
        std::int64_t r8 = ((a % 8) + 8) % 8;
        if ((twos & 1) && (r8 == 3 || r8 == 5))
            result = -result;
    }
    /* Jacobi (a|n), n odd positive */
    std::int64_t m = a % n;
    if (m < 0)
        m += n;
    std::uint64_t x = static_cast<std::uint64_t>(m);
    std::uint64_t y = static_cast<std::uint64_t>(n);
    while (x != 0) {
        while ((x & 1) == 0) {
            x >>= 1;
            std::uint64_t r = y & 7;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(x, y);
        if ((x & 3) == 3 && (y & 3) == 3)
            result = -result;
        x %= y;
    }
    return y == 1 ? result : 0;
}

namespace {

bool strong_probable_prime(Int const & n, Int const & d, unsigned s, unsigned long base)
{
    Int a = base;
    if (a % n == 0)
        return true;
    Int x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int const nm1 = n - 1;
    if (x == 1 || x == nm1)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == nm1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

Int half_mod(Int v, Int const & n)
{
    if (mpz_odd_p(v.get_mpz_t()))
        v += n;
    v /= 2;
    return v;
}

/* Strong Lucas probable-prime test with Selfridge's method A parameters. */
bool strong_lucas_probable_prime(Int const & n)
{
    if (mpz_perfect_square_p(n.get_mpz_t()))
        return false;
    long disc = 5;
    for (;;) {
        int j = kronecker(Int(disc), n);
        if (j == -1)
            break;
        if (j == 0) {
            Int ad = disc < 0 ? Int(-disc) : Int(disc);
            if (ad != n)
                return false;
        }
        disc = disc > 0 ? -(disc + 2) : -disc + 2;
    }
    Int const P = 1;
    Int const Q = Int(1 - disc) / 4;
    Int const Dz = disc;

    Int d = n + 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }

    Int U = 1, V = P, Qk = Q % n;
    if (Qk < 0)
        Qk += n;
    std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
    for (std::size_t i = bits - 1; i-- > 0;) {
        U = (U * V) % n;
        V = (V * V - 2 * Qk) % n;
        Qk = (Qk * Qk) % n;
        if (mpz_tstbit(d.get_mpz_t(), i)) {
            Int U2 = half_mod(((P * U + V) % n + n) % n, n);
            Int V2 = half_mod(((Dz * U + P * V) % n + n) % n, n);
            U = U2;
            V = V2;
            Qk = (Qk * Q) % n;
        }
    }
    U = (U % n + n) % n;
    V = (V % n + n) % n;
    Qk = (Qk % n + n) % n;
    if (U == 0 || V == 0)
        return true;
    for (unsigned r = 1; r < s; ++r) {
        V = ((V * V - 2 * Qk) % n + n) % n;
        if (V == 0)
            return true;
        Qk = (Qk * Qk) % n;
    }
    return false;
}

constexpr std::array<unsigned long, 13> mr_bases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

} // namespace

primality primality_test(Int const & n)
{
    if (n < 2)
        return primality::composite;
    for (unsigned long p : mr_bases) {
        if (n == p)
            return primality::prime;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return primality::composite;
    }
    Int d = n - 1;
    unsigned s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++s;
    }
    static Int const deterministic_limit("3317044064679887385961981");
    if (n < deterministic_limit) {
        for (unsigned long a : mr_bases)
            if (!strong_probable_prime(n, d, s, a))
                return primality::composite;
        return primality::prime;
    }
    if (!strong_probable_prime(n, d, s, 2))
        return primality::composite;
    return strong_lucas_probable_prime(n) ? primality::probable_prime : primality::composite;
}

bool is_prime(Int const & n)
{
    return primality_test(n) != primality::composite;
}

bool is_prime(std::uint64_t n)
{
    Int z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof n, 0, 0, &n);
    return is_prime(z);
}

Int isqrt(Int const & n)
{
    if (n < 0)
        throw domain_error("isqrt of negative integer");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

std::optional<Int> sqrt_mod_prime(Int const & a, Int const & p)
{
    Int n = a % p;
    if (n < 0)
        n += p;
    if (n == 0)
        return Int(0);
    if (kronecker(n, p) != 1)
        return std::nullopt;
    Int q = p - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    Int z = 2;
    while (kronecker(z, p) != -1)
        ++z;
    auto powm = [&](Int const & base, Int const & e) {
        Int r;
        mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        return r;
    };
    Int c = powm(z, q);
    Int r = powm(n, (q + 1) / 2);
    Int t = powm(n, q);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        Int t2 = t;
        while (t2 != 1) {
            t2 = (t2 * t2) % p;
            ++i;
        }
        Int b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j)
            b = (b * b) % p;
        r = (r * b) % p;
        c = (b * b) % p;
        t = (t * c) % p;
        m = i;
    }
    return r;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound)
{
    std::vector<std::uint32_t> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(std::size_t(bound) + 1, false);
    for (std::uint64_t i = 2; i <= bound; ++i) {
        if (composite[i])
            continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= bound; j += i)
            composite[j] = true;
    }
    return out;
}

namespace {

/* Shared sieve, grown on demand; readers hold a snapshot. */
std::shared_ptr<std::vector<std::uint32_t> const> trial_primes(std::uint32_t bound)
{
    static std::mutex mutex;
    static std::shared_ptr<std::vector<std::uint32_t> const> cached;
    static std::uint32_t cached_bound = 0;
    std::lock_guard lock(mutex);
    if (!cached || cached_bound < bound) {
        cached = std::make_shared<std::vector<std::uint32_t> const>(primes_up_to(bound));
        cached_bound = bound;
    }
    return cached;
}

using clock_type = std::chrono::steady_clock;

struct rho_state
{
    std::uint64_t iterations_left;
    clock_type::time_point deadline;

    bool exhausted() const { return iterations_left == 0 || clock_type::now() >= deadline; }
};

/* One Brent cycle search per polynomial offset until a proper divisor shows up. */
std::optional<Int> brent_split(Int const & n, rho_state & st)
{
    constexpr std::uint64_t batch = 128;
    Int y, x, ys, q, g, diff;
    for (unsigned long c = 1;; ++c) {
        if (st.exhausted())
            return std::nullopt;
        y = 2;
        q = 1;
        g = 1;
        std::uint64_t r = 1;
        auto step = [&](Int & v) {
            mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
            mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) {
                step(y);
                if (--st.iterations_left == 0)
                    return std::nullopt;
            }
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = std::min(batch, r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    step(y);
                    mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
                    mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
                    mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                    if (--st.iterations_left == 0)
                        return std::nullopt;
                }
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
                k += lim;
                if (g == 1 && clock_type::now() >= st.deadline)
                    return std::nullopt;
            }
            r *= 2;
        } while (g == 1);
        if (g == n) {
            /* the batch overshot; replay it one step at a time */
            do {
                step(ys);
                mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
                mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

/* n = root^k for the largest such k >= 2, if any. */
std::optional<std::pair<Int, unsigned>> perfect_power(Int const & n)
{
    if (!mpz_perfect_power_p(n.get_mpz_t()))
        return std::nullopt;
    std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned k = static_cast<unsigned>(bits); k >= 2; --k) {
        Int root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0)
            return std::make_pair(root, k);
    }
    return std::nullopt;
}

} // namespace

Int factored_integer::reconstruct() const
{
    Int r = sign;
    for (auto const & pp : prime_powers) {
        Int t;
        mpz_pow_ui(t.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
        r *= t;
    }
    if (cofactor)
        r *= *cofactor;
    return r;
}

factored_integer factor(Int const & n, factor_budget const & budget)
{
    if (n == 0)
        throw domain_error("factor of zero");
    factored_integer out;
    out.value = n;
    out.sign = n < 0 ? -1 : 1;
    Int m = abs(n);

    std::map<Int, unsigned> found;
    auto primes = trial_primes(budget.trial_bound);
    bool sqrt_covered = false;
    for (std::uint32_t p : *primes) {
        if (p > budget.trial_bound)
            break;
        if (m == 1)
            break;
        if (Int(p) * p > m) {
            sqrt_covered = true;
            break;
        }
        if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            unsigned e = 0;
            do {
                mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
                ++e;
            } while (mpz_divisible_ui_p(m.get_mpz_t(), p));
            found[Int(p)] += e;
        }
    }
    /* no factor <= trial_bound left, so anything below trial_bound^2 is prime */
    if (m != 1 && !sqrt_covered && Int(budget.trial_bound) * budget.trial_bound >= m)
        sqrt_covered = true;

    Int leftover = 1;
    if (m != 1) {
        rho_state st{budget.rho_iterations, clock_type::now() + budget.time_per_int};
        std::vector<std::pair<Int, unsigned>> work{{m, 1}};
        if (sqrt_covered) {
            found[m] += 1;
            work.clear();
        }
        while (!work.empty()) {
            auto [c, mult] = work.back();
            work.pop_back();
            if (c == 1)
                continue;
            if (is_prime(c)) {
                found[c] += mult;
                continue;
            }
            if (auto pw = perfect_power(c)) {
                work.emplace_back(pw->first, mult * pw->second);
                continue;
            }
            std::optional<Int> d;
            if (st.iterations_left > 0 && clock_type::now() < st.deadline)
                d = brent_split(c, st);
            if (!d) {
                Int t;
                mpz_pow_ui(t.get_mpz_t(), c.get_mpz_t(), mult);
                leftover *= t;
                continue;
            }
            Int other = c / *d;
            work.emplace_back(*d, mult);
            work.emplace_back(other, mult);
        }
    }

    for (auto const & [p, e] : found)
        out.prime_powers.push_back({p, e});
    if (leftover != 1)
        out.cofactor = leftover;
    return out;
}

factor_table::factor_table(factor_table const & o)
{
    std::lock_guard lock(o.mutex_);
    entries_ = o.entries_;
}

factor_table & factor_table::operator=(factor_table const & o)
{
    if (this != &o) {
        std::scoped_lock lock(mutex_, o.mutex_);
        entries_ = o.entries_;
    }
    return *this;
}

std::optional<factored_integer> factor_table::lookup(Int const & n) const
{
    std::lock_guard lock(mutex_);
    auto it = entries_.find(to_string(n));
    if (it == entries_.end() || !it->second.complete())
        return std::nullopt;
    return it->second;
}

void factor_table::insert(factored_integer const & f)
{
    std::lock_guard lock(mutex_);
    auto key = to_string(f.value);
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second.complete())
        return;
    entries_[key] = f;
}

std::size_t factor_table::size() const
{
    std::lock_guard lock(mutex_);
    return entries_.size();
}

std::vector<factored_integer> factor_table::entries() const
{
    std::vector<factored_integer> out;
    {
        std::lock_guard lock(mutex_);
        out.reserve(entries_.size());
        for (auto const & [k, v] : entries_)
            out.push_back(v);
    }
    std::sort(out.begin(), out.end(), [](auto const & a, auto const & b) { return a.value < b.value; });
    return out;
}

factored_integer factor_cached(Int const & n, factor_budget const & budget, factor_table * table)
{
    if (table) {
        if (auto hit = table->lookup(n))
            return *hit;
    }
    auto f = factor(n, budget);
    if (table)
        table->insert(f);
    return f;
}

} // namespace qmbound
