#include "qmbound/mazur.hpp"

#include <algorithm>
#include <cstdlib>

#include "qmbound/errors.hpp"

namespace qmbound {

namespace {

/* Odd primes l with 4l < limit that split in k. */
std::vector<std::int64_t> split_primes_below_quarter(field_context const & ctx, std::int64_t limit)
{
    std::vector<std::int64_t> out;
    if (limit <= 12)
        return out;
    long const D = ctx.disc();
    for (std::uint32_t l : primes_up_to(static_cast<std::uint32_t>((limit - 1) / 4))) {
        if (l == 2)
            continue;
        if (D % static_cast<long>(l) != 0 && kronecker(D, l) == 1)
            out.push_back(l);
    }
    return out;
}

bool passes(std::int64_t N, std::vector<std::int64_t> const & split_primes)
{
    std::int64_t const absN = std::abs(N);
    for (std::int64_t l : split_primes) {
        if (4 * l >= absN)
            break;
        if (kronecker(N, l) == 1)
            return false;
    }
    return true;
}

mazur_result finish(field_context const & ctx, std::int64_t bound, std::vector<std::int64_t> members)
{
    mazur_result r;
    r.bound = bound;
    r.k_discriminant = ctx.D;
    r.members = std::move(members);
    std::int64_t largest = 0;
    for (auto m : r.members)
        largest = std::max(largest, std::abs(m));
    r.largest_gap_tail = bound - largest;
    return r;
}

} // namespace

bool is_in_mazur(field_context const & ctx, std::int64_t N)
{
    if (!is_fundamental_discriminant(Int(static_cast<long>(N))))
        throw domain_error(std::to_string(N) + " is not a fundamental discriminant");
    return passes(N, split_primes_below_quarter(ctx, std::abs(N)));
}

mazur_result mazur_prime_set(field_context const & ctx, std::int64_t bound)
{
    if (bound < 5)
        throw precondition_error("Mazur prime search needs bound >= 5");
    auto const split = split_primes_below_quarter(ctx, bound);
    std::vector<std::int64_t> members;
    for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(bound)))
        if (p % 4 == 1 && passes(p, split))
            members.push_back(p);
    return finish(ctx, bound, std::move(members));
}

mazur_result mazur_discriminants(field_context const & ctx, std::int64_t bound)
{
    if (bound < 1)
        throw precondition_error("Mazur discriminant search needs bound >= 1");
    auto const split = split_primes_below_quarter(ctx, bound);
    std::vector<std::int64_t> members;
    for (std::int64_t N = -bound; N <= bound; ++N) {
        std::int64_t r = ((N % 4) + 4) % 4;
        if (r != 0 && r != 1)
            continue;
        if (!is_fundamental_discriminant(Int(static_cast<long>(N))))
            continue;
        if (passes(N, split))
            members.push_back(N);
    }
    return finish(ctx, bound, std::move(members));
}

} // namespace qmbound
