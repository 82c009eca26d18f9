#ifndef QMBOUND_MAZUR_HPP
#define QMBOUND_MAZUR_HPP

#include <cstdint>
#include <vector>

#include "qmbound/quadfield.hpp"

namespace qmbound {

/*
 * Fundamental discriminants N such that no prime 2 < l < |N|/4 that splits
 * in k also splits in Q(sqrt N). The set is finite but no effective bound
 * is known, so searches are truncated at `bound`.
 */
struct mazur_result
{
    std::int64_t bound = 0;
    std::vector<std::int64_t> members;
    Int k_discriminant;
    /* bound minus the largest member (bound itself when empty) */
    std::int64_t largest_gap_tail = 0;
};

/* Throws domain_error when N is not a fundamental discriminant. */
bool is_in_mazur(field_context const & ctx, std::int64_t N);

/* Members that are primes p = 1 mod 4, p <= bound. */
mazur_result mazur_prime_set(field_context const & ctx, std::int64_t bound);

/* All members with |N| <= bound, ascending. */
mazur_result mazur_discriminants(field_context const & ctx, std::int64_t bound);

} // namespace qmbound

#endif
