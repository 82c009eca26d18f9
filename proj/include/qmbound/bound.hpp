#ifndef QMBOUND_BOUND_HPP
#define QMBOUND_BOUND_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmbound/mazur.hpp"
#include "qmbound/weilsets.hpp"

namespace qmbound {

struct bound_params
{
    std::size_t s0_count = 4;
    std::int64_t mazur_bound = 1000000;
    factor_budget budget{};
    std::optional<std::vector<Int>> S_override;
    factor_table * table = nullptr;
    unsigned workers = 0;
};

/* Names of the pieces of the union, in report order. */
inline constexpr char const * component_names[] = {"ram",         "small",  "a1_intersection",
                                                   "a2_intersection", "a3_support", "mazur_primes",
                                                   "l_of_S"};

/*
 * The finite set of primes that can divide d(B), split into the pieces it
 * is made of. Every prime outside `union_primes` (and outside any listed
 * cofactor) is excluded.
 */
struct bound_report
{
    field_context field;
    std::vector<split_prime> S;
    std::vector<split_prime> s0_truncation;
    std::map<std::string, std::set<Int>> components;
    std::set<Int> union_primes;
    bool certified = false;
    std::vector<std::string> caveats;

    std::vector<aset> a1_families;
    std::vector<aset> a2_families;
    aset a3;
    mazur_result mazur;
    std::int64_t mazur_bound = 0;
};

/* Throws theorem_inapplicable when the class number is 1. */
bound_report assemble_bound(field_context const & ctx, bound_params const & params = {});

struct membership_evidence
{
    Int p;
    /* component name -> human-readable reason */
    std::map<std::string, std::string> reasons;
};

/*
 * Re-derives from scratch which components contain p and throws
 * integrity_error if that disagrees with the report.
 */
membership_evidence verify_prime_membership(field_context const & ctx, Int const & p,
                                            bound_report const & report);

/*
 * Squarefree products of an even number (2..max_factors) of distinct primes
 * from `primes` in which every factor split in k is 1 mod 4 and at least
 * one factor splits in k. Ascending.
 */
std::vector<Int> candidate_discriminants(field_context const & ctx, std::set<Int> const & primes,
                                         unsigned max_factors);
std::vector<Int> candidate_discriminants(field_context const & ctx, bound_report const & report,
                                         unsigned max_factors);

} // namespace qmbound

#endif
