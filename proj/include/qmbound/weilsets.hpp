#ifndef QMBOUND_WEILSETS_HPP
#define QMBOUND_WEILSETS_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qmbound/classgroup.hpp"

namespace qmbound {

/*
 * s_e = g^e + conj(g)^e for g a root of X^2 - t X + n, i.e. the Lucas V
 * sequence: s_0 = 2, s_1 = t, s_j = t s_{j-1} - n s_{j-2}.
 */
Int trace_power(Int const & t, Int const & n, unsigned long e);

/* Generator of q^h, h the class group exponent; norm l^h. */
quad_int beta_for(field_context const & ctx, split_prime const & q);

/*
 * For every m with m^2 <= 4l, the trace of the (24h)-th power of a root of
 * X^2 + m X + l. Keys are m.
 */
struct trace_set
{
    Int l;
    unsigned long h = 0;
    std::map<long, Int> entries;

    /* 2 l^{12h}, the Weil bound and the m = 0 value */
    Int weil_bound() const;
    std::set<Int> values() const;
};

trace_set make_trace_set(Int const & l, unsigned long h);

enum class family { A1, A2, A3 };
std::string to_string(family f);

struct aset_element
{
    Int value;
    std::optional<factored_integer> factorization;
};

/*
 * One of the integer families built from trace sets. Elements are distinct
 * and ascending. support/certified are meaningful once prime_support() ran.
 */
struct aset
{
    family fam = family::A1;
    std::vector<Int> q_list;
    /* the subtracted constant, one per prime in q_list */
    std::vector<Int> shifts;
    std::optional<quad_int> beta;
    std::vector<aset_element> elements;
    std::set<Int> support;
    bool certified = false;
    bool factored = false;

    bool contains(Int const & v) const;
    std::vector<Int> cofactors() const;
};

unsigned long exponent_of(field_context const & ctx);

aset family_A1(field_context const & ctx, split_prime const & q);
aset family_A2(field_context const & ctx, split_prime const & q);
/* Same families with an explicit generator, e.g. -beta or conj(beta). */
aset family_A1_with(field_context const & ctx, split_prime const & q, quad_int const & beta);
aset family_A2_with(field_context const & ctx, split_prime const & q, quad_int const & beta);
aset family_A3(field_context const & ctx, std::vector<split_prime> const & S);

/* Factors every nonzero element under `budget`; zeros are skipped. */
void prime_support(aset & set, factor_budget const & budget, factor_table * table = nullptr,
                   unsigned workers = 0);

struct intersection_result
{
    std::set<Int> primes;
    bool certified = false;
    /* the first family, factored; the rest are kept unfactored */
    std::vector<aset> families;
};

/*
 * Intersection of the prime supports of A1 (or A2) over a truncation of S0.
 * Only the first family is factored; primes found there are then kept iff
 * they divide a nonzero element of every other family.
 */
intersection_result intersect_supports(field_context const & ctx, family fam,
                                       std::vector<split_prime> const & truncation,
                                       factor_budget const & budget, factor_table * table = nullptr,
                                       unsigned workers = 0);

/* p divides some nonzero element of the set. */
bool divides_some_element(Int const & p, aset const & set);

} // namespace qmbound

#endif
