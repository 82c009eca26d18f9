#ifndef QMBOUND_CLASSGROUP_HPP
#define QMBOUND_CLASSGROUP_HPP

#include <compare>
#include <set>
#include <string>
#include <vector>

#include "qmbound/quadfield.hpp"

namespace qmbound {

/* Binary quadratic form a x^2 + b x y + c y^2. */
struct quad_form
{
    Int a;
    Int b;
    Int c;

    bool operator==(quad_form const &) const = default;
    std::strong_ordering operator<=>(quad_form const & o) const;
};

std::string to_string(quad_form const & f);

Int discriminant(quad_form const & f);
bool is_reduced(quad_form const & f);
quad_form reduce(quad_form f);
quad_form principal_form(Int const & D);
quad_form inverse(quad_form const & f);

/* Reduced primitive forms of discriminant D, one per class, sorted by (a, b). */
std::vector<quad_form> reduced_forms(Int const & D);
Int class_number(Int const & D);

/* Reduced representative of the Dirichlet composition of f and g. */
quad_form compose(Int const & D, quad_form const & f, quad_form const & g);
quad_form form_pow(Int const & D, quad_form const & f, Int const & n);
Int form_order(Int const & D, quad_form const & f);

/* Largest order of a class: lcm of all orders. */
Int exponent(Int const & D);

/* Fills class_number and exponent of ctx. */
void attach_class_group(field_context & ctx);

quad_form ideal_class_of(field_context const & ctx, ideal_rep const & I);

/* Subgroup of Cl generated by `classes`, as a sorted set of reduced forms. */
std::set<quad_form> generated_subgroup(Int const & D, std::vector<quad_form> const & classes);
bool generates(Int const & D, std::vector<quad_form> const & classes);

/* A non-principal prime of k of degree one, with its class data. */
struct split_prime
{
    Int l;
    ideal_rep ideal;
    quad_form form;
    bool principal = false;
    Int class_order;
};

/* Class data for the degree-one prime above l (l must be split). */
split_prime make_split_prime(field_context const & ctx, Int const & l);

constexpr unsigned long s0_scan_cap = 1000000;

/* First `count` non-principal split primes, ordered by norm. */
std::vector<split_prime> enumerate_S0(field_context const & ctx, std::size_t count);

/* Greedy scan of S0: keep a prime iff it enlarges the generated subgroup. */
std::vector<split_prime> choose_S(field_context const & ctx);

/*
 * Validates a user-supplied generating set: every l must be split and
 * non-principal, and together they must generate the class group.
 */
std::vector<split_prime> S_from_primes(field_context const & ctx, std::vector<Int> const & ls);

} // namespace qmbound

#endif
