#ifndef QMBOUND_QUADFIELD_HPP
#define QMBOUND_QUADFIELD_HPP

#include <optional>
#include <string>
#include <vector>

#include "qmbound/arith.hpp"

namespace qmbound {

/*
 * An imaginary quadratic field, identified by its fundamental discriminant.
 * class_number and exponent are filled in by attach_class_group().
 */
struct field_context
{
    Int D;
    std::vector<Int> ram_primes;
    std::optional<Int> class_number;
    std::optional<Int> exponent;

    long disc() const { return D.get_si(); }
};

bool is_squarefree(Int const & n);
bool is_fundamental_discriminant(Int const & n);

/*
 * Accepts a squarefree d < 0 (the field Q(sqrt d)) or a fundamental
 * discriminant D < 0. Anything else is rejected rather than reduced.
 */
field_context make_field(Int const & d_or_D);

enum class splitting { split, inert, ramified };
std::string to_string(splitting s);

splitting splitting_type(field_context const & ctx, Int const & p);

/* (x + y sqrt(D)) / 2 with x = D y mod 2. */
struct quad_int
{
    Int x;
    Int y;

    bool operator==(quad_int const &) const = default;
};

quad_int quadint_mul(Int const & D, quad_int const & u, quad_int const & v);
quad_int quadint_conj(quad_int const & u);
quad_int quadint_pow(Int const & D, quad_int const & u, unsigned long e);
Int quadint_norm(Int const & D, quad_int const & u);
inline Int quadint_trace(quad_int const & u) { return u.x; }
bool quadint_valid(Int const & D, quad_int const & u);
std::string to_string(Int const & D, quad_int const & u);

/*
 * The ideal scale * (Z a + Z (b + sqrt D)/2), 0 <= b < 2a.
 * The primitive part (a, b) is the usual two-element normal form; scale
 * carries the rational content so that products such as q * conj(q) = (l)
 * stay representable. Norm is scale^2 * a.
 */
struct ideal_rep
{
    Int a;
    Int b;
    Int scale = 1;

    bool operator==(ideal_rep const &) const = default;
};

ideal_rep unit_ideal(field_context const & ctx);
ideal_rep principal_ideal(field_context const & ctx, quad_int const & beta);
Int ideal_norm(ideal_rep const & I);
bool ideal_valid(field_context const & ctx, ideal_rep const & I);
bool ideal_contains(field_context const & ctx, ideal_rep const & I, quad_int const & u);
ideal_rep ideal_conj(field_context const & ctx, ideal_rep const & I);

/* Degree-one prime over p with the smallest admissible b. Throws for inert p. */
ideal_rep prime_ideal_above(field_context const & ctx, Int const & p);

ideal_rep ideal_mul(field_context const & ctx, ideal_rep const & I, ideal_rep const & J);
ideal_rep ideal_pow(field_context const & ctx, ideal_rep const & I, Int const & n);

/*
 * Gauss-reduces the norm form of I. If the minimum equals N(I) the ideal is
 * principal and the minimizing element is returned, normalized to
 * trace >= 0 and y > 0 on a zero trace.
 */
std::optional<quad_int> shortest_generator(field_context const & ctx, ideal_rep const & I);

} // namespace qmbound

#endif
