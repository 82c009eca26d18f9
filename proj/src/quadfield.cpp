#include "qmbound/quadfield.hpp"

#include <utility>

#include "qmbound/errors.hpp"

namespace qmbound {

namespace {

Int mod_floor(Int const & a, Int const & m)
{
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int div_floor(Int const & a, Int const & m)
{
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Int parity_of(Int const & D)
{
    return mod_floor(D, 2);
}

/* Element u + v * omega0 with omega0 = (delta + sqrt D)/2, delta = D mod 2. */
struct lattice_vec
{
    Int u;
    Int v;
};

lattice_vec to_basis(Int const & delta, quad_int const & z)
{
    return {(z.x - delta * z.y) / 2, z.y};
}

/* Hermite normal form of the Z-module spanned by `gens`, returned as an ideal. */
ideal_rep ideal_from_generators(field_context const & ctx, std::vector<quad_int> const & gens)
{
    Int const delta = parity_of(ctx.D);
    std::vector<lattice_vec> vs;
    vs.reserve(gens.size());
    for (auto const & g : gens)
        vs.push_back(to_basis(delta, g));

    lattice_vec w{0, 0};
    for (auto const & v : vs) {
        if (v.v == 0)
            continue;
        if (w.v == 0) {
            w = v;
            continue;
        }
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), w.v.get_mpz_t(), v.v.get_mpz_t());
        w = {s * w.u + t * v.u, g};
    }
    if (w.v == 0)
        throw internal_error("ideal generators span a module of rank < 2");
    if (w.v < 0)
        w = {-w.u, -w.v};

    Int A = 0;
    for (auto const & v : vs) {
        Int k = v.v / w.v;
        Int u = v.u - k * w.u;
        A = gcd(A, u);
    }
    if (A == 0)
        throw internal_error("ideal generators span a module of rank < 2");

    Int const C = w.v;
    if (A % C != 0 || w.u % C != 0)
        throw internal_error("module is not an ideal of the maximal order");
    ideal_rep I;
    I.scale = C;
    I.a = A / C;
    I.b = mod_floor(2 * (w.u / C) + delta, 2 * I.a);
    return I;
}

std::vector<quad_int> basis_of(ideal_rep const & I)
{
    return {{2 * I.a * I.scale, 0}, {I.b * I.scale, I.scale}};
}

} // namespace

bool is_squarefree(Int const & n)
{
    if (n == 0)
        return false;
    auto f = factor(n);
    for (auto const & pp : f.prime_powers)
        if (pp.exponent > 1)
            return false;
    if (f.cofactor && mpz_perfect_square_p(f.cofactor->get_mpz_t()))
        return false;
    return true;
}

bool is_fundamental_discriminant(Int const & n)
{
    if (n == 0 || n == 1)
        return false;
    Int r = mod_floor(n, 4);
    if (r == 1)
        return is_squarefree(n);
    if (r == 0) {
        Int m = n / 4;
        Int rm = mod_floor(m, 4);
        return (rm == 2 || rm == 3) && is_squarefree(m);
    }
    return false;
}

field_context make_field(Int const & d_or_D)
{
    if (d_or_D >= 0)
        throw domain_error("not imaginary: " + to_string(d_or_D) + " >= 0");
    field_context ctx;
    if (is_squarefree(d_or_D)) {
        ctx.D = mod_floor(d_or_D, 4) == 1 ? d_or_D : 4 * d_or_D;
    } else if (is_fundamental_discriminant(d_or_D)) {
        ctx.D = d_or_D;
    } else {
        throw domain_error("input " + to_string(d_or_D) +
                           " is neither squarefree nor a fundamental discriminant");
    }
    for (auto const & pp : factor(ctx.D).prime_powers)
        ctx.ram_primes.push_back(pp.prime);
    return ctx;
}

std::string to_string(splitting s)
{
    switch (s) {
    case splitting::split:
        return "split";
    case splitting::inert:
        return "inert";
    case splitting::ramified:
        return "ramified";
    }
    return "?";
}

splitting splitting_type(field_context const & ctx, Int const & p)
{
    if (ctx.D % p == 0)
        return splitting::ramified;
    return kronecker(ctx.D, p) == 1 ? splitting::split : splitting::inert;
}

quad_int quadint_mul(Int const & D, quad_int const & u, quad_int const & v)
{
    return {(u.x * v.x + D * u.y * v.y) / 2, (u.x * v.y + u.y * v.x) / 2};
}

quad_int quadint_conj(quad_int const & u)
{
    return {u.x, -u.y};
}

quad_int quadint_pow(Int const & D, quad_int const & u, unsigned long e)
{
    quad_int result{2, 0};
    quad_int base = u;
    while (e > 0) {
        if (e & 1)
            result = quadint_mul(D, result, base);
        e >>= 1;
        if (e > 0)
            base = quadint_mul(D, base, base);
    }
    return result;
}

Int quadint_norm(Int const & D, quad_int const & u)
{
    return (u.x * u.x - D * u.y * u.y) / 4;
}

bool quadint_valid(Int const & D, quad_int const & u)
{
    return mod_floor(u.x - D * u.y, 2) == 0;
}

std::string to_string(Int const & D, quad_int const & u)
{
    return "(" + to_string(u.x) + " + " + to_string(u.y) + "*sqrt(" + to_string(D) + "))/2";
}

ideal_rep unit_ideal(field_context const & ctx)
{
    return {1, parity_of(ctx.D), 1};
}

ideal_rep principal_ideal(field_context const & ctx, quad_int const & beta)
{
    quad_int omega0{parity_of(ctx.D), 1};
    return ideal_from_generators(ctx, {beta, quadint_mul(ctx.D, beta, omega0)});
}

Int ideal_norm(ideal_rep const & I)
{
    return I.scale * I.scale * I.a;
}

bool ideal_valid(field_context const & ctx, ideal_rep const & I)
{
    if (I.a <= 0 || I.scale <= 0 || I.b < 0 || I.b >= 2 * I.a)
        return false;
    if (mod_floor(I.b - ctx.D, 2) != 0)
        return false;
    return mod_floor(I.b * I.b - ctx.D, 4 * I.a) == 0;
}

bool ideal_contains(field_context const &, ideal_rep const & I, quad_int const & u)
{
    if (u.y % I.scale != 0 || u.x % I.scale != 0)
        return false;
    Int Y = u.y / I.scale;
    Int rest = u.x / I.scale - Y * I.b;
    return rest % (2 * I.a) == 0;
}

ideal_rep ideal_conj(field_context const &, ideal_rep const & I)
{
    return {I.a, mod_floor(-I.b, 2 * I.a), I.scale};
}

ideal_rep prime_ideal_above(field_context const & ctx, Int const & p)
{
    if (splitting_type(ctx, p) == splitting::inert)
        throw precondition_error("prime " + to_string(p) + " is inert; no degree-one prime above it");
    Int const delta = parity_of(ctx.D);
    if (p == 2) {
        for (Int b = 0; b < 4; ++b)
            if (mod_floor(b - delta, 2) == 0 && mod_floor(b * b - ctx.D, 8) == 0)
                return {2, b, 1};
        throw internal_error("no square root of D modulo 8");
    }
    auto r = sqrt_mod_prime(ctx.D, p);
    if (!r)
        throw internal_error("D is not a square modulo a non-inert prime");
    Int best = -1;
    for (Int c : {*r, Int(mod_floor(-*r, p))}) {
        Int b = mod_floor(c - delta, 2) == 0 ? c : c + p;
        if (best < 0 || b < best)
            best = b;
    }
    return {p, best, 1};
}

ideal_rep ideal_mul(field_context const & ctx, ideal_rep const & I, ideal_rep const & J)
{
    ideal_rep Ip{I.a, I.b, 1};
    ideal_rep Jp{J.a, J.b, 1};
    std::vector<quad_int> gens;
    for (auto const & x : basis_of(Ip))
        for (auto const & y : basis_of(Jp))
            gens.push_back(quadint_mul(ctx.D, x, y));
    ideal_rep P = ideal_from_generators(ctx, gens);
    P.scale *= I.scale * J.scale;
    return P;
}

ideal_rep ideal_pow(field_context const & ctx, ideal_rep const & I, Int const & n)
{
    if (n < 1)
        throw precondition_error("ideal_pow exponent must be >= 1");
    ideal_rep result = unit_ideal(ctx);
    ideal_rep base = I;
    Int e = n;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            result = ideal_mul(ctx, result, base);
        e /= 2;
        if (e > 0)
            base = ideal_mul(ctx, base, base);
    }
    return result;
}

std::optional<quad_int> shortest_generator(field_context const & ctx, ideal_rep const & I)
{
    /* norm form a x^2 + b x y + c y^2 of the primitive part, basis (a, omega) */
    Int a = I.a, b = I.b;
    Int c = (b * b - ctx.D) / (4 * a);
    /* columns of the accumulated change of basis */
    Int m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    for (;;) {
        if (b > a || b <= -a) {
            Int k = div_floor(a - b, 2 * a);
            c = a * k * k + b * k + c;
            b = b + 2 * a * k;
            m01 += k * m00;
            m11 += k * m10;
        }
        if (a > c || (a == c && b < 0)) {
            std::swap(a, c);
            b = -b;
            Int t0 = m00, t1 = m10;
            m00 = m01;
            m10 = m11;
            m01 = -t0;
            m11 = -t1;
            continue;
        }
        break;
    }
    if (a != 1)
        return std::nullopt;
    quad_int beta{(2 * m00 * I.a + m10 * I.b) * I.scale, m10 * I.scale};
    if (beta.x < 0 || (beta.x == 0 && beta.y < 0))
        beta = {-beta.x, -beta.y};
    return beta;
}

} // namespace qmbound
