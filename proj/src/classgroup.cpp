#include "qmbound/classgroup.hpp"

#include <deque>
#include <tuple>
#include <utility>

#include "qmbound/errors.hpp"

namespace qmbound {

std::strong_ordering quad_form::operator<=>(quad_form const & o) const
{
    for (auto [x, y] : {std::pair{&a, &o.a}, std::pair{&b, &o.b}, std::pair{&c, &o.c}}) {
        int r = cmp(*x, *y);
        if (r != 0)
            return r < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::string to_string(quad_form const & f)
{
    return "(" + to_string(f.a) + "," + to_string(f.b) + "," + to_string(f.c) + ")";
}

Int discriminant(quad_form const & f)
{
    return f.b * f.b - 4 * f.a * f.c;
}

bool is_reduced(quad_form const & f)
{
    if (!(abs(f.b) <= f.a && f.a <= f.c))
        return false;
    if ((abs(f.b) == f.a || f.a == f.c) && f.b < 0)
        return false;
    return true;
}

quad_form reduce(quad_form f)
{
    if (f.a <= 0)
        throw precondition_error("reduce: form " + to_string(f) + " is not positive definite");
    for (;;) {
        if (f.b > f.a || f.b <= -f.a) {
            Int k;
            Int num = f.a - f.b;
            Int den = 2 * f.a;
            mpz_fdiv_q(k.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            f.c = f.a * k * k + f.b * k + f.c;
            f.b += 2 * f.a * k;
        }
        if (f.a > f.c || (f.a == f.c && f.b < 0)) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        return f;
    }
}

quad_form principal_form(Int const & D)
{
    Int b = D % 2 == 0 ? 0 : 1;
    return {1, b, (b * b - D) / 4};
}

quad_form inverse(quad_form const & f)
{
    return reduce({f.a, -f.b, f.c});
}

std::vector<quad_form> reduced_forms(Int const & D)
{
    if (D >= 0)
        throw domain_error("reduced_forms: discriminant must be negative");
    std::vector<quad_form> out;
    Int const amax = isqrt(-D / 3);
    for (Int a = 1; a <= amax; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            Int num = b * b - D;
            if (num % (4 * a) != 0)
                continue;
            Int c = num / (4 * a);
            if (c < a)
                continue;
            if (a == c && b < 0)
                continue;
            if (gcd(gcd(a, b), c) != 1)
                continue;
            out.push_back({a, b, c});
        }
    }
    return out;
}

Int class_number(Int const & D)
{
    return Int(static_cast<unsigned long>(reduced_forms(D).size()));
}

quad_form compose(Int const & D, quad_form const & f, quad_form const & g)
{
    quad_form f1 = f, f2 = g;
    if (f1.a > f2.a)
        std::swap(f1, f2);
    Int s = (f1.b + f2.b) / 2;
    Int n = f2.b - s;

    Int y1, d;
    if (f2.a % f1.a == 0) {
        y1 = 0;
        d = f1.a;
    } else {
        Int v;
        mpz_gcdext(d.get_mpz_t(), y1.get_mpz_t(), v.get_mpz_t(), f2.a.get_mpz_t(), f1.a.get_mpz_t());
    }

    Int x2, y2, d1;
    if (s % d == 0) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        Int v;
        mpz_gcdext(d1.get_mpz_t(), x2.get_mpz_t(), v.get_mpz_t(), s.get_mpz_t(), d.get_mpz_t());
        y2 = -v;
    }

    Int v1 = f1.a / d1;
    Int v2 = f2.a / d1;
    Int r;
    Int t = y1 * y2 * n - x2 * f2.c;
    mpz_fdiv_r(r.get_mpz_t(), t.get_mpz_t(), v1.get_mpz_t());
    Int b3 = f2.b + 2 * v2 * r;
    Int a3 = v1 * v2;
    Int c3 = (b3 * b3 - D) / (4 * a3);
    return reduce({a3, b3, c3});
}

quad_form form_pow(Int const & D, quad_form const & f, Int const & n)
{
    quad_form result = principal_form(D);
    quad_form base = reduce(f);
    Int e = n;
    if (e < 0) {
        base = inverse(base);
        e = -e;
    }
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            result = compose(D, result, base);
        e /= 2;
        if (e > 0)
            base = compose(D, base, base);
    }
    return result;
}

Int form_order(Int const & D, quad_form const & f)
{
    quad_form const id = principal_form(D);
    quad_form const start = reduce(f);
    quad_form cur = start;
    Int order = 1;
    while (cur != id) {
        cur = compose(D, cur, start);
        ++order;
    }
    return order;
}

Int exponent(Int const & D)
{
    Int e = 1;
    for (auto const & f : reduced_forms(D))
        e = lcm(e, form_order(D, f));
    return e;
}

void attach_class_group(field_context & ctx)
{
    ctx.class_number = class_number(ctx.D);
    ctx.exponent = exponent(ctx.D);
}

quad_form ideal_class_of(field_context const & ctx, ideal_rep const & I)
{
    return reduce({I.a, I.b, (I.b * I.b - ctx.D) / (4 * I.a)});
}

std::set<quad_form> generated_subgroup(Int const & D, std::vector<quad_form> const & classes)
{
    std::set<quad_form> seen{principal_form(D)};
    std::deque<quad_form> frontier{principal_form(D)};
    while (!frontier.empty()) {
        quad_form e = frontier.front();
        frontier.pop_front();
        for (auto const & g : classes) {
            quad_form p = compose(D, e, g);
            if (seen.insert(p).second)
                frontier.push_back(p);
        }
    }
    return seen;
}

bool generates(Int const & D, std::vector<quad_form> const & classes)
{
    return Int(static_cast<unsigned long>(generated_subgroup(D, classes).size())) == class_number(D);
}

split_prime make_split_prime(field_context const & ctx, Int const & l)
{
    if (!is_prime(l) || splitting_type(ctx, l) != splitting::split)
        throw domain_error(to_string(l) + " is not a prime that splits in the field");
    split_prime sp;
    sp.l = l;
    sp.ideal = prime_ideal_above(ctx, l);
    sp.form = ideal_class_of(ctx, sp.ideal);
    sp.principal = sp.form == principal_form(ctx.D);
    sp.class_order = form_order(ctx.D, sp.form);
    return sp;
}

namespace {

void require_nontrivial_class_group(field_context const & ctx)
{
    Int h = ctx.class_number ? *ctx.class_number : class_number(ctx.D);
    if (h <= 1)
        throw precondition_error("class number is 1; there are no non-principal primes");
}

/* Walks the primes in increasing order and yields the non-principal split ones. */
class s0_scanner
{
    field_context const & ctx_;
    std::vector<std::uint32_t> primes_;
    std::size_t pos_ = 0;
    std::uint32_t limit_ = 0;
    unsigned long scanned_ = 0;

  public:
    explicit s0_scanner(field_context const & ctx) : ctx_(ctx) {}

    split_prime next()
    {
        for (;;) {
            if (pos_ == primes_.size()) {
                /* the longer sieve has the old one as a prefix, so pos_ stays valid */
                limit_ = limit_ == 0 ? 1024 : limit_ * 2;
                primes_ = primes_up_to(limit_);
            }
            if (scanned_ >= s0_scan_cap)
                throw internal_error("S0 search exhausted");
            Int l = primes_[pos_++];
            ++scanned_;
            if (splitting_type(ctx_, l) != splitting::split)
                continue;
            split_prime sp = make_split_prime(ctx_, l);
            if (!sp.principal)
                return sp;
        }
    }
};

} // namespace

std::vector<split_prime> enumerate_S0(field_context const & ctx, std::size_t count)
{
    require_nontrivial_class_group(ctx);
    s0_scanner scan(ctx);
    std::vector<split_prime> out;
    while (out.size() < count)
        out.push_back(scan.next());
    return out;
}

std::vector<split_prime> choose_S(field_context const & ctx)
{
    require_nontrivial_class_group(ctx);
    Int const h = ctx.class_number ? *ctx.class_number : class_number(ctx.D);
    s0_scanner scan(ctx);
    std::vector<split_prime> S;
    std::vector<quad_form> gens;
    std::set<quad_form> subgroup{principal_form(ctx.D)};
    while (Int(static_cast<unsigned long>(subgroup.size())) < h) {
        split_prime sp = scan.next();
        if (subgroup.contains(sp.form))
            continue;
        gens.push_back(sp.form);
        S.push_back(std::move(sp));
        subgroup = generated_subgroup(ctx.D, gens);
    }
    return S;
}

std::vector<split_prime> S_from_primes(field_context const & ctx, std::vector<Int> const & ls)
{
    require_nontrivial_class_group(ctx);
    std::set<Int> uniq(ls.begin(), ls.end());
    if (uniq.empty())
        throw domain_error("S override is empty");
    std::vector<split_prime> S;
    std::vector<quad_form> gens;
    for (auto const & l : uniq) {
        split_prime sp = make_split_prime(ctx, l);
        if (sp.principal)
            throw domain_error("S override prime " + to_string(l) + " is principal");
        gens.push_back(sp.form);
        S.push_back(std::move(sp));
    }
    if (!generates(ctx.D, gens))
        throw domain_error("S override does not generate the class group");
    return S;
}

} // namespace qmbound
