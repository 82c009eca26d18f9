#include "qmbound/weilsets.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "qmbound/errors.hpp"

namespace qmbound {

Int trace_power(Int const & t, Int const & n, unsigned long e)
{
    if (e == 0)
        return 2;
    /* ladder on (V_k, V_{k+1}, n^k) */
    Int vk = 2, vk1 = t, nk = 1;
    for (int i = 63 - __builtin_clzl(e); i >= 0; --i) {
        Int cross = vk * vk1 - t * nk;
        if ((e >> i) & 1) {
            vk1 = vk1 * vk1 - 2 * nk * n;
            vk = std::move(cross);
            nk = nk * nk * n;
        } else {
            vk = vk * vk - 2 * nk;
            vk1 = std::move(cross);
            nk = nk * nk;
        }
    }
    return vk;
}

unsigned long exponent_of(field_context const & ctx)
{
    if (!ctx.exponent)
        throw precondition_error("class group exponent not attached to the field");
    return ctx.exponent->get_ui();
}

quad_int beta_for(field_context const & ctx, split_prime const & q)
{
    if (q.principal)
        throw precondition_error("prime above " + to_string(q.l) + " is principal, not in S0");
    unsigned long const h = exponent_of(ctx);
    ideal_rep qh = ideal_pow(ctx, q.ideal, Int(h));
    auto beta = shortest_generator(ctx, qh);
    if (!beta)
        throw internal_error("q^h is not principal for q above " + to_string(q.l));
    Int lh;
    mpz_pow_ui(lh.get_mpz_t(), q.l.get_mpz_t(), h);
    if (quadint_norm(ctx.D, *beta) != lh)
        throw internal_error("generator of q^h has the wrong norm");
    return *beta;
}

Int trace_set::weil_bound() const
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), l.get_mpz_t(), 12 * h);
    return 2 * r;
}

std::set<Int> trace_set::values() const
{
    std::set<Int> out;
    for (auto const & [m, s] : entries)
        out.insert(s);
    return out;
}

trace_set make_trace_set(Int const & l, unsigned long h)
{
    if (h == 0)
        throw precondition_error("trace set needs h >= 1");
    trace_set ts;
    ts.l = l;
    ts.h = h;
    long const mmax = isqrt(4 * l).get_si();
    for (long m = -mmax; m <= mmax; ++m)
        ts.entries.emplace(m, trace_power(Int(-m), l, 24 * h));
    return ts;
}

std::string to_string(family f)
{
    switch (f) {
    case family::A1:
        return "A1";
    case family::A2:
        return "A2";
    case family::A3:
        return "A3";
    }
    return "?";
}

bool aset::contains(Int const & v) const
{
    return std::binary_search(elements.begin(), elements.end(), aset_element{v, {}},
                              [](auto const & x, auto const & y) { return x.value < y.value; });
}

std::vector<Int> aset::cofactors() const
{
    std::vector<Int> out;
    for (auto const & e : elements)
        if (e.factorization && e.factorization->cofactor)
            out.push_back(*e.factorization->cofactor);
    return out;
}

namespace {

aset shifted_family(family fam, std::vector<Int> q_list, std::vector<trace_set> const & sets,
                    std::vector<Int> shifts)
{
    std::set<Int> values;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (auto const & [m, s] : sets[i].entries)
            values.insert(s - shifts[i]);
    aset out;
    out.fam = fam;
    out.q_list = std::move(q_list);
    out.shifts = std::move(shifts);
    for (auto const & v : values)
        out.elements.push_back({v, std::nullopt});
    return out;
}

Int power(Int const & b, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

} // namespace

aset family_A1_with(field_context const & ctx, split_prime const & q, quad_int const & beta)
{
    unsigned long const h = exponent_of(ctx);
    Int const norm = quadint_norm(ctx.D, beta);
    Int shift = trace_power(quadint_trace(beta), norm, 24);
    aset out = shifted_family(family::A1, {q.l}, {make_trace_set(q.l, h)}, {shift});
    out.beta = beta;
    return out;
}

aset family_A2_with(field_context const & ctx, split_prime const & q, quad_int const & beta)
{
    unsigned long const h = exponent_of(ctx);
    Int const norm = quadint_norm(ctx.D, beta);
    Int shift = power(q.l, 8 * h) * trace_power(quadint_trace(beta), norm, 8);
    aset out = shifted_family(family::A2, {q.l}, {make_trace_set(q.l, h)}, {shift});
    out.beta = beta;
    return out;
}

aset family_A1(field_context const & ctx, split_prime const & q)
{
    return family_A1_with(ctx, q, beta_for(ctx, q));
}

aset family_A2(field_context const & ctx, split_prime const & q)
{
    return family_A2_with(ctx, q, beta_for(ctx, q));
}

aset family_A3(field_context const & ctx, std::vector<split_prime> const & S)
{
    if (S.empty())
        throw precondition_error("A3 needs a nonempty set S");
    unsigned long const h = exponent_of(ctx);
    std::vector<Int> ls, shifts;
    std::vector<trace_set> sets;
    for (auto const & q : S) {
        ls.push_back(q.l);
        shifts.push_back(2 * power(q.l, 12 * h));
        sets.push_back(make_trace_set(q.l, h));
    }
    return shifted_family(family::A3, std::move(ls), sets, std::move(shifts));
}

void prime_support(aset & set, factor_budget const & budget, factor_table * table, unsigned workers)
{
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < set.elements.size(); ++i) {
        set.elements[i].factorization.reset();
        if (set.elements[i].value != 0)
            todo.push_back(i);
    }

    auto work = [&](std::size_t i) {
        set.elements[i].factorization = factor_cached(set.elements[i].value, budget, table);
    };
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || todo.size() <= 1) {
        for (auto i : todo)
            work(i);
    } else {
        /* each slot is written by exactly one worker, so the result does not depend on scheduling */
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < std::min<std::size_t>(workers, todo.size()); ++w)
            pool.emplace_back([&] {
                for (std::size_t k; (k = next.fetch_add(1)) < todo.size();)
                    work(todo[k]);
            });
    }

    set.support.clear();
    set.certified = true;
    for (auto const & e : set.elements) {
        if (!e.factorization)
            continue;
        for (auto const & pp : e.factorization->prime_powers)
            set.support.insert(pp.prime);
        if (!e.factorization->complete())
            set.certified = false;
    }
    set.factored = true;
}

bool divides_some_element(Int const & p, aset const & set)
{
    for (auto const & e : set.elements)
        if (e.value != 0 && mpz_divisible_p(e.value.get_mpz_t(), p.get_mpz_t()))
            return true;
    return false;
}

intersection_result intersect_supports(field_context const & ctx, family fam,
                                       std::vector<split_prime> const & truncation,
                                       factor_budget const & budget, factor_table * table,
                                       unsigned workers)
{
    if (truncation.empty())
        throw precondition_error("intersection over an empty truncation of S0");
    if (fam == family::A3)
        throw precondition_error("intersections are taken over A1 or A2 only");
    intersection_result out;
    for (auto const & q : truncation)
        out.families.push_back(fam == family::A1 ? family_A1(ctx, q) : family_A2(ctx, q));
    prime_support(out.families.front(), budget, table, workers);
    out.certified = out.families.front().certified;
    for (auto const & p : out.families.front().support) {
        bool keep = true;
        for (std::size_t i = 1; i < out.families.size() && keep; ++i)
            keep = divides_some_element(p, out.families[i]);
        if (keep)
            out.primes.insert(p);
    }
    return out;
}

} // namespace qmbound
