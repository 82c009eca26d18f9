#include "qmbound/bound.hpp"

#include <algorithm>
#include <functional>

#include "qmbound/errors.hpp"

namespace qmbound {

namespace {

constexpr unsigned long small_prime_limit = 23;

field_context with_class_group(field_context ctx)
{
    if (!ctx.class_number || !ctx.exponent)
        attach_class_group(ctx);
    return ctx;
}

std::string join(std::vector<Int> const & xs)
{
    std::string s;
    for (auto const & x : xs) {
        if (!s.empty())
            s += ",";
        s += to_string(x);
    }
    return s;
}

void note_cofactors(std::vector<std::string> & caveats, aset const & set)
{
    auto cof = set.cofactors();
    if (cof.empty())
        return;
    caveats.push_back("unfactored cofactors in " + to_string(set.fam) + " (l=" + join(set.q_list) +
                      "): " + join(cof) + "; their prime divisors must be added to the union");
}

bool divides_listed_cofactor(Int const & p, aset const & set)
{
    for (auto const & c : set.cofactors())
        if (mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t()))
            return true;
    return false;
}

} // namespace

bound_report assemble_bound(field_context const & input, bound_params const & params)
{
    field_context const ctx = with_class_group(input);
    if (*ctx.class_number <= 1)
        throw theorem_inapplicable("class number of Q(sqrt " + to_string(ctx.D) +
                                   ") is 1; the bound needs h_k > 1");
    if (params.s0_count == 0)
        throw precondition_error("s0_count must be positive");
    if (params.mazur_bound < 5)
        throw precondition_error("mazur_bound must be at least 5");

    bound_report r;
    r.field = ctx;
    r.S = params.S_override ? S_from_primes(ctx, *params.S_override) : choose_S(ctx);
    r.s0_truncation = enumerate_S0(ctx, params.s0_count);
    r.mazur_bound = params.mazur_bound;

    auto & comp = r.components;
    for (auto const * name : component_names)
        comp[name];
    comp["ram"].insert(ctx.ram_primes.begin(), ctx.ram_primes.end());
    for (auto p : primes_up_to(small_prime_limit))
        comp["small"].insert(Int(p));

    auto a1 = intersect_supports(ctx, family::A1, r.s0_truncation, params.budget, params.table, params.workers);
    auto a2 = intersect_supports(ctx, family::A2, r.s0_truncation, params.budget, params.table, params.workers);
    comp["a1_intersection"] = a1.primes;
    comp["a2_intersection"] = a2.primes;
    r.a1_families = std::move(a1.families);
    r.a2_families = std::move(a2.families);

    r.a3 = family_A3(ctx, r.S);
    prime_support(r.a3, params.budget, params.table, params.workers);
    comp["a3_support"] = r.a3.support;

    r.mazur = mazur_prime_set(ctx, params.mazur_bound);
    for (auto m : r.mazur.members)
        comp["mazur_primes"].insert(Int(static_cast<long>(m)));

    for (auto const & q : r.S)
        comp["l_of_S"].insert(q.l);

    for (auto const & [name, primes] : comp)
        r.union_primes.insert(primes.begin(), primes.end());

    r.certified = a1.certified && a2.certified && r.a3.certified;
    note_cofactors(r.caveats, r.a1_families.front());
    note_cofactors(r.caveats, r.a2_families.front());
    note_cofactors(r.caveats, r.a3);
    std::int64_t largest = r.mazur.members.empty() ? 0 : r.mazur.members.back();
    r.caveats.push_back("Mazur set truncated at bound " + std::to_string(params.mazur_bound) +
                        " (largest member " + std::to_string(largest) + ", tail gap " +
                        std::to_string(r.mazur.largest_gap_tail) + ")");
    return r;
}

membership_evidence verify_prime_membership(field_context const & input, Int const & p,
                                            bound_report const & report)
{
    field_context const ctx = with_class_group(input);
    if (!is_prime(p))
        throw precondition_error(to_string(p) + " is not prime");

    membership_evidence ev;
    ev.p = p;
    std::map<std::string, bool> fresh;
    /* primes hidden in an unfactored cofactor may legitimately be missing from the report */
    std::map<std::string, bool> excused;

    fresh["ram"] = ctx.D % p == 0;
    if (fresh["ram"])
        ev.reasons["ram"] = to_string(p) + " divides D = " + to_string(ctx.D);

    fresh["small"] = p <= small_prime_limit;
    if (fresh["small"])
        ev.reasons["small"] = to_string(p) + " <= 23";

    auto check_family = [&](std::string const & name, auto make) {
        bool all = true;
        std::string witness;
        for (auto const & q : report.s0_truncation) {
            aset fam = make(ctx, make_split_prime(ctx, q.l));
            bool hit = false;
            for (auto const & e : fam.elements) {
                if (e.value != 0 && mpz_divisible_p(e.value.get_mpz_t(), p.get_mpz_t())) {
                    hit = true;
                    witness += (witness.empty() ? "" : "; ") + std::string("l=") + to_string(q.l) +
                               ": divides " + to_string(e.value);
                    break;
                }
            }
            if (!hit) {
                all = false;
                break;
            }
        }
        fresh[name] = all;
        if (all)
            ev.reasons[name] = witness;
    };
    check_family("a1_intersection",
                 [](field_context const & c, split_prime const & q) { return family_A1(c, q); });
    check_family("a2_intersection",
                 [](field_context const & c, split_prime const & q) { return family_A2(c, q); });
    if (!report.a1_families.empty())
        excused["a1_intersection"] = divides_listed_cofactor(p, report.a1_families.front());
    if (!report.a2_families.empty())
        excused["a2_intersection"] = divides_listed_cofactor(p, report.a2_families.front());

    {
        aset a3 = family_A3(ctx, report.S);
        fresh["a3_support"] = false;
        for (auto const & e : a3.elements) {
            if (e.value != 0 && mpz_divisible_p(e.value.get_mpz_t(), p.get_mpz_t())) {
                fresh["a3_support"] = true;
                ev.reasons["a3_support"] = "divides " + to_string(e.value);
                break;
            }
        }
        excused["a3_support"] = divides_listed_cofactor(p, report.a3);
    }

    fresh["mazur_primes"] = p % 4 == 1 && p <= report.mazur_bound && is_in_mazur(ctx, p.get_si());
    if (fresh["mazur_primes"])
        ev.reasons["mazur_primes"] = "prime discriminant " + to_string(p) + " passes the split-prime condition";

    fresh["l_of_S"] = std::any_of(report.S.begin(), report.S.end(), [&](auto const & q) { return q.l == p; });
    if (fresh["l_of_S"])
        ev.reasons["l_of_S"] = to_string(p) + " is the norm of a prime in S";

    bool claimed_any = false;
    for (auto const * name : component_names) {
        auto it = report.components.find(name);
        bool claimed = it != report.components.end() && it->second.contains(p);
        claimed_any = claimed_any || claimed;
        if (claimed != fresh[name] && !(fresh[name] && excused[name]))
            throw integrity_error("component " + std::string(name) + " disagrees on prime " + to_string(p) +
                                  ": report says " + (claimed ? "member" : "absent") + ", re-derivation says " +
                                  (fresh[name] ? "member" : "absent"));
    }
    if (report.union_primes.contains(p) != claimed_any)
        throw integrity_error("union membership of " + to_string(p) + " disagrees with its components");
    return ev;
}

std::vector<Int> candidate_discriminants(field_context const & ctx, std::set<Int> const & primes,
                                         unsigned max_factors)
{
    if (max_factors < 2 || max_factors % 2 != 0)
        throw precondition_error("max_factors must be an even integer >= 2");
    struct entry
    {
        Int p;
        bool split;
    };
    std::vector<entry> usable;
    for (auto const & p : primes) {
        bool split = splitting_type(ctx, p) == splitting::split;
        if (split && p % 4 != 1)
            continue;
        usable.push_back({p, split});
    }

    std::vector<Int> out;
    std::function<void(std::size_t, unsigned, Int const &, bool)> walk =
        [&](std::size_t from, unsigned taken, Int const & prod, bool has_split) {
            if (taken >= 2 && taken % 2 == 0 && has_split)
                out.push_back(prod);
            if (taken == max_factors)
                return;
            for (std::size_t i = from; i < usable.size(); ++i)
                walk(i + 1, taken + 1, prod * usable[i].p, has_split || usable[i].split);
        };
    walk(0, 0, Int(1), false);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Int> candidate_discriminants(field_context const & ctx, bound_report const & report,
                                         unsigned max_factors)
{
    return candidate_discriminants(ctx, report.union_primes, max_factors);
}

} // namespace qmbound
