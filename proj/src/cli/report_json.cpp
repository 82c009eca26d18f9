#include "qmbound/cli.hpp"

namespace qmbound::cli {

using nlohmann::json;

namespace {

template <typename Range>
json string_array(Range const & xs)
{
    json a = json::array();
    for (auto const & x : xs)
        a.push_back(to_string(x));
    return a;
}

json factorization_json(factored_integer const & f, json & element)
{
    json factors = json::array();
    for (auto const & pp : f.prime_powers)
        factors.push_back({{"p", to_string(pp.prime)}, {"e", std::to_string(pp.exponent)}});
    element["factors"] = factors;
    if (f.cofactor)
        element["cofactor"] = to_string(*f.cofactor);
    return element;
}

} // namespace

json field_json(field_context const & ctx)
{
    json j;
    j["D"] = to_string(ctx.D);
    j["ram"] = string_array(ctx.ram_primes);
    j["h_k"] = ctx.class_number ? json(to_string(*ctx.class_number)) : json(nullptr);
    j["h"] = ctx.exponent ? json(to_string(*ctx.exponent)) : json(nullptr);
    return j;
}

json family_json(field_context const & ctx, aset const & set)
{
    json j;
    j["family"] = to_string(set.fam);
    if (set.q_list.size() == 1 && set.fam != family::A3)
        j["l"] = to_string(set.q_list.front());
    else
        j["l"] = string_array(set.q_list);
    j["shift"] = string_array(set.shifts);
    if (set.beta) {
        auto const & b = *set.beta;
        Int n = quadint_norm(ctx.D, b);
        j["beta"] = {{"x", to_string(b.x)}, {"y", to_string(b.y)}, {"norm", to_string(n)},
                     {"text", to_string(ctx.D, b)}};
        j["trace_beta8"] = to_string(trace_power(b.x, n, 8));
        j["trace_beta24"] = to_string(trace_power(b.x, n, 24));
    }
    json elems = json::array();
    for (auto const & e : set.elements) {
        json el;
        el["value"] = to_string(e.value);
        if (e.factorization)
            factorization_json(*e.factorization, el);
        elems.push_back(el);
    }
    j["elements"] = elems;
    if (set.factored) {
        j["support"] = string_array(set.support);
        j["certified"] = set.certified;
    }
    return j;
}

json bound_report_json(bound_report const & r)
{
    json doc;
    doc["field"] = field_json(r.field);
    json S = json::array(), trunc = json::array();
    for (auto const & q : r.S)
        S.push_back(to_string(q.l));
    for (auto const & q : r.s0_truncation)
        trunc.push_back(to_string(q.l));
    doc["S"] = S;
    doc["s0_truncation"] = trunc;

    json fams = json::array();
    for (auto const & f : r.a1_families)
        fams.push_back(family_json(r.field, f));
    for (auto const & f : r.a2_families)
        fams.push_back(family_json(r.field, f));
    fams.push_back(family_json(r.field, r.a3));
    doc["families"] = fams;

    json mz;
    mz["bound"] = std::to_string(r.mazur.bound);
    json primes = json::array();
    for (auto m : r.mazur.members)
        primes.push_back(std::to_string(m));
    mz["primes"] = primes;
    mz["largest_gap_tail"] = std::to_string(r.mazur.largest_gap_tail);
    doc["mazur"] = mz;

    json comps;
    for (auto const & [name, set] : r.components)
        comps[name] = string_array(set);
    doc["bound"] = {{"components", comps},
                    {"union", string_array(r.union_primes)},
                    {"certified", r.certified},
                    {"caveats", r.caveats}};
    return doc;
}

} // namespace qmbound::cli
