#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmbound/cli.hpp"
#include "qmbound/errors.hpp"

namespace qmbound::cli {

using nlohmann::json;

namespace {

struct failure
{
    int code;
    std::string kind;
    std::string reason;
};

void emit_error(std::ostream & err, failure const & f)
{
    json j{{"error", f.kind}, {"reason", f.reason}};
    err << j.dump() << '\n';
}

field_context load_field(run_config const & cfg)
{
    field_context ctx = make_field(parse_int(cfg.d_or_D));
    attach_class_group(ctx);
    return ctx;
}

bound_params params_from(run_config const & cfg, factor_table * table)
{
    if (cfg.s0_count == 0)
        throw domain_error("--s0-count must be positive");
    if (cfg.mazur_bound < 5)
        throw domain_error("--mazur-bound must be at least 5");
    bound_params p;
    p.s0_count = cfg.s0_count;
    p.mazur_bound = cfg.mazur_bound;
    p.budget = cfg.budget;
    p.table = table;
    p.workers = cfg.workers;
    if (cfg.S_override) {
        std::vector<Int> ls;
        for (auto const & s : *cfg.S_override)
            ls.push_back(parse_int(s));
        p.S_override = ls;
    }
    return p;
}

void require_h_gt_one(field_context const & ctx)
{
    if (*ctx.class_number <= 1)
        throw theorem_inapplicable("class number of Q(sqrt " + to_string(ctx.D) + ") is 1");
}

json split_prime_json(split_prime const & q)
{
    return {{"l", to_string(q.l)},
            {"ideal", {{"a", to_string(q.ideal.a)}, {"b", to_string(q.ideal.b)}}},
            {"form", {to_string(q.form.a), to_string(q.form.b), to_string(q.form.c)}},
            {"class_order", to_string(q.class_order)}};
}

/* The body of each subcommand; returns the exit code and fills `doc`. */
int dispatch(std::string const & sub, run_config const & cfg, json & doc, factor_table * table)
{
    field_context ctx = load_field(cfg);

    if (sub == "field") {
        doc["field"] = field_json(ctx);
        return exit_ok;
    }
    if (sub == "classgroup") {
        doc["field"] = field_json(ctx);
        json forms = json::array();
        for (auto const & f : reduced_forms(ctx.D))
            forms.push_back({{"a", to_string(f.a)},
                             {"b", to_string(f.b)},
                             {"c", to_string(f.c)},
                             {"order", to_string(form_order(ctx.D, f))}});
        doc["classgroup"] = {{"forms", forms}};
        return exit_ok;
    }
    if (sub == "mazur") {
        doc["field"] = field_json(ctx);
        auto m = mazur_prime_set(ctx, cfg.mazur_bound);
        json primes = json::array();
        for (auto x : m.members)
            primes.push_back(std::to_string(x));
        doc["mazur"] = {{"bound", std::to_string(m.bound)},
                        {"primes", primes},
                        {"largest_gap_tail", std::to_string(m.largest_gap_tail)}};
        if (cfg.all_discriminants) {
            json ds = json::array();
            for (auto x : mazur_discriminants(ctx, cfg.mazur_bound).members)
                ds.push_back(std::to_string(x));
            doc["mazur"]["discriminants"] = ds;
        }
        return exit_ok;
    }

    require_h_gt_one(ctx);
    bound_params params = params_from(cfg, table);

    if (sub == "s0") {
        doc["field"] = field_json(ctx);
        json s0 = json::array();
        for (auto const & q : enumerate_S0(ctx, params.s0_count))
            s0.push_back(split_prime_json(q));
        doc["s0"] = s0;
        auto S = params.S_override ? S_from_primes(ctx, *params.S_override) : choose_S(ctx);
        json js = json::array();
        for (auto const & q : S)
            js.push_back(to_string(q.l));
        doc["S"] = js;
        return exit_ok;
    }
    if (sub == "sets") {
        doc["field"] = field_json(ctx);
        auto S = params.S_override ? S_from_primes(ctx, *params.S_override) : choose_S(ctx);
        auto trunc = enumerate_S0(ctx, params.s0_count);
        auto a1 = intersect_supports(ctx, family::A1, trunc, params.budget, table, params.workers);
        auto a2 = intersect_supports(ctx, family::A2, trunc, params.budget, table, params.workers);
        aset a3 = family_A3(ctx, S);
        prime_support(a3, params.budget, table, params.workers);
        json js = json::array(), jt = json::array(), fams = json::array();
        for (auto const & q : S)
            js.push_back(to_string(q.l));
        for (auto const & q : trunc)
            jt.push_back(to_string(q.l));
        for (auto const & f : a1.families)
            fams.push_back(family_json(ctx, f));
        for (auto const & f : a2.families)
            fams.push_back(family_json(ctx, f));
        fams.push_back(family_json(ctx, a3));
        doc["S"] = js;
        doc["s0_truncation"] = jt;
        doc["families"] = fams;
        bool certified = a1.certified && a2.certified && a3.certified;
        doc["certified"] = certified;
        return cfg.require_certified && !certified ? exit_uncertified : exit_ok;
    }

    bound_report report = assemble_bound(ctx, params);
    doc = bound_report_json(report);
    if (sub == "candidates") {
        json c = json::array();
        for (auto const & d : candidate_discriminants(ctx, report, cfg.max_factors))
            c.push_back(to_string(d));
        doc["candidates"] = c;
    } else if (sub == "verify") {
        std::set<Int> primes = report.union_primes;
        for (auto const & s : cfg.verify_primes)
            primes.insert(parse_int(s));
        json ev = json::array();
        for (auto const & p : primes) {
            auto e = verify_prime_membership(ctx, p, report);
            json comps = json::object();
            for (auto const & [name, why] : e.reasons)
                comps[name] = why;
            ev.push_back({{"p", to_string(p)}, {"in_union", report.union_primes.contains(p)}, {"evidence", comps}});
        }
        doc["verification"] = ev;
    }
    return cfg.require_certified && !report.certified ? exit_uncertified : exit_ok;
}

} // namespace

int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Prime bounds for quaternion discriminants of Shimura curves with points over an "
                 "imaginary quadratic field"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all");

    run_config cfg;
    std::int64_t time_ms = cfg.budget.time_per_int.count();
    std::vector<std::string> S_list;

    char const * names[] = {"field", "classgroup", "s0", "sets", "mazur", "bound", "candidates", "verify"};
    std::vector<CLI::App *> subs;
    for (auto const * name : names) {
        auto * s = app.add_subcommand(name);
        s->add_option("--d", cfg.d_or_D, "squarefree d < 0 or fundamental discriminant D < 0")
            ->required()
            ->allow_extra_args(false);
        s->add_option("--s0-count", cfg.s0_count, "number of S0 primes intersected over");
        s->add_option("--mazur-bound", cfg.mazur_bound, "search bound for the Mazur set");
        s->add_option("--trial-bound", cfg.budget.trial_bound, "trial division bound");
        s->add_option("--rho-iters", cfg.budget.rho_iterations, "rho iterations per composite");
        s->add_option("--time-per-int-ms", time_ms, "wall-clock cap per factored integer");
        s->add_option("--cache", cfg.cache_path, "factorization cache file");
        s->add_flag("--require-certified", cfg.require_certified, "exit 3 if any factorization is incomplete");
        s->add_option("--S", S_list, "override the generating set S (comma separated primes)")->delimiter(',');
        s->add_option("--json", cfg.json_path, "write the JSON document here instead of stdout");
        s->add_option("--workers", cfg.workers, "factoring threads (0 = hardware concurrency)");
        if (std::string(name) == "candidates")
            s->add_option("--max-factors", cfg.max_factors, "largest number of prime factors (even)");
        if (std::string(name) == "verify")
            s->add_option("--p", cfg.verify_primes, "additional primes to verify")->delimiter(',');
        if (std::string(name) == "mazur")
            s->add_flag("--all-discriminants", cfg.all_discriminants, "also list all member discriminants");
        subs.push_back(s);
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (CLI::CallForHelp const & e) {
        out << app.help();
        return exit_ok;
    } catch (CLI::CallForAllHelp const & e) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (CLI::ParseError const & e) {
        emit_error(err, {exit_usage, "usage", e.what()});
        return exit_usage;
    }
    cfg.budget.time_per_int = std::chrono::milliseconds(time_ms);
    if (!S_list.empty())
        cfg.S_override = S_list;

    std::string sub;
    for (auto * s : subs)
        if (s->parsed())
            sub = s->get_name();

    json doc;
    int code = exit_ok;
    try {
        std::optional<factor_table> table;
        if (cfg.cache_path)
            table = cache_load(*cfg.cache_path);
        code = dispatch(sub, cfg, doc, table ? &*table : nullptr);
        if (cfg.cache_path)
            cache_store(*cfg.cache_path, *table);
    } catch (theorem_inapplicable const & e) {
        emit_error(err, {exit_class_number_one, "class_number_one", e.what()});
        return exit_class_number_one;
    } catch (cache_parse_error const & e) {
        emit_error(err, {exit_usage, "cache_parse", e.what()});
        return exit_usage;
    } catch (integrity_error const & e) {
        emit_error(err, {exit_usage, "integrity", e.what()});
        return exit_usage;
    } catch (std::exception const & e) {
        emit_error(err, {exit_usage, "domain", e.what()});
        return exit_usage;
    }

    std::string text = doc.dump(2) + "\n";
    if (cfg.json_path) {
        std::ofstream f(*cfg.json_path, std::ios::binary | std::ios::trunc);
        if (!f) {
            emit_error(err, {exit_usage, "io", "cannot write " + *cfg.json_path});
            return exit_usage;
        }
        f << text;
    } else {
        out << text;
    }
    return code;
}

int run(int argc, char const * const * argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

} // namespace qmbound::cli
