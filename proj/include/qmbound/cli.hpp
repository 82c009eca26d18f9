#ifndef QMBOUND_CLI_HPP
#define QMBOUND_CLI_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qmbound/bound.hpp"

namespace qmbound::cli {

enum exit_code : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_class_number_one = 2,
    exit_uncertified = 3,
};

struct run_config
{
    std::string d_or_D;
    std::size_t s0_count = 4;
    std::int64_t mazur_bound = 1000000;
    factor_budget budget{};
    std::optional<std::string> cache_path;
    bool require_certified = false;
    std::optional<std::vector<std::string>> S_override;
    std::optional<std::string> json_path;
    unsigned max_factors = 4;
    std::vector<std::string> verify_primes;
    bool all_discriminants = false;
    unsigned workers = 0;
};

/* ---- factorization cache file ---------------------------------------- */

class cache_parse_error : public std::runtime_error
{
    std::size_t line_;

  public:
    cache_parse_error(std::size_t line, std::string const & what)
        : std::runtime_error("cache line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }
};

/* `<value>=<p1>^<e1>*<p2>^<e2>[*C<cofactor>]`, primes ascending. */
std::string format_cache_line(factored_integer const & f);
factored_integer parse_cache_line(std::string const & line, std::size_t line_no);

/* A missing file loads as an empty table. */
factor_table cache_load(std::string const & path);
/* Writes a temporary file next to `path` and renames it into place. */
void cache_store(std::string const & path, factor_table const & table);

/* ---- JSON --------------------------------------------------------------- */

nlohmann::json field_json(field_context const & ctx);
nlohmann::json family_json(field_context const & ctx, aset const & set);
nlohmann::json bound_report_json(bound_report const & r);

/* ---- entry point -------------------------------------------------------- */

/* Runs one subcommand; the JSON document goes to `out` (or --json), errors to `err`. */
int run(std::vector<std::string> const & args, std::ostream & out, std::ostream & err);
int run(int argc, char const * const * argv);

} // namespace qmbound::cli

#endif
