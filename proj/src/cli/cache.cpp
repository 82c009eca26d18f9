#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qmbound/cli.hpp"
#include "qmbound/errors.hpp"

namespace qmbound::cli {

std::string format_cache_line(factored_integer const & f)
{
    std::string s = to_string(f.value) + "=";
    bool first = true;
    for (auto const & pp : f.prime_powers) {
        if (!first)
            s += "*";
        first = false;
        s += to_string(pp.prime) + "^" + std::to_string(pp.exponent);
    }
    if (f.cofactor) {
        if (!first)
            s += "*";
        s += "C" + to_string(*f.cofactor);
    }
    return s;
}

factored_integer parse_cache_line(std::string const & line, std::size_t line_no)
{
    auto fail = [&](std::string const & why) { return cache_parse_error(line_no, why + " in '" + line + "'"); };
    auto eq = line.find('=');
    if (eq == std::string::npos)
        throw fail("missing '='");

    factored_integer f;
    try {
        f.value = parse_int(line.substr(0, eq));
    } catch (domain_error const &) {
        throw fail("bad value");
    }
    if (f.value == 0)
        throw fail("zero has no factorization");
    f.sign = f.value < 0 ? -1 : 1;

    std::string rhs = line.substr(eq + 1);
    if (!rhs.empty()) {
        std::stringstream ss(rhs);
        std::string tok;
        while (std::getline(ss, tok, '*')) {
            if (f.cofactor)
                throw fail("cofactor must be the last factor");
            try {
                if (!tok.empty() && tok[0] == 'C') {
                    Int c = parse_int(tok.substr(1));
                    if (c <= 1)
                        throw fail("cofactor must exceed 1");
                    f.cofactor = c;
                    continue;
                }
                auto caret = tok.find('^');
                Int p = parse_int(tok.substr(0, caret));
                unsigned long e = 1;
                if (caret != std::string::npos) {
                    Int ez = parse_int(tok.substr(caret + 1));
                    if (ez < 1 || !ez.fits_ulong_p())
                        throw fail("bad exponent");
                    e = ez.get_ui();
                }
                if (p < 2 || !is_prime(p))
                    throw fail("factor " + to_string(p) + " is not prime");
                if (!f.prime_powers.empty() && f.prime_powers.back().prime >= p)
                    throw fail("primes not strictly ascending");
                f.prime_powers.push_back({p, static_cast<unsigned>(e)});
            } catch (domain_error const &) {
                throw fail("bad factor '" + tok + "'");
            }
        }
    }
    if (f.reconstruct() != f.value)
        throw fail("factors do not multiply to the value");
    return f;
}

factor_table cache_load(std::string const & path)
{
    factor_table table;
    std::ifstream in(path);
    if (!in)
        return table;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        if (line.empty())
            continue;
        table.insert(parse_cache_line(line, n));
    }
    return table;
}

void cache_store(std::string const & path, factor_table const & table)
{
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write cache file " + tmp.string());
        for (auto const & f : table.entries())
            out << format_cache_line(f) << '\n';
        if (!out)
            throw std::runtime_error("error writing cache file " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace qmbound::cli
