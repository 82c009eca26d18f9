#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qmbound/cli.hpp"

using namespace qmbound;
using namespace qmbound::cli;
namespace fs = std::filesystem;

namespace {

struct run_output
{
    int code;
    std::string out, err;
};

run_output invoke(std::vector<std::string> const & args)
{
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(std::string const & name)
{
    auto dir = fs::temp_directory_path() / "qmbound_test_cli";
    fs::create_directories(dir);
    auto p = dir / name;
    fs::remove(p);
    return p;
}

std::string slurp(fs::path const & p)
{
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST(CacheLine, Examples)
{
    auto f = parse_cache_line("564859072962=2^1*3^24", 1);
    EXPECT_EQ(f.value, Int("564859072962"));
    ASSERT_EQ(f.prime_powers.size(), 2u);
    EXPECT_EQ(f.prime_powers[1], (prime_power{3, 24}));
    EXPECT_TRUE(f.complete());
    EXPECT_EQ(format_cache_line(f), "564859072962=2^1*3^24");

    try {
        parse_cache_line("abc=2", 1);
        FAIL() << "expected a parse error";
    } catch (cache_parse_error const & e) {
        EXPECT_EQ(e.line(), 1u);
    }
    EXPECT_THROW(parse_cache_line("12=3^1*2^2", 4), cache_parse_error);  // not ascending
    EXPECT_THROW(parse_cache_line("12=2^2*3^2", 4), cache_parse_error);  // wrong product
    EXPECT_THROW(parse_cache_line("12=2^2*3^1*C1", 4), cache_parse_error);
    EXPECT_THROW(parse_cache_line("12=2^2*C3*3^1", 4), cache_parse_error); // cofactor not last
    EXPECT_THROW(parse_cache_line("12=4^1*3^1", 4), cache_parse_error);    // 4 is not prime
}

TEST(CacheLine, NegativeAndIncomplete)
{
    Int p("100000000000000000000000000379"), q("100000000000000000000000000319");
    auto f = factor(-6 * p * q, factor_budget{100, 10, std::chrono::milliseconds(100)});
    ASSERT_FALSE(f.complete());
    auto line = format_cache_line(f);
    EXPECT_EQ(line, "-" + to_string(6 * p * q) + "=2^1*3^1*C" + to_string(p * q));
    EXPECT_EQ(parse_cache_line(line, 1), f);
}

TEST(Cache, EmptyAndMissingFiles)
{
    auto missing = scratch("missing.cache");
    EXPECT_EQ(cache_load(missing.string()).size(), 0u);
    auto empty = scratch("empty.cache");
    std::ofstream(empty).close();
    EXPECT_EQ(cache_load(empty.string()).size(), 0u);

    auto bad = scratch("bad.cache");
    std::ofstream(bad) << "6=2^1*3^1\nabc=2\n";
    try {
        cache_load(bad.string());
        FAIL() << "expected a parse error";
    } catch (cache_parse_error const & e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(Cache, RoundTrip)
{
    factor_table t;
    for (long n : {6L, -360L, 1000003L * 999983L, 564859072962L})
        factor_cached(Int(n), factor_budget{}, &t);
    Int p("100000000000000000000000000379"), q("100000000000000000000000000319");
    factor_cached(p * q * 10, factor_budget{100, 10, std::chrono::milliseconds(100)}, &t);

    auto path = scratch("rt.cache");
    cache_store(path.string(), t);
    auto back = cache_load(path.string());
    EXPECT_EQ(back.entries(), t.entries());
    cache_store(path.string(), back);
    auto text = slurp(path);
    EXPECT_EQ(cache_load(path.string()).entries(), t.entries());
    EXPECT_EQ(text.back(), '\n');
    for (auto const & entry : fs::directory_iterator(path.parent_path()))
        EXPECT_EQ(entry.path().string().find(".tmp"), std::string::npos) << entry.path();
}

TEST(Run, ExitCodes)
{
    auto ok = invoke({"bound", "--d", "-5", "--mazur-bound", "10000"});
    EXPECT_EQ(ok.code, exit_ok) << ok.err;
    auto doc = nlohmann::json::parse(ok.out);
    EXPECT_EQ(doc["field"]["D"], "-20");
    EXPECT_EQ(doc["bound"]["certified"], true);
    auto const & u = doc["bound"]["union"];
    for (std::string p : {"2", "3", "5", "7", "11", "13", "17", "19", "23"})
        EXPECT_NE(std::find(u.begin(), u.end(), p), u.end()) << p;

    auto one = invoke({"bound", "--d", "-1"});
    EXPECT_EQ(one.code, exit_class_number_one);
    auto err = nlohmann::json::parse(one.err);
    EXPECT_EQ(err["error"], "class_number_one");
    EXPECT_EQ(one.err.find('\n'), one.err.size() - 1);

    EXPECT_EQ(invoke({"bound"}).code, exit_usage);
    EXPECT_EQ(invoke({"bound", "--d", "-12"}).code, exit_usage);
    EXPECT_EQ(invoke({"bound", "--d", "7"}).code, exit_usage);
    EXPECT_EQ(invoke({"bound", "--d", "x"}).code, exit_usage);
    EXPECT_EQ(invoke({"frobnicate", "--d", "-5"}).code, exit_usage);
    EXPECT_EQ(invoke({"bound", "--d", "-5", "--S", "29"}).code, exit_usage);
    EXPECT_EQ(invoke({"candidates", "--d", "-5", "--max-factors", "3"}).code, exit_usage);

    auto unc = invoke({"bound", "--d", "-5", "--mazur-bound", "1000", "--trial-bound", "2", "--rho-iters", "1",
                       "--require-certified"});
    EXPECT_EQ(unc.code, exit_uncertified) << unc.err;
    auto loose = invoke({"bound", "--d", "-5", "--mazur-bound", "1000", "--trial-bound", "2", "--rho-iters", "1"});
    EXPECT_EQ(loose.code, exit_ok);
    EXPECT_EQ(nlohmann::json::parse(loose.out)["bound"]["certified"], false);
}

TEST(Run, Subcommands)
{
    auto cg = invoke({"classgroup", "--d", "-23"});
    ASSERT_EQ(cg.code, exit_ok) << cg.err;
    EXPECT_EQ(nlohmann::json::parse(cg.out)["classgroup"]["forms"].size(), 3u);

    auto fld = invoke({"field", "--d", "-1"});
    ASSERT_EQ(fld.code, exit_ok);
    EXPECT_EQ(nlohmann::json::parse(fld.out)["field"]["h_k"], "1");

    auto s0 = invoke({"s0", "--d", "-5", "--s0-count", "3"});
    ASSERT_EQ(s0.code, exit_ok);
    auto j = nlohmann::json::parse(s0.out);
    EXPECT_EQ(j["s0"].size(), 3u);
    EXPECT_EQ(j["S"], nlohmann::json::array({"3"}));

    auto sets = invoke({"sets", "--d", "-5", "--s0-count", "1"});
    ASSERT_EQ(sets.code, exit_ok);
    auto fams = nlohmann::json::parse(sets.out)["families"];
    ASSERT_EQ(fams.size(), 3u);
    EXPECT_EQ(fams[0]["family"], "A1");
    EXPECT_EQ(fams[0]["trace_beta24"], "131360949442");

    auto mz = invoke({"mazur", "--d", "-5", "--mazur-bound", "30", "--all-discriminants"});
    ASSERT_EQ(mz.code, exit_ok);
    auto m = nlohmann::json::parse(mz.out)["mazur"];
    EXPECT_EQ(m["primes"], nlohmann::json::array({"5", "17"}));
    EXPECT_TRUE(m.contains("discriminants"));

    auto cand = invoke({"candidates", "--d", "-5", "--mazur-bound", "1000"});
    ASSERT_EQ(cand.code, exit_ok);
    EXPECT_TRUE(nlohmann::json::parse(cand.out).contains("candidates"));

    auto ver = invoke({"verify", "--d", "-5", "--mazur-bound", "1000", "--p", "101,103"});
    ASSERT_EQ(ver.code, exit_ok) << ver.err;
    auto v = nlohmann::json::parse(ver.out)["verification"];
    EXPECT_GE(v.size(), 11u);
}

TEST(Run, JsonIsDeterministicAndCacheNeutral)
{
    std::vector<std::string> base{"bound", "--d", "-84", "--mazur-bound", "20000"};
    auto a = invoke(base);
    auto b = invoke(base);
    ASSERT_EQ(a.code, exit_ok);
    EXPECT_EQ(a.out, b.out);

    auto cache = scratch("det.cache");
    auto with = base;
    with.insert(with.end(), {"--cache", cache.string()});
    auto cold = invoke(with);
    ASSERT_TRUE(fs::exists(cache));
    auto warm = invoke(with);
    EXPECT_EQ(cold.out, a.out);
    EXPECT_EQ(warm.out, a.out);

    auto file = scratch("out.json");
    auto to_file = base;
    to_file.insert(to_file.end(), {"--json", file.string()});
    auto r = invoke(to_file);
    ASSERT_EQ(r.code, exit_ok);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(file), a.out);

    auto one_worker = base;
    one_worker.insert(one_worker.end(), {"--workers", "1"});
    EXPECT_EQ(invoke(one_worker).out, a.out);
}
