#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qmbound/errors.hpp"
#include "qmbound/weilsets.hpp"

using namespace qmbound;

namespace {

std::vector<long> const test_fields{-20, -23, -24, -47, -84};

field_context field(long d)
{
    auto k = make_field(Int(d));
    attach_class_group(k);
    return k;
}

Int pow_int(Int const & b, unsigned long e)
{
    Int r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

std::vector<Int> values(aset const & s)
{
    std::vector<Int> out;
    for (auto const & e : s.elements)
        out.push_back(e.value);
    return out;
}

aset literal_set(std::vector<long> xs)
{
    aset s;
    s.fam = family::A3;
    for (long x : xs)
        s.elements.push_back({Int(x), std::nullopt});
    return s;
}

} // namespace

TEST(TracePower, Examples)
{
    EXPECT_EQ(trace_power(Int(4), Int(9), 2), -2);
    EXPECT_EQ(trace_power(Int(0), Int(13), 2), -26);
    EXPECT_EQ(trace_power(Int(5), Int(7), 0), 2);
    EXPECT_EQ(trace_power(Int(5), Int(7), 1), 5);
    EXPECT_EQ(trace_power(Int(11842), Int(43046721), 3), Int("131360949442"));
}

TEST(TracePower, OracleForTheD20Traces)
{
    // beta = 2 + sqrt(-5) = (4 + sqrt(-20))/2, squared repeatedly with a norm check
    bool ok = false;
    Int tr8 = oracle::trace_by_squaring(Int(-20), {4, 1}, 3, ok);
    ASSERT_TRUE(ok);
    EXPECT_EQ(tr8, 11842);
    EXPECT_EQ(trace_power(Int(4), Int(9), 8), tr8);
    EXPECT_EQ(trace_power(Int(4), Int(9), 24), trace_power(tr8, Int(43046721), 3));
}

TEST(TracePower, MatchesRingPowering)
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> td(-1000, 1000), nd(1, 100000);
    std::uniform_int_distribution<unsigned long> ed(0, 200);
    for (int i = 0; i < 200; ++i) {
        Int t = td(rng), n = nd(rng);
        unsigned long e = ed(rng);
        ASSERT_EQ(trace_power(t, n, e), oracle::ring_power_trace(t, n, e)) << t << " " << n << " " << e;
    }
}

TEST(TracePower, MatchesRecurrence)
{
    Int t = 7, n = 31;
    Int s0 = 2, s1 = t;
    for (unsigned long e = 2; e < 120; ++e) {
        Int s2 = t * s1 - n * s0;
        ASSERT_EQ(trace_power(t, n, e), s2);
        s0 = s1;
        s1 = s2;
    }
}

TEST(Beta, Examples)
{
    auto k = field(-20);
    auto s0 = enumerate_S0(k, 2);
    auto b3 = beta_for(k, s0[0]);
    EXPECT_EQ(quadint_trace(b3), 4);
    EXPECT_EQ(quadint_norm(k.D, b3), 9);
    EXPECT_EQ(abs(b3.y), 1);

    auto b7 = beta_for(k, s0[1]);
    EXPECT_EQ(quadint_norm(k.D, b7), 49);
    // 2 +- 3 sqrt(-5): the only norm-49 elements besides +-7 have x^2 + 5y^2 = 49 with y = +-3
    EXPECT_EQ(b7.x, 4);
    EXPECT_EQ(abs(b7.y), 3);

    auto principal = make_split_prime(k, Int(29));
    ASSERT_TRUE(principal.principal);
    EXPECT_THROW(beta_for(k, principal), qmbound::precondition_error);
}

TEST(Beta, GeneratesQToTheExponent)
{
    for (long d : test_fields) {
        auto k = field(d);
        for (auto const & q : enumerate_S0(k, 5)) {
            auto beta = beta_for(k, q);
            EXPECT_EQ(quadint_norm(k.D, beta), pow_int(q.l, exponent_of(k)));
            EXPECT_EQ(principal_ideal(k, beta), ideal_pow(k, q.ideal, *k.exponent));
        }
    }
}

TEST(TraceSet, Examples)
{
    auto ts = make_trace_set(Int(3), 2);
    ASSERT_EQ(ts.entries.size(), 7u);
    EXPECT_EQ(ts.entries.begin()->first, -3);
    EXPECT_EQ(ts.entries.rbegin()->first, 3);
    Int const two_3_24("564859072962");
    EXPECT_EQ(ts.weil_bound(), two_3_24);
    EXPECT_EQ(ts.entries.at(0), two_3_24);
    EXPECT_EQ(ts.entries.at(3), two_3_24);
    EXPECT_EQ(ts.entries.at(-3), two_3_24);
    for (long m : {-2L, -1L, 1L, 2L}) {
        EXPECT_LE(abs(ts.entries.at(m)), two_3_24);
        EXPECT_EQ(ts.entries.at(m), oracle::ring_power_trace(Int(-m), Int(3), 48));
    }
}

TEST(TraceSet, InvariantsOverS0)
{
    for (long d : test_fields) {
        auto k = field(d);
        unsigned long h = exponent_of(k);
        for (auto const & q : enumerate_S0(k, 4)) {
            auto ts = make_trace_set(q.l, h);
            EXPECT_EQ(ts.entries.at(0), ts.weil_bound());
            EXPECT_EQ(ts.weil_bound(), 2 * pow_int(q.l, 12 * h));
            for (auto const & [m, s] : ts.entries) {
                EXPECT_LE(Int(m) * m, 4 * q.l);
                EXPECT_LE(abs(s), ts.weil_bound());
                EXPECT_EQ(s, ts.entries.at(-m));
                // the opposite sign convention s_1 = +m gives the same value
                EXPECT_EQ(s, trace_power(Int(m), q.l, 24 * h));
            }
        }
    }
}

TEST(FamilyA1A2, Examples)
{
    auto k = field(-20);
    auto q3 = enumerate_S0(k, 1)[0];
    auto a1 = family_A1(k, q3);
    ASSERT_EQ(a1.shifts.size(), 1u);
    EXPECT_EQ(a1.shifts[0], Int("131360949442"));
    EXPECT_TRUE(a1.contains(Int("433498123520")));

    auto a2 = family_A2(k, q3);
    EXPECT_EQ(a2.shifts[0], Int("509759270082"));
    EXPECT_EQ(a2.shifts[0], pow_int(Int(3), 16) * 11842);
    EXPECT_TRUE(a2.contains(Int("55099802880")));
}

TEST(FamilyA1A2, IndependentOfGeneratorChoice)
{
    for (long d : test_fields) {
        auto k = field(d);
        for (auto const & q : enumerate_S0(k, 3)) {
            auto beta = beta_for(k, q);
            quad_int neg{-beta.x, -beta.y};
            auto conj = quadint_conj(beta);
            auto base1 = values(family_A1(k, q));
            auto base2 = values(family_A2(k, q));
            for (auto const & b : {neg, conj}) {
                EXPECT_EQ(values(family_A1_with(k, q, b)), base1);
                EXPECT_EQ(values(family_A2_with(k, q, b)), base2);
            }
        }
    }
}

TEST(FamilyA1A2, ZeroNeverOccurs)
{
    for (long d : test_fields) {
        auto k = field(d);
        for (auto const & q : enumerate_S0(k, 5)) {
            EXPECT_FALSE(family_A1(k, q).contains(Int(0))) << d << " l=" << q.l;
            EXPECT_FALSE(family_A2(k, q).contains(Int(0))) << d << " l=" << q.l;
        }
    }
}

TEST(FamilyA3, Examples)
{
    auto k = field(-20);
    auto S = choose_S(k);
    auto a3 = family_A3(k, S);
    EXPECT_TRUE(a3.contains(Int(0)));
    EXPECT_LE(a3.elements.size(), 7u);
    for (auto const & e : a3.elements)
        EXPECT_LE(e.value, 0);
    EXPECT_THROW(family_A3(k, {}), qmbound::precondition_error);
}

TEST(FamilyA3, ContainsZeroForEveryField)
{
    for (long d : test_fields) {
        auto k = field(d);
        auto a3 = family_A3(k, choose_S(k));
        EXPECT_TRUE(a3.contains(Int(0)));
        for (auto const & e : a3.elements)
            EXPECT_LE(e.value, 0);
        prime_support(a3, factor_budget{});
        for (auto const & e : a3.elements)
            if (e.value == 0)
                EXPECT_FALSE(e.factorization.has_value());
    }
}

TEST(PrimeSupport, Examples)
{
    auto zero = literal_set({0});
    prime_support(zero, factor_budget{});
    EXPECT_TRUE(zero.support.empty());
    EXPECT_TRUE(zero.certified);

    auto s = literal_set({-12, 18});
    prime_support(s, factor_budget{});
    EXPECT_EQ(s.support, (std::set<Int>{2, 3}));
    EXPECT_TRUE(s.certified);

    auto k = field(-20);
    auto a1 = family_A1(k, enumerate_S0(k, 1)[0]);
    prime_support(a1, factor_budget{});
    EXPECT_TRUE(a1.certified);
    for (auto const & e : a1.elements) {
        ASSERT_TRUE(e.factorization.has_value());
        EXPECT_EQ(e.factorization->reconstruct(), e.value);
        for (auto const & pp : e.factorization->prime_powers)
            EXPECT_TRUE(a1.support.contains(pp.prime));
    }
}

TEST(PrimeSupport, UncertifiedWhenBudgetRunsOut)
{
    Int p("100000000000000000000000000379"), q("100000000000000000000000000319");
    aset s;
    s.elements.push_back({p * q, std::nullopt});
    s.elements.push_back({Int(6), std::nullopt});
    prime_support(s, factor_budget{100, 20, std::chrono::milliseconds(500)});
    EXPECT_FALSE(s.certified);
    EXPECT_EQ(s.support, (std::set<Int>{2, 3}));
    EXPECT_EQ(s.cofactors(), (std::vector<Int>{p * q}));
}

TEST(PrimeSupport, ParallelMatchesSequential)
{
    auto k = field(-84);
    auto a3 = family_A3(k, choose_S(k));
    auto seq = a3, par = a3;
    prime_support(seq, factor_budget{}, nullptr, 1);
    prime_support(par, factor_budget{}, nullptr, 4);
    EXPECT_EQ(seq.support, par.support);
    for (std::size_t i = 0; i < seq.elements.size(); ++i)
        EXPECT_EQ(seq.elements[i].factorization, par.elements[i].factorization);
}

TEST(Intersect, Examples)
{
    auto k = field(-20);
    auto s0 = enumerate_S0(k, 2);
    factor_budget budget;

    auto one = intersect_supports(k, family::A1, {s0[0]}, budget);
    auto fam = family_A1(k, s0[0]);
    prime_support(fam, budget);
    EXPECT_EQ(one.primes, fam.support);
    EXPECT_TRUE(one.certified);

    auto two = intersect_supports(k, family::A1, s0, budget);
    EXPECT_TRUE(std::includes(one.primes.begin(), one.primes.end(), two.primes.begin(), two.primes.end()));

    // anything dropped divides no element of the l = 7 family
    auto fam7 = family_A1(k, s0[1]);
    for (auto const & p : one.primes) {
        bool divides = false;
        for (auto const & e : fam7.elements)
            divides = divides || (e.value != 0 && e.value % p == 0);
        EXPECT_EQ(two.primes.contains(p), divides) << p;
    }
    EXPECT_THROW(intersect_supports(k, family::A1, {}, budget), qmbound::precondition_error);
}

TEST(Intersect, ShrinksAsTruncationGrows)
{
    for (long d : test_fields) {
        auto k = field(d);
        auto s0 = enumerate_S0(k, 5);
        for (auto fam : {family::A1, family::A2}) {
            std::set<Int> prev;
            for (std::size_t n = 1; n <= s0.size(); ++n) {
                std::vector<split_prime> trunc(s0.begin(), s0.begin() + static_cast<std::ptrdiff_t>(n));
                auto r = intersect_supports(k, fam, trunc, factor_budget{});
                if (n > 1)
                    EXPECT_TRUE(std::includes(prev.begin(), prev.end(), r.primes.begin(), r.primes.end()));
                prev = r.primes;
            }
        }
    }
}
