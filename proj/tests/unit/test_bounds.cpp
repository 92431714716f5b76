#include <gtest/gtest.h>

#include <cmath>

#include "ffk/bounds.hpp"
#include "ffk/errors.hpp"

using namespace ffk;
using namespace ffk::bounds;

namespace {

// Trial-division oracle for odd squarefree composites.
bool oracle_eligible(long n)
{
    if (n < 3 || n % 2 == 0) return false;
    int primes = 0;
    long r = n;
    for (long d = 3; d * d <= r; d += 2) {
        if (r % d != 0) continue;
        r /= d;
        if (r % d == 0) return false;
        ++primes;
    }
    if (r > 1) ++primes;
    return primes >= 2;
}

double oracle_lower(long n)
{
    double total = 0.0;
    long phi = n;
    std::vector<long> ps;
    for (long d = 3; d <= n; d += 2) {
        if (n % d == 0) {
            bool prime = true;
            for (long e = 3; e * e <= d; e += 2) prime = prime && d % e != 0;
            if (prime) ps.push_back(d);
        }
    }
    for (long p : ps) phi = phi / p * (p - 1);
    for (long p : ps) total += beta_sp_closed(n, p).get_d() / static_cast<double>(p - 1) * std::log(static_cast<double>(p));
    return phi * total;
}

}  // namespace

TEST(Factor, Examples)
{
    EXPECT_EQ(factor_odd_squarefree(15), (std::vector<long>{3, 5}));
    EXPECT_EQ(factor_odd_squarefree(105), (std::vector<long>{3, 5, 7}));
    EXPECT_EQ(factor_odd_squarefree(1001), (std::vector<long>{7, 11, 13}));
    for (long bad : {1L, 2L, 7L, 9L, 25L, 30L, 45L, 0L, -15L}) EXPECT_THROW(factor_odd_squarefree(bad), ParameterError) << bad;
}

TEST(EulerPhi, Values)
{
    EXPECT_EQ(euler_phi(15), 8);
    EXPECT_EQ(euler_phi(105), 48);
    EXPECT_EQ(euler_phi(std::vector<long>{3, 11}), 20);
}

TEST(ClosedForms, Frozen15)
{
    EXPECT_EQ(alpha(15, 5), 330975);
    EXPECT_EQ(alpha(15, 3), 276039);
    EXPECT_EQ(beta_sp_closed(15, 5), make_rational(4413, 11648));
    EXPECT_EQ(geometric_q(15, 5), make_rational(133, 60));
    EXPECT_EQ(geometric_q(15, 3), make_rational(407, 180));
}

TEST(ClosedForms, AlphaPolynomialByHand)
{
    // Horner-free evaluation of the alpha polynomial with plain 128-bit integers.
    for (long n : {15L, 21L, 105L, 1001L}) {
        for (long p : factor_odd_squarefree(n)) {
            const __int128 N = n;
            const __int128 P = p;
            const __int128 v = 4 * N * N * N * N * P - 6 * N * N * N * P * P - 24 * N * N * N * P + 37 * N * N * P * P +
                               44 * N * N * P - 72 * N * P * P - 4 * N * N - 12 * N * P + 36 * P * P;
            EXPECT_EQ(alpha(n, p), Integer(static_cast<long>(v)));
        }
    }
}

TEST(Geometric, N15)
{
    const Geometric g = geometric_contribution(15);
    ASSERT_EQ(g.terms.size(), 2u);
    EXPECT_EQ(g.terms[0].coefficient, make_rational(407, 45));
    EXPECT_EQ(g.terms[1].coefficient, make_rational(133, 30));
    const double expect = 407.0 / 45.0 * std::log(3.0) + 133.0 / 30.0 * std::log(5.0);
    EXPECT_NEAR(g.total, expect, 1e-12);
    EXPECT_NEAR(g.total, 17.0715, 1e-4);
}

TEST(UpperBound, FormulaAndMonotone)
{
    const double geo = geometric_contribution(15).total;
    EXPECT_NEAR(upper_bound(15, 1.0, 0.0), 180.0 * (8.0 * std::log(15.0) + geo), 1e-9);
    EXPECT_NEAR(upper_bound(15, 1.0, 0.0), 6972.46, 0.01);
    double prev = upper_bound(15, 0.1, 0.0);
    for (double k = 0.2; k < 3.0; k += 0.1) {
        const double cur = upper_bound(15, k, 0.5);
        EXPECT_GT(cur, prev);
        prev = cur;
    }
    EXPECT_THROW(upper_bound(15, 0.0, 0.0), ParameterError);
    EXPECT_THROW(upper_bound(15, -1.0, 2.0), ParameterError);
    EXPECT_THROW(upper_bound(15, NAN, 1.0), ParameterError);
    EXPECT_THROW(upper_bound(15, INFINITY, 1.0), ParameterError);
}

TEST(LowerBound, OracleAndSimple)
{
    for (long n : {15L, 21L, 33L, 105L, 1155L}) {
        EXPECT_NEAR(lower_bound(n), oracle_lower(n), 1e-12 * std::abs(oracle_lower(n)) + 1e-15) << n;
        EXPECT_GT(lower_bound(n), 0.0);
    }
    EXPECT_NEAR(simple_lower(15), 0.019257, 1e-6);
    EXPECT_NEAR(simple_lower(33), 0.012843, 1e-6);
    EXPECT_NEAR(mertens_diag(15), std::log(3.0) / 2 + std::log(5.0) / 4, 1e-15);
    EXPECT_NEAR(mertens_diag(105) - mertens_diag(15), std::log(7.0) / 6, 1e-15);
}

TEST(Report, Fields)
{
    const BoundReport r = bound_report(15, Kappa{1.0, 0.0}, 2000);
    EXPECT_EQ(r.g, 91);
    EXPECT_EQ(r.phi, 8);
    ASSERT_EQ(r.primes.size(), 2u);
    EXPECT_EQ(r.primes[1].p, 5);
    EXPECT_EQ(r.primes[1].m, 3);
    EXPECT_EQ(r.primes[1].s, 0);
    EXPECT_EQ(r.primes[1].beta, make_rational(4413, 11648));
    EXPECT_EQ(r.primes[1].lower_coefficient, make_rational(8, 4) * make_rational(4413, 11648));
    ASSERT_TRUE(r.upper.has_value());
    EXPECT_NEAR(*r.upper, upper_bound(15, 1.0, 0.0), 1e-9);
    EXPECT_FALSE(bound_report(15, std::nullopt, 2000).upper.has_value());
    EXPECT_FALSE(bound_report(15, std::nullopt, 3).primes[1].s.has_value());
    EXPECT_THROW(bound_report(25, std::nullopt, 2000), ParameterError);
}

TEST(Scan, EligibilityMatchesOracle)
{
    for (long n = -5; n < 3000; ++n) EXPECT_EQ(is_odd_squarefree_composite(n), oracle_eligible(n)) << n;
}

TEST(Scan, RowsUpTo100)
{
    const auto rows = scan(100, 1);
    std::vector<long> ns;
    for (const auto& r : rows) ns.push_back(r.N);
    EXPECT_EQ(ns, (std::vector<long>{15, 21, 33, 35, 39, 51, 55, 57, 65, 69, 77, 85, 87, 91, 93, 95}));
    for (const auto& r : rows) {
        EXPECT_EQ(r.phi, euler_phi(r.N));
        EXPECT_DOUBLE_EQ(r.lower, lower_bound(r.N));
        EXPECT_DOUBLE_EQ(r.simple, simple_lower(r.N));
        EXPECT_DOUBLE_EQ(r.ratio, r.lower / r.simple);
    }
}

TEST(Scan, ThreadCountDoesNotChangeRows)
{
    const auto a = scan(3000, 1);
    const auto b = scan(3000, 4);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].N, b[i].N);
        EXPECT_EQ(a[i].lower, b[i].lower);
    }
    EXPECT_TRUE(scan(14, 2).empty());
}
