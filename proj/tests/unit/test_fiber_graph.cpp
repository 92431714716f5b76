#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "ffk/errors.hpp"
#include "ffk/fermat_model.hpp"
#include "ffk/fiber_graph.hpp"

using namespace ffk;
using namespace ffk::fiber;

namespace {

// Cycle of n (-2)-curves of multiplicity 1 (Kodaira I_n), generic genus 1.
FiberConfig cycle(int n)
{
    FiberConfig::Builder b(1, 100);
    for (int i = 0; i < n; ++i) b.add_component({1, 0, -2});
    for (int i = 0; i < n; ++i) b.add_intersection(i, (i + 1) % n);
    return std::move(b).build();
}

// Kodaira I_0^*: a doubled (-2)-curve meeting four reduced (-2)-curves.
FiberConfig d4()
{
    FiberConfig::Builder b(1, 100);
    const auto centre = b.add_component({2, 0, -2});
    for (int i = 0; i < 4; ++i) b.add_intersection(centre, b.add_component({1, 0, -2}));
    return std::move(b).build();
}

// Dense exact rank, used as an oracle for the sparse elimination.
std::size_t dense_rank(const FiberConfig& config)
{
    const std::size_t n = config.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = config.entry(i, j);
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == rank || a[r][col] == 0) continue;
            const Rational f = a[r][col] / a[rank][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[rank][c];
        }
        ++rank;
    }
    return rank;
}

QDivisor random_divisor(std::mt19937_64& rng, std::size_t n, int terms)
{
    QDivisor d;
    for (int t = 0; t < terms; ++t) {
        d.add(rng() % n, make_rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7) + 1));
    }
    return d;
}

const fermat::FermatModel& model53()
{
    static const fermat::FermatModel m = fermat::build_model(fermat::FermatParams::make(5, 3, 0));
    return m;
}

}  // namespace

TEST(FiberConfig, BuilderAccumulatesAndSorts)
{
    FiberConfig::Builder b(0, 10);
    const auto x = b.add_component({1, 0, -1});
    const auto y = b.add_component({1, 0, -1});
    const auto z = b.add_component({1, 0, -1});
    b.add_intersection(x, z);
    b.add_intersection(x, y, 2);
    b.add_intersection(z, x);
    const FiberConfig c = std::move(b).build();
    EXPECT_EQ(c.entry(x, z), 2);
    EXPECT_EQ(c.entry(z, x), 2);
    EXPECT_EQ(c.entry(x, y), 2);
    EXPECT_EQ(c.entry(y, z), 0);
    ASSERT_EQ(c.neighbours(x).size(), 2u);
    EXPECT_EQ(c.neighbours(x)[0].first, y);
}

TEST(FiberConfig, RejectsBadInput)
{
    FiberConfig::Builder b(0, 2);
    EXPECT_THROW(b.add_component({0, 0, -2}), ParameterError);
    EXPECT_THROW(b.add_component({1, -1, -2}), ParameterError);
    const auto x = b.add_component({1, 0, -2});
    EXPECT_THROW(b.add_intersection(x, x), ParameterError);
    EXPECT_THROW(b.add_intersection(x, 7), ParameterError);
    b.add_component({1, 0, -2});
    EXPECT_THROW(b.add_component({1, 0, -2}), CapExceeded);
}

TEST(FiberConfig, UnknownComponentIsDomainError)
{
    const FiberConfig c = cycle(3);
    EXPECT_THROW(c.component(3), ParameterError);
    EXPECT_THROW(pair(c, QDivisor::single(5), QDivisor::single(0)), std::exception);
}

TEST(QDivisorOps, NormalizedForm)
{
    QDivisor d = QDivisor::single(3, make_rational(1, 2));
    d.add(3, make_rational(-1, 2));
    EXPECT_TRUE(d.is_zero());
    d.set(1, 0);
    EXPECT_TRUE(d.coefficients().empty());
    QDivisor e = QDivisor::single(2, 3);
    EXPECT_TRUE((0 * e).is_zero());
    EXPECT_EQ(e - e, QDivisor());
}

TEST(Pairing, KodairaExamples)
{
    for (const FiberConfig& c : {cycle(1 + 4), d4()}) {
        const QDivisor f = QDivisor::fiber(c);
        for (ComponentId x = 0; x < c.size(); ++x) EXPECT_EQ(pair(c, f, QDivisor::single(x)), 0);
        EXPECT_EQ(canonical_pair(c, f), 0);  // 2g - 2 with g = 1
        EXPECT_EQ(pairing_rank(c), c.size() - 1);
        for (const auto& check : validate(c)) EXPECT_TRUE(check.pass) << check.name << ": " << check.detail;
    }
}

TEST(Pairing, SymmetricBilinear)
{
    const auto& m = model53();
    const FiberConfig& c = m.config;
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const QDivisor d = random_divisor(rng, c.size(), 6);
        const QDivisor e = random_divisor(rng, c.size(), 6);
        const QDivisor f = random_divisor(rng, c.size(), 6);
        const Rational s = make_rational(static_cast<long>(rng() % 11) - 5, 3);
        EXPECT_EQ(pair(c, d, e), pair(c, e, d));
        EXPECT_EQ(pair(c, s * d + e, f), s * pair(c, d, f) + pair(c, e, f));
        const auto dense = pair_with_components(c, d);
        Rational via_dense = 0;
        for (const auto& [x, v] : e.coefficients()) via_dense += v * dense[x];
        EXPECT_EQ(via_dense, pair(c, d, e));
    }
}

TEST(Pairing, FermatExamples)
{
    const auto& m = model53();
    const auto fm = m.fm();
    const auto ld = m.id(fermat::FermatLabel::ldelta(1));
    const auto l1 = m.id(fermat::FermatLabel::chain(1, 1, 1));
    EXPECT_EQ(pair(m.config, QDivisor::single(fm), QDivisor::single(ld)), 1);
    EXPECT_EQ(pair(m.config, QDivisor::single(l1), QDivisor::single(l1)), -2);
    const CuspSection s{l1};
    EXPECT_EQ(section_pair(m.config, s, QDivisor::single(l1)), 1);
    EXPECT_EQ(section_pair(m.config, s, QDivisor::single(fm)), 0);
    EXPECT_EQ(section_pair(m.config, s, QDivisor::single(l1, make_rational(1, 2))), make_rational(1, 2));
}

TEST(Adjunction, Numbers)
{
    const auto& m = model53();
    EXPECT_EQ(a_number(m.config, m.id(fermat::FermatLabel::ldelta(3))), 5 - 2);
    EXPECT_EQ(a_number(m.config, m.id(fermat::FermatLabel::chain(2, 4, 7))), 0);
    EXPECT_EQ(a_number(m.config, m.fm()), 2 * 9 - 3 * 3);
    EXPECT_EQ(canonical_pair(m.config, QDivisor::fiber(m.config)), 2 * 91 - 2);
    EXPECT_EQ(canonical_pair(m.config, QDivisor()), 0);
}

TEST(ArithmeticGenus, Examples)
{
    const auto& m = model53();
    EXPECT_EQ(p_a_divisor(m.config, QDivisor::single(m.id(fermat::FermatLabel::ldelta(1)))), 0);
    EXPECT_EQ(p_a_divisor(m.config, QDivisor::single(m.fm())), 1);
    QDivisor chain;
    for (long j = 1; j < 3; ++j) chain.add(m.id(fermat::FermatLabel::chain(j, 2, 5)), 1);
    EXPECT_EQ(p_a_divisor(m.config, chain), 0);
    EXPECT_THROW(p_a_divisor(m.config, QDivisor()), ParameterError);
    EXPECT_THROW(p_a_divisor(m.config, QDivisor::single(m.fm(), -1)), ParameterError);
    EXPECT_THROW(p_a_divisor(m.config, QDivisor::single(m.fm(), make_rational(1, 2))), ParameterError);
}

TEST(ArithmeticGenus, GenusZeroTreesAreRational)
{
    // Random trees of (-2)-curves: every reduced connected tree has p_a = 0.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 12);
        FiberConfig::Builder b(0, 100);
        for (int i = 0; i < n; ++i) b.add_component({1, 0, -2 - static_cast<long>(rng() % 3)});
        for (int i = 1; i < n; ++i) b.add_intersection(i, rng() % i);
        const FiberConfig c = std::move(b).build();
        QDivisor z;
        for (int i = 0; i < n; ++i) z.add(i, 1);
        EXPECT_EQ(p_a_divisor(c, z), 0);
    }
}

TEST(Rank, SparseMatchesDenseOracle)
{
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(rng() % 10);
        FiberConfig::Builder b(0, 100);
        for (int i = 0; i < n; ++i) b.add_component({1, 0, -static_cast<long>(rng() % 4)});
        for (int e = 0; e < n + 2; ++e) {
            const auto x = rng() % n;
            const auto y = rng() % n;
            if (x != y) b.add_intersection(x, y, 1 + static_cast<long>(rng() % 2));
        }
        const FiberConfig c = std::move(b).build();
        EXPECT_EQ(pairing_rank(c), dense_rank(c));
    }
    EXPECT_EQ(pairing_rank(model53().config), dense_rank(model53().config));
}

TEST(Validate, MutationsLocalize)
{
    const auto& m = model53();
    for (const auto& c : validate(m.config)) EXPECT_TRUE(c.pass) << c.name;

    const auto target = m.id(fermat::FermatLabel::ldelta(4));
    Component bumped = m.config.component(target);
    bumped.self_intersection += 1;
    const auto r1 = validate(m.config.with_component(target, bumped));
    ASSERT_FALSE(r1[1].pass);
    EXPECT_EQ(r1[1].name, "fiber_orthogonality");
    EXPECT_EQ(r1[1].component, target);

    Component flat = m.config.component(m.fm());
    flat.genus = 0;
    const auto r2 = validate(m.config.with_component(m.fm(), flat));
    EXPECT_TRUE(r2[1].pass);
    EXPECT_FALSE(r2[3].pass);
    EXPECT_EQ(r2[3].name, "canonical_degree");
}

TEST(SolveGauge, RecoversVFm)
{
    const auto& m = model53();
    const long g = 91;
    const long p = 5;
    std::map<ComponentId, Rational> targets;
    for (ComponentId c = 0; c < m.config.size(); ++c) {
        Rational t = a_number(m.config, c) / (2 * g - 2);
        if (c == m.fm()) t -= make_rational(1, p);
        if (t != 0) targets[c] = t;
    }
    const QDivisor v = solve_gauge(m.config, targets, {m.fm(), make_rational(p - 2, 2 * g - 2)});
    EXPECT_EQ(v, QDivisor::single(m.fm(), make_rational(p - 2, 2 * g - 2)));
}

TEST(SolveGauge, KernelAndZero)
{
    const auto& m = model53();
    EXPECT_TRUE(solve_gauge(m.config, {}, {m.fm(), 0}).is_zero());
    const Rational q = make_rational(7, 3);
    const QDivisor v = solve_gauge(m.config, {}, {m.fm(), q});
    EXPECT_EQ(v, (q / 5) * QDivisor::fiber(m.config));
}

TEST(SolveGauge, RoundTripRandomTargets)
{
    const auto& m = model53();
    const FiberConfig& c = m.config;
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        // Targets orthogonal to the kernel: pairings of a random divisor.
        const QDivisor d = random_divisor(rng, c.size(), 8);
        const auto values = pair_with_components(c, d);
        std::map<ComponentId, Rational> targets;
        for (ComponentId x = 0; x < c.size(); ++x) {
            if (values[x] != 0) targets[x] = values[x];
        }
        const QDivisor v = solve_gauge(c, targets, {3, make_rational(1, 7)});
        const auto back = pair_with_components(c, v);
        EXPECT_EQ(back, values);
        EXPECT_EQ(v.coeff(3), make_rational(1, 7));
    }
}

TEST(SolveGauge, Errors)
{
    const auto& m = model53();
    EXPECT_THROW(solve_gauge(m.config, {{m.fm(), 1}}, {m.fm(), 0}), NoSolution);

    FiberConfig::Builder b(0, 10);
    b.add_component({1, 0, 0});
    b.add_component({1, 0, 0});
    const FiberConfig disconnected = std::move(b).build();
    EXPECT_THROW(solve_gauge(disconnected, {}, {0, 1}), ContractViolation);
}
