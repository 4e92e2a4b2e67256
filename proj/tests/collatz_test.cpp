#include <gtest/gtest.h>

#include "syracuse/collatz.hpp"

using namespace syracuse;

namespace {

std::vector<BigInt> values(const std::vector<std::pair<std::uint64_t, OddInt>>& kids) {
    std::vector<BigInt> out;
    for (const auto& [k, n] : kids) out.push_back(n.value());
    return out;
}

// Exact test of whether (num/den * 2^l - 1) / 3 is an integer.
bool integral_step(const BigInt& num, const BigInt& den, unsigned l) {
    // (num * 2^l - den) / (3 den)
    return ((num << l) - den) % (3 * den) == 0;
}

} // namespace

TEST(TStep, Examples) {
    EXPECT_EQ(t_step(5), 16);
    EXPECT_EQ(t_step(16), 8);
    EXPECT_EQ(t_step(1), 4);
    EXPECT_THROW(t_step(0), Error);
}

TEST(UChildren, Examples) {
    EXPECT_EQ(u_children(4), (std::vector<BigInt>{8, 1}));
    EXPECT_EQ(u_children(8), (std::vector<BigInt>{16}));
    EXPECT_EQ(u_children(10), (std::vector<BigInt>{20, 3}));
}

TEST(UChildren, DualToTStep) {
    // m in U(n) <=> T(m) = n. Every m with T(m) <= N is < 2N + 1.
    const int N = 10000;
    for (int n = 1; n <= N; ++n) {
        std::vector<BigInt> expect;
        for (int m = 1; m <= 2 * n; ++m) {
            if (t_step(m) == n) expect.push_back(m);
        }
        auto got = u_children(n);
        std::sort(got.begin(), got.end());
        ASSERT_EQ(got, expect) << n;
    }
}

TEST(JVal, Examples) {
    EXPECT_EQ(j_val(4), 2u);
    EXPECT_EQ(j_val(22), 1u);
    EXPECT_EQ(j_val(1024), 10u);
    try {
        j_val(7);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::OddInput);
    }
}

TEST(Syracuse, Examples) {
    EXPECT_EQ(syracuse::syracuse(1), OddInt(1));
    EXPECT_EQ(syracuse::syracuse(7), OddInt(11));
    EXPECT_EQ(syracuse::syracuse(341), OddInt(1));
}

TEST(Syracuse, MatchesTIteration) {
    for (long long n = 1; n <= 100000; n += 2) {
        BigInt x = t_step(n);
        while (!is_odd(x)) x = t_step(x);
        ASSERT_EQ(syracuse::syracuse(n).value(), x) << n;
    }
}

TEST(OddIntType, RejectsEvenAndNonPositive) {
    EXPECT_THROW(OddInt(4), Error);
    EXPECT_THROW(OddInt(0), Error);
    EXPECT_THROW(OddInt(-3), Error);
}

TEST(HChildren, Examples) {
    EXPECT_TRUE(h_children(3, 10).empty());
    const auto one = h_children(1, 8);
    ASSERT_EQ(one.size(), 4u);
    EXPECT_EQ(one[0].first, 2u);
    EXPECT_EQ(values(one), (std::vector<BigInt>{1, 5, 21, 85}));
    const auto five = h_children(5, 5);
    ASSERT_EQ(five.size(), 3u);
    EXPECT_EQ(five[0].first, 1u);
    EXPECT_EQ(five[2].first, 5u);
    EXPECT_EQ(values(five), (std::vector<BigInt>{3, 13, 53}));
}

TEST(HChildren, RightInverseOfSyracuse) {
    for (long long n = 1; n < 3000; n += 2) {
        for (const auto& [k, c] : h_children(n, 12)) {
            const auto [parent, j] = syracuse_step(c);
            ASSERT_EQ(parent, OddInt(n));
            ASSERT_EQ(j, k);
        }
    }
}

TEST(HChildren, ResidueCyclesWithPeriodSix) {
    for (long long n = 1; n <= 999; n += 2) {
        if (n % 3 == 0) continue;
        const auto kids = h_children(n, 24);
        for (std::size_t i = 0; i + 1 < kids.size(); ++i) {
            const unsigned r0 = kids[i].second.mod3();
            const unsigned r1 = kids[i + 1].second.mod3();
            ASSERT_EQ(kids[i + 1].first, kids[i].first + 2);
            ASSERT_EQ(r1, (r0 + 1) % 3) << "n=" << n << " k=" << kids[i].first;
            if (i + 3 < kids.size()) {
                ASSERT_EQ(kids[i + 3].second.mod3(), r0);
            }
        }
    }
}

TEST(HChildren, WrongParityStaysNonIntegral) {
    // If n1 = (n 2^k - 1)/3 is not an integer, no later (n1 2^l - 1)/3 is.
    for (long long n = 1; n <= 99; n += 2) {
        for (unsigned k = 1; k <= 12; ++k) {
            const BigInt num = BigInt(n) * (BigInt(1) << k) - 1;
            if (num % 3 == 0) continue;
            for (unsigned l = 0; l <= 12; ++l) {
                ASSERT_FALSE(integral_step(num, 3, l)) << n << " " << k << " " << l;
            }
        }
    }
}

TEST(Trajectory, Examples) {
    const Trajectory t151 = trajectory(151);
    EXPECT_TRUE(t151.reached_one);
    EXPECT_EQ(t151.b, 3u);
    EXPECT_EQ(t151.v, (std::vector<std::uint64_t>{10, 1, 1}));
    EXPECT_EQ(t151.odd_iterates, (std::vector<OddInt>{151, 227, 341}));

    const Trajectory t1 = trajectory(1);
    EXPECT_TRUE(t1.reached_one);
    EXPECT_EQ(t1.b, 0u);
    EXPECT_TRUE(t1.v.empty());
    EXPECT_TRUE(t1.odd_iterates.empty());

    const Trajectory t7 = trajectory(7);
    EXPECT_EQ(t7.b, 5u);
    EXPECT_EQ(t7.v, (std::vector<std::uint64_t>{4, 3, 2, 1, 1}));
    EXPECT_EQ(t7.odd_iterates, (std::vector<OddInt>{7, 11, 17, 13, 5}));
    EXPECT_EQ(t7.step_valuation(1), 1u);
    EXPECT_EQ(t7.step_valuation(5), 4u);
}

TEST(Trajectory, CutoffIsReportedWithPrefix) {
    const Trajectory t = trajectory(7, 2);
    EXPECT_FALSE(t.reached_one);
    EXPECT_EQ(t.b, 2u);
    EXPECT_EQ(t.odd_iterates, (std::vector<OddInt>{7, 11, 17}));
    EXPECT_EQ(t.v, (std::vector<std::uint64_t>{1, 1}));
    for (std::size_t i = 0; i + 1 < t.odd_iterates.size(); ++i) {
        EXPECT_EQ(syracuse::syracuse(t.odd_iterates[i]), t.odd_iterates[i + 1]);
    }
}

TEST(Trajectory, LongRunIsExact) {
    // 27 takes 41 odd steps.
    const Trajectory t = trajectory(27);
    EXPECT_TRUE(t.reached_one);
    EXPECT_EQ(t.b, 41u);
    std::uint64_t total = 0;
    for (auto v : t.v) total += v;
    EXPECT_EQ(total, 70u); // 111 T-steps = 41 odd + 70 halvings
}
