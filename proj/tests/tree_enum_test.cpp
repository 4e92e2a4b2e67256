#include <gtest/gtest.h>

#include "syracuse/tree_enum.hpp"

using namespace syracuse;

namespace {

std::set<BigInt> value_set(const Tree& tree) {
    std::set<BigInt> out;
    for (const auto& n : tree.nodes) out.insert(n.value.value());
    return out;
}

EnumConfig config(long long source, std::uint32_t t, std::uint32_t s) {
    EnumConfig cfg;
    cfg.source = source;
    cfg.t = t;
    cfg.s = s;
    return cfg;
}

} // namespace

TEST(Enumerate, Examples) {
    Tree tree = enumerate(config(1, 1, 1));
    EXPECT_EQ(value_set(tree), (std::set<BigInt>{1, 5, 21, 85}));
    EXPECT_TRUE(tree.root_loop);

    tree = enumerate(config(1, 2, 1));
    EXPECT_EQ(tree.nodes.size(), 10u);
    EXPECT_EQ(value_set(tree), (std::set<BigInt>{1, 5, 21, 85, 3, 13, 53, 113, 453, 1813}));
    for (const auto& n : tree.nodes) {
        if (n.value.value() == 21) {
            EXPECT_FALSE(n.fertile);
        }
    }

    tree = enumerate(config(5, 1, 1));
    EXPECT_EQ(value_set(tree), (std::set<BigInt>{5, 3, 13, 53}));
    EXPECT_FALSE(tree.root_loop);
}

TEST(Enumerate, OrderIsDepthThenTuple) {
    const Tree tree = enumerate(config(1, 3, 2));
    for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
        const auto& a = tree.nodes[i - 1];
        const auto& b = tree.nodes[i];
        ASSERT_TRUE(a.depth < b.depth || (a.depth == b.depth && a.tuple < b.tuple));
    }
}

TEST(Enumerate, NodesRoundTripThroughCodec) {
    for (long long source : {1, 5, 7, 11}) {
        const Tree tree = enumerate(config(source, 3, 1));
        for (const auto& node : tree.nodes) {
            ASSERT_EQ(decode(node.tuple, source), node.value);
            ASSERT_EQ(encode(node.value, source), node.tuple);
            ASSERT_EQ(node.fertile, node.value.mod3() != 0);
        }
    }
}

TEST(Enumerate, RejectsBadConfig) {
    EXPECT_THROW(enumerate(config(1, 0, 1)), Error);
    EXPECT_THROW(enumerate(config(1, 1, 0)), Error);
    EXPECT_THROW(enumerate(config(9, 1, 1)), Error);
}

TEST(Enumerate, CapExceededPropagatesFromWorkers) {
    ScopedExponentCap cap(40);
    EnumConfig cfg = config(1, 4, 2);
    cfg.workers = 4;
    try {
        enumerate(cfg);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CapExceeded);
    }
}

TEST(CountFormula, Examples) {
    EXPECT_EQ(count_formula(1, 1), 4);
    EXPECT_EQ(count_formula(2, 1), 10);
    EXPECT_EQ(count_formula(2, 2), 31);
}

TEST(CountFormula, MatchesEnumeration) {
    for (std::uint32_t t = 1; t <= 4; ++t) {
        for (std::uint32_t s = 1; s <= 3; ++s) {
            EXPECT_EQ(BigInt(count_nodes(config(1, t, s))), count_formula(t, s)) << "t=" << t << " s=" << s;
        }
    }
    // Other roots also have 3s children per fertile node.
    for (long long source : {5, 7}) {
        EXPECT_EQ(BigInt(count_nodes(config(source, 3, 2))), count_formula(3, 2));
    }
}

TEST(Enumerate, FertilityRatio) {
    for (std::uint32_t t = 1; t <= 3; ++t) {
        for (std::uint32_t s = 1; s <= 2; ++s) {
            const Tree tree = enumerate(config(1, t, s));
            std::vector<unsigned> kids(tree.nodes.size()), fertile(tree.nodes.size());
            for (const auto& n : tree.nodes) {
                if (!n.parent) continue;
                ++kids[*n.parent];
                fertile[*n.parent] += n.fertile;
            }
            for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
                if (tree.nodes[i].depth == t || !tree.nodes[i].fertile) {
                    EXPECT_EQ(kids[i], 0u);
                    continue;
                }
                EXPECT_EQ(kids[i], 3 * s);
                EXPECT_EQ(fertile[i], 2 * s);
            }
        }
    }
}

TEST(Enumerate, DeterministicAcrossWorkerCounts) {
    auto dump = [](unsigned workers) {
        EnumConfig cfg = config(1, 4, 2);
        cfg.workers = workers;
        std::string out;
        enumerate_stream(cfg, [&](const TreeNode& n) {
            out += n.value.str() + " " + format_tuple(n.tuple) + " " + std::to_string(n.depth) + " " +
                   std::to_string(n.parent.value_or(0)) + "\n";
        });
        return out;
    };
    const std::string serial = dump(1);
    EXPECT_EQ(dump(3), serial);
    EXPECT_EQ(dump(8), serial);
}

TEST(VerifyTree, Examples) {
    EXPECT_TRUE(verify_tree(enumerate(config(1, 2, 1))));

    Tree single;
    single.source = 7;
    single.nodes.push_back({OddInt(7), VTuple{}, 0, true, std::nullopt});
    EXPECT_TRUE(verify_tree(single));

    // Every edge valid, but 5 is attached twice.
    Tree dup = enumerate(config(1, 2, 1));
    ASSERT_EQ(dup.nodes[1].value, OddInt(5));
    dup.nodes.push_back(dup.nodes[1]);
    EXPECT_FALSE(verify_tree(dup));

    Tree wrong_edge = enumerate(config(1, 2, 1));
    wrong_edge.nodes.back().parent = 1;
    EXPECT_FALSE(verify_tree(wrong_edge));

    Tree wrong_root = enumerate(config(1, 1, 1));
    wrong_root.source = 5;
    EXPECT_FALSE(verify_tree(wrong_root));
}

TEST(VerifyTree, HoldsForEnumeratedTrees) {
    for (long long source : {1, 5, 7, 13}) {
        for (std::uint32_t t = 1; t <= 3; ++t) {
            EXPECT_TRUE(verify_tree(enumerate(config(source, t, 2))));
        }
    }
}

TEST(PreimageBfs, Examples) {
    EXPECT_EQ(preimage_bfs(1, 1, 8), (std::set<BigInt>{1, 5, 21, 85}));
    EXPECT_EQ(preimage_bfs(5, 1, 5), (std::set<BigInt>{5, 3, 13, 53}));
    EXPECT_EQ(preimage_bfs(3, 2, 10), (std::set<BigInt>{3}));
}

TEST(PreimageBfs, AgreesWithEnumeration) {
    for (long long source : {1, 5, 7}) {
        for (std::uint32_t t = 1; t <= 3; ++t) {
            for (std::uint64_t k : {6u, 8u, 12u}) {
                EnumConfig cfg = config(source, t, 1);
                cfg.k_cap = k;
                EXPECT_EQ(value_set(enumerate(cfg)), preimage_bfs(source, t, k))
                    << "source " << source << " t=" << t << " k=" << k;
            }
        }
    }
}
