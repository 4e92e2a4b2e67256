#pragma once

// Bounded predecessor trees.
//
// Nodes are generated level by level with the inverse branches h. Gaps are
// bounded by 6s (or k_cap); at the root 1 the gap window is the even k in
// [4, 2+6s], which drops the k = 2 branch that maps 1 back onto itself.
// Multiples of 3 are sterile and never expanded.

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <set>
#include <thread>
#include <unordered_set>
#include <vector>

#include "collatz.hpp"
#include "tuple_codec.hpp"

namespace syracuse {

struct EnumConfig {
    OddInt source = OddInt(1);
    std::uint32_t t = 1;                 // maximum depth
    std::uint32_t s = 1;                 // gaps bounded by 6s
    std::optional<std::uint64_t> k_cap;  // replaces both 6s and 2+6s when set
    unsigned workers = 1;
};

struct TreeNode {
    OddInt value;
    VTuple tuple; // gaps from the source: tuple[1] is the edge at the source
    std::uint32_t depth = 0;
    bool fertile = false;
    std::optional<std::size_t> parent; // index into Tree::nodes
};

struct Tree {
    OddInt source;
    std::vector<TreeNode> nodes; // BFS order, sorted by (depth, tuple)
    bool root_loop = false;      // the source maps to itself (only for 1)
};

namespace detail {

inline void validate(const EnumConfig& cfg) {
    if (cfg.t < 1) fail(ErrorCode::InvalidArgument, "t must be >= 1");
    if (cfg.s < 1) fail(ErrorCode::InvalidArgument, "s must be >= 1");
    if (cfg.k_cap && *cfg.k_cap < 1) fail(ErrorCode::InvalidArgument, "k_cap must be >= 1");
    require_source_not_multiple_of_3(cfg.source);
}

struct GapWindow {
    std::uint64_t lo;
    std::uint64_t hi;
};

inline GapWindow gap_window(const EnumConfig& cfg, bool at_root_one) {
    if (at_root_one) return {4, cfg.k_cap.value_or(2 + 6 * std::uint64_t{cfg.s})};
    return {1, cfg.k_cap.value_or(6 * std::uint64_t{cfg.s})};
}

inline std::vector<TreeNode> expand(const TreeNode& node, std::size_t index, const EnumConfig& cfg) {
    std::vector<TreeNode> out;
    if (!node.fertile) return out;
    const bool at_root_one = node.depth == 0 && node.value.value() == 1;
    const GapWindow w = gap_window(cfg, at_root_one);
    for (auto& [k, child] : h_children(node.value, w.hi)) {
        if (k < w.lo) continue;
        std::vector<std::uint64_t> gaps = node.tuple.v();
        gaps.push_back(k);
        const bool fertile = child.mod3() != 0;
        out.push_back({std::move(child), VTuple(std::move(gaps)), node.depth + 1, fertile, index});
    }
    return out;
}

} // namespace detail

/// Streams nodes in (depth, tuple) order; only one level is held at a time.
/// Parent indices refer to the global emission order. Children of each level
/// are produced in parallel by `cfg.workers` threads and concatenated in
/// parent order, so the stream does not depend on the worker count.
inline void enumerate_stream(const EnumConfig& cfg, const std::function<void(const TreeNode&)>& emit) {
    detail::validate(cfg);
    std::vector<TreeNode> level;
    level.push_back({cfg.source, VTuple{}, 0, cfg.source.mod3() != 0, std::nullopt});
    std::size_t level_base = 0;
    emit(level.front());

    const unsigned workers = std::max(1u, cfg.workers);
    for (std::uint32_t depth = 1; depth <= cfg.t && !level.empty(); ++depth) {
        std::vector<std::vector<TreeNode>> produced(level.size());
        std::vector<std::exception_ptr> errors;
        auto work = [&](std::size_t begin, std::size_t end, std::exception_ptr& error) {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    produced[i] = detail::expand(level[i], level_base + i, cfg);
                }
            } catch (...) {
                error = std::current_exception();
            }
        };
        if (workers == 1 || level.size() < 2) {
            errors.resize(1);
            work(0, level.size(), errors[0]);
        } else {
            const std::size_t chunk = (level.size() + workers - 1) / workers;
            errors.resize((level.size() + chunk - 1) / chunk);
            std::vector<std::jthread> pool;
            for (std::size_t c = 0; c < errors.size(); ++c) {
                const std::size_t begin = c * chunk;
                pool.emplace_back(work, begin, std::min(level.size(), begin + chunk), std::ref(errors[c]));
            }
        }
        for (const auto& error : errors) {
            if (error) std::rethrow_exception(error);
        }

        std::vector<TreeNode> next;
        for (auto& kids : produced) {
            for (auto& kid : kids) next.push_back(std::move(kid));
        }
        level_base += level.size();
        for (const auto& node : next) emit(node);
        level = std::move(next);
    }
}

inline Tree enumerate(const EnumConfig& cfg) {
    Tree tree;
    tree.source = cfg.source;
    tree.root_loop = cfg.source.value() == 1;
    enumerate_stream(cfg, [&](const TreeNode& n) { tree.nodes.push_back(n); });
    return tree;
}

inline std::uint64_t count_nodes(const EnumConfig& cfg) {
    std::uint64_t count = 0;
    enumerate_stream(cfg, [&](const TreeNode&) { ++count; });
    return count;
}

/// 1 + 3s((2s)^t - 1)/(2s - 1); for s = 1 this is 1 + 3(2^t - 1).
inline BigInt count_formula(std::uint32_t t, std::uint32_t s) {
    if (t < 1 || s < 1) fail(ErrorCode::InvalidArgument, "t and s must be >= 1");
    const BigInt ratio = 2 * BigInt(s);
    const BigInt geometric = (boost::multiprecision::pow(ratio, t) - 1) / (ratio - 1);
    return 1 + 3 * BigInt(s) * geometric;
}

/// Structural check: root is the source, every other node has one earlier
/// parent with f(child) = parent and depth one more, and no value repeats.
inline bool verify_tree(const Tree& tree) {
    if (tree.nodes.empty()) return false;
    const TreeNode& root = tree.nodes.front();
    if (root.parent || root.value != tree.source || root.depth != 0) return false;

    std::set<BigInt> seen{root.value.value()};
    for (std::size_t i = 1; i < tree.nodes.size(); ++i) {
        const TreeNode& node = tree.nodes[i];
        if (!node.parent || *node.parent >= i) return false;
        const TreeNode& parent = tree.nodes[*node.parent];
        if (node.depth != parent.depth + 1) return false;
        if (syracuse(node.value) != parent.value) return false;
        if (!seen.insert(node.value.value()).second) return false;
    }
    return true;
}

/// Preimage closure using h alone: every odd m with f^d(m) = source for some
/// d <= depth and all gaps <= k_max. The source itself is included.
inline std::set<BigInt> preimage_bfs(const OddInt& source, std::uint32_t depth, std::uint64_t k_max) {
    std::set<BigInt> out{source.value()};
    std::vector<OddInt> frontier{source};
    for (std::uint32_t d = 0; d < depth && !frontier.empty(); ++d) {
        std::vector<OddInt> next;
        for (const auto& n : frontier) {
            for (auto& [k, child] : h_children(n, k_max)) {
                if (out.insert(child.value()).second) next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

} // namespace syracuse
