#pragma once

// Self-verification suite. Each check re-derives a published table or a
// structural property and compares against either frozen values or an
// independent route (forward iteration, brute-force search, exhaustive scan).
// Shared by `syracuse verify` and the acceptance test binary.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "solver.hpp"
#include "tree_enum.hpp"

namespace syracuse::verify {

struct Options {
    bool full = true;
    /// Moves the v1 window up by 2 wherever the suite asks the solver for
    /// v1*; the table checks must then fail.
    bool inject_window_fault = false;
};

struct CheckResult {
    int criterion = 0;
    std::string name;
    std::string anchor;
    bool passed = false;
    std::string detail;
    double elapsed_ms = 0;
    double budget_ms = 0;
};

namespace detail {

class Failures {
public:
    template <class... Args>
    void expect(bool ok, Args&&... args) {
        if (ok) return;
        ++count_;
        if (count_ <= 5) {
            std::ostringstream os;
            (os << ... << args);
            if (!text_.empty()) text_ += "; ";
            text_ += os.str();
        }
    }
    bool ok() const { return count_ == 0; }
    std::string summary() const {
        return count_ == 0 ? std::string() : std::to_string(count_) + " failure(s): " + text_;
    }

private:
    std::size_t count_ = 0;
    std::string text_;
};

inline std::optional<std::uint64_t> window_override(const Options& opt, const OddInt& source) {
    if (!opt.inject_window_fault) return std::nullopt;
    return v1_window_lo(source) + 2;
}

/// Forward-iteration check that the trajectory of n has exactly the gaps of t
/// and ends at 1.
inline bool forward_matches(const OddInt& n, const VTuple& t) {
    const Trajectory tr = trajectory(n, t.b() + 1);
    return tr.reached_one && tr.b == t.b() && tr.v == t.v();
}

/// All tails (v2..vb) with 1 <= v_i <= 2*3^(b-i), in lexicographic order.
inline std::vector<std::vector<std::uint64_t>> canonical_tails(std::size_t b) {
    std::vector<std::vector<std::uint64_t>> out{{}};
    for (std::size_t i = 2; i <= b; ++i) {
        const std::uint64_t period = shift_period(b, i).convert_to<std::uint64_t>();
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& prefix : out) {
            for (std::uint64_t v = 1; v <= period; ++v) {
                auto t = prefix;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        }
        out = std::move(next);
    }
    return out;
}

/// Brute force: every even v1 in [4, 2*3^(b-1)+2] completing the tail.
inline std::vector<std::uint64_t> admissible_v1_scan(std::size_t b, const std::vector<std::uint64_t>& tail) {
    std::vector<std::uint64_t> hits;
    const std::uint64_t hi = shift_period(b, 1).convert_to<std::uint64_t>() + 2;
    for (std::uint64_t v1 = 4; v1 <= hi; v1 += 2) {
        std::vector<std::uint64_t> gaps{v1};
        gaps.insert(gaps.end(), tail.begin(), tail.end());
        if (is_admissible(VTuple(std::move(gaps)))) hits.push_back(v1);
    }
    return hits;
}

// ---------------------------------------------------------------------------

inline void table_b3(const Options& opt, Failures& f) {
    struct Row {
        VTuple t;
        std::optional<long long> published;
    };
    const std::vector<Row> expected = {
        {{4, 3, 2}, 17},       {{4, 5, 1}, 35},   {{8, 2, 1}, 75},         {{8, 6, 2}, 2417},
        {{10, 1, 1}, 151},     {{10, 5, 2}, 4849}, {{14, 4, 2}, std::nullopt}, {{14, 6, 1}, std::nullopt},
        {{16, 1, 2}, std::nullopt}, {{16, 3, 1}, std::nullopt}, {{20, 2, 2}, std::nullopt},
        {{20, 4, 1}, 1242755},
    };

    std::vector<VTuple> found;
    for (const auto& tail : canonical_tails(3)) {
        const auto hits = admissible_v1_scan(3, tail);
        f.expect(hits.size() == 1, "tail (", tail[0], ",", tail[1], ") has ", hits.size(), " admissible v1");
        for (auto v1 : hits) found.push_back(VTuple{v1, tail[0], tail[1]});

        const SolveResult r = solve_v1(3, tail, OddInt(1), window_override(opt, OddInt(1)));
        f.expect(hits.size() == 1 && r.v1_star == hits.front(), "solve_v1 gives v1*=", r.v1_star, " for tail (",
                 tail[0], ",", tail[1], ")");
    }
    std::sort(found.begin(), found.end());

    f.expect(found.size() == expected.size(), "found ", found.size(), " canonical tuples, expected 12");
    for (std::size_t i = 0; i < std::min(found.size(), expected.size()); ++i) {
        f.expect(found[i] == expected[i].t, "row ", i, ": ", format_tuple(found[i]), " vs ",
                 format_tuple(expected[i].t));
        const OddInt n = decode(expected[i].t);
        if (expected[i].published) {
            f.expect(n.value() == *expected[i].published, format_tuple(expected[i].t), " decodes to ", n,
                     ", published ", *expected[i].published);
        }
        f.expect(forward_matches(n, expected[i].t), "trajectory of ", n, " does not reproduce ",
                 format_tuple(expected[i].t));
        f.expect(encode(n) == expected[i].t, "encode(", n, ") mismatch");
    }
}

inline void table_ascending(const Options& opt, Failures& f, std::size_t b_max) {
    const std::map<std::size_t, std::uint64_t> v1 = {{2, 4}, {3, 10}, {4, 28}, {5, 82}, {6, 244}};
    const std::map<std::size_t, std::string> published = {
        {2, "3"}, {3, "151"}, {4, "26512143"}, {5, "318400215865581346424671"}};

    for (std::size_t b = 2; b <= b_max; ++b) {
        const SolveResult r = ascending_all_ones(b);
        f.expect(r.v1_star == v1.at(b), "b=", b, ": v1*=", r.v1_star);
        if (auto it = published.find(b); it != published.end()) {
            f.expect(r.n.str() == it->second, "b=", b, ": n=", r.n, ", published ", it->second);
        }
        f.expect(decode(r.tuple) == r.n, "b=", b, ": closed form disagrees with decode");

        const SolveResult solved = solve_v1(b, std::vector<std::uint64_t>(b - 1, 1), OddInt(1),
                                            window_override(opt, OddInt(1)));
        f.expect(solved.v1_star == r.v1_star, "b=", b, ": solve_v1 gives ", solved.v1_star);

        const Trajectory tr = trajectory(r.n, b + 1);
        f.expect(tr.reached_one && tr.b == b, "b=", b, ": trajectory has ", tr.b, " steps");
        if (tr.reached_one && tr.b == b) {
            for (std::size_t i = 1; i < b; ++i) {
                f.expect(tr.odd_iterates[i] > tr.odd_iterates[i - 1], "b=", b, ": step ", i, " does not ascend");
            }
        }
    }
}

inline void dlog_example(Failures& f) {
    const ExpClass e = dlog2(Residue(7, 2));
    f.expect(e.value == 4 && e.modulus() == 6, "log2(7 mod 9) = ", e.value, " mod ", e.modulus());
}

inline void tree_cardinality(Failures& f) {
    for (std::uint32_t t = 1; t <= 4; ++t) {
        for (std::uint32_t s = 1; s <= 2; ++s) {
            EnumConfig cfg;
            cfg.t = t;
            cfg.s = s;
            const Tree tree = enumerate(cfg);
            const BigInt expect = count_formula(t, s);
            f.expect(BigInt(tree.nodes.size()) == expect, "t=", t, " s=", s, ": ", tree.nodes.size(),
                     " nodes, formula ", expect);
            f.expect(verify_tree(tree), "t=", t, " s=", s, ": tree check failed");

            // Every expanded node has 3s children, 2s of them fertile.
            std::vector<std::size_t> kids(tree.nodes.size()), fertile(tree.nodes.size());
            for (const auto& node : tree.nodes) {
                if (!node.parent) continue;
                ++kids[*node.parent];
                if (node.value.mod3() != 0) ++fertile[*node.parent];
                f.expect(node.fertile == (node.value.mod3() != 0), "fertility flag of ", node.value);
            }
            for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
                if (tree.nodes[i].depth == t || !tree.nodes[i].fertile) continue;
                f.expect(kids[i] == 3 * s && fertile[i] == 2 * s, "node ", tree.nodes[i].value, " has ", kids[i],
                         " children, ", fertile[i], " fertile");
            }
        }
    }
}

inline void bijection_census(const Options& opt, Failures& f) {
    const std::map<std::size_t, std::size_t> expected = {{2, 2}, {3, 12}, {4, 216}};
    for (const auto& [b, count] : expected) {
        std::size_t total = 0;
        const auto tails = canonical_tails(b);
        for (const auto& tail : tails) {
            const auto hits = admissible_v1_scan(b, tail);
            total += hits.size();
            f.expect(hits.size() == 1, "b=", b, ": tail with ", hits.size(), " admissible v1");
            const SolveResult r = solve_v1(b, tail, OddInt(1), window_override(opt, OddInt(1)));
            f.expect(hits.size() == 1 && r.v1_star == hits.front(), "b=", b, ": solve_v1 gives ", r.v1_star);
        }
        // 2^(b-1) * 3^((b-2)(b-1)/2)
        const std::size_t formula = (std::size_t{1} << (b - 1)) *
                                    pow3((b - 2) * (b - 1) / 2).convert_to<std::size_t>();
        f.expect(total == count && total == formula && tails.size() == count, "b=", b, ": ", total,
                 " admissible tuples, expected ", count);
    }
}

inline void oracle_roundtrip(Failures& f) {
    for (long long n = 1; n < 100000; n += 2) {
        const OddInt odd(n);
        const Trajectory tr = trajectory(odd, kDefaultMaxSteps);
        if (!tr.reached_one) continue;
        const VTuple t = encode(odd);
        f.expect(t.v() == tr.v, "encode(", n, ") disagrees with trajectory");
        f.expect(decode(t) == odd, "decode(encode(", n, ")) != ", n);
        // Recompute the gaps with t_step only.
        BigInt x = n;
        std::vector<std::uint64_t> forward;
        while (x != 1) {
            x = t_step(x);
            std::uint64_t j = 0;
            while (!is_odd(x)) {
                x = t_step(x);
                ++j;
            }
            forward.push_back(j);
        }
        f.expect(std::equal(forward.rbegin(), forward.rend(), t.v().begin(), t.v().end()),
                 "gaps of ", n, " differ from T iteration");
    }
}

inline void residue_identities(Failures& f) {
    for (std::uint64_t k = 0; k <= 1000; ++k) {
        f.expect(BigInt(pow2_mod3(k)) == pow2_mod(k, 1).value, "2^", k, " mod 3");
    }
    for (std::uint32_t k = 0; k <= 10; ++k) {
        const BigInt plus = ratio_plus(k);
        const BigInt minus = ratio_minus(k);
        const BigInt den = pow3(k + 1);
        const BigInt two_3k = BigInt(1) << pow3(k).convert_to<unsigned>();
        f.expect(plus * den == two_3k + 1, "ratio_plus(", k, ") inexact");
        f.expect(minus * den == two_3k * two_3k - 1, "ratio_minus(", k, ") inexact");
        f.expect(plus % 3 == 1 && minus % 3 == 1, "ratios at k=", k, " not 1 mod 3");
    }
    for (std::size_t b = 2; b <= 8; ++b) {
        const unsigned r = ascending_all_ones(b).n.mod3();
        f.expect(r == (b % 2 == 0 ? 0u : 1u), "all-ones n at b=", b, " is ", r, " mod 3");
    }
}

inline void families(Failures& f) {
    for (std::size_t b = 1; b <= 8; ++b) {
        for (unsigned k = 1; k <= 2; ++k) {
            for (long long p = (k == 1 ? 1 : 0); p <= 20; ++p) {
                const TargetPair pair = target_families(b, p, k);
                OddInt x = pair.m;
                bool ok = true;
                for (std::size_t step = 0; step < b; ++step) {
                    auto [next, j] = syracuse_step(x);
                    ok = ok && j == k;
                    x = next;
                }
                f.expect(ok && x == pair.n, "family k=", k, " b=", b, " p=", p, ": m=", pair.m, " misses n=",
                         pair.n);
            }
        }
    }
    for (std::size_t b : {3, 5, 7}) {
        const PeriodicCheck pc = periodic_12_check(b);
        const BigInt m = pow3(b);
        const bool independent = boost::multiprecision::powm(BigInt(2), pc.v1_class.value, m) == mod(-20, m);
        f.expect(pc.verified && independent, "alternating tail at b=", b, ": v1=", pc.v1_class.value);
        std::vector<std::uint64_t> gaps{place_in_window(pc.v1_class, 4).convert_to<std::uint64_t>()};
        for (std::size_t i = 2; i <= b; ++i) gaps.push_back(i % 2 == 0 ? 1 : 2);
        f.expect(is_admissible(VTuple(gaps)), "alternating tuple at b=", b, " not admissible");
    }
    for (std::size_t b = 1; b <= 6; ++b) {
        const Level level = static_cast<Level>(b);
        const BigInt period = group_order(level);
        f.expect(solve_constant_k(b, 1).value == mod(pow3(b - 1) + 1, period), "k=1, b=", b);
        f.expect(solve_constant_k(b, 2).value == mod(2, period), "k=2, b=", b);
        f.expect(solve_constant_k(b, 3).value == mod(3 - dlog2_scan(Residue(5, level)).value, period), "k=3, b=", b);
    }
}

} // namespace detail

struct Check {
    int criterion;
    std::string name;
    std::string anchor;
    double budget_ms;
    std::function<void(detail::Failures&)> body;
};

inline std::vector<Check> checks(const Options& opt) {
    using detail::Failures;
    std::vector<Check> out;
    out.push_back({1, "table-b3", "the 12 canonical admissible tuples at b = 3", 1000,
                   [opt](Failures& f) { detail::table_b3(opt, f); }});
    out.push_back({2, "table-ascending", "v1* and n for all-ones tails, b = 2..6", 1000,
                   [opt](Failures& f) { detail::table_ascending(opt, f, opt.full ? 6 : 5); }});
    out.push_back({3, "dlog-example", "log2(7 mod 9) = 4 mod 6", 1, [](Failures& f) { detail::dlog_example(f); }});
    if (!opt.full) return out;
    out.push_back({4, "tree-cardinality", "|tree(t,s)| = 1 + 3s((2s)^t - 1)/(2s - 1), t <= 4, s <= 2", 10000,
                   [](Failures& f) { detail::tree_cardinality(f); }});
    out.push_back({5, "bijection-census", "one v1 per canonical tail, counts 2, 12, 216", 30000,
                   [opt](Failures& f) { detail::bijection_census(opt, f); }});
    out.push_back({6, "oracle-roundtrip", "decode(encode(n)) = n for odd n < 10^5", 60000,
                   [](Failures& f) { detail::oracle_roundtrip(f); }});
    out.push_back({7, "residue-identities", "2^k mod 3, exact ratios mod 3, all-ones n mod 3", 10000,
                   [](Failures& f) { detail::residue_identities(f); }});
    out.push_back({8, "families", "target families, alternating (1,2) tail, constant-k classes", 30000,
                   [](Failures& f) { detail::families(f); }});
    return out;
}

inline CheckResult run_check(const Check& check) {
    CheckResult r{check.criterion, check.name, check.anchor, false, {}, 0, check.budget_ms};
    detail::Failures f;
    const auto start = std::chrono::steady_clock::now();
    try {
        check.body(f);
    } catch (const std::exception& e) {
        f.expect(false, "exception: ", e.what());
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    f.expect(r.elapsed_ms <= r.budget_ms, "took ", r.elapsed_ms, " ms, budget ", r.budget_ms, " ms");
    r.passed = f.ok();
    r.detail = f.summary();
    return r;
}

inline std::vector<CheckResult> run(const Options& opt,
                                    const std::function<void(const CheckResult&)>& on_result = {}) {
    std::vector<CheckResult> results;
    for (const auto& check : checks(opt)) {
        results.push_back(run_check(check));
        if (on_result) on_result(results.back());
    }
    return results;
}

} // namespace syracuse::verify
