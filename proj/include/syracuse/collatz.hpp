#pragma once

// Forward and inverse Collatz maps. These only use plain integer arithmetic
// and serve as the oracle the tuple machinery is checked against.

#include <cstdint>
#include <utility>
#include <vector>

#include "bigint.hpp"

namespace syracuse {

inline constexpr std::uint64_t kDefaultMaxSteps = 1'000'000;

/// T: 3n+1 for odd n, n/2 for even n.
inline BigInt t_step(const BigInt& n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "t_step needs n >= 1");
    return is_odd(n) ? BigInt(3 * n + 1) : BigInt(n >> 1);
}

/// U: the T-preimages of n, i.e. {2n} plus (n-1)/3 when n = 4 mod 6.
inline std::vector<BigInt> u_children(const BigInt& n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "u_children needs n >= 1");
    std::vector<BigInt> out{2 * n};
    if (n % 6 == 4) out.push_back((n - 1) / 3);
    return out;
}

/// Exponent of 2 in m.
inline std::uint64_t j_val(const BigInt& m) {
    if (m < 1) fail(ErrorCode::InvalidArgument, "j_val needs m >= 1");
    if (is_odd(m)) fail(ErrorCode::OddInput, m.str() + " is odd");
    return boost::multiprecision::lsb(m);
}

/// The Syracuse map f(n) = (3n+1) / 2^j(3n+1), together with the valuation.
inline std::pair<OddInt, std::uint64_t> syracuse_step(const OddInt& n) {
    const BigInt m = 3 * n.value() + 1;
    require_within_cap(BigInt(bit_length(m)), "3n+1");
    const std::uint64_t j = boost::multiprecision::lsb(m);
    return {OddInt(BigInt(m >> static_cast<unsigned>(j))), j};
}

inline OddInt syracuse(const OddInt& n) { return syracuse_step(n).first; }

/// The f-preimages (n*2^k - 1)/3 for k <= k_max. Empty when 3 | n; k even
/// when n = 1 mod 3 and k odd when n = 2 mod 3. Ordered by k.
inline std::vector<std::pair<std::uint64_t, OddInt>> h_children(const OddInt& n, std::uint64_t k_max) {
    if (k_max < 1) fail(ErrorCode::InvalidArgument, "k_max must be >= 1");
    std::vector<std::pair<std::uint64_t, OddInt>> out;
    const unsigned r = n.mod3();
    if (r == 0) return out;
    require_within_cap(BigInt(bit_length(n.value())) + k_max, "n*2^k");
    const std::uint64_t first = (r == 1) ? 2 : 1;
    BigInt shifted = n.value() << static_cast<unsigned>(first);
    for (std::uint64_t k = first; k <= k_max; k += 2) {
        out.emplace_back(k, OddInt(BigInt((shifted - 1) / 3)));
        shifted <<= 2;
    }
    return out;
}

/// Odd iterates of n under f.
///
/// When 1 is reached, odd_iterates holds n .. f^(b-1)(n) (1 itself excluded)
/// and v[i-1] = j(3 f^(b-i)(n) + 1), so v[0] is the valuation of the last step
/// and v[b-1] that of the first. On cutoff the iterates run through
/// f^(b)(n) where b is the number of steps taken, with v in the same order.
struct Trajectory {
    std::vector<OddInt> odd_iterates;
    std::size_t b = 0;
    std::vector<std::uint64_t> v;
    bool reached_one = false;

    /// Valuation of step i (1-based, in forward order).
    std::uint64_t step_valuation(std::size_t i) const { return v[b - i]; }
};

enum class WalkOutcome { ReachedStop, Cutoff, Bypassed };

/// Iterates f from n for at most max_steps odd steps, stopping at `stop`.
/// Bypassed means the walk hit the fixed point 1 without meeting `stop`.
/// Shared by trajectory() and encode().
inline std::pair<Trajectory, WalkOutcome> walk_until(const OddInt& n, const OddInt& stop,
                                                     std::uint64_t max_steps) {
    Trajectory t;
    OddInt cur = n;
    std::vector<std::uint64_t> forward;
    auto finish = [&](WalkOutcome outcome) {
        t.b = forward.size();
        t.v.assign(forward.rbegin(), forward.rend());
        t.reached_one = (cur.value() == 1);
        return std::pair{std::move(t), outcome};
    };
    while (cur != stop) {
        if (cur.value() == 1) return finish(WalkOutcome::Bypassed);
        if (forward.size() >= max_steps) {
            t.odd_iterates.push_back(cur);
            return finish(WalkOutcome::Cutoff);
        }
        t.odd_iterates.push_back(cur);
        auto [next, j] = syracuse_step(cur);
        forward.push_back(j);
        cur = std::move(next);
    }
    return finish(WalkOutcome::ReachedStop);
}

/// Trajectory down to 1. trajectory(1) has b = 0: the loop at 1 is not walked.
inline Trajectory trajectory(const OddInt& n, std::uint64_t max_steps = kDefaultMaxSteps) {
    return walk_until(n, OddInt(1), max_steps).first;
}

} // namespace syracuse
