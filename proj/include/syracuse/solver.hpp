#pragma once

// Solvers for the first gap v1* that completes a tail (v2..vb) to an
// admissible tuple, plus the closed-form ascending families.
//
// Admissibility of (v1..vb) for source n is the congruence
//     n * 2^a = S  (mod 3^b),
// and since 2 generates (Z/3^bZ)^* this pins a modulo 2*3^(b-1).

#include <cstdint>
#include <utility>
#include <vector>

#include "numtheory.hpp"
#include "tuple_codec.hpp"

namespace syracuse {

struct SolveResult {
    ExpClass a_class;  // a mod 2*3^(b-1)
    ExpClass v1_class; // v1 mod 2*3^(b-1)
    std::uint64_t v1_star = 0;
    VTuple tuple;
    OddInt n;
};

namespace detail {
/// S mod 3^b for the tuple (anything, tail...). u_1..u_b depend only on the tail.
inline Residue tail_sum(std::size_t b, const std::vector<std::uint64_t>& tail) {
    const Level level = static_cast<Level>(b);
    Residue s(0, level);
    BigInt u = 0;
    BigInt pow3_i = pow3(b - 1);
    // i = b down to 1: u_b = 0, u_{i-1} = u_i + v_i.
    for (std::size_t i = b; i >= 1; --i) {
        s = s + pow2_mod(u, level) * Residue(pow3_i, level);
        if (i >= 2) u += tail[i - 2];
        if (i >= 2) pow3_i /= 3;
    }
    return s;
}

inline void require_b(std::size_t b) {
    if (b < 1) fail(ErrorCode::InvalidArgument, "b must be >= 1");
    if (b > std::numeric_limits<Level>::max()) fail(ErrorCode::InvalidArgument, "b too large");
}
} // namespace detail

/// Completes the tail with the unique v1 in the canonical window.
/// `window_lo` overrides the window's lower end (defaults to the source's).
inline SolveResult solve_v1(std::size_t b, const std::vector<std::uint64_t>& tail,
                            const OddInt& source = OddInt(1),
                            std::optional<std::uint64_t> window_lo = std::nullopt) {
    detail::require_b(b);
    require_source_not_multiple_of_3(source);
    if (tail.size() != b - 1) {
        fail(ErrorCode::InvalidArgument, "tail has " + std::to_string(tail.size()) + " entries, expected " +
                                             std::to_string(b - 1));
    }
    for (auto v : tail) {
        if (v < 1) fail(ErrorCode::InvalidArgument, "tail entries must be >= 1");
    }
    const Level level = static_cast<Level>(b);
    const Residue s = detail::tail_sum(b, tail);
    const ExpClass a = dlog2(s) - dlog2(Residue(source.value(), level));

    BigInt tail_total = 0;
    for (auto v : tail) tail_total += v;
    const ExpClass v1 = a - ExpClass(tail_total, level);
    const BigInt star = place_in_window(v1, window_lo.value_or(v1_window_lo(source)));

    std::vector<std::uint64_t> gaps{to_u64(star, "v1*")};
    gaps.insert(gaps.end(), tail.begin(), tail.end());
    VTuple tuple(std::move(gaps));
    OddInt n = decode(tuple, source);
    return {a, v1, tuple[1], std::move(tuple), std::move(n)};
}

/// All-ones tail: v1* = 3^(b-1) + 1 and n = (2^(3^(b-1)+b) - 3^b + 2^b) / 3^b,
/// the start of a trajectory that rises for b-1 steps and then drops to 1.
inline SolveResult ascending_all_ones(std::size_t b) {
    if (b < 2) fail(ErrorCode::InvalidArgument, "ascending_all_ones needs b >= 2");
    detail::require_b(b);
    const BigInt v1 = pow3(b - 1) + 1;
    require_within_cap(v1 + b, "2^(3^(b-1)+b)");
    const std::uint64_t v1_star = v1.convert_to<std::uint64_t>();

    const BigInt den = pow3(b);
    const BigInt num = pow2(v1_star + b - 1) - den + pow2(b);
    BigInt n, r;
    boost::multiprecision::divide_qr(num, den, n, r);
    if (!r.is_zero()) fail(ErrorCode::NotAdmissible, "all-ones closed form is not integral");

    std::vector<std::uint64_t> gaps(b, 1);
    gaps[0] = v1_star;
    const Level level = static_cast<Level>(b);
    const ExpClass v1_class(v1, level);
    return {ExpClass(v1 + (b - 1), level), v1_class, v1_star, VTuple(std::move(gaps)), OddInt(std::move(n))};
}

/// n0 = (1 + 2^((2p+1) 3^q)) 2^(q+1) / 3^(q+1) - 1: q rising steps, then 1.
inline OddInt ascending_family(std::uint32_t q, const BigInt& p) {
    if (q < 1) fail(ErrorCode::InvalidArgument, "q must be >= 1");
    if (p < 0) fail(ErrorCode::InvalidP, "p must be >= 0");
    const BigInt e = (2 * p + 1) * pow3(q);
    require_within_cap(e + q + 1, "2^((2p+1)3^q + q + 1)");
    const BigInt num = (pow2(e.convert_to<std::uint64_t>()) + 1) << (q + 1);
    const BigInt den = pow3(q + 1);
    BigInt n, r;
    boost::multiprecision::divide_qr(num, den, n, r);
    if (!r.is_zero()) fail(ErrorCode::NotAdmissible, "ascending family is not integral");
    return OddInt(n - 1);
}

/// Class of v1 solving source * 2^(v1-k) * (2^k - 3) = 1 (mod 3^b), i.e. the
/// first gap completing the constant tail (k, ..., k).
inline ExpClass solve_constant_k(std::size_t b, std::uint64_t k, const OddInt& source = OddInt(1)) {
    detail::require_b(b);
    require_source_not_multiple_of_3(source);
    if (k < 1) fail(ErrorCode::InvalidArgument, "k must be >= 1");
    const Level level = static_cast<Level>(b);
    // 2^k - 3 as an exact signed integer; only its residue matters, and 2^k
    // mod 3^b is taken modularly so k may be large.
    const Residue factor = pow2_mod(k, level) - Residue(3, level);
    return ExpClass(BigInt(k), level) - dlog2(Residue(source.value(), level)) - dlog2(factor);
}

struct PeriodicCheck {
    ExpClass v1_class;
    bool verified = false;
};

/// Alternating tail v_{2i} = 1, v_{2i+1} = 2 for odd b: checks 2^v1 = -20 (mod 3^b).
inline PeriodicCheck periodic_12_check(std::size_t b) {
    if (b < 3 || b % 2 == 0) {
        fail(ErrorCode::PatternLengthMismatch, "alternating (1,2) tail needs odd b >= 3, got " + std::to_string(b));
    }
    std::vector<std::uint64_t> tail;
    for (std::size_t i = 2; i <= b; ++i) tail.push_back(i % 2 == 0 ? 1 : 2);
    const SolveResult r = solve_v1(b, tail);
    const Level level = static_cast<Level>(b);
    const bool ok = pow2_mod(r.v1_class.value, level) == Residue(-20, level);
    return {r.v1_class, ok};
}

struct TargetPair {
    OddInt n; // target
    OddInt m; // start; b steps of valuation k lead from m to n
};

/// k = 1: n = 2p 3^b - 1, m = 2^(b+1) p - 1 (p >= 1).
/// k = 2: n = 2p 3^b + 1, m = 2^(2b+1) p + 1 (p >= 0).
inline TargetPair target_families(std::size_t b, const BigInt& p, unsigned k) {
    detail::require_b(b);
    if (k == 1) {
        if (p < 1) fail(ErrorCode::InvalidP, "k = 1 needs p >= 1");
        return {OddInt(2 * p * pow3(b) - 1), OddInt((p << (b + 1)) - 1)};
    }
    if (k == 2) {
        if (p < 0) fail(ErrorCode::InvalidP, "k = 2 needs p >= 0");
        return {OddInt(2 * p * pow3(b) + 1), OddInt((p << (2 * b + 1)) + 1)};
    }
    fail(ErrorCode::InvalidArgument, "target families exist for k = 1 or 2 only");
}

} // namespace syracuse
