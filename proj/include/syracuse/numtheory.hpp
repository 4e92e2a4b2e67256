#pragma once

// Arithmetic in (Z/3^bZ)^*, which is cyclic of order 2*3^(b-1) and generated
// by 2. Everything here is parameterized by the level b.

#include <cstdint>
#include <string>

#include "bigint.hpp"

namespace syracuse {

using Level = std::uint32_t;

inline void require_level(Level b) {
    if (b < 1) fail(ErrorCode::InvalidArgument, "level b must be >= 1");
}

/// 3^b.
inline BigInt residue_modulus(Level b) { return pow3(b); }

/// 2*3^(b-1), the order of (Z/3^bZ)^*.
inline BigInt group_order(Level b) {
    require_level(b);
    return 2 * pow3(b - 1);
}

/// An element of Z/3^bZ.
struct Residue {
    BigInt value;
    Level level = 1;

    Residue() = default;
    Residue(const BigInt& x, Level b) : value(mod(x, residue_modulus(b))), level(b) { require_level(b); }

    BigInt modulus() const { return residue_modulus(level); }
    bool is_unit() const { return value % 3 != 0; }

    friend bool operator==(const Residue&, const Residue&) = default;
};

namespace detail {
inline void require_same_level(const Residue& x, const Residue& y) {
    if (x.level != y.level) {
        fail(ErrorCode::LevelMismatch,
             "residues at levels " + std::to_string(x.level) + " and " + std::to_string(y.level));
    }
}
} // namespace detail

inline Residue operator+(const Residue& x, const Residue& y) {
    detail::require_same_level(x, y);
    return {x.value + y.value, x.level};
}

inline Residue operator-(const Residue& x, const Residue& y) {
    detail::require_same_level(x, y);
    return {x.value - y.value, x.level};
}

inline Residue operator*(const Residue& x, const Residue& y) {
    detail::require_same_level(x, y);
    return {x.value * y.value, x.level};
}

/// An exponent class modulo 2*3^(b-1).
struct ExpClass {
    BigInt value;
    Level level = 1;

    ExpClass() = default;
    ExpClass(const BigInt& e, Level b) : value(mod(e, group_order(b))), level(b) {}

    BigInt modulus() const { return group_order(level); }

    friend bool operator==(const ExpClass&, const ExpClass&) = default;
};

inline ExpClass operator+(const ExpClass& x, const ExpClass& y) {
    if (x.level != y.level) fail(ErrorCode::LevelMismatch, "exponent classes at different levels");
    return {x.value + y.value, x.level};
}

inline ExpClass operator-(const ExpClass& x, const ExpClass& y) {
    if (x.level != y.level) fail(ErrorCode::LevelMismatch, "exponent classes at different levels");
    return {x.value - y.value, x.level};
}

/// 2^e mod 3^b. The exponent may be arbitrarily large.
inline Residue pow2_mod(const BigInt& e, Level b) {
    require_level(b);
    if (e < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
    const BigInt m = residue_modulus(b);
    // Reduce by the group order first; the result only depends on e mod 2*3^(b-1).
    const BigInt r = boost::multiprecision::powm(BigInt(2), e % group_order(b), m);
    return {r, b};
}

/// Discrete logarithm to base 2 in (Z/3^bZ)^*.
///
/// The parity of the log is read off x mod 3 (2 = -1 mod 3). The 3-part is
/// lifted one ternary digit per level: after fixing e mod 2*3^(k-1) the
/// quotient r = x*2^-e is 1 mod 3^k, and since 2^(2*3^(k-1)) = 1 + c*3^k with
/// c = 1 mod 3, the next digit is simply ((r - 1) / 3^k) mod 3.
/// Cost is O(b) multiplications modulo 3^b.
inline ExpClass dlog2(const Residue& x) {
    require_level(x.level);
    if (!x.is_unit()) {
        fail(ErrorCode::NotInGroup, x.value.str() + " is not a unit modulo 3^" + std::to_string(x.level));
    }
    const Level b = x.level;
    const BigInt m = residue_modulus(b);
    const BigInt inv2 = (m + 1) / 2;

    BigInt e = (x.value % 3 == 2) ? 1 : 0;
    BigInt r = (e == 1) ? BigInt(x.value * inv2 % m) : x.value;

    // step = 2^(-2*3^(k-1)) mod 3^b, cubed once per level.
    BigInt step = inv2 * inv2 % m;
    BigInt three_k = 3;       // 3^k
    BigInt period = 2;        // 2*3^(k-1)
    for (Level k = 1; k < b; ++k) {
        const unsigned digit = static_cast<unsigned>(((r - 1) / three_k) % 3);
        for (unsigned d = 0; d < digit; ++d) {
            r = r * step % m;
        }
        e += digit * period;
        step = step * step % m * step % m;
        three_k *= 3;
        period *= 3;
    }
    return {e, b};
}

/// Reference discrete log by exhaustive scan over the full group. O(3^b);
/// intended for cross-checking small levels only.
inline ExpClass dlog2_scan(const Residue& x) {
    require_level(x.level);
    if (!x.is_unit()) {
        fail(ErrorCode::NotInGroup, x.value.str() + " is not a unit modulo 3^" + std::to_string(x.level));
    }
    const BigInt m = residue_modulus(x.level);
    const BigInt order = group_order(x.level);
    BigInt p = 1;
    for (BigInt i = 0; i < order; ++i) {
        if (p == x.value) return {i, x.level};
        p = p * 2 % m;
    }
    fail(ErrorCode::NotInGroup, "scan did not find " + x.value.str());
}

/// 2^k mod 3: 1 for even k, 2 for odd k.
inline unsigned pow2_mod3(const BigInt& k) {
    if (k < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
    return is_odd(k) ? 2u : 1u;
}

/// (2^(3^k) + 1) / 3^(k+1), an exact quotient congruent to 1 mod 3.
inline BigInt ratio_plus(std::uint32_t k) {
    const BigInt e = pow3(k);
    require_within_cap(e + 1, "2^(3^k)+1");
    const BigInt num = pow2(e.convert_to<std::uint64_t>()) + 1;
    const BigInt den = pow3(k + 1);
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (!r.is_zero()) fail(ErrorCode::InvalidArgument, "inexact division in ratio_plus");
    return q;
}

/// (2^(2*3^k) - 1) / 3^(k+1), an exact quotient congruent to 1 mod 3.
inline BigInt ratio_minus(std::uint32_t k) {
    const BigInt e = 2 * pow3(k);
    require_within_cap(e, "2^(2*3^k)");
    const BigInt num = pow2(e.convert_to<std::uint64_t>()) - 1;
    const BigInt den = pow3(k + 1);
    BigInt q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (!r.is_zero()) fail(ErrorCode::InvalidArgument, "inexact division in ratio_minus");
    return q;
}

} // namespace syracuse
