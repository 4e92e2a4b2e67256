#pragma once

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace syracuse {

using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Exponent cap

/// Upper bound, in bits, on any big integer the library materializes
/// (equivalently on any exponent e in 2^e). Exceeding it raises CapExceeded.
inline constexpr std::uint64_t kDefaultExponentCap = std::uint64_t{1} << 26;

namespace detail {
inline std::atomic<std::uint64_t>& exponent_cap_storage() {
    static std::atomic<std::uint64_t> cap{kDefaultExponentCap};
    return cap;
}
} // namespace detail

inline std::uint64_t exponent_cap() noexcept {
    return detail::exponent_cap_storage().load(std::memory_order_relaxed);
}

/// Values above 2^32 - 1 are clamped; shift counts are 32-bit.
inline void set_exponent_cap(std::uint64_t bits) noexcept {
    bits = std::min<std::uint64_t>(bits, std::numeric_limits<std::uint32_t>::max());
    detail::exponent_cap_storage().store(bits, std::memory_order_relaxed);
}

/// Restores the previous cap on scope exit.
class ScopedExponentCap {
public:
    explicit ScopedExponentCap(std::uint64_t bits) : saved_(exponent_cap()) { set_exponent_cap(bits); }
    ~ScopedExponentCap() { set_exponent_cap(saved_); }
    ScopedExponentCap(const ScopedExponentCap&) = delete;
    ScopedExponentCap& operator=(const ScopedExponentCap&) = delete;

private:
    std::uint64_t saved_;
};

inline void require_within_cap(const BigInt& bits, std::string_view what) {
    if (bits > exponent_cap()) {
        fail(ErrorCode::CapExceeded, std::string(what) + " needs " + bits.str() + " bits, cap is " +
                                         std::to_string(exponent_cap()));
    }
}

// ---------------------------------------------------------------------------
// Small helpers

inline std::uint64_t bit_length(const BigInt& x) {
    return x.is_zero() ? 0 : static_cast<std::uint64_t>(boost::multiprecision::msb(x)) + 1;
}

inline BigInt pow2(std::uint64_t e) {
    require_within_cap(BigInt(e), "2^e");
    BigInt r = 0;
    boost::multiprecision::bit_set(r, static_cast<unsigned>(e));
    return r;
}

inline BigInt pow3(std::uint64_t e) {
    return boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(e));
}

/// Nonnegative remainder.
inline BigInt mod(const BigInt& x, const BigInt& m) {
    BigInt r = x % m;
    if (r < 0) r += m;
    return r;
}

inline bool is_odd(const BigInt& x) { return boost::multiprecision::bit_test(x, 0); }

/// Parses an unsigned decimal of any length. Leading '+' and whitespace are rejected.
inline BigInt parse_decimal(std::string_view text) {
    if (text.empty()) fail(ErrorCode::ParseError, "empty number");
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') {
            fail(ErrorCode::ParseError,
                 "unexpected character '" + std::string(1, text[i]) + "' at position " + std::to_string(i) +
                     " in \"" + std::string(text) + "\"");
        }
    }
    return BigInt(std::string(text));
}

inline std::uint64_t to_u64(const BigInt& x, std::string_view what) {
    if (x < 0 || x > std::numeric_limits<std::uint64_t>::max()) {
        fail(ErrorCode::CapExceeded, std::string(what) + " does not fit in 64 bits");
    }
    return x.convert_to<std::uint64_t>();
}

// ---------------------------------------------------------------------------
// OddInt

/// A positive odd integer. The constructor enforces the invariant.
class OddInt {
public:
    OddInt() : value_(1) {}
    OddInt(BigInt value) : value_(std::move(value)) { // NOLINT(google-explicit-constructor)
        if (value_ < 1 || !is_odd(value_)) {
            fail(ErrorCode::InvalidArgument, "expected a positive odd integer, got " + value_.str());
        }
    }
    OddInt(long long value) : OddInt(BigInt(value)) {} // NOLINT(google-explicit-constructor)

    const BigInt& value() const noexcept { return value_; }
    std::string str() const { return value_.str(); }

    unsigned mod3() const { return static_cast<unsigned>(value_ % 3); }

    friend bool operator==(const OddInt&, const OddInt&) = default;
    friend auto operator<=>(const OddInt& a, const OddInt& b) {
        return a.value_ < b.value_ ? std::strong_ordering::less
             : a.value_ > b.value_ ? std::strong_ordering::greater
                                   : std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const OddInt& n) { return os << n.value_; }

private:
    BigInt value_;
};

inline void require_source_not_multiple_of_3(const OddInt& source) {
    if (source.mod3() == 0) {
        fail(ErrorCode::SourceDivisibleBy3, "source " + source.str() + " is divisible by 3");
    }
}

} // namespace syracuse
