#pragma once

// Tuple representation of predecessors.
//
// A tuple (b; v1..vb) describes a path of b Syracuse steps ending at a source
// n: v_b is the valuation of the first step and v1 that of the last. With
// u_b = 0, u_{i-1} = u_i + v_i and a = u_0 the starting value is
//
//     m = (n * 2^a - S) / 3^b,   S = sum_{i=1..b} 2^{u_i} 3^{i-1},
//
// and the tuple is admissible for n when that division is exact.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "collatz.hpp"
#include "numtheory.hpp"

namespace syracuse {

class VTuple {
public:
    VTuple() = default;
    explicit VTuple(std::vector<std::uint64_t> v) : v_(std::move(v)) {
        for (std::size_t i = 0; i < v_.size(); ++i) {
            if (v_[i] < 1) fail(ErrorCode::InvalidArgument, "v" + std::to_string(i + 1) + " must be >= 1");
        }
    }
    VTuple(std::initializer_list<std::uint64_t> v) : VTuple(std::vector<std::uint64_t>(v)) {}

    std::size_t b() const noexcept { return v_.size(); }
    bool empty() const noexcept { return v_.empty(); }
    const std::vector<std::uint64_t>& v() const noexcept { return v_; }

    /// 1-based access, matching the usual v1..vb numbering.
    std::uint64_t operator[](std::size_t i) const { return v_.at(i - 1); }

    friend bool operator==(const VTuple&, const VTuple&) = default;
    friend auto operator<=>(const VTuple&, const VTuple&) = default;

private:
    std::vector<std::uint64_t> v_;
};

struct Exponents {
    BigInt a;
    std::vector<BigInt> u; // u_1..u_b, strictly decreasing, u_b = 0
};

inline Exponents to_exponents(const VTuple& t) {
    Exponents e;
    e.u.assign(t.b(), BigInt(0));
    BigInt acc = 0;
    for (std::size_t i = t.b(); i >= 1; --i) {
        e.u[i - 1] = acc;
        acc += t[i];
    }
    e.a = acc;
    return e;
}

/// Period of v_i under shifts: 2*3^(b-i).
inline BigInt shift_period(std::size_t b, std::size_t i) { return 2 * pow3(static_cast<std::uint64_t>(b - i)); }

// ---------------------------------------------------------------------------
// Text format "b:v1,...,vb"

inline std::string format_tuple(const VTuple& t) {
    std::string s = std::to_string(t.b()) + ":";
    for (std::size_t i = 1; i <= t.b(); ++i) {
        if (i > 1) s += ',';
        s += std::to_string(t[i]);
    }
    return s;
}

namespace detail {
inline std::uint64_t parse_u64_at(std::string_view text, std::size_t& pos, std::string_view full) {
    const std::size_t start = pos;
    std::uint64_t value = 0;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        const std::uint64_t digit = static_cast<std::uint64_t>(text[pos] - '0');
        if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
            fail(ErrorCode::ParseError, "number too large at position " + std::to_string(start) + " in \"" +
                                            std::string(full) + "\"");
        }
        value = value * 10 + digit;
        ++pos;
    }
    if (pos == start) {
        fail(ErrorCode::ParseError, "expected a digit at position " + std::to_string(start) + " in \"" +
                                        std::string(full) + "\"");
    }
    return value;
}
} // namespace detail

/// Parses "b:v1,...,vb" (e.g. "3:4,3,2"; "0:" is the empty tuple).
inline VTuple parse_tuple(std::string_view text) {
    std::size_t pos = 0;
    const std::uint64_t b = detail::parse_u64_at(text, pos, text);
    auto expect = [&](char c) {
        if (pos >= text.size() || text[pos] != c) {
            fail(ErrorCode::ParseError, std::string("expected '") + c + "' at position " + std::to_string(pos) +
                                            " in \"" + std::string(text) + "\"");
        }
        ++pos;
    };
    expect(':');
    std::vector<std::uint64_t> v;
    for (std::uint64_t i = 0; i < b; ++i) {
        if (i > 0) expect(',');
        const std::size_t at = pos;
        const std::uint64_t x = detail::parse_u64_at(text, pos, text);
        if (x == 0) {
            fail(ErrorCode::ParseError, "gap must be >= 1 at position " + std::to_string(at) + " in \"" +
                                            std::string(text) + "\"");
        }
        v.push_back(x);
    }
    if (pos != text.size()) {
        fail(ErrorCode::ParseError, "trailing characters at position " + std::to_string(pos) + " in \"" +
                                        std::string(text) + "\" (declared b=" + std::to_string(b) + ")");
    }
    return VTuple(std::move(v));
}

// ---------------------------------------------------------------------------
// Decode / admissibility

/// Exact decode, or nullopt when the tuple is not admissible for the source.
/// Integrality is checked once at full depth: an inexact intermediate can
/// never become exact again further up the path.
inline std::optional<OddInt> try_decode(const VTuple& t, const OddInt& source = OddInt(1)) {
    require_source_not_multiple_of_3(source);
    if (t.empty()) return source;
    const Exponents e = to_exponents(t);
    require_within_cap(e.a + bit_length(source.value()), "source*2^a");

    BigInt s = 0;
    BigInt pow3_i = 1;
    for (std::size_t i = 1; i <= t.b(); ++i) {
        s += (BigInt(1) << e.u[i - 1].convert_to<unsigned>()) * pow3_i;
        pow3_i *= 3;
    }
    const BigInt num = (source.value() << e.a.convert_to<unsigned>()) - s;
    BigInt q, r;
    boost::multiprecision::divide_qr(num, pow3_i, q, r);
    if (!r.is_zero()) return std::nullopt;
    return OddInt(std::move(q));
}

inline OddInt decode(const VTuple& t, const OddInt& source = OddInt(1)) {
    auto m = try_decode(t, source);
    if (!m) {
        fail(ErrorCode::NotAdmissible, format_tuple(t) + " does not decode to an integer from source " +
                                           source.str());
    }
    return *std::move(m);
}

inline bool is_admissible(const VTuple& t, const OddInt& source = OddInt(1)) {
    return try_decode(t, source).has_value();
}

// ---------------------------------------------------------------------------
// Encode

/// The tuple of the trajectory from n down to source.
inline VTuple encode(const OddInt& n, const OddInt& source = OddInt(1),
                     std::uint64_t max_steps = kDefaultMaxSteps) {
    require_source_not_multiple_of_3(source);
    auto [traj, outcome] = walk_until(n, source, max_steps);
    switch (outcome) {
    case WalkOutcome::Cutoff:
        fail(ErrorCode::CutoffReached,
             "no arrival at " + source.str() + " within " + std::to_string(max_steps) + " steps from " + n.str());
    case WalkOutcome::Bypassed:
        fail(ErrorCode::SourceNotOnTrajectory, source.str() + " is not on the trajectory of " + n.str());
    case WalkOutcome::ReachedStop:
        break;
    }
    return VTuple(std::move(traj.v));
}

// ---------------------------------------------------------------------------
// Canonical form

/// Lower end of the v1 window: 4 for source 1 (the k = 2 branch at the root
/// is the loop 1 -> 1), 1 otherwise. The window spans one full period
/// 2*3^(b-1), so every class has exactly one representative in it.
inline std::uint64_t v1_window_lo(const OddInt& source) { return source.value() == 1 ? 4 : 1; }

/// Representative of the class in [lo, lo + 2*3^(b-1)).
inline BigInt place_in_window(const ExpClass& cls, std::uint64_t lo) {
    return lo + mod(cls.value - lo, cls.modulus());
}

struct CanonicalTuple {
    VTuple base;
    std::vector<BigInt> c; // v_i = base.v_i + 2*3^(b-i) * c_i
};

/// Reduces every gap into its window: [1, 2*3^(b-i)] for i >= 2 and the v1
/// window above. Only admissible tuples are accepted.
inline CanonicalTuple canonicalize(const VTuple& t, const OddInt& source = OddInt(1)) {
    if (!is_admissible(t, source)) {
        fail(ErrorCode::NotAdmissible, format_tuple(t) + " is not admissible for source " + source.str());
    }
    const std::size_t b = t.b();
    std::vector<std::uint64_t> base(b);
    std::vector<BigInt> c(b);
    for (std::size_t i = 2; i <= b; ++i) {
        const BigInt period = shift_period(b, i);
        const BigInt reduced = mod(BigInt(t[i]) - 1, period) + 1;
        base[i - 1] = reduced.convert_to<std::uint64_t>();
        c[i - 1] = (t[i] - reduced) / period;
    }
    if (b >= 1) {
        const ExpClass cls(BigInt(t[1]), static_cast<Level>(b));
        const BigInt reduced = place_in_window(cls, v1_window_lo(source));
        if (reduced > t[1]) {
            fail(ErrorCode::RootLoop, format_tuple(t) + ": v1 = " + std::to_string(t[1]) +
                                          " lies below the window and runs through the loop at 1");
        }
        base[0] = reduced.convert_to<std::uint64_t>();
        c[0] = (t[1] - reduced) / cls.modulus();
    }
    return {VTuple(std::move(base)), std::move(c)};
}

/// Adds 2*3^(b-j-1) to v_{j+1}, i.e. to u_0..u_j. Admissibility is preserved.
inline VTuple shift(const VTuple& t, std::size_t j) {
    if (j >= t.b()) {
        fail(ErrorCode::IndexOutOfRange, "shift index " + std::to_string(j) + " outside [0, " +
                                             std::to_string(t.b()) + ")");
    }
    std::vector<std::uint64_t> v = t.v();
    v[j] = to_u64(BigInt(v[j]) + shift_period(t.b(), j + 1), "shifted gap");
    return VTuple(std::move(v));
}

} // namespace syracuse
