#pragma once

/**
 * @file exactalg.hpp
 * @brief Exact 2x2 integer/rational linear algebra and the small
 * number-theoretic helpers (Bezout, 3-adic valuation, mod-3 inverse,
 * expansion test) used throughout the engine.
 *
 * All arithmetic is on int64_t with overflow checks; any overflow throws
 * sierp::error(errc::overflow) instead of wrapping silently.
 */

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>

#include "error.hpp"

namespace sierp {

using i64 = std::int64_t;

namespace checked {

inline i64 add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw error(errc::overflow);
    return r;
}
inline i64 sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw error(errc::overflow);
    return r;
}
inline i64 mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw error(errc::overflow);
    return r;
}

}  // namespace checked

/// Non-negative residue of a modulo m (m > 0).
inline i64 mod(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

/// Floor division for m > 0.
inline i64 floor_div(i64 a, i64 m) {
    i64 q = a / m;
    if ((a % m) != 0 && (a < 0)) --q;
    return q;
}

inline i64 gcd(i64 a, i64 b) { return std::gcd(a, b); }

// ---------------------------------------------------------------------------
// Integer vectors and matrices

struct IVec2 {
    i64 x = 0;
    i64 y = 0;

    friend bool operator==(const IVec2&, const IVec2&) = default;
    friend auto operator<=>(const IVec2&, const IVec2&) = default;

    friend IVec2 operator+(IVec2 a, IVec2 b) { return {checked::add(a.x, b.x), checked::add(a.y, b.y)}; }
    friend IVec2 operator-(IVec2 a, IVec2 b) { return {checked::sub(a.x, b.x), checked::sub(a.y, b.y)}; }
    friend IVec2 operator-(IVec2 a) { return {checked::sub(0, a.x), checked::sub(0, a.y)}; }
    friend IVec2 operator*(i64 k, IVec2 a) { return {checked::mul(k, a.x), checked::mul(k, a.y)}; }

    bool is_zero() const { return x == 0 && y == 0; }
};

inline i64 dot(IVec2 a, IVec2 b) { return checked::add(checked::mul(a.x, b.x), checked::mul(a.y, b.y)); }

inline std::ostream& operator<<(std::ostream& os, IVec2 v) {
    return os << '(' << v.x << ',' << v.y << ')';
}

/// Row-major 2x2 integer matrix [[a11, a12], [a21, a22]].
struct IMat2 {
    i64 a11 = 0, a12 = 0, a21 = 0, a22 = 0;

    static constexpr IMat2 identity() { return {1, 0, 0, 1}; }
    /// Matrix whose columns are u and v.
    static constexpr IMat2 from_columns(IVec2 u, IVec2 v) { return {u.x, v.x, u.y, v.y}; }

    friend bool operator==(const IMat2&, const IMat2&) = default;

    i64 det() const { return checked::sub(checked::mul(a11, a22), checked::mul(a12, a21)); }
    i64 trace() const { return checked::add(a11, a22); }
    IMat2 transpose() const { return {a11, a21, a12, a22}; }
    /// Adjugate: adj(A)·A = det(A)·I.
    IMat2 adjugate() const { return {a22, checked::sub(0, a12), checked::sub(0, a21), a11}; }
    IVec2 col(int j) const { return j == 0 ? IVec2{a11, a21} : IVec2{a12, a22}; }

    friend IMat2 operator*(const IMat2& a, const IMat2& b) {
        using namespace checked;
        return {add(mul(a.a11, b.a11), mul(a.a12, b.a21)), add(mul(a.a11, b.a12), mul(a.a12, b.a22)),
                add(mul(a.a21, b.a11), mul(a.a22, b.a21)), add(mul(a.a21, b.a12), mul(a.a22, b.a22))};
    }
    friend IVec2 operator*(const IMat2& a, IVec2 v) {
        using namespace checked;
        return {add(mul(a.a11, v.x), mul(a.a12, v.y)), add(mul(a.a21, v.x), mul(a.a22, v.y))};
    }
    friend IMat2 operator+(const IMat2& a, const IMat2& b) {
        using namespace checked;
        return {add(a.a11, b.a11), add(a.a12, b.a12), add(a.a21, b.a21), add(a.a22, b.a22)};
    }
    friend IMat2 operator*(i64 k, const IMat2& a) {
        using namespace checked;
        return {mul(k, a.a11), mul(k, a.a12), mul(k, a.a21), mul(k, a.a22)};
    }

    /// Entrywise non-negative residues mod m.
    IMat2 mod(i64 m) const { return {sierp::mod(a11, m), sierp::mod(a12, m), sierp::mod(a21, m), sierp::mod(a22, m)}; }
};

inline IMat2 power(IMat2 m, unsigned n) {
    IMat2 r = IMat2::identity();
    while (n) {
        if (n & 1u) r = r * m;
        n >>= 1u;
        if (n) m = m * m;
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const IMat2& m) {
    return os << "[[" << m.a11 << ',' << m.a12 << "],[" << m.a21 << ',' << m.a22 << "]]";
}

// ---------------------------------------------------------------------------
// Exact rationals

/// Reduced fraction with positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    constexpr Rational(i64 n) : num_(n), den_(1) {}  // NOLINT: implicit by design of the arithmetic
    Rational(i64 n, i64 d) : num_(n), den_(d) {
        if (d == 0) throw error(errc::degenerate_input, "zero denominator");
        normalize();
    }

    i64 num() const { return num_; }
    i64 den() const { return den_; }
    bool is_integer() const { return den_ == 1; }
    bool is_zero() const { return num_ == 0; }

    i64 floor() const { return floor_div(num_, den_); }
    /// Representative in [0, 1).
    Rational frac() const { return Rational(sierp::mod(num_, den_), den_); }

    double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
    std::string str() const { return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_); }

    friend Rational operator+(Rational a, Rational b) {
        i64 g = gcd(a.den_, b.den_);
        i64 bd = b.den_ / g;
        return Rational(checked::add(checked::mul(a.num_, bd), checked::mul(b.num_, a.den_ / g)),
                        checked::mul(a.den_, bd));
    }
    friend Rational operator-(Rational a) { return Rational(checked::sub(0, a.num_), a.den_); }
    friend Rational operator-(Rational a, Rational b) { return a + (-b); }
    friend Rational operator*(Rational a, Rational b) {
        i64 g1 = gcd(a.num_, b.den_);
        i64 g2 = gcd(b.num_, a.den_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        return Rational(checked::mul(a.num_ / g1, b.num_ / g2), checked::mul(a.den_ / g2, b.den_ / g1));
    }
    friend Rational operator/(Rational a, Rational b) {
        if (b.num_ == 0) throw error(errc::degenerate_input, "division by zero");
        return a * Rational(b.den_, b.num_);
    }
    Rational& operator+=(Rational o) { return *this = *this + o; }
    Rational& operator-=(Rational o) { return *this = *this - o; }
    Rational& operator*=(Rational o) { return *this = *this * o; }

    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        __int128 l = static_cast<__int128>(a.num_) * b.den_;
        __int128 r = static_cast<__int128>(b.num_) * a.den_;
        if (l < r) return std::strong_ordering::less;
        if (l > r) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    /// Parses "p" or "p/q".
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::logic_error&) {
            throw error(errc::syntax, "not a rational: '" + s + "'");
        }
    }

private:
    void normalize() {
        if (den_ < 0) {
            num_ = checked::sub(0, num_);
            den_ = checked::sub(0, den_);
        }
        i64 g = gcd(num_, den_);
        if (g > 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    i64 num_ = 0;
    i64 den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

struct QVec2 {
    Rational x;
    Rational y;

    QVec2() = default;
    QVec2(Rational x_, Rational y_) : x(x_), y(y_) {}
    QVec2(IVec2 v) : x(v.x), y(v.y) {}  // NOLINT

    friend bool operator==(const QVec2&, const QVec2&) = default;
    friend auto operator<=>(const QVec2&, const QVec2&) = default;

    friend QVec2 operator+(const QVec2& a, const QVec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend QVec2 operator-(const QVec2& a, const QVec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend QVec2 operator-(const QVec2& a) { return {-a.x, -a.y}; }
    friend QVec2 operator*(Rational k, const QVec2& a) { return {k * a.x, k * a.y}; }

    bool is_integral() const { return x.is_integer() && y.is_integer(); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    IVec2 to_integer() const {
        if (!is_integral()) throw error(errc::non_integral_conjugate, "vector is not integral");
        return {x.num(), y.num()};
    }
    /// Representative of the class mod Z^2 in [0,1)^2.
    QVec2 frac() const { return {x.frac(), y.frac()}; }
};

inline Rational dot(const QVec2& a, IVec2 b) { return a.x * Rational(b.x) + a.y * Rational(b.y); }

inline std::ostream& operator<<(std::ostream& os, const QVec2& v) {
    return os << '(' << v.x << ',' << v.y << ')';
}

struct QMat2 {
    Rational a11{1}, a12{0}, a21{0}, a22{1};

    QMat2() = default;
    QMat2(Rational b11, Rational b12, Rational b21, Rational b22) : a11(b11), a12(b12), a21(b21), a22(b22) {}
    QMat2(const IMat2& m) : a11(m.a11), a12(m.a12), a21(m.a21), a22(m.a22) {}  // NOLINT

    static QMat2 identity() { return {}; }
    static QMat2 diag(Rational d1, Rational d2) { return {d1, 0, 0, d2}; }

    friend bool operator==(const QMat2&, const QMat2&) = default;

    Rational det() const { return a11 * a22 - a12 * a21; }
    QMat2 transpose() const { return {a11, a21, a12, a22}; }
    bool is_integral() const {
        return a11.is_integer() && a12.is_integer() && a21.is_integer() && a22.is_integer();
    }
    IMat2 to_integer() const {
        if (!is_integral()) throw error(errc::non_integral_conjugate);
        return {a11.num(), a12.num(), a21.num(), a22.num()};
    }

    friend QMat2 operator*(const QMat2& a, const QMat2& b) {
        return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
                a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
    }
    friend QVec2 operator*(const QMat2& a, const QVec2& v) {
        return {a.a11 * v.x + a.a12 * v.y, a.a21 * v.x + a.a22 * v.y};
    }
};

inline std::ostream& operator<<(std::ostream& os, const QMat2& m) {
    return os << "[[" << m.a11 << ',' << m.a12 << "],[" << m.a21 << ',' << m.a22 << "]]";
}

// ---------------------------------------------------------------------------
// Number theory

struct BezoutResult {
    i64 g;
    i64 p;
    i64 q;
};

/// Extended Euclid: g = gcd(a, b) > 0 and p·a + q·b = g.
inline BezoutResult bezout(i64 a, i64 b) {
    if (a == 0 && b == 0) throw error(errc::degenerate_input, "bezout(0, 0) is undefined");
    i64 old_r = a, r = b;
    i64 old_s = 1, s = 0;
    i64 old_t = 0, t = 1;
    while (r != 0) {
        i64 quot = old_r / r;
        i64 tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
        tmp = old_t - quot * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

/// 3-adic decomposition n = 3^s · c with 3 ∤ c; n = 0 maps to s = infinite, c = 0.
struct Val3 {
    bool infinite = false;
    int s = 0;
    i64 c = 0;

    friend bool operator==(const Val3&, const Val3&) = default;

    /// s >= n, with the infinite valuation above every finite bound.
    bool at_least(int n) const { return infinite || s >= n; }
};

inline Val3 val3(i64 n) {
    if (n == 0) return {true, 0, 0};
    Val3 v{false, 0, n};
    while (v.c % 3 == 0) {
        v.c /= 3;
        ++v.s;
    }
    return v;
}

inline i64 pow3(int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r = checked::mul(r, 3);
    return r;
}

/// Inverse of R over F_3, entries in {0,1,2}.
inline IMat2 mod3_inverse(const IMat2& r) {
    i64 d = mod(r.det(), 3);
    if (d == 0) throw error(errc::singular_mod3);
    // 1^-1 = 1 and 2^-1 = 2 in F_3
    return (d * r.adjugate()).mod(3);
}

/// Exact test that both eigenvalues of M have modulus > 1.
inline bool is_expanding(const IMat2& m) {
    const i64 t = m.trace();
    const i64 d = m.det();
    const __int128 t2 = static_cast<__int128>(t) * t;
    if (t2 < static_cast<__int128>(4) * d) return d > 1;
    // real eigenvalues: roots of the reciprocal polynomial d x^2 - t x + 1 inside the unit disc
    if (d > -2 && d < 2) return false;
    const i64 sign = d > 0 ? 1 : -1;
    const __int128 at_one = static_cast<__int128>(d) - t + 1;
    const __int128 at_minus_one = static_cast<__int128>(d) + t + 1;
    return at_one * sign > 0 && at_minus_one * sign > 0;
}

inline QMat2 qmat_inverse(const QMat2& q) {
    Rational d = q.det();
    if (d.is_zero()) throw error(errc::singular_matrix);
    Rational inv = Rational(1) / d;
    return {inv * q.a22, -(inv * q.a12), -(inv * q.a21), inv * q.a11};
}

/// Q·M·Q^{-1}, required to be integral.
inline IMat2 integer_conjugate(const IMat2& m, const QMat2& q) {
    QMat2 c = q * QMat2(m) * qmat_inverse(q);
    if (!c.is_integral()) throw error(errc::non_integral_conjugate);
    return c.to_integer();
}

/// Integral inverse of a unimodular matrix.
inline IMat2 unimodular_inverse(const IMat2& m) {
    i64 d = m.det();
    if (d != 1 && d != -1) throw error(errc::degenerate_input, "matrix is not unimodular");
    return d * m.adjugate();
}

}  // namespace sierp
