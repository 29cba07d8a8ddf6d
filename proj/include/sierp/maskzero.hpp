#pragma once

/**
 * @file maskzero.hpp
 * @brief Three-point digit sets, the exact zero set of their mask
 * polynomial m_D(x) = (1/3) Σ_d e^{2πi<d,x>}, and the rational point
 * families used to describe that zero set.
 *
 * A sum 1 + e^{2πi a} + e^{2πi b} of unit roots vanishes only when
 * {a, b} ≡ {1/3, 2/3} (mod 1), so every test here is a comparison of
 * exact rationals.
 */

#include <algorithm>
#include <array>
#include <set>
#include <vector>

#include "exactalg.hpp"

namespace sierp {

/// Ordered digit triple {0, d1, d2}.
struct Digits3 {
    IVec2 d1;
    IVec2 d2;

    Digits3() = default;
    Digits3(IVec2 a, IVec2 b) : d1(a), d2(b) {
        if (a.is_zero() || b.is_zero() || a == b) throw error(errc::duplicate_digits);
    }

    friend bool operator==(const Digits3&, const Digits3&) = default;

    std::array<IVec2, 3> points() const { return {IVec2{0, 0}, d1, d2}; }
    /// B = [d1 | d2].
    IMat2 basis() const { return IMat2::from_columns(d1, d2); }
    i64 det() const { return basis().det(); }
    bool collinear() const { return det() == 0; }

    Digits3 transformed(const IMat2& a) const { return {a * d1, a * d2}; }
    Digits3 swapped() const { return {d2, d1}; }
};

inline std::ostream& operator<<(std::ostream& os, const Digits3& d) {
    return os << "{(0,0)," << d.d1 << ',' << d.d2 << '}';
}

/// D (in units of scale, shifted by translation) is the normalized digit set.
struct NormalizedDigits {
    Digits3 digits;
    IVec2 translation;
    i64 scale = 1;

    friend bool operator==(const NormalizedDigits&, const NormalizedDigits&) = default;
};

/// Moves the first point to the origin and divides out the common gcd.
inline NormalizedDigits normalize_digits(const std::array<IVec2, 3>& raw) {
    if (raw[0] == raw[1] || raw[0] == raw[2] || raw[1] == raw[2]) throw error(errc::duplicate_digits);
    IVec2 t = raw[0];
    IVec2 a = raw[1] - t;
    IVec2 b = raw[2] - t;
    i64 g = gcd(gcd(a.x, a.y), gcd(b.x, b.y));
    a = {a.x / g, a.y / g};
    b = {b.x / g, b.y / g};
    return {Digits3(a, b), t, g};
}

inline bool is_one_third_pair(const Rational& e1, const Rational& e2) {
    static const Rational third(1, 3), two_thirds(2, 3);
    return (e1 == third && e2 == two_thirds) || (e1 == two_thirds && e2 == third);
}

/// m_D(x) == 0, decided exactly.
inline bool mask_is_zero_exact(const Digits3& d, const QVec2& x) {
    return is_one_third_pair(dot(x, d.d1).frac(), dot(x, d.d2).frac());
}

/// Integer-only form of the zero test for points M^{*-1}s, s ∈ Z^2.
///
/// With x = adj(M^*) s / det, <x, d> = f_d(s) / det for the integer functional
/// f_d = d^t adj(M^*). e = f/det is 1/3 (mod 1) iff 3f ≡ det (mod 3|det|).
class PullbackZeroTest {
public:
    PullbackZeroTest(const IMat2& m, const Digits3& d) {
        IMat2 adj = m.transpose().adjugate();
        det_ = m.det();
        if (det_ == 0) throw error(errc::singular_matrix);
        f1_ = adj.transpose() * d.d1;
        f2_ = adj.transpose() * d.d2;
        modulus_ = checked::mul(3, det_ < 0 ? -det_ : det_);
    }

    bool operator()(IVec2 s) const {
        i64 r1 = mod(checked::mul(3, dot(f1_, s)), modulus_);
        i64 r2 = mod(checked::mul(3, dot(f2_, s)), modulus_);
        i64 one = mod(det_, modulus_);
        i64 two = mod(checked::mul(2, det_), modulus_);
        return (r1 == one && r2 == two) || (r1 == two && r2 == one);
    }

private:
    i64 det_ = 1;
    i64 modulus_ = 3;
    IVec2 f1_;
    IVec2 f2_;
};

/// Z(m_D) ∩ [0,1)^2, sorted lexicographically. Requires non-collinear digits.
///
/// Solves B^t x ≡ (1/3, 2/3) and B^t x ≡ (2/3, 1/3) (mod Z^2). Solutions are
/// x = B^{-t}(target + k); since Z^2 / B^t Z^2 has exponent dividing |det B|,
/// k ranging over [0, |det B|)^2 reaches every class.
inline std::vector<QVec2> zero_set_fundamental(const Digits3& d) {
    const i64 det = d.det();
    if (det == 0) throw error(errc::collinear_digits, "digits are collinear; the zero set is a union of lines");
    const QMat2 inv_bt = qmat_inverse(QMat2(d.basis().transpose()));
    const i64 n = det < 0 ? -det : det;
    std::set<QVec2> out;
    const std::array<QVec2, 2> targets{QVec2{Rational(1, 3), Rational(2, 3)}, QVec2{Rational(2, 3), Rational(1, 3)}};
    for (const auto& target : targets) {
        for (i64 k1 = 0; k1 < n; ++k1) {
            for (i64 k2 = 0; k2 < n; ++k2) {
                out.insert((inv_bt * (target + QVec2(IVec2{k1, k2}))).frac());
            }
        }
    }
    return {out.begin(), out.end()};
}

/// Membership of a rational point in the families H, G, G1, G2 for given γ, η.
struct PointFamilyTag {
    bool h = false;
    bool g = false;
    bool g1 = false;
    bool g2 = false;
    i64 gamma = 1;
    int eta = 0;

    bool none() const { return !h && !g && !g1 && !g2; }
};

namespace detail {
inline std::optional<i64> scaled_integer(const Rational& v, i64 factor) {
    Rational r = v * Rational(factor);
    if (!r.is_integer()) return std::nullopt;
    return r.num();
}
inline bool off3(i64 v) { return mod(v, 3) != 0; }
}  // namespace detail

/// Tags x against
///   H  = {(l1/(3γ), l2/(3^η γ)) : 3∤l1},
///   G  = {(l1/(3γ), l2/(3^{η+1} γ)) : 3∤l1, 3∤l2},
///   G1 = {(l1/3, l2/3^{η+1}) : 3∤l1, 3∤l2, l1 ≡ l2 (mod 3)},
///   G2 = same with l1 ≢ l2 (mod 3).
inline PointFamilyTag classify_zero_point(const QVec2& x, i64 gamma, int eta) {
    using detail::off3;
    using detail::scaled_integer;
    PointFamilyTag tag;
    tag.gamma = gamma;
    tag.eta = eta;
    const i64 p = pow3(eta);
    if (auto l1 = scaled_integer(x.x, checked::mul(3, gamma)); l1 && off3(*l1)) {
        tag.h = scaled_integer(x.y, checked::mul(p, gamma)).has_value();
        auto l2 = scaled_integer(x.y, checked::mul(checked::mul(3, p), gamma));
        tag.g = l2 && off3(*l2);
    }
    auto m1 = scaled_integer(x.x, 3);
    auto m2 = scaled_integer(x.y, checked::mul(3, p));
    if (m1 && m2 && off3(*m1) && off3(*m2)) {
        bool same = mod(*m1, 3) == mod(*m2, 3);
        tag.g1 = same;
        tag.g2 = !same;
    }
    return tag;
}

/// The three-point sets J_0, J_1, J_2 used to build Hadamard witnesses.
inline std::array<QVec2, 3> j_set(int i) {
    const Rational z(0), t1(1, 3), t2(2, 3);
    switch (i) {
        case 0: return {QVec2{z, z}, QVec2{t1, z}, QVec2{t2, z}};
        case 1: return {QVec2{z, z}, QVec2{t1, t2}, QVec2{t2, t1}};
        case 2: return {QVec2{z, z}, QVec2{t1, t1}, QVec2{t2, t2}};
        default: throw error(errc::degenerate_input, "J-set index must be 0, 1 or 2");
    }
}

}  // namespace sierp
