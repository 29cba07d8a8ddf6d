#pragma once

/**
 * @file canonical.hpp
 * @brief Unimodular normal form of a pair (M, D).
 *
 * For D = {0, α, β} with gcd of all coordinates 1, write α = σ(t1, t2) with
 * σ = gcd(α1, α2) and pick p·t1 + q·t2 = 1. Then P = [[p, q], [-t2, t1]] has
 * det 1 and
 *
 *     P·D = {0, (σ, 0), (ω, 3^η ϑ)},   M̃ = P·M·P^{-1},
 *
 * with ω = p β1 + q β2, α1β2 - α2β1 = 3^η γ (3 ∤ γ) and ϑ = γ / σ.
 * When 3 | σ the roles of α and β are exchanged first.
 *
 * The Bezout pair is fixed by centering ω in (-m/2, m/2], m = |3^η ϑ|. Any
 * two admissible P differ by [[1, k], [0, 1]] on the left, which shifts ω by
 * multiples of m, so the centered form does not depend on the input's
 * unimodular frame.
 */

#include <array>
#include <vector>

#include "exactalg.hpp"
#include "maskzero.hpp"

namespace sierp {

struct CanonicalForm {
    IMat2 P;
    IMat2 M_tilde;
    Digits3 D_tilde;
    i64 sigma = 1;
    i64 omega = 0;
    int eta = 0;
    i64 theta = 1;
    i64 gamma = 1;
    i64 t1 = 1, t2 = 0;
    i64 p = 1, q = 0;
    bool swapped = false;

    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;

    /// 2σ - ω ∈ 3Z.
    bool case_one() const { return mod(checked::sub(checked::mul(2, sigma), omega), 3) == 0; }
    /// 3^η ϑ, the second coordinate of the third digit.
    i64 height() const { return checked::mul(pow3(eta), theta); }
};

struct CanonicalizeOptions {
    /// Replaces (p, q) by (p + k·t2, q - k·t1) after centering.
    i64 bezout_shift = 0;
};

inline CanonicalForm canonicalize(const IMat2& m, const Digits3& d, CanonicalizeOptions opts = {}) {
    if (!is_expanding(m)) throw error(errc::non_expanding);
    if (d.collinear()) throw error(errc::collinear_digits);
    if (gcd(gcd(d.d1.x, d.d1.y), gcd(d.d2.x, d.d2.y)) != 1)
        throw error(errc::degenerate_input, "digit set is not normalized (common factor)");

    CanonicalForm cf;
    IVec2 alpha = d.d1;
    IVec2 beta = d.d2;
    if (gcd(alpha.x, alpha.y) % 3 == 0) {
        std::swap(alpha, beta);
        cf.swapped = true;
    }
    cf.sigma = gcd(alpha.x, alpha.y);
    cf.t1 = alpha.x / cf.sigma;
    cf.t2 = alpha.y / cf.sigma;

    const i64 det = IMat2::from_columns(alpha, beta).det();
    const Val3 v = val3(det);
    cf.eta = v.s;
    cf.gamma = v.c;
    cf.theta = cf.gamma / cf.sigma;

    auto [g, p, q] = bezout(cf.t1, cf.t2);
    (void)g;
    // centre ω = pβ1 + qβ2; shifting k moves ω by -k·(t1β2 - t2β1) = -k·height
    const i64 height = cf.height();
    const i64 m_abs = height < 0 ? -height : height;
    i64 omega = checked::add(checked::mul(p, beta.x), checked::mul(q, beta.y));
    i64 centered = mod(omega, m_abs);
    if (2 * centered > m_abs) centered -= m_abs;
    i64 k = (omega - centered) / height;
    k = checked::add(k, opts.bezout_shift);
    cf.p = checked::add(p, checked::mul(k, cf.t2));
    cf.q = checked::sub(q, checked::mul(k, cf.t1));
    cf.omega = checked::add(checked::mul(cf.p, beta.x), checked::mul(cf.q, beta.y));

    cf.P = {cf.p, cf.q, -cf.t2, cf.t1};
    cf.M_tilde = cf.P * m * unimodular_inverse(cf.P);
    cf.D_tilde = Digits3(cf.P * alpha, cf.P * beta);
    return cf;
}

/// Q_n = diag(1, 3^{-n}).
inline QMat2 q_n(int n) { return QMat2::diag(Rational(1), Rational(1, pow3(n))); }

/// Image of Λ under A^{*-1}: the spectrum of (A M A^{-1}, A D) when Λ is one of (M, D).
inline std::vector<QVec2> transport_spectrum(const std::vector<QVec2>& lambda, const QMat2& a) {
    const QMat2 t = qmat_inverse(a.transpose());
    std::vector<QVec2> out;
    out.reserve(lambda.size());
    for (const auto& l : lambda) out.push_back(t * l);
    return out;
}

/// Q·D for a rational Q that keeps the digits integral.
inline Digits3 transform_digits(const Digits3& d, const QMat2& q) {
    return Digits3((q * QVec2(d.d1)).to_integer(), (q * QVec2(d.d2)).to_integer());
}

}  // namespace sierp
