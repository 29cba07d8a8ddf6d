#pragma once

// Independent reference computations and random instance generators shared by
// the unit tests and the acceptance binary. Nothing here calls the decision
// code paths it is used to check.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "sierp/exactalg.hpp"
#include "sierp/maskzero.hpp"

namespace oracle {

using sierp::i64;
using sierp::IMat2;
using sierp::IVec2;
using sierp::QVec2;
using sierp::Rational;

inline constexpr std::uint64_t seed = 0x5eed'2024'0003ULL;
inline constexpr double zero_tol = 1e-12;

/// |m_D(x)| with D = {0, d1, d2}, straight from the definition.
inline double mask_abs(IVec2 d1, IVec2 d2, double x, double y) {
    const double tau = 2.0 * std::acos(-1.0);
    std::complex<double> s = 1.0;
    s += std::polar(1.0, tau * (double(d1.x) * x + double(d1.y) * y));
    s += std::polar(1.0, tau * (double(d2.x) * x + double(d2.y) * y));
    return std::abs(s) / 3.0;
}

/// Zero set in [0,1)^2 by scanning the grid (a/N, b/N), N = 3|det B|.
inline std::vector<QVec2> zero_set_scan(IVec2 d1, IVec2 d2) {
    const i64 det = d1.x * d2.y - d1.y * d2.x;
    const i64 n = 3 * (det < 0 ? -det : det);
    std::vector<QVec2> out;
    for (i64 a = 0; a < n; ++a)
        for (i64 b = 0; b < n; ++b)
            if (mask_abs(d1, d2, double(a) / double(n), double(b) / double(n)) < zero_tol)
                out.push_back({Rational(a, n), Rational(b, n)});
    std::sort(out.begin(), out.end());
    return out;
}

/// Numeric unitarity of the 3x3 matrix [e^{2πi<M^{-1}d, s>}]/√3.
inline bool hadamard_numeric(const IMat2& m, IVec2 d1, IVec2 d2, const std::array<IVec2, 3>& s) {
    const double det = double(m.a11) * double(m.a22) - double(m.a12) * double(m.a21);
    // x = M^{*-1} t = (M^t)^{-1} t
    auto pull = [&](IVec2 t) {
        const double x = (double(m.a22) * double(t.x) - double(m.a21) * double(t.y)) / det;
        const double y = (-double(m.a12) * double(t.x) + double(m.a11) * double(t.y)) / det;
        return std::pair<double, double>{x, y};
    };
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            auto [x, y] = pull(s[j] - s[i]);
            if (mask_abs(d1, d2, x, y) > 1e-9) return false;
        }
    return true;
}

/// Eigenvalue moduli in floating point.
inline std::pair<double, double> eigen_moduli(const IMat2& m) {
    const double t = double(m.a11 + m.a22);
    const double d = double(m.a11) * double(m.a22) - double(m.a12) * double(m.a21);
    const double disc = t * t - 4.0 * d;
    if (disc < 0) {
        const double r = std::sqrt(d);
        return {r, r};
    }
    const double sq = std::sqrt(disc);
    return {std::abs((t + sq) / 2.0), std::abs((t - sq) / 2.0)};
}

/// Bounded orbit scan: some z in Z_D with (M^*)^j z integral for j <= jmax, with exact rationals.
inline bool some_orbit_integral(const IMat2& m, IVec2 d1, IVec2 d2, int jmax) {
    const auto zs = zero_set_scan(d1, d2);
    for (auto z : zs) {
        for (int j = 1; j <= jmax; ++j) {
            const Rational x = Rational(m.a11) * z.x + Rational(m.a21) * z.y;
            const Rational y = Rational(m.a12) * z.x + Rational(m.a22) * z.y;
            z = {x.frac(), y.frac()};
            if (z.x.is_zero() && z.y.is_zero()) return true;
        }
    }
    return false;
}

class Gen {
public:
    explicit Gen(std::uint64_t s = seed) : rng_(s) {}

    i64 uniform(i64 lo, i64 hi) { return std::uniform_int_distribution<i64>(lo, hi)(rng_); }

    IMat2 matrix(i64 r) { return {uniform(-r, r), uniform(-r, r), uniform(-r, r), uniform(-r, r)}; }

    IMat2 expanding(i64 r) {
        for (;;) {
            IMat2 m = matrix(r);
            if (sierp::is_expanding(m)) return m;
        }
    }

    std::array<IVec2, 3> digits(i64 r, bool allow_collinear = false) {
        for (;;) {
            std::array<IVec2, 3> d{IVec2{uniform(-r, r), uniform(-r, r)}, IVec2{uniform(-r, r), uniform(-r, r)},
                                   IVec2{uniform(-r, r), uniform(-r, r)}};
            if (d[0] == d[1] || d[0] == d[2] || d[1] == d[2]) continue;
            const IVec2 a = d[1] - d[0], b = d[2] - d[0];
            if (!allow_collinear && a.x * b.y - a.y * b.x == 0) continue;
            return d;
        }
    }

    /// Product of random elementary shears and swaps with det 1.
    IMat2 unimodular(int steps = 4, i64 r = 2) {
        IMat2 u = IMat2::identity();
        for (int i = 0; i < steps; ++i) {
            const i64 k = uniform(-r, r);
            IMat2 e = uniform(0, 1) ? IMat2{1, k, 0, 1} : IMat2{1, 0, k, 1};
            u = e * u;
        }
        if (uniform(0, 1)) u = IMat2{0, -1, 1, 0} * u;
        return u;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace oracle
