#pragma once

/**
 * @file numverify.hpp
 * @brief Floating-point evidence: the Fourier transform
 * μ̂(ξ) = Π_{j≥1} m_D(M^{*-j} ξ), orthogonality residuals over finite
 * frequency sets, completeness profiles Σ_λ |μ̂(ξ+λ)|², and attractor
 * samples for rendering.
 *
 * Nothing here feeds back into a verdict.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <thread>
#include <vector>

#include "exactalg.hpp"
#include "maskzero.hpp"
#include "spectrality.hpp"

namespace sierp::numeric {

using cplx = std::complex<double>;
constexpr double two_pi = 6.283185307179586476925286766559;
constexpr int max_depth = 200;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

struct Mat2 {
    double a11 = 1, a12 = 0, a21 = 0, a22 = 1;

    Mat2() = default;
    Mat2(double b11, double b12, double b21, double b22) : a11(b11), a12(b12), a21(b21), a22(b22) {}
    explicit Mat2(const IMat2& m)
        : a11(double(m.a11)), a12(double(m.a12)), a21(double(m.a21)), a22(double(m.a22)) {}

    Mat2 inverse() const {
        const double d = a11 * a22 - a12 * a21;
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
    Mat2 transpose() const { return {a11, a21, a12, a22}; }
    Vec2 operator*(Vec2 v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    Mat2 operator*(const Mat2& b) const {
        return {a11 * b.a11 + a12 * b.a21, a11 * b.a12 + a12 * b.a22, a21 * b.a11 + a22 * b.a21,
                a21 * b.a12 + a22 * b.a22};
    }
    /// Spectral norm.
    double op_norm() const {
        const double s = a11 * a11 + a12 * a12 + a21 * a21 + a22 * a22;
        const double d = a11 * a22 - a12 * a21;
        const double disc = std::sqrt(std::max(0.0, s * s - 4.0 * d * d));
        return std::sqrt((s + disc) / 2.0);
    }
};

/// Runs f(i) for i in [0, n) on up to hardware_concurrency threads; f must only write slot i.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) f(i);
        });
    for (auto& t : pool) t.join();
}

inline cplx mask(const Digits3& d, Vec2 x) {
    const cplx e1 = std::polar(1.0, two_pi * (double(d.d1.x) * x.x + double(d.d1.y) * x.y));
    const cplx e2 = std::polar(1.0, two_pi * (double(d.d2.x) * x.x + double(d.d2.y) * x.y));
    return (1.0 + e1 + e2) / 3.0;
}

inline double max_digit_norm(const Digits3& d) {
    return std::max(norm({double(d.d1.x), double(d.d1.y)}), norm({double(d.d2.x), double(d.d2.y)}));
}

/// Truncation data shared by every evaluation for one (M, D).
///
/// For p with q = ‖M^{*-p}‖ < 1 and K = Σ_{r=1..p} ‖M^{*-r}‖ / (1 - q),
/// Σ_{j>J} ‖M^{*-j} ξ‖ <= K ‖M^{*-J} ξ‖. Together with
/// |1 - m_D(x)| <= 2π max‖d‖ ‖x‖ the tail product differs from 1 by at most
/// exp(2π max‖d‖ K ‖M^{*-J} ξ‖) - 1.
class FourierEvaluator {
public:
    FourierEvaluator(const IMat2& m, const Digits3& d) : digits_(d) {
        if (!is_expanding(m)) throw error(errc::non_expanding);
        step_ = Mat2(m).transpose().inverse();
        Mat2 pw = step_;
        double partial = 0.0;
        for (int p = 1; p <= 64; ++p) {
            const double n = pw.op_norm();
            partial += n;
            if (n < 0.999) {
                tail_factor_ = partial / (1.0 - n);
                break;
            }
            pw = pw * step_;
        }
        radius_ = max_digit_norm(d);
    }

    struct Result {
        cplx value;
        int depth = 0;
        double tail_bound = 0.0;
    };

    Result operator()(Vec2 xi, double eps) const {
        Result r{cplx(1.0, 0.0), 0, 0.0};
        Vec2 y = xi;
        for (int j = 1; j <= max_depth; ++j) {
            const double bound = std::expm1(two_pi * radius_ * tail_factor_ * norm(y));
            if (bound < eps) {
                r.tail_bound = bound;
                return r;
            }
            y = step_ * y;
            r.value *= mask(digits_, y);
            r.depth = j;
            if (std::abs(r.value) == 0.0) {
                r.tail_bound = 0.0;
                return r;
            }
        }
        r.tail_bound = std::expm1(two_pi * radius_ * tail_factor_ * norm(y));
        return r;
    }

    const Digits3& digits() const { return digits_; }

private:
    Digits3 digits_;
    Mat2 step_;
    double tail_factor_ = 1e300;
    double radius_ = 0.0;
};

struct FourierEval {
    Vec2 xi;
    cplx value;
    int truncation_depth = 0;
    double tail_bound = 0.0;
};

inline FourierEval mu_hat(const IMat2& m, const Digits3& d, Vec2 xi, double eps = 1e-12) {
    if (!(eps > 0.0)) throw error(errc::degenerate_input, "eps must be positive");
    FourierEvaluator f(m, d);
    auto r = f(xi, eps);
    return {xi, r.value, r.depth, r.tail_bound};
}

inline Vec2 to_vec(const QVec2& v) { return {v.x.to_double(), v.y.to_double()}; }
inline Vec2 to_vec(IVec2 v) { return {double(v.x), double(v.y)}; }

/// max_{λ≠λ'} |μ̂(λ - λ')|.
inline double orthogonality_residual(const IMat2& m, const Digits3& d, const std::vector<Vec2>& lambda,
                                     double eps = 1e-12) {
    FourierEvaluator f(m, d);
    std::vector<double> row(lambda.size(), 0.0);
    parallel_for(lambda.size(), [&](std::size_t i) {
        for (std::size_t j = i + 1; j < lambda.size(); ++j)
            row[i] = std::max(row[i], std::abs(f({lambda[i].x - lambda[j].x, lambda[i].y - lambda[j].y}, eps).value));
    });
    return row.empty() ? 0.0 : *std::max_element(row.begin(), row.end());
}

inline std::vector<Vec2> to_vecs(const std::vector<IVec2>& pts) {
    std::vector<Vec2> out;
    out.reserve(pts.size());
    for (auto p : pts) out.push_back(to_vec(p));
    return out;
}

/// Sample points ξ for completeness profiles: an n x n grid {(i/n, j/n)} in [0,1)^2.
inline std::vector<Vec2> unit_grid(int n) {
    std::vector<Vec2> g;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.push_back({double(i) / n, double(j) / n});
    return g;
}

struct CompletenessProfile {
    std::vector<Vec2> samples;
    int depth = 0;
    /// partial[level][i] = Σ_{λ ∈ Λ_level} |μ̂(ξ_i + λ)|², level = 0..depth
    std::vector<std::vector<double>> partial;

    const std::vector<double>& final_values() const { return partial.back(); }
    double min() const { return *std::min_element(final_values().begin(), final_values().end()); }
    double max() const { return *std::max_element(final_values().begin(), final_values().end()); }
    double mean() const {
        double s = 0.0;
        for (double v : final_values()) s += v;
        return s / double(final_values().size());
    }
};

inline CompletenessProfile completeness_profile(const IMat2& m, const Digits3& d, const Triple& s, int k,
                                                const std::vector<Vec2>& samples, double eps = 1e-12) {
    if (!is_hadamard(m, d, s)) throw error(errc::degenerate_input, "completeness profile needs a Hadamard triple");
    if (!(s[0].is_zero() || s[1].is_zero() || s[2].is_zero()))
        throw error(errc::degenerate_input, "S must contain 0");
    FourierEvaluator f(m, d);
    CompletenessProfile prof;
    prof.samples = samples;
    prof.depth = k;
    prof.partial.assign(static_cast<std::size_t>(k) + 1, std::vector<double>(samples.size(), 0.0));

    // Λ_0 ⊂ Λ_1 ⊂ ... since 0 ∈ S; attribute each point to the first level containing it
    std::vector<IVec2> prev;
    for (int level = 0; level <= k; ++level) {
        auto lam = spectrum_truncated(m, s, level).points;
        std::vector<IVec2> fresh;
        std::set_difference(lam.begin(), lam.end(), prev.begin(), prev.end(), std::back_inserter(fresh));
        parallel_for(samples.size(), [&](std::size_t i) {
            double acc = level > 0 ? prof.partial[level - 1][i] : 0.0;
            for (auto l : fresh) {
                const double a = std::abs(f({samples[i].x + double(l.x), samples[i].y + double(l.y)}, eps).value);
                acc += a * a;
            }
            prof.partial[level][i] = acc;
        });
        prev = std::move(lam);
    }
    return prof;
}

/// All 3^depth points Σ_{j=1..depth} M^{-j} d_j.
inline std::vector<Vec2> attractor_points(const IMat2& m, const Digits3& d, int depth) {
    if (!is_expanding(m)) throw error(errc::non_expanding);
    if (depth < 1) throw error(errc::degenerate_input, "depth must be at least 1");
    if (depth > 14) throw error(errc::depth_cap, "3^depth exceeds 10^7 points");
    const Mat2 inv = Mat2(m).inverse();
    std::vector<Vec2> pts{{0.0, 0.0}};
    // Horner form: x_depth = M^{-1}(d_1 + M^{-1}(d_2 + ...))
    for (int level = 0; level < depth; ++level) {
        std::vector<Vec2> next;
        next.reserve(pts.size() * 3);
        for (const auto& p : pts)
            for (const auto& dg : d.points()) next.push_back(inv * Vec2{p.x + double(dg.x), p.y + double(dg.y)});
        pts = std::move(next);
    }
    return pts;
}

/// Radius r = max‖d‖ Σ_{j≥1} ‖M^{-j}‖ of a ball containing the attractor, summed until the terms vanish.
inline double attractor_radius(const IMat2& m, const Digits3& d) {
    const Mat2 inv = Mat2(m).inverse();
    Mat2 pw = inv;
    double sum = 0.0;
    for (int j = 1; j <= 4096; ++j) {
        const double n = pw.op_norm();
        sum += n;
        if (n < 1e-17) break;
        pw = pw * inv;
    }
    return max_digit_norm(d) * sum;
}

}  // namespace sierp::numeric
