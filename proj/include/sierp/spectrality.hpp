#pragma once

/**
 * @file spectrality.hpp
 * @brief Decision procedure for spectrality of μ_{M,D} with #D = 3 in the plane.
 *
 * Building blocks:
 *  - is_hadamard: exact unitarity of (1/√3)[e^{2πi<M^{-1}d, s>}]
 *  - j_witness / search_hadamard_S: Hadamard partners S for a pair
 *  - finite_orthogonals: whether M^{*j} Z_D ∩ Z^2 = ∅ for all j ≥ 1,
 *    decided by exhausting the orbits of the finite zero set in (Z/N)^2
 *  - basis_criterion / canonical_criterion: the mod-3 vector tests
 *  - decide: the full case analysis, returning a certified Verdict
 */

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "canonical.hpp"
#include "classify.hpp"
#include "exactalg.hpp"
#include "maskzero.hpp"

namespace sierp {

using Triple = std::array<IVec2, 3>;

// ---------------------------------------------------------------------------
// Hadamard triples

inline bool is_hadamard(const IMat2& m, const Digits3& d, const Triple& s) {
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) throw error(errc::duplicate_digits, "S has duplicate points");
    const QMat2 inv_t = qmat_inverse(QMat2(m.transpose()));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (!mask_is_zero_exact(d, inv_t * QVec2(s[j] - s[i]))) return false;
    return true;
}

struct JWitness {
    int index = 0;  ///< which J_i produced S
    Triple S;
};

/// S = M̃^* J_i for the first i with (J_i - J_i)\{0} ⊂ Z(m_D̃) and M̃^* J_i ⊂ Z^2.
inline std::optional<JWitness> j_witness(const IMat2& mt, const Digits3& dt) {
    const QMat2 adj_t(mt.transpose());
    for (int i = 0; i < 3; ++i) {
        const auto js = j_set(i);
        bool zeros = true;
        for (int a = 0; a < 3 && zeros; ++a)
            for (int b = 0; b < 3 && zeros; ++b)
                if (a != b) zeros = mask_is_zero_exact(dt, js[a] - js[b]);
        if (!zeros) continue;
        Triple s;
        bool integral = true;
        for (int a = 0; a < 3 && integral; ++a) {
            QVec2 img = adj_t * js[a];
            integral = img.is_integral();
            if (integral) s[a] = img.to_integer();
        }
        if (integral) return JWitness{i, s};
    }
    return std::nullopt;
}

namespace detail {

/// Lower-triangular basis {(h11, h21), (0, h22)} of the lattice spanned by
/// the columns of a nonsingular integer matrix, 0 <= h21 < h22.
struct Hermite2 {
    i64 h11 = 1, h21 = 0, h22 = 1;

    explicit Hermite2(const IMat2& gen) {
        IVec2 u = gen.col(0), w = gen.col(1);
        const i64 det = gen.det();
        if (det == 0) throw error(errc::singular_matrix);
        if (u.x == 0 && w.x == 0) throw error(errc::singular_matrix);
        auto [g, p, q] = bezout(u.x, w.x);
        IVec2 v1 = p * u + q * w;
        h11 = g;
        h22 = det < 0 ? -det / g : det / g;
        h21 = mod(v1.y, h22);
    }

    /// Canonical representative of s modulo the lattice, in [0,h11) x [0,h22).
    IVec2 residue(IVec2 s) const {
        const i64 rx = mod(s.x, h11);
        const i64 t = (s.x - rx) / h11;
        return {rx, mod(checked::sub(s.y, checked::mul(t, h21)), h22)};
    }

    i64 index() const { return checked::mul(h11, h22); }

    /// Lexicographically smallest point of c + L in [-b, b]^2 strictly greater than `after`.
    std::optional<IVec2> lex_min(IVec2 c, i64 b, std::optional<IVec2> after) const {
        i64 x0 = -b;
        if (after) x0 = std::max(x0, after->x);
        // first x >= x0 with x ≡ c.x (mod h11)
        i64 x = x0 + mod(c.x - x0, h11);
        for (; x <= b; x += h11) {
            const i64 i = (x - c.x) / h11;
            const i64 target = mod(checked::add(c.y, checked::mul(i, h21)), h22);
            i64 lo = -b;
            if (after && x == after->x) lo = after->y + 1;
            const i64 y = lo + mod(target - lo, h22);
            if (y <= b) return IVec2{x, y};
        }
        return std::nullopt;
    }
};

}  // namespace detail

/// Lexicographically smallest S = {0, s1, s2} (s1 < s2) in [-bound, bound]^2
/// with (M, D, S) a Hadamard triple.
///
/// Whether M^{*-1}s lies in Z(m_D) depends only on s modulo M^* Z^2, so the
/// scan runs over the |det M| residue classes instead of the whole box.
inline std::optional<Triple> search_hadamard_S(const IMat2& m, const Digits3& d, i64 bound) {
    if (bound < 1) return std::nullopt;
    const detail::Hermite2 lat(m.transpose());
    const PullbackZeroTest zero(m, d);
    std::vector<IVec2> good;
    for (i64 rx = 0; rx < lat.h11; ++rx)
        for (i64 ry = 0; ry < lat.h22; ++ry)
            if (zero(IVec2{rx, ry})) good.push_back({rx, ry});
    if (good.empty()) return std::nullopt;

    std::optional<IVec2> s1;
    for (const auto& c : good) {
        auto cand = lat.lex_min(c, bound, std::nullopt);
        if (cand && (!s1 || *cand < *s1)) s1 = cand;
    }
    if (!s1) return std::nullopt;

    const std::set<IVec2> good_set(good.begin(), good.end());
    std::optional<IVec2> s2;
    for (const auto& c : good) {
        if (!good_set.count(lat.residue(c - *s1))) continue;
        auto cand = lat.lex_min(c, bound, s1);
        if (cand && (!s2 || *cand < *s2)) s2 = cand;
    }
    if (!s2) return std::nullopt;
    Triple s{IVec2{0, 0}, *s1, *s2};
    if (!is_hadamard(m, d, s)) throw std::logic_error("search_hadamard_S produced a non-Hadamard triple");
    return s;
}

// ---------------------------------------------------------------------------
// Finite orthogonality

struct OrbitHit {
    QVec2 z;                     ///< zero point whose orbit becomes integral
    int j = 0;                   ///< M^{*j} z ∈ Z^2
    std::optional<IVec2> image;  ///< M^{*j} z when representable without overflow
    friend bool operator==(const OrbitHit&, const OrbitHit&) = default;
};

struct OrbitEvidence {
    bool finite = true;  ///< only finitely many mutually orthogonal exponentials
    std::optional<OrbitHit> hit;
    i64 modulus = 0;  ///< N = 3|det B|
    std::size_t zero_points = 0;
    std::size_t states_explored = 0;  ///< distinct classes in (Z/N)^2 visited
    friend bool operator==(const OrbitEvidence&, const OrbitEvidence&) = default;
};

/// Decides ∃ j ≥ 1, z ∈ Z_D: M^{*j} z ∈ Z^2.
///
/// Each z has denominator dividing N = 3|det B|; scaling by N puts the orbit
/// in (Z/N)^2 where M^* acts as a self-map, so every orbit is eventually
/// periodic. A class reached from an orbit that never hit 0 cannot lead to 0
/// later, so visited classes are shared across starting points.
inline OrbitEvidence finite_orthogonals(const IMat2& m, const Digits3& d) {
    const auto zs = zero_set_fundamental(d);
    const i64 det_b = d.det();
    const i64 n = checked::mul(3, det_b < 0 ? -det_b : det_b);
    OrbitEvidence ev;
    ev.modulus = n;
    ev.zero_points = zs.size();

    const IMat2 mt = m.transpose().mod(n);
    const bool dense = n <= 8192;
    std::vector<char> seen_dense;
    std::unordered_set<i64> seen_sparse;
    if (dense) seen_dense.assign(static_cast<std::size_t>(n * n), 0);
    auto visit = [&](IVec2 a) {
        const i64 key = a.x * n + a.y;
        if (dense) {
            auto& slot = seen_dense[static_cast<std::size_t>(key)];
            if (slot) return false;
            slot = 1;
            return true;
        }
        return seen_sparse.insert(key).second;
    };
    auto step = [&](IVec2 a) {
        return IVec2{mod(mt.a11 * a.x + mt.a12 * a.y, n), mod(mt.a21 * a.x + mt.a22 * a.y, n)};
    };

    for (const auto& z : zs) {
        IVec2 a{(z.x * Rational(n)).num(), (z.y * Rational(n)).num()};
        for (int j = 1;; ++j) {
            a = step(a);
            if (a.is_zero()) {
                OrbitHit hit{z, j, std::nullopt};
                try {
                    hit.image = (QMat2(power(m.transpose(), static_cast<unsigned>(j))) * z).to_integer();
                } catch (const error&) {
                }
                ev.finite = false;
                ev.hit = hit;
                return ev;
            }
            if (!visit(a)) break;
            ++ev.states_explored;
        }
    }
    return ev;
}

// ---------------------------------------------------------------------------
// Mod-3 criteria

struct CriterionResult {
    enum class Kind { basis, canonical };
    Kind kind = Kind::basis;
    IMat2 A;
    IMat2 B;
    IMat2 M;  ///< matrix the criterion was evaluated on
    IVec2 v;  ///< (A M B)^* (1, -1)
    bool pass = false;

    friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

namespace detail {
inline IVec2 criterion_vector(const IMat2& a, const IMat2& m, const IMat2& b) {
    return (a * m * b).transpose() * IVec2{1, -1};
}
inline bool in_3z2(IVec2 v) { return mod(v.x, 3) == 0 && mod(v.y, 3) == 0; }
}  // namespace detail

/// (A M B)^*(1,-1)^t ∈ 3Z^2 with B = [d1 | d2], A·B ≡ I (mod 3).
inline CriterionResult basis_criterion(const IMat2& m, const Digits3& d) {
    const IMat2 b = d.basis();
    if (mod(b.det(), 3) == 0) throw error(errc::wrong_branch, "det B is divisible by 3");
    CriterionResult r;
    r.kind = CriterionResult::Kind::basis;
    r.A = mod3_inverse(b);
    r.B = b;
    r.M = m;
    r.v = detail::criterion_vector(r.A, m, b);
    r.pass = detail::in_3z2(r.v);
    return r;
}

/// Criterion on Q_η M̃ Q_η^{-1} with B = [[σ, ω], [0, ϑ]] and A = σϑ[[ϑ, -ω], [0, σ]].
/// `a_override` substitutes another representative of A mod 3.
inline CriterionResult canonical_criterion(const CanonicalForm& cf, const ClassDecomposition& dec,
                                          std::optional<IMat2> a_override = std::nullopt) {
    if (cf.case_one()) throw error(errc::wrong_branch, "canonical_criterion needs 2σ-ω ∉ 3Z");
    if (cf.eta < 1) throw error(errc::wrong_branch, "canonical_criterion needs η >= 1");
    if (region(dec, cf.eta, DecisionCase::II) != RegionTag::R3)
        throw error(errc::wrong_branch, "canonical_criterion needs region R3");
    CriterionResult r;
    r.kind = CriterionResult::Kind::canonical;
    r.B = {cf.sigma, cf.omega, 0, cf.theta};
    r.A = a_override ? *a_override : checked::mul(cf.sigma, cf.theta) * IMat2{cf.theta, -cf.omega, 0, cf.sigma};
    r.M = integer_conjugate(cf.M_tilde, q_n(cf.eta));
    r.v = detail::criterion_vector(r.A, r.M, r.B);
    r.pass = detail::in_3z2(r.v);
    return r;
}

// ---------------------------------------------------------------------------
// Verdicts

enum class Status { spectral, not_spectral, open_collinear_spectral_sufficient, open_collinear_unknown };
enum class Branch { basis_criterion, det_not_3z, case_i, case_ii, collinear };
enum class ReasonKind { criterion_vector, finite_orthogonals, region, empty_zero_set };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::spectral: return "SPECTRAL";
        case Status::not_spectral: return "NOT_SPECTRAL";
        case Status::open_collinear_spectral_sufficient: return "OPEN_COLLINEAR_SPECTRAL_SUFFICIENT";
        case Status::open_collinear_unknown: return "OPEN_COLLINEAR_UNKNOWN";
    }
    return "?";
}

inline const char* to_string(Branch b) {
    switch (b) {
        case Branch::basis_criterion: return "BASIS_CRITERION";
        case Branch::det_not_3z: return "DET_NOT_3Z";
        case Branch::case_i: return "CASE_I";
        case Branch::case_ii: return "CASE_II";
        case Branch::collinear: return "COLLINEAR";
    }
    return "?";
}

inline const char* to_string(ReasonKind r) {
    switch (r) {
        case ReasonKind::criterion_vector: return "CRITERION_VECTOR";
        case ReasonKind::finite_orthogonals: return "FINITE_ORTHOGONALS";
        case ReasonKind::region: return "REGION";
        case ReasonKind::empty_zero_set: return "EMPTY_ZERO_SET";
    }
    return "?";
}

struct Certificate {
    QMat2 Q;        ///< relative to the canonical pair: M̄ = Q M̃ Q^{-1}
    QMat2 Q_total;  ///< relative to the normalized input: M̄ = Q_total M Q_total^{-1}
    IMat2 M_bar;
    Digits3 D_bar;
    Triple S;
    std::string witness_source;  ///< "J0".."J2", "search" or "orbit"
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Reason {
    ReasonKind kind = ReasonKind::region;
    std::optional<IVec2> criterion;
    std::optional<OrbitEvidence> orbit;
    std::optional<RegionTag> region;
    friend bool operator==(const Reason&, const Reason&) = default;
};

struct TraceStep {
    std::string step;
    std::string value;

    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct Verdict {
    Status status = Status::not_spectral;
    Branch branch = Branch::basis_criterion;
    IMat2 M;
    NormalizedDigits input;
    std::optional<CanonicalForm> canonical;
    std::optional<ClassDecomposition> classification;
    std::optional<RegionTag> region;
    std::optional<CriterionResult> criterion;
    std::optional<Certificate> certificate;
    std::optional<Reason> reason;
    std::vector<TraceStep> trace;
    std::string note;
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

struct DecideOptions {
    i64 bezout_shift = 0;
    std::optional<i64> search_bound;  ///< defaults to 3·max(|σ|, |ω|, 3^η|ϑ|)
};

inline i64 default_search_bound(const CanonicalForm& cf) {
    auto a = [](i64 v) { return v < 0 ? -v : v; };
    return checked::mul(3, std::max({a(cf.sigma), a(cf.omega), a(cf.height())}));
}

namespace detail {

template <class T>
std::string str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

struct Witness {
    Triple S;
    std::string source;
};

/// j_witness, then the box search, then S = {0, s, 2s} from a zero point z with M^* z integral.
inline std::optional<Witness> find_witness(const IMat2& m, const Digits3& d, i64 bound) {
    if (auto jw = j_witness(m, d)) return Witness{jw->S, "J" + std::to_string(jw->index)};
    if (auto s = search_hadamard_S(m, d, bound)) return Witness{*s, "search"};
    if (d.collinear()) return std::nullopt;
    const QMat2 mt(m.transpose());
    for (const auto& z : zero_set_fundamental(d)) {
        QVec2 img = mt * z;
        if (img.is_integral()) {
            IVec2 s = img.to_integer();
            return Witness{Triple{IVec2{0, 0}, s, 2 * s}, "orbit"};
        }
    }
    return std::nullopt;
}

inline void certify(Verdict& v, const QMat2& q, const IMat2& m_bar, const Digits3& d_bar, i64 bound) {
    auto w = find_witness(m_bar, d_bar, bound);
    if (!w) throw std::logic_error("spectral branch without a Hadamard witness for " + str(m_bar) + ", " + str(d_bar));
    if (!is_hadamard(m_bar, d_bar, w->S)) throw std::logic_error("witness failed the Hadamard check");
    Certificate c;
    c.Q = q;
    c.Q_total = q * QMat2(v.canonical->P);
    c.M_bar = m_bar;
    c.D_bar = d_bar;
    c.S = w->S;
    c.witness_source = w->source;
    v.status = Status::spectral;
    v.certificate = c;
    v.trace.push_back({"witness", w->source + " S={" + str(c.S[0]) + "," + str(c.S[1]) + "," + str(c.S[2]) + "}"});
    v.trace.push_back({"certificate", "is_hadamard=true"});
}

inline void decide_collinear(Verdict& v) {
    const Digits3& d = v.input.digits;
    const i64 g1 = gcd(d.d1.x, d.d1.y);
    const IVec2 dir{d.d1.x / g1, d.d1.y / g1};
    const i64 a = g1;
    const i64 b = dir.x != 0 ? d.d2.x / dir.x : d.d2.y / dir.y;
    const i64 ra = mod(a, 3), rb = mod(b, 3);
    const bool zeros = (ra == 1 && rb == 2) || (ra == 2 && rb == 1);
    v.branch = Branch::collinear;
    v.trace.push_back({"collinear", "D = {0," + std::to_string(a) + "," + std::to_string(b) + "}·" + str(dir)});
    if (!zeros) {
        v.status = Status::not_spectral;
        v.reason = Reason{ReasonKind::empty_zero_set, std::nullopt, std::nullopt, std::nullopt};
        v.note = "{a,b} is not {1,2} mod 3, so m_D has no zeros and no two exponentials are orthogonal";
        return;
    }
    if (mod(v.M.det(), 3) == 0) {
        v.status = Status::open_collinear_spectral_sufficient;
        v.note = "collinear digits with {a,b} = {1,2} mod 3 and det(M) in 3Z: spectral by the sufficient "
                 "condition; no certificate is constructed";
    } else {
        v.status = Status::open_collinear_unknown;
        v.note = "collinear digits with det(M) not in 3Z: conjectured non-spectral, necessity is open";
    }
}

}  // namespace detail

inline Verdict decide(const IMat2& m, const std::array<IVec2, 3>& raw, DecideOptions opts = {}) {
    if (!is_expanding(m)) throw error(errc::non_expanding);
    Verdict v;
    v.M = m;
    v.input = normalize_digits(raw);
    const Digits3& d = v.input.digits;
    v.trace.push_back({"normalize", "translation=" + detail::str(v.input.translation) +
                                        " scale=" + std::to_string(v.input.scale) + " D=" + detail::str(d)});

    const i64 det_b = d.det();
    const i64 det_m = m.det();
    v.trace.push_back({"det_B", std::to_string(det_b)});
    v.trace.push_back({"det_M", std::to_string(det_m)});
    if (det_b == 0) {
        detail::decide_collinear(v);
        return v;
    }

    v.canonical = canonicalize(m, d, {opts.bezout_shift});
    const CanonicalForm& cf = *v.canonical;
    v.trace.push_back({"canonical", "P=" + detail::str(cf.P) + " M~=" + detail::str(cf.M_tilde) +
                                        " D~=" + detail::str(cf.D_tilde)});
    const i64 bound = opts.search_bound.value_or(default_search_bound(cf));

    if (mod(det_b, 3) != 0) {
        v.branch = Branch::basis_criterion;
        if (mod(det_m, 3) != 0) v.trace.push_back({"det_M", "det(M) not in 3Z as well; verdicts agree"});
        v.criterion = basis_criterion(m, d);
        v.trace.push_back({"criterion", "basis v=" + detail::str(v.criterion->v) +
                                            (v.criterion->pass ? " in 3Z^2" : " not in 3Z^2")});
        if (!v.criterion->pass) {
            v.status = Status::not_spectral;
            v.reason = Reason{ReasonKind::criterion_vector, v.criterion->v, std::nullopt, std::nullopt};
            return v;
        }
        detail::certify(v, QMat2::identity(), cf.M_tilde, cf.D_tilde, bound);
        return v;
    }

    if (mod(det_m, 3) != 0) {
        v.branch = Branch::det_not_3z;
        OrbitEvidence ev = finite_orthogonals(m, d);
        if (!ev.finite) throw std::logic_error("det(M) not in 3Z but an orbit of Z_D became integral");
        v.trace.push_back({"finite_orthogonals", "true (" + std::to_string(ev.states_explored) + " classes mod " +
                                                     std::to_string(ev.modulus) + ")"});
        v.status = Status::not_spectral;
        v.reason = Reason{ReasonKind::finite_orthogonals, std::nullopt, ev, std::nullopt};
        return v;
    }

    v.classification = decompose(cf.M_tilde);
    const ClassDecomposition& dec = *v.classification;
    v.trace.push_back({"class", "k=" + std::to_string(dec.k) + " s=" +
                                    (dec.lower.infinite ? std::string("inf") : std::to_string(dec.lower.s)) +
                                    " c=" + std::to_string(dec.lower.c)});

    if (cf.case_one()) {
        v.branch = Branch::case_i;
        v.region = region(dec, cf.eta, DecisionCase::I);
        v.trace.push_back({"region", std::string("case I, ") + to_string(*v.region)});
        switch (*v.region) {
            case RegionTag::B: {
                OrbitEvidence ev = finite_orthogonals(cf.M_tilde, cf.D_tilde);
                if (!ev.finite) throw std::logic_error("region B but an orbit of Z_D~ became integral");
                v.trace.push_back({"finite_orthogonals", "true (" + std::to_string(ev.states_explored) +
                                                             " classes mod " + std::to_string(ev.modulus) + ")"});
                v.status = Status::not_spectral;
                v.reason = Reason{ReasonKind::finite_orthogonals, std::nullopt, ev, RegionTag::B};
                return v;
            }
            case RegionTag::B1: {
                if (dec.k == 3) {
                    const QMat2 q = q_n(1);
                    detail::certify(v, q, integer_conjugate(cf.M_tilde, q), transform_digits(cf.D_tilde, q), bound);
                } else {
                    detail::certify(v, QMat2::identity(), cf.M_tilde, cf.D_tilde, bound);
                }
                return v;
            }
            case RegionTag::B2: {
                const QMat2 q = q_n(dec.lower.s);
                detail::certify(v, q, integer_conjugate(cf.M_tilde, q), transform_digits(cf.D_tilde, q), bound);
                return v;
            }
            default: break;
        }
        throw std::logic_error("case I produced a case II region");
    }

    v.branch = Branch::case_ii;
    v.region = region(dec, cf.eta, DecisionCase::II);
    v.trace.push_back({"region", std::string("case II, ") + to_string(*v.region)});
    if (*v.region != RegionTag::R3) {
        v.status = Status::not_spectral;
        v.reason = Reason{ReasonKind::region, std::nullopt, std::nullopt, *v.region};
        return v;
    }
    v.criterion = canonical_criterion(cf, dec);
    v.trace.push_back({"criterion", "canonical v=" + detail::str(v.criterion->v) +
                                        (v.criterion->pass ? " in 3Z^2" : " not in 3Z^2")});
    if (!v.criterion->pass) {
        v.status = Status::not_spectral;
        v.reason = Reason{ReasonKind::criterion_vector, v.criterion->v, std::nullopt, RegionTag::R3};
        return v;
    }
    const QMat2 q = q_n(cf.eta);
    detail::certify(v, q, v.criterion->M, transform_digits(cf.D_tilde, q), bound);
    return v;
}

// ---------------------------------------------------------------------------
// Truncated spectra

struct SpectrumLevel {
    int k = 0;
    std::vector<IVec2> points;  ///< sorted, distinct
};

/// {Σ_{j<k} M^{*j} s_j : s_j ∈ S}. When D is given and (M, D, S) is Hadamard
/// the result must have exactly 3^k points.
inline SpectrumLevel spectrum_truncated(const IMat2& m, const Triple& s, int k,
                                        const std::optional<Digits3>& d = std::nullopt) {
    if (k < 0) throw error(errc::degenerate_input, "depth must be non-negative");
    if (k > 14) throw error(errc::depth_cap, "depth above 14 exceeds the 3^k point cap");
    std::vector<IVec2> pts{IVec2{0, 0}};
    IMat2 pw = IMat2::identity();
    const IMat2 mt = m.transpose();
    for (int level = 0; level < k; ++level) {
        std::vector<IVec2> next;
        next.reserve(pts.size() * 3);
        const Triple shifted{pw * s[0], pw * s[1], pw * s[2]};
        for (const auto& p : pts)
            for (const auto& t : shifted) next.push_back(p + t);
        pts = std::move(next);
        if (level + 1 < k) pw = mt * pw;
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (d && is_hadamard(m, *d, s)) {
        std::size_t expect = 1;
        for (int i = 0; i < k; ++i) expect *= 3;
        if (pts.size() != expect) throw std::logic_error("Hadamard triple produced a truncated spectrum with collisions");
    }
    return {k, pts};
}

}  // namespace sierp
