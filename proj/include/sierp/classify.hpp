#pragma once

/**
 * @file classify.hpp
 * @brief Mod-3 residue classes of the canonical matrix and the verdict regions.
 *
 * Every M̃ with det ∈ 3Z is written as
 *
 *     M̃ = 3·[[a, b], [3^{s-1} c, d]] + M_k,   k = 1..10,
 *
 * where M_k collects the entrywise residues. The nonzero-residue pattern
 * picks k:
 *
 *     k=1 none     k=2 (11)      k=3 (12)      k=4 (21)      k=5 (22)
 *     k=6 (11,21)  k=7 (11,12)   k=8 (21,22)   k=9 (12,22)   k=10 all
 */

#include <optional>
#include <string>

#include "exactalg.hpp"

namespace sierp {

struct ClassDecomposition {
    int k = 1;
    std::optional<i64> p1, p2, p3, p4;
    Val3 lower;  ///< (s, c) of the lower-left block; s >= 1 or infinite when p3 is absent
    bool s_relevant = true;  ///< false for k ∈ {4, 6, 8, 10}
    i64 a = 0, b = 0, d = 0;

    friend bool operator==(const ClassDecomposition&, const ClassDecomposition&) = default;

    /// Rebuilds M̃ from the decomposition.
    IMat2 reconstruct() const {
        const i64 r11 = p1.value_or(0), r12 = p2.value_or(0), r21 = p3.value_or(0), r22 = p4.value_or(0);
        i64 lower_left = lower.infinite ? 0 : checked::mul(pow3(lower.s), lower.c);
        return {checked::add(checked::mul(3, a), r11), checked::add(checked::mul(3, b), r12),
                checked::add(lower_left, r21), checked::add(checked::mul(3, d), r22)};
    }
};

inline ClassDecomposition decompose(const IMat2& m) {
    if (mod(m.det(), 3) != 0) throw error(errc::wrong_branch, "det(M) is not divisible by 3");
    const IMat2 r = m.mod(3);
    const int mask = (r.a11 ? 1 : 0) | (r.a12 ? 2 : 0) | (r.a21 ? 4 : 0) | (r.a22 ? 8 : 0);
    ClassDecomposition dec;
    switch (mask) {
        case 0: dec.k = 1; break;
        case 1: dec.k = 2; break;
        case 2: dec.k = 3; break;
        case 4: dec.k = 4; break;
        case 8: dec.k = 5; break;
        case 1 | 4: dec.k = 6; break;
        case 1 | 2: dec.k = 7; break;
        case 4 | 8: dec.k = 8; break;
        case 2 | 8: dec.k = 9; break;
        case 15: dec.k = 10; break;
        default: throw error(errc::wrong_branch, "residue pattern has det not divisible by 3");
    }
    if (r.a11) dec.p1 = r.a11;
    if (r.a12) dec.p2 = r.a12;
    if (r.a21) dec.p3 = r.a21;
    if (r.a22) dec.p4 = r.a22;
    dec.a = (m.a11 - r.a11) / 3;
    dec.b = (m.a12 - r.a12) / 3;
    dec.d = (m.a22 - r.a22) / 3;
    dec.lower = val3(m.a21 - r.a21);
    dec.s_relevant = r.a21 == 0;
    return dec;
}

enum class RegionTag { B, B1, B2, R1, R2, R3 };
enum class DecisionCase { I, II };

inline const char* to_string(RegionTag t) {
    switch (t) {
        case RegionTag::B: return "B";
        case RegionTag::B1: return "B1";
        case RegionTag::B2: return "B2";
        case RegionTag::R1: return "R1";
        case RegionTag::R2: return "R2";
        case RegionTag::R3: return "R3";
    }
    return "?";
}

inline RegionTag region_from_string(const std::string& s) {
    for (RegionTag t : {RegionTag::B, RegionTag::B1, RegionTag::B2, RegionTag::R1, RegionTag::R2, RegionTag::R3})
        if (s == to_string(t)) return t;
    throw error(errc::syntax, "unknown region tag '" + s + "'");
}

/// Case I (2σ-ω ∈ 3Z):  B = k∈{2,7} with s≥η,  B2 = k∈{2,7} with s<η,  B1 = the rest.
/// Case II:             R1 = k∈{4,6,8,10},  R2/R3 = the rest with s<η / s≥η.
inline RegionTag region(const ClassDecomposition& dec, int eta, DecisionCase c) {
    if (eta < 1) throw error(errc::wrong_branch, "regions are defined for eta >= 1");
    const bool s_ge_eta = dec.lower.at_least(eta);
    if (c == DecisionCase::I) {
        if (dec.k == 2 || dec.k == 7) return s_ge_eta ? RegionTag::B : RegionTag::B2;
        return RegionTag::B1;
    }
    if (dec.k == 4 || dec.k == 6 || dec.k == 8 || dec.k == 10) return RegionTag::R1;
    return s_ge_eta ? RegionTag::R3 : RegionTag::R2;
}

}  // namespace sierp
