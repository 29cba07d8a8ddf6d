#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sierp/spectrality.hpp"

using namespace sierp;

namespace {

const Digits3 e12({1, 0}, {0, 1});
const Digits3 d_sheared({1, 0}, {-2, 6});

/// Lexicographically smallest {0, s1, s2}, s1 < s2, in the box by brute force with numeric unitarity.
std::optional<Triple> brute_search(const IMat2& m, const Digits3& d, i64 bound) {
    std::vector<IVec2> box;
    for (i64 x = -bound; x <= bound; ++x)
        for (i64 y = -bound; y <= bound; ++y) box.push_back({x, y});
    for (std::size_t i = 0; i < box.size(); ++i) {
        if (box[i].is_zero()) continue;
        for (std::size_t j = i + 1; j < box.size(); ++j) {
            if (box[j].is_zero()) continue;
            const Triple s{IVec2{0, 0}, box[i], box[j]};
            if (oracle::hadamard_numeric(m, d.d1, d.d2, s)) return s;
        }
    }
    return std::nullopt;
}

}  // namespace

TEST(IsHadamard, Examples) {
    EXPECT_TRUE(is_hadamard({4, 0, 1, 3}, e12, {IVec2{0, 0}, {2, 2}, {3, 1}}));
    EXPECT_TRUE(is_hadamard({3, 0, 0, 3}, e12, {IVec2{0, 0}, {1, 2}, {2, 1}}));
    EXPECT_FALSE(is_hadamard({4, 0, 3, 3}, d_sheared, {IVec2{0, 0}, {1, 0}, {2, 0}}));
    EXPECT_THROW(is_hadamard({3, 0, 0, 3}, e12, {IVec2{0, 0}, {1, 2}, {1, 2}}), error);
}

TEST(IsHadamard, AgreesWithNumericUnitarity) {
    oracle::Gen gen(oracle::seed + 30);
    int hits = 0;
    for (int i = 0; i < 3000; ++i) {
        const IMat2 m = gen.expanding(6);
        auto raw = gen.digits(4);
        const Digits3 d(raw[1] - raw[0], raw[2] - raw[0]);
        const Triple s{IVec2{0, 0}, {gen.uniform(-6, 6), gen.uniform(-6, 6)}, {gen.uniform(-6, 6), gen.uniform(-6, 6)}};
        if (s[1].is_zero() || s[2].is_zero() || s[1] == s[2]) continue;
        const bool exact = is_hadamard(m, d, s);
        ASSERT_EQ(exact, oracle::hadamard_numeric(m, d.d1, d.d2, s)) << m << d;
        hits += exact;
    }
    EXPECT_GT(hits, 0);
}

TEST(JWitness, Examples) {
    auto w = j_witness({3, 0, 0, 3}, Digits3({1, 0}, {2, 3}));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->index, 0);
    EXPECT_EQ(w->S, (Triple{IVec2{0, 0}, {1, 0}, {2, 0}}));

    EXPECT_FALSE(j_witness({4, 0, 3, 3}, d_sheared));

    w = j_witness({3, 0, 1, 3}, Digits3({1, 0}, {2, 3}));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->index, 0);
    EXPECT_EQ(w->S, (Triple{IVec2{0, 0}, {1, 0}, {2, 0}}));

    w = j_witness({4, 0, 1, 3}, Digits3({1, 0}, {-2, 2}));
    ASSERT_TRUE(w);
    EXPECT_EQ(w->index, 1);
    EXPECT_EQ(w->S, (Triple{IVec2{0, 0}, {2, 2}, {3, 1}}));
}

TEST(SearchHadamard, Examples) {
    auto s = search_hadamard_S({3, 0, 0, 3}, e12, 2);
    ASSERT_TRUE(s);
    EXPECT_TRUE(is_hadamard({3, 0, 0, 3}, e12, *s));
    EXPECT_EQ(*s, (Triple{IVec2{0, 0}, {-2, -1}, {-1, -2}}));

    EXPECT_FALSE(search_hadamard_S({2, 0, 0, 2}, e12, 5));
    EXPECT_FALSE(search_hadamard_S({3, 0, 0, 3}, e12, 0));
}

TEST(SearchHadamard, MatchesBruteForceScan) {
    oracle::Gen gen(oracle::seed + 31);
    int found = 0;
    for (int i = 0; i < 150; ++i) {
        IMat2 m = gen.expanding(6);
        if (i % 2 == 0 && mod(m.det(), 3) != 0) continue;
        auto raw = gen.digits(3);
        const Digits3 d(raw[1] - raw[0], raw[2] - raw[0]);
        const i64 bound = gen.uniform(1, 3);
        const auto fast = search_hadamard_S(m, d, bound);
        ASSERT_EQ(fast, brute_search(m, d, bound)) << m << d << " bound " << bound;
        found += fast.has_value();
    }
    EXPECT_GT(found, 5);
}

TEST(FiniteOrthogonals, Examples) {
    EXPECT_TRUE(finite_orthogonals({4, 0, 9, 3}, Digits3({1, 0}, {2, 3})).finite);

    const auto ev = finite_orthogonals({4, 0, 3, 3}, d_sheared);
    ASSERT_FALSE(ev.finite);
    ASSERT_TRUE(ev.hit);
    EXPECT_EQ(ev.hit->j, 2);
    const QVec2 expect{Rational(1, 3), Rational(2, 9)};
    // the hit is the first zero point in sorted order whose orbit becomes integral
    EXPECT_TRUE(mask_is_zero_exact(d_sheared, ev.hit->z));
    const IVec2 img = (QMat2(power(IMat2{4, 0, 3, 3}.transpose(), 2)) * expect).to_integer();
    EXPECT_EQ(img, (IVec2{10, 2}));

    EXPECT_TRUE(finite_orthogonals({2, 0, 0, 2}, e12).finite);
    EXPECT_THROW(finite_orthogonals({3, 0, 0, 3}, Digits3({1, 1}, {2, 2})), error);
}

TEST(FiniteOrthogonals, MatchesBoundedOrbitScan) {
    oracle::Gen gen(oracle::seed + 32);
    int infinite = 0;
    for (int i = 0; i < 150; ++i) {
        const IMat2 m = gen.expanding(9);
        auto raw = gen.digits(3);
        const Digits3 d(raw[1] - raw[0], raw[2] - raw[0]);
        const i64 n = 3 * std::abs(d.det());
        const auto ev = finite_orthogonals(m, d);
        // (Z/N)^2 has N^2 classes, so N^2 steps exhaust every orbit
        ASSERT_EQ(!ev.finite, oracle::some_orbit_integral(m, d.d1, d.d2, static_cast<int>(n * n) + 1)) << m << d;
        if (ev.hit && ev.hit->image) {
            ASSERT_EQ(QVec2(*ev.hit->image), QMat2(power(m.transpose(), ev.hit->j)) * ev.hit->z);
        }
        infinite += !ev.finite;
    }
    EXPECT_GT(infinite, 5);
}

TEST(BasisCriterion, Examples) {
    auto r = basis_criterion({4, 0, 2, 3}, e12);
    EXPECT_EQ(r.v, (IVec2{2, -3}));
    EXPECT_FALSE(r.pass);

    r = basis_criterion({4, 0, 1, 3}, e12);
    EXPECT_EQ(r.A, IMat2::identity());
    EXPECT_EQ(r.v, (IVec2{3, -3}));
    EXPECT_TRUE(r.pass);

    EXPECT_THROW(basis_criterion({3, 0, 0, 3}, d_sheared), error);
}

TEST(CanonicalCriterion, Examples) {
    const Digits3 d({2, 1}, {2, 4});
    auto cf = canonicalize({8, -5, 4, -1}, d);
    auto dec = decompose(cf.M_tilde);
    auto r = canonical_criterion(cf, dec);
    EXPECT_EQ(r.v, (IVec2{18, -24}));
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.M, (IMat2{4, 0, 1, 3}));
    EXPECT_EQ(r.B, (IMat2{1, -2, 0, 2}));

    auto reduced = canonical_criterion(cf, dec, IMat2{1, 1, 0, 2});
    EXPECT_EQ(reduced.v, (IVec2{3, -12}));
    EXPECT_TRUE(reduced.pass);

    cf = canonicalize({5, -1, 2, 2}, d);
    dec = decompose(cf.M_tilde);
    r = canonical_criterion(cf, dec);
    EXPECT_EQ(r.v, (IVec2{14, -12}));
    EXPECT_FALSE(r.pass);

    const auto cf1 = canonicalize({4, 0, 9, 3}, Digits3({1, 0}, {2, 3}));
    EXPECT_THROW(canonical_criterion(cf1, decompose(cf1.M_tilde)), error);
}

TEST(CanonicalCriterion, RepresentativeInvariance) {
    oracle::Gen gen(oracle::seed + 33);
    int tested = 0;
    for (int i = 0; i < 20000 && tested < 300; ++i) {
        const IMat2 m = gen.expanding(12);
        const auto nd = normalize_digits(gen.digits(12));
        if (mod(m.det(), 3) != 0 || mod(nd.digits.det(), 3) != 0) continue;
        const auto cf = canonicalize(m, nd.digits);
        if (cf.case_one() || cf.eta < 1) continue;
        const auto dec = decompose(cf.M_tilde);
        if (region(dec, cf.eta, DecisionCase::II) != RegionTag::R3) continue;
        ++tested;
        const auto base = canonical_criterion(cf, dec);
        for (int k = 0; k < 10; ++k) {
            const IMat2 a = base.A + 3 * gen.matrix(5);
            ASSERT_EQ(canonical_criterion(cf, dec, a).pass, base.pass);
        }
    }
    EXPECT_GE(tested, 100);
}

TEST(Decide, GoldenCaseTwoPairs) {
    const std::array<IVec2, 3> d{IVec2{0, 0}, {2, 1}, {2, 4}};
    const Verdict v1 = decide({8, -5, 4, -1}, d);
    EXPECT_EQ(v1.status, Status::spectral);
    EXPECT_EQ(v1.branch, Branch::case_ii);
    ASSERT_TRUE(v1.certificate);
    EXPECT_EQ(v1.certificate->Q, q_n(1));
    EXPECT_EQ(v1.certificate->M_bar, (IMat2{4, 0, 1, 3}));
    EXPECT_EQ(v1.certificate->D_bar, Digits3({1, 0}, {-2, 2}));
    EXPECT_TRUE(is_hadamard(v1.certificate->M_bar, v1.certificate->D_bar, v1.certificate->S));
    EXPECT_EQ(v1.certificate->Q_total * QMat2(IMat2{8, -5, 4, -1}) * qmat_inverse(v1.certificate->Q_total),
              QMat2(v1.certificate->M_bar));

    const Verdict v2 = decide({5, -1, 2, 2}, d);
    EXPECT_EQ(v2.status, Status::not_spectral);
    ASSERT_TRUE(v2.reason);
    EXPECT_EQ(v2.reason->kind, ReasonKind::criterion_vector);
    EXPECT_EQ(v2.reason->criterion, (IVec2{14, -12}));
}

TEST(Decide, GoldenBasisPairs) {
    const std::array<IVec2, 3> d{IVec2{0, 0}, {1, 0}, {0, 1}};
    EXPECT_EQ(decide({4, 0, 1, 3}, d).status, Status::spectral);
    const Verdict v = decide({4, 0, 2, 3}, d);
    EXPECT_EQ(v.status, Status::not_spectral);
    EXPECT_EQ(v.branch, Branch::basis_criterion);
    EXPECT_EQ(v.reason->criterion, (IVec2{2, -3}));
}

TEST(Decide, RegionB) {
    const Verdict v = decide({4, 0, 9, 3}, {IVec2{0, 0}, {1, 0}, {2, 3}});
    EXPECT_EQ(v.status, Status::not_spectral);
    EXPECT_EQ(v.branch, Branch::case_i);
    EXPECT_EQ(v.region, RegionTag::B);
    ASSERT_TRUE(v.reason);
    EXPECT_EQ(v.reason->kind, ReasonKind::finite_orthogonals);
    EXPECT_TRUE(v.reason->orbit->finite);
}

TEST(Decide, DetNotDivisibleByThree) {
    const Verdict v = decide({2, 0, 0, 2}, {IVec2{0, 0}, {1, 0}, {2, 3}});
    EXPECT_EQ(v.status, Status::not_spectral);
    EXPECT_EQ(v.branch, Branch::det_not_3z);
    EXPECT_EQ(v.reason->kind, ReasonKind::finite_orthogonals);
}

TEST(Decide, Collinear) {
    Verdict v = decide({3, 0, 0, 3}, {IVec2{0, 0}, {1, 1}, {2, 2}});
    EXPECT_EQ(v.status, Status::open_collinear_spectral_sufficient);
    EXPECT_EQ(v.branch, Branch::collinear);
    EXPECT_FALSE(v.certificate);
    EXPECT_FALSE(v.note.empty());

    v = decide({2, 0, 0, 2}, {IVec2{0, 0}, {1, 0}, {2, 0}});
    EXPECT_EQ(v.status, Status::open_collinear_unknown);

    v = decide({3, 0, 0, 3}, {IVec2{0, 0}, {1, 0}, {3, 0}});
    EXPECT_EQ(v.status, Status::not_spectral);
    EXPECT_EQ(v.reason->kind, ReasonKind::empty_zero_set);

    // b negative: {0, 1, -1} ≡ {0, 1, 2} (mod 3)
    v = decide({3, 0, 0, 3}, {IVec2{0, 0}, {0, 1}, {0, -1}});
    EXPECT_EQ(v.status, Status::open_collinear_spectral_sufficient);
}

TEST(Decide, RejectsNonExpanding) {
    try {
        decide({1, 0, 0, 2}, {IVec2{0, 0}, {1, 0}, {0, 1}});
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::non_expanding);
        EXPECT_STREQ(e.what(), "matrix is not expanding");
    }
}

TEST(Decide, CertificatesAreSound) {
    oracle::Gen gen(oracle::seed + 34);
    int spectral = 0;
    for (int i = 0; i < 1500; ++i) {
        const IMat2 m = gen.expanding(10);
        const auto raw = gen.digits(8);
        const Verdict v = decide(m, raw);
        if (v.status != Status::spectral) {
            ASSERT_FALSE(v.certificate);
            continue;
        }
        ++spectral;
        const Certificate& c = *v.certificate;
        ASSERT_TRUE(is_hadamard(c.M_bar, c.D_bar, c.S));
        ASSERT_EQ(QMat2(c.M_bar), c.Q_total * QMat2(m) * qmat_inverse(c.Q_total));
        const Digits3& d = v.input.digits;
        // the canonical form may swap the two nonzero digits
        const Digits3 moved = transform_digits(d, c.Q_total);
        ASSERT_TRUE(c.D_bar == moved || c.D_bar == moved.swapped()) << c.D_bar << " vs " << moved;
        for (int k = 1; k <= 6; ++k)
            ASSERT_EQ(spectrum_truncated(c.M_bar, c.S, k, c.D_bar).points.size(), static_cast<std::size_t>(pow3(k)));
    }
    EXPECT_GT(spectral, 50);
}

// NOT_SPECTRAL by orbit evidence always agrees with the orbit oracle,
// and in case I the verdict is exactly the orbit oracle.
TEST(Decide, OrbitOracleConsistency) {
    oracle::Gen gen(oracle::seed + 35);
    int tested = 0;
    while (tested < 1000) {
        const IMat2 m = gen.expanding(12);
        const auto raw = gen.digits(12);
        const auto nd = normalize_digits(raw);
        if (mod(m.det(), 3) != 0 || mod(nd.digits.det(), 3) != 0) continue;
        ++tested;
        const Verdict v = decide(m, raw);
        const bool finite = finite_orthogonals(m, nd.digits).finite;
        if (v.reason && v.reason->kind == ReasonKind::finite_orthogonals) ASSERT_TRUE(finite);
        if (v.branch == Branch::case_i) ASSERT_EQ(v.status == Status::spectral, !finite) << m << nd.digits;
    }
}

TEST(SpectrumTruncated, Examples) {
    const Triple s{IVec2{0, 0}, {1, 0}, {2, 0}};
    EXPECT_EQ(spectrum_truncated({3, 0, 0, 3}, s, 1).points, (std::vector<IVec2>{{0, 0}, {1, 0}, {2, 0}}));
    std::vector<IVec2> line;
    for (i64 j = 0; j < 9; ++j) line.push_back({j, 0});
    EXPECT_EQ(spectrum_truncated({3, 0, 0, 3}, s, 2).points, line);

    const auto lvl = spectrum_truncated({4, 0, 1, 3}, {IVec2{0, 0}, {2, 2}, {3, 1}}, 2, e12);
    EXPECT_EQ(lvl.points.size(), 9u);
    for (IVec2 p : {IVec2{0, 0}, IVec2{2, 2}, IVec2{3, 1}, IVec2{12, 8}})
        EXPECT_TRUE(std::binary_search(lvl.points.begin(), lvl.points.end(), p));

    EXPECT_EQ(spectrum_truncated({3, 0, 0, 3}, s, 0).points, (std::vector<IVec2>{IVec2{0, 0}}));
    EXPECT_THROW(spectrum_truncated({3, 0, 0, 3}, s, 15), error);
}
