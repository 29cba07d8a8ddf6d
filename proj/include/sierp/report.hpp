#pragma once

/**
 * @file report.hpp
 * @brief Text parsing of matrices and digit sets, and the JSON report.
 *
 * Reports serialize with sorted keys and doubles rounded to 12 significant
 * digits, so identical inputs give byte-identical output and every report
 * parses back to an equal value.
 */

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "numverify.hpp"
#include "spectrality.hpp"

namespace sierp {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class IntListParser {
public:
    explicit IntListParser(std::string_view text) : text_(text) {}

    /// Groups separated by ';', integers inside a group separated by ','.
    std::vector<std::vector<i64>> groups() {
        std::vector<std::vector<i64>> out(1);
        skip_ws();
        if (pos_ == text_.size()) fail("empty input");
        for (;;) {
            out.back().push_back(integer());
            skip_ws();
            if (pos_ == text_.size()) break;
            const char c = text_[pos_];
            if (c == ',') {
                ++pos_;
            } else if (c == ';') {
                ++pos_;
                out.emplace_back();
            } else {
                fail(std::string("unexpected '") + c + "'");
            }
            skip_ws();
        }
        return out;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw error(errc::syntax, "at column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" +
                                      std::string(text_) + "\"");
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    i64 integer() {
        skip_ws();
        std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
        std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            fail("expected an integer");
        }
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) fail("non-integer token");
        i64 v = 0;
        const char* first = text_.data() + (text_[start] == '+' ? start + 1 : start);
        auto [ptr, ec] = std::from_chars(first, text_.data() + pos_, v);
        if (ec != std::errc() || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("integer out of range");
        }
        return v;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline std::vector<IVec2> parse_pairs(std::string_view text, std::size_t count, const char* what) {
    IntListParser p(text);
    auto g = p.groups();
    if (g.size() != count)
        throw error(errc::syntax, std::string(what) + ": expected " + std::to_string(count) + " rows separated by ';', got " +
                                      std::to_string(g.size()));
    std::vector<IVec2> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].size() != 2)
            throw error(errc::syntax, std::string(what) + ": row " + std::to_string(i + 1) + " has " +
                                          std::to_string(g[i].size()) + " entries, expected 2");
        out.push_back({g[i][0], g[i][1]});
    }
    return out;
}

}  // namespace detail

/// "a,b;c,d" → [[a,b],[c,d]].
inline IMat2 parse_matrix(std::string_view text) {
    auto rows = detail::parse_pairs(text, 2, "matrix");
    return {rows[0].x, rows[0].y, rows[1].x, rows[1].y};
}

/// "x1,y1;x2,y2;x3,y3" → three points.
inline std::array<IVec2, 3> parse_digits(std::string_view text) {
    auto rows = detail::parse_pairs(text, 3, "digits");
    return {rows[0], rows[1], rows[2]};
}

// ---------------------------------------------------------------------------
// Numeric block

/// Rounds to 12 significant digits so the JSON text is stable across platforms.
inline double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::strtod(buf, nullptr);
}

struct NumericBlock {
    int residual_depth = 0;
    double orthogonality_residual = 0.0;
    int profile_depth = 0;
    int grid = 0;
    double completeness_min = 0.0;
    double completeness_mean = 0.0;
    double completeness_max = 0.0;
    double eps = 0.0;
    std::string statement;

    friend bool operator==(const NumericBlock&, const NumericBlock&) = default;
};

struct Report {
    IMat2 matrix;
    std::array<IVec2, 3> digits{};
    Verdict verdict;
    std::optional<NumericBlock> numeric;

    friend bool operator==(const Report&, const Report&) = default;
};

inline constexpr const char* numeric_statement =
    "floating-point evidence only; completeness of the spectrum is a theorem, and the thresholds are heuristics";

/// Orthogonality residual over Λ_{residual_depth} and the completeness profile at profile_depth on a grid x grid lattice.
inline NumericBlock numeric_evidence(const Certificate& c, int residual_depth = 4, int profile_depth = 6, int grid = 5,
                                     double eps = 1e-12) {
    NumericBlock n;
    n.residual_depth = residual_depth;
    n.profile_depth = profile_depth;
    n.grid = grid;
    n.eps = eps;
    n.statement = numeric_statement;
    const auto lam = numeric::to_vecs(spectrum_truncated(c.M_bar, c.S, residual_depth, c.D_bar).points);
    n.orthogonality_residual = round12(numeric::orthogonality_residual(c.M_bar, c.D_bar, lam, eps));
    const auto prof = numeric::completeness_profile(c.M_bar, c.D_bar, c.S, profile_depth, numeric::unit_grid(grid), eps);
    n.completeness_min = round12(prof.min());
    n.completeness_mean = round12(prof.mean());
    n.completeness_max = round12(prof.max());
    return n;
}

// ---------------------------------------------------------------------------
// JSON encoding

inline json to_json(IVec2 v) { return json::array({v.x, v.y}); }
inline json to_json(const IMat2& m) { return json::array({json::array({m.a11, m.a12}), json::array({m.a21, m.a22})}); }
inline json to_json(const Rational& r) { return r.str(); }
inline json to_json(const QVec2& v) { return json::array({to_json(v.x), to_json(v.y)}); }
inline json to_json(const QMat2& m) {
    return json::array({json::array({to_json(m.a11), to_json(m.a12)}), json::array({to_json(m.a21), to_json(m.a22)})});
}
inline json to_json(const Digits3& d) { return json::array({to_json(IVec2{0, 0}), to_json(d.d1), to_json(d.d2)}); }
inline json to_json(const Triple& t) { return json::array({to_json(t[0]), to_json(t[1]), to_json(t[2])}); }
template <class T>
json opt_json(const std::optional<T>& v) {
    return v ? json(*v) : json(nullptr);
}

inline json to_json(const CanonicalForm& cf) {
    return {{"P", to_json(cf.P)},         {"M_tilde", to_json(cf.M_tilde)}, {"D_tilde", to_json(cf.D_tilde)},
            {"sigma", cf.sigma},          {"omega", cf.omega},              {"eta", cf.eta},
            {"theta", cf.theta},          {"gamma", cf.gamma},              {"t", json::array({cf.t1, cf.t2})},
            {"bezout", json::array({cf.p, cf.q})}, {"swapped", cf.swapped}};
}

inline json to_json(const ClassDecomposition& d, std::optional<RegionTag> region) {
    return {{"k", d.k},
            {"p1", opt_json(d.p1)},
            {"p2", opt_json(d.p2)},
            {"p3", opt_json(d.p3)},
            {"p4", opt_json(d.p4)},
            {"s", d.lower.infinite ? json("INFINITE") : json(d.lower.s)},
            {"c", d.lower.c},
            {"s_relevant", d.s_relevant},
            {"a", d.a},
            {"b", d.b},
            {"d", d.d},
            {"region", region ? json(to_string(*region)) : json(nullptr)}};
}

inline json to_json(const CriterionResult& c) {
    return {{"kind", c.kind == CriterionResult::Kind::basis ? "basis" : "canonical"},
            {"A", to_json(c.A)},
            {"B", to_json(c.B)},
            {"M", to_json(c.M)},
            {"v", to_json(c.v)},
            {"pass", c.pass}};
}

inline json to_json(const Certificate& c) {
    return {{"Q", to_json(c.Q)},         {"Q_total", to_json(c.Q_total)}, {"M_bar", to_json(c.M_bar)},
            {"D_bar", to_json(c.D_bar)}, {"S", to_json(c.S)},             {"witness", c.witness_source}};
}

inline json to_json(const OrbitEvidence& e) {
    json hit = nullptr;
    if (e.hit)
        hit = {{"z", to_json(e.hit->z)}, {"j", e.hit->j}, {"image", e.hit->image ? to_json(*e.hit->image) : json(nullptr)}};
    return {{"finite", e.finite},
            {"hit", hit},
            {"modulus", e.modulus},
            {"zero_points", e.zero_points},
            {"states_explored", e.states_explored}};
}

inline json to_json(const Reason& r) {
    return {{"kind", to_string(r.kind)},
            {"criterion_vector", r.criterion ? to_json(*r.criterion) : json(nullptr)},
            {"orbit", r.orbit ? to_json(*r.orbit) : json(nullptr)},
            {"region", r.region ? json(to_string(*r.region)) : json(nullptr)}};
}

inline json to_json(const NumericBlock& n) {
    return {{"residual_depth", n.residual_depth},
            {"orthogonality_residual", n.orthogonality_residual},
            {"profile_depth", n.profile_depth},
            {"grid", n.grid},
            {"completeness_min", n.completeness_min},
            {"completeness_mean", n.completeness_mean},
            {"completeness_max", n.completeness_max},
            {"eps", n.eps},
            {"statement", n.statement}};
}

inline json to_json(const Report& r) {
    const Verdict& v = r.verdict;
    json trace = json::array();
    for (const auto& t : v.trace) trace.push_back({{"step", t.step}, {"value", t.value}});
    return {{"input",
             {{"matrix", to_json(r.matrix)},
              {"digits", json::array({to_json(r.digits[0]), to_json(r.digits[1]), to_json(r.digits[2])})},
              {"normalized",
               {{"digits", to_json(v.input.digits)},
                {"translation", to_json(v.input.translation)},
                {"scale", v.input.scale}}}}},
            {"status", to_string(v.status)},
            {"branch", to_string(v.branch)},
            {"canonical", v.canonical ? to_json(*v.canonical) : json(nullptr)},
            {"classification", v.classification ? to_json(*v.classification, v.region) : json(nullptr)},
            {"criterion", v.criterion ? to_json(*v.criterion) : json(nullptr)},
            {"certificate", v.certificate ? to_json(*v.certificate) : json(nullptr)},
            {"reason", v.reason ? to_json(*v.reason) : json(nullptr)},
            {"numeric", r.numeric ? to_json(*r.numeric) : json(nullptr)},
            {"trace", trace},
            {"note", v.note}};
}

inline std::string dump(const Report& r) { return to_json(r).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// JSON decoding

namespace detail {

inline IVec2 ivec(const json& j) { return {j.at(0).get<i64>(), j.at(1).get<i64>()}; }
inline IMat2 imat(const json& j) {
    return {j.at(0).at(0).get<i64>(), j.at(0).at(1).get<i64>(), j.at(1).at(0).get<i64>(), j.at(1).at(1).get<i64>()};
}
inline Rational rat(const json& j) { return Rational::parse(j.get<std::string>()); }
inline QVec2 qvec(const json& j) { return {rat(j.at(0)), rat(j.at(1))}; }
inline QMat2 qmat(const json& j) { return {rat(j.at(0).at(0)), rat(j.at(0).at(1)), rat(j.at(1).at(0)), rat(j.at(1).at(1))}; }
inline Digits3 digits(const json& j) { return {ivec(j.at(1)), ivec(j.at(2))}; }
inline Triple triple(const json& j) { return {ivec(j.at(0)), ivec(j.at(1)), ivec(j.at(2))}; }
inline std::optional<i64> opt_int(const json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<i64>();
}

template <class E, std::size_t N>
E enum_from(const json& j, const std::array<E, N>& all) {
    const auto s = j.get<std::string>();
    for (E e : all)
        if (s == to_string(e)) return e;
    throw error(errc::syntax, "unknown tag '" + s + "'");
}

inline const std::array<Status, 4> all_status{Status::spectral, Status::not_spectral,
                                              Status::open_collinear_spectral_sufficient, Status::open_collinear_unknown};
inline const std::array<Branch, 5> all_branch{Branch::basis_criterion, Branch::det_not_3z, Branch::case_i, Branch::case_ii,
                                              Branch::collinear};
inline const std::array<ReasonKind, 4> all_reason{ReasonKind::criterion_vector, ReasonKind::finite_orthogonals,
                                                  ReasonKind::region, ReasonKind::empty_zero_set};

}  // namespace detail

inline Report report_from_json(const json& j) {
    using namespace detail;
    Report r;
    const json& in = j.at("input");
    r.matrix = imat(in.at("matrix"));
    for (int i = 0; i < 3; ++i) r.digits[i] = ivec(in.at("digits").at(i));
    Verdict& v = r.verdict;
    v.M = r.matrix;
    v.input = {digits(in.at("normalized").at("digits")), ivec(in.at("normalized").at("translation")),
               in.at("normalized").at("scale").get<i64>()};
    v.status = enum_from(j.at("status"), all_status);
    v.branch = enum_from(j.at("branch"), all_branch);

    if (const json& c = j.at("canonical"); !c.is_null()) {
        CanonicalForm cf;
        cf.P = imat(c.at("P"));
        cf.M_tilde = imat(c.at("M_tilde"));
        cf.D_tilde = digits(c.at("D_tilde"));
        cf.sigma = c.at("sigma").get<i64>();
        cf.omega = c.at("omega").get<i64>();
        cf.eta = c.at("eta").get<int>();
        cf.theta = c.at("theta").get<i64>();
        cf.gamma = c.at("gamma").get<i64>();
        cf.t1 = c.at("t").at(0).get<i64>();
        cf.t2 = c.at("t").at(1).get<i64>();
        cf.p = c.at("bezout").at(0).get<i64>();
        cf.q = c.at("bezout").at(1).get<i64>();
        cf.swapped = c.at("swapped").get<bool>();
        v.canonical = cf;
    }
    if (const json& c = j.at("classification"); !c.is_null()) {
        ClassDecomposition d;
        d.k = c.at("k").get<int>();
        d.p1 = opt_int(c.at("p1"));
        d.p2 = opt_int(c.at("p2"));
        d.p3 = opt_int(c.at("p3"));
        d.p4 = opt_int(c.at("p4"));
        if (c.at("s").is_string()) {
            d.lower = {true, 0, c.at("c").get<i64>()};
        } else {
            d.lower = {false, c.at("s").get<int>(), c.at("c").get<i64>()};
        }
        d.s_relevant = c.at("s_relevant").get<bool>();
        d.a = c.at("a").get<i64>();
        d.b = c.at("b").get<i64>();
        d.d = c.at("d").get<i64>();
        v.classification = d;
        if (!c.at("region").is_null()) v.region = region_from_string(c.at("region").get<std::string>());
    }
    if (const json& c = j.at("criterion"); !c.is_null()) {
        CriterionResult cr;
        cr.kind = c.at("kind").get<std::string>() == "basis" ? CriterionResult::Kind::basis
                                                                : CriterionResult::Kind::canonical;
        cr.A = imat(c.at("A"));
        cr.B = imat(c.at("B"));
        cr.M = imat(c.at("M"));
        cr.v = ivec(c.at("v"));
        cr.pass = c.at("pass").get<bool>();
        v.criterion = cr;
    }
    if (const json& c = j.at("certificate"); !c.is_null()) {
        v.certificate = Certificate{qmat(c.at("Q")), qmat(c.at("Q_total")), imat(c.at("M_bar")),
                                    digits(c.at("D_bar")), triple(c.at("S")), c.at("witness").get<std::string>()};
    }
    if (const json& c = j.at("reason"); !c.is_null()) {
        Reason rs;
        rs.kind = enum_from(c.at("kind"), all_reason);
        if (!c.at("criterion_vector").is_null()) rs.criterion = ivec(c.at("criterion_vector"));
        if (!c.at("region").is_null()) rs.region = region_from_string(c.at("region").get<std::string>());
        if (const json& o = c.at("orbit"); !o.is_null()) {
            OrbitEvidence ev;
            ev.finite = o.at("finite").get<bool>();
            ev.modulus = o.at("modulus").get<i64>();
            ev.zero_points = o.at("zero_points").get<std::size_t>();
            ev.states_explored = o.at("states_explored").get<std::size_t>();
            if (const json& h = o.at("hit"); !h.is_null()) {
                OrbitHit hit{qvec(h.at("z")), h.at("j").get<int>(), std::nullopt};
                if (!h.at("image").is_null()) hit.image = ivec(h.at("image"));
                ev.hit = hit;
            }
            rs.orbit = ev;
        }
        v.reason = rs;
    }
    if (const json& n = j.at("numeric"); !n.is_null()) {
        r.numeric = NumericBlock{n.at("residual_depth").get<int>(),      n.at("orthogonality_residual").get<double>(),
                                 n.at("profile_depth").get<int>(),       n.at("grid").get<int>(),
                                 n.at("completeness_min").get<double>(), n.at("completeness_mean").get<double>(),
                                 n.at("completeness_max").get<double>(), n.at("eps").get<double>(),
                                 n.at("statement").get<std::string>()};
    }
    for (const auto& t : j.at("trace")) v.trace.push_back({t.at("step").get<std::string>(), t.at("value").get<std::string>()});
    v.note = j.at("note").get<std::string>();
    return r;
}

inline Report parse_report(std::string_view text) {
    try {
        return report_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw error(errc::syntax, std::string("report: ") + e.what());
    }
}

}  // namespace sierp
