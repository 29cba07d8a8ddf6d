// Command-line front end: one subcommand per process, JSON or text on stdout.
// Exit codes: 0 done (OPEN statuses included), 1 I/O or internal failure, 2 bad input.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "sierp/render.hpp"
#include "sierp/report.hpp"

using namespace sierp;

namespace {

struct Options {
    std::string matrix;
    std::string digits;
    std::string s;
    std::string out;
    std::string format = "json";
    int depth = -1;
    int grid = 5;
    double eps = 1e-12;
    i64 bound = 0;
    int size = 0;
    std::vector<double> box{-4.0, -4.0, 4.0, 4.0};
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << text)) throw io_error("cannot write " + o.out);
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

/// Translates D so its first point is the origin; the mask modulus does not see translations.
Digits3 digits_at_origin(const std::array<IVec2, 3>& raw) {
    if (raw[0] == raw[1] || raw[0] == raw[2] || raw[1] == raw[2]) throw error(errc::duplicate_digits);
    return Digits3(raw[1] - raw[0], raw[2] - raw[0]);
}

Triple parse_triple(const std::string& text) {
    auto p = parse_digits(text);
    return {p[0], p[1], p[2]};
}

std::string text_report(const Report& r) {
    const Verdict& v = r.verdict;
    std::ostringstream os;
    os << "status: " << to_string(v.status) << "\nbranch: " << to_string(v.branch) << '\n';
    for (const auto& t : v.trace) os << "  " << t.step << ": " << t.value << '\n';
    if (v.reason) os << "reason: " << to_string(v.reason->kind) << '\n';
    if (!v.note.empty()) os << "note: " << v.note << '\n';
    if (r.numeric) {
        os << "numeric: residual(k=" << r.numeric->residual_depth << ")=" << r.numeric->orthogonality_residual
           << " completeness(k=" << r.numeric->profile_depth << ") min=" << r.numeric->completeness_min
           << " mean=" << r.numeric->completeness_mean << '\n'
           << "  " << r.numeric->statement << '\n';
    }
    return os.str();
}

Report run_decide(const Options& o, bool with_numeric) {
    Report r;
    r.matrix = parse_matrix(o.matrix);
    r.digits = parse_digits(o.digits);
    DecideOptions opts;
    if (o.bound > 0) opts.search_bound = o.bound;
    r.verdict = decide(r.matrix, r.digits, opts);
    if (with_numeric && r.verdict.certificate) {
        const int k = o.depth < 0 ? 6 : o.depth;
        r.numeric = numeric_evidence(*r.verdict.certificate, 4, k, o.grid, o.eps);
    }
    return r;
}

void cmd_decide(const Options& o, bool with_numeric) {
    const Report r = run_decide(o, with_numeric);
    emit(o, o.format == "text" ? text_report(r) : dump(r));
}

void cmd_canonicalize(const Options& o) {
    const IMat2 m = parse_matrix(o.matrix);
    const auto nd = normalize_digits(parse_digits(o.digits));
    const CanonicalForm cf = canonicalize(m, nd.digits);
    json j = to_json(cf);
    j["case"] = cf.case_one() ? "I" : "II";
    if (o.format == "text") {
        std::ostringstream os;
        os << "P = " << cf.P << "\nM~ = " << cf.M_tilde << "\nD~ = " << cf.D_tilde << "\nsigma=" << cf.sigma
           << " omega=" << cf.omega << " eta=" << cf.eta << " theta=" << cf.theta << " gamma=" << cf.gamma
           << " case " << (cf.case_one() ? "I" : "II") << '\n';
        emit(o, os.str());
    } else {
        emit(o, dump_json(j));
    }
}

void cmd_classify(const Options& o) {
    const IMat2 m = parse_matrix(o.matrix);
    const auto nd = normalize_digits(parse_digits(o.digits));
    const CanonicalForm cf = canonicalize(m, nd.digits);
    const ClassDecomposition dec = decompose(cf.M_tilde);
    std::optional<RegionTag> reg;
    if (cf.eta >= 1) reg = region(dec, cf.eta, cf.case_one() ? DecisionCase::I : DecisionCase::II);
    json j = to_json(dec, reg);
    j["case"] = cf.case_one() ? "I" : "II";
    j["M_tilde"] = to_json(cf.M_tilde);
    j["eta"] = cf.eta;
    if (o.format == "text") {
        std::ostringstream os;
        os << "M~ = " << cf.M_tilde << "  k=" << dec.k << " s="
           << (dec.lower.infinite ? std::string("INFINITE") : std::to_string(dec.lower.s)) << " c=" << dec.lower.c
           << " case " << (cf.case_one() ? "I" : "II") << " region " << (reg ? to_string(*reg) : "-") << '\n';
        emit(o, os.str());
    } else {
        emit(o, dump_json(j));
    }
}

void cmd_hadamard(const Options& o) {
    const IMat2 m = parse_matrix(o.matrix);
    const Digits3 d = digits_at_origin(parse_digits(o.digits));
    json j;
    if (!o.s.empty()) {
        const Triple s = parse_triple(o.s);
        j = {{"S", to_json(s)}, {"hadamard", is_hadamard(m, d, s)}};
    } else {
        const i64 bound = o.bound > 0 ? o.bound : 6;
        auto s = search_hadamard_S(m, d, bound);
        j = {{"bound", bound}, {"S", s ? to_json(*s) : json(nullptr)}, {"hadamard", s.has_value()}};
    }
    if (o.format == "text") {
        emit(o, std::string(j["hadamard"].get<bool>() ? "true" : "false") + "\n");
    } else {
        emit(o, dump_json(j));
    }
}

void cmd_spectrum(const Options& o) {
    const IMat2 m = parse_matrix(o.matrix);
    const Triple s = parse_triple(o.s);
    std::optional<Digits3> d;
    if (!o.digits.empty()) d = digits_at_origin(parse_digits(o.digits));
    const int k = o.depth < 0 ? 3 : o.depth;
    const auto lvl = spectrum_truncated(m, s, k, d);
    if (o.format == "text") {
        std::ostringstream os;
        for (auto p : lvl.points) os << p.x << ',' << p.y << '\n';
        emit(o, os.str());
        return;
    }
    json pts = json::array();
    for (auto p : lvl.points) pts.push_back(to_json(p));
    emit(o, dump_json({{"k", lvl.k}, {"count", lvl.points.size()}, {"points", pts}}));
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void cmd_render(const Options& o) {
    const IMat2 m = parse_matrix(o.matrix);
    const Digits3 d = digits_at_origin(parse_digits(o.digits));
    if (o.out.empty()) throw error(errc::degenerate_input, "render needs --out with a .svg, .csv or .pgm file");
    std::ostringstream os;
    if (ends_with(o.out, ".pgm")) {
        if (o.box.size() != 4 || !(o.box[2] > o.box[0]) || !(o.box[3] > o.box[1]))
            throw error(errc::degenerate_input, "--box expects x0 y0 x1 y1 with x0 < x1 and y0 < y1");
        const int size = o.size > 0 ? o.size : 512;
        const numeric::FourierEvaluator f(m, d);
        const render::Box b{o.box[0], o.box[1], o.box[2], o.box[3]};
        render::write_pgm(os, render::heatmap(f, b, size, o.eps < 1e-6 ? 1e-6 : o.eps), size);
    } else {
        const auto pts = numeric::attractor_points(m, d, o.depth < 0 ? 8 : o.depth);
        if (ends_with(o.out, ".svg")) {
            render::write_svg(os, pts, o.size > 0 ? o.size : 1024);
        } else if (ends_with(o.out, ".csv")) {
            render::write_csv(os, pts);
        } else {
            throw error(errc::degenerate_input, "unknown output type for " + o.out + " (use .svg, .csv or .pgm)");
        }
    }
    emit(o, os.str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectrality of planar self-affine measures with three digits"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub, bool digits_required) {
        sub->add_option("--matrix", o.matrix, "expanding integer matrix \"a,b;c,d\"")->required();
        auto* opt = sub->add_option("--digits", o.digits, "three digits \"x1,y1;x2,y2;x3,y3\"");
        if (digits_required) opt->required();
        sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
        sub->add_option("--out", o.out, "write output to this file instead of stdout");
    };

    auto* decide_cmd = app.add_subcommand("decide", "decide spectrality and print a certified report");
    add_common(decide_cmd, true);
    decide_cmd->add_option("--bound", o.bound, "box bound for the Hadamard partner search");

    auto* canon_cmd = app.add_subcommand("canonicalize", "print the canonical pair");
    add_common(canon_cmd, true);

    auto* class_cmd = app.add_subcommand("classify", "residue class and region of the canonical matrix");
    add_common(class_cmd, true);

    auto* had_cmd = app.add_subcommand("hadamard", "check a Hadamard triple, or search one with --bound");
    add_common(had_cmd, true);
    had_cmd->add_option("--s", o.s, "candidate S \"0,0;s1x,s1y;s2x,s2y\"");
    had_cmd->add_option("--bound", o.bound, "search box bound when --s is absent");

    auto* spec_cmd = app.add_subcommand("spectrum", "points of the truncated spectrum");
    add_common(spec_cmd, false);
    spec_cmd->add_option("--s", o.s, "S \"0,0;s1x,s1y;s2x,s2y\"")->required();
    spec_cmd->add_option("--depth", o.depth, "truncation depth k (default 3)");

    auto* verify_cmd = app.add_subcommand("verify", "decide, then attach numeric evidence for spectral pairs");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--depth", o.depth, "completeness profile depth (default 6)");
    verify_cmd->add_option("--grid", o.grid, "profile grid is grid x grid points in [0,1)^2")->check(CLI::Range(1, 64));
    verify_cmd->add_option("--eps", o.eps, "tail tolerance for the infinite product")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--bound", o.bound, "box bound for the Hadamard partner search");

    auto* render_cmd = app.add_subcommand("render", "attractor as .svg/.csv, or |mu^| heatmap as .pgm");
    add_common(render_cmd, true);
    render_cmd->add_option("--depth", o.depth, "attractor depth (default 8)");
    render_cmd->add_option("--eps", o.eps, "tail tolerance for the heatmap");
    render_cmd->add_option("--box", o.box, "heatmap box x0 y0 x1 y1 (default -4 -4 4 4)")->expected(4);
    render_cmd->add_option("--size", o.size, "image size in pixels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*decide_cmd) cmd_decide(o, false);
        else if (*verify_cmd) cmd_decide(o, true);
        else if (*canon_cmd) cmd_canonicalize(o);
        else if (*class_cmd) cmd_classify(o);
        else if (*had_cmd) cmd_hadamard(o);
        else if (*spec_cmd) cmd_spectrum(o);
        else if (*render_cmd) cmd_render(o);
    } catch (const sierp::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
