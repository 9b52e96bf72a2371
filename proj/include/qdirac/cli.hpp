#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "qdirac/verification.hpp"

namespace qdirac {

namespace cli_detail {

using ordered_json = nlohmann::ordered_json;

inline std::string fmt_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct QFlag {
    std::string raw = "exact";

    bool is_exact() const { return raw == "exact"; }

    QContext context() const {
        if (is_exact()) return QContext::exact();
        char* end = nullptr;
        double v = std::strtod(raw.c_str(), &end);
        if (end == raw.c_str() || *end != '\0')
            throw error("--q expects 'exact' or a positive number, got '" + raw + "'");
        return QContext::numeric(v); // validates q0 > 0, q0 != 1
    }
};

struct Output {
    std::string path;
    std::ostringstream buffer;

    void flush(std::ostream& fallback) {
        if (path.empty()) {
            fallback << buffer.str();
            return;
        }
        std::ofstream f(path);
        if (!f) throw error("cannot open output file " + path);
        f << buffer.str();
    }
};

inline int run_spectrum(const std::string& l_text, const QFlag& q, const std::string& format,
                        Output& outp) {
    HalfInt l = parse_half_int(l_text);
    if (l.twice < 0) throw error("--l must be a nonnegative half-integer");
    QContext ctx = q.context();
    DiracOperator D = build_dirac(ctx);
    auto spec = D.spectrum(l);

    auto eig_string = [&](const QValue& v) {
        return ctx.is_exact() ? v.str() : fmt_double(v.numeric_value());
    };
    if (format == "json") {
        ordered_json doc;
        doc["l"] = l.str();
        doc["q"] = q.raw;
        doc["spectrum"] = ordered_json::array();
        for (const auto& [eig, mult] : spec) {
            ordered_json item;
            if (ctx.is_exact())
                item["eigenvalue"] = eig.str();
            else
                item["eigenvalue"] = eig.numeric_value();
            item["multiplicity"] = mult;
            doc["spectrum"].push_back(item);
        }
        outp.buffer << doc.dump(2) << "\n";
    } else if (format == "csv") {
        outp.buffer << "eigenvalue,multiplicity\n";
        for (const auto& [eig, mult] : spec)
            outp.buffer << eig_string(eig) << "," << mult << "\n";
    } else {
        for (const auto& [eig, mult] : spec)
            outp.buffer << eig_string(eig) << "  (multiplicity " << mult << ")\n";
    }
    return 0;
}

inline int run_relations(const QFlag& q, const std::string& format, Output& outp) {
    QContext ctx = q.context();
    Representation V = build_irrep(HalfInt::whole(1), ctx);
    BilinearForm B = invariant_form(V);
    SpectralSplit S = spectral_split(braiding_op(HalfInt::whole(1), HalfInt::whole(1), ctx));
    CliffordAlgebra C = build_clifford(V, B, S);
    std::vector<std::string> lines;
    for (const auto& rel : C.relations()) lines.push_back(rel.str() + " = 0");
    if (format == "json") {
        ordered_json doc;
        doc["q"] = q.raw;
        doc["relations"] = lines;
        outp.buffer << doc.dump(2) << "\n";
    } else {
        for (const auto& s : lines) outp.buffer << s << "\n";
    }
    return 0;
}

inline int run_fredholm(const std::string& jmax_text, const QFlag& q, const std::string& shift_text,
                        Output& outp) {
    if (q.is_exact()) throw error("fredholm requires a numeric --q");
    HalfInt jmax = parse_half_int(jmax_text);
    HalfInt shift = parse_half_int(shift_text);
    QContext ctx = q.context(); // validates q0
    double q0 = ctx.q0_value;

    TruncatedHilbert H = build_truncation(jmax, q0);
    TraceTailResult tt = trace_tail(jmax, q0);
    CommutatorDecayResult dec = commutator_decay(shift, jmax, q0);

    outp.buffer << "j,F_up,F_down,tail,c_j\n";
    double grand_total = tt.total + (std::isfinite(tt.tail_estimate) ? tt.tail_estimate : 0.0);
    for (int t = 0; t <= jmax.twice; ++t) {
        HalfInt j(t);
        const FredholmBlock* up = nullptr;
        const FredholmBlock* down = nullptr;
        for (const auto& b : H.blocks)
            if (b.j == j) (b.up ? up : down) = &b;
        double tail_after = grand_total - tt.partial_sums[size_t(t)];
        outp.buffer << j.str() << "," << (up ? fmt_double(up->f_value) : std::string());
        outp.buffer << "," << (down ? fmt_double(down->f_value) : std::string());
        outp.buffer << "," << fmt_double(tail_after) << ",";
        bool have_c = j.twice + shift.twice >= 0;
        if (have_c) {
            for (const auto& [cj_j, cj] : dec.coefficients)
                if (cj_j == j) outp.buffer << fmt_double(cj);
        }
        outp.buffer << "\n";
    }
    return 0;
}

inline int run_verify(const QFlag& q, bool q_given, double tol, const std::string& corrupt,
                      const std::string& format, Output& outp) {
    VerifyOptions opt;
    opt.tol = tol;
    if (!corrupt.empty()) {
        if (corrupt != "demo") throw error("--corrupt accepts only 'demo'");
        opt.corrupt_demo = true;
    }
    if (q_given && !q.is_exact()) {
        opt.extra_numeric = true;
        opt.extra_q0 = q.context().q0_value;
    }
    auto results = run_acceptance_criteria(opt);
    bool all = true;
    for (const auto& c : results) all = all && c.pass;
    if (format == "json") {
        ordered_json doc;
        doc["pass"] = all;
        doc["checks"] = ordered_json::array();
        for (const auto& c : results) {
            ordered_json item;
            item["id"] = c.id;
            item["name"] = c.name;
            item["pass"] = c.pass;
            item["detail"] = c.detail;
            doc["checks"].push_back(item);
        }
        outp.buffer << doc.dump(2) << "\n";
    } else {
        for (const auto& c : results)
            outp.buffer << (c.pass ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " — "
                        << c.detail << "\n";
        outp.buffer << (all ? "all checks passed\n" : "verification FAILED\n");
    }
    return all ? 0 : 1;
}

} // namespace cli_detail

/// Entry point shared by the binary and the tests.  Exit codes: 0 success,
/// 1 verification failure, 2 usage or validation error.
inline int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"q-deformed Clifford algebras and covariant Dirac operators on U_q(su(2))"};
    app.require_subcommand(1);

    QFlag qflag;
    std::string l_text = "1", jmax_text = "40", shift_text = "1/2";
    std::string format_spectrum = "json", format_relations = "text", format_verify = "text";
    std::string out_path, corrupt;
    double tol = 1e-10;
    bool q_given = false;

    auto add_common = [&](CLI::App* cmd, std::string* fmt, bool with_q = true) {
        if (with_q)
            cmd->add_option("--q", qflag.raw, "'exact' or a numeric q0 > 0, q0 != 1")
                ->each([&](const std::string&) { q_given = true; });
        cmd->add_option("--format", *fmt, "output format");
        cmd->add_option("--out", out_path, "write output to this file");
    };

    CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalues of D on V_l ⊗ Σ");
    spectrum->add_option("--l", l_text, "half-integer spin label")->required();
    add_common(spectrum, &format_spectrum);

    CLI::App* relations = app.add_subcommand("relations", "canonical Clifford relation list");
    add_common(relations, &format_relations);

    CLI::App* fredholm = app.add_subcommand("fredholm", "sign-operator block table as CSV");
    fredholm->add_option("--jmax", jmax_text, "half-integer cutoff");
    fredholm->add_option("--shift", shift_text, "half-integer level shift k for c_j");
    std::string fredholm_fmt = "csv";
    add_common(fredholm, &fredholm_fmt);

    CLI::App* verify = app.add_subcommand("verify", "run the full verification suites");
    verify->add_option("--tol", tol, "residual tolerance for matrix identities");
    verify->add_option("--corrupt", corrupt, "test hook; 'demo' flips one Clifford coefficient");
    add_common(verify, &format_verify);

    std::vector<const char*> argv;
    argv.push_back("qdirac");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(int(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    Output outp;
    outp.path = out_path;
    int code = 0;
    try {
        if (spectrum->parsed()) {
            code = run_spectrum(l_text, qflag, format_spectrum, outp);
        } else if (relations->parsed()) {
            code = run_relations(qflag, format_relations, outp);
        } else if (fredholm->parsed()) {
            code = run_fredholm(jmax_text, qflag, shift_text, outp);
        } else if (verify->parsed()) {
            if (tol <= 0) throw error("--tol must be positive");
            code = run_verify(qflag, q_given, tol, corrupt, format_verify, outp);
        }
        outp.flush(out);
    } catch (const qdirac::error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 2;
    }
    return code;
}

} // namespace qdirac
