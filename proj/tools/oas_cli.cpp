// Command-line front end. Every subcommand maps to one library operation;
// inputs are given in the inline spec mini-language (see funcspec.hpp), so no
// config files are needed for desk experiments.
//
// Exit codes: 0 success, 1 check/computation failure, 2 usage error.

#include <cmath>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "oas/funcspec.hpp"
#include "oas/harness.hpp"
#include "oas/mixed.hpp"
#include "oas/sconcave.hpp"

using nlohmann::json;
using namespace oas;

namespace {

struct OutputOptions {
    std::string format = "table";
    std::string out;  // empty = stdout
};

void add_output_options(CLI::App* cmd, OutputOptions& oo) {
    // long-only help so "--h <orlicz spec>" stays available
    cmd->set_help_flag("--help", "Print this help message");
    cmd->add_option("--format", oo.format, "Output format")
        ->check(CLI::IsMember({"table", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--out", oo.out, "Write output to this file instead of stdout");
}

std::string render_scalar(const json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    return v.dump();
}

/// Emit a flat key/value record, or (when `rows` is non-empty) a uniform list
/// of records — one row per sweep point.
void emit(const OutputOptions& oo, const json& record, const std::vector<json>& rows = {}) {
    std::ostringstream body;
    if (oo.format == "json") {
        if (rows.empty()) {
            body << record.dump(2) << "\n";
        } else {
            for (const json& r : rows) body << r.dump() << "\n";
        }
    } else if (oo.format == "csv") {
        const std::vector<json>& rs = rows.empty() ? std::vector<json>{record} : rows;
        bool first = true;
        for (const auto& [k, v] : rs.front().items()) {
            (void)v;
            body << (first ? "" : ",") << k;
            first = false;
        }
        body << "\n";
        for (const json& r : rs) {
            first = true;
            for (const auto& [k, v] : r.items()) {
                body << (first ? "" : ",") << render_scalar(v);
                first = false;
            }
            body << "\n";
        }
    } else {
        const std::vector<json>& rs = rows.empty() ? std::vector<json>{record} : rows;
        for (const json& r : rs) {
            for (const auto& [k, v] : r.items())
                body << "  " << k << (k.size() < 18 ? std::string(18 - k.size(), ' ') : " ")
                     << render_scalar(v) << "\n";
            if (rs.size() > 1) body << "\n";
        }
    }
    if (oo.out.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream os(oo.out);
        if (!os) throw std::runtime_error("cannot write " + oo.out);
        os << body.str();
    }
}

json variational_json(const VariationalResult& r) {
    json j{{"value", r.value},
           {"winner", r.winner},
           {"iterations", r.iterations},
           {"converged", r.converged}};
    if (std::isfinite(r.bound_gap)) j["bound_gap"] = r.bound_gap;
    return j;
}

std::optional<Grid> maybe_grid(const std::string& spec) {
    if (spec.empty()) return std::nullopt;
    return parse_grid(spec);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    if (out.empty()) throw std::invalid_argument("empty sweep list");
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Affine invariants of convex, log-concave, and s-concave functions:\n"
        "conjugates, weighted integrals, and affine/geominimal surface areas.\n"
        "Functions are given inline, e.g. --psi gaussian:c=1,n=2 or\n"
        "--psi quad:A=[[1,0],[0,2]],a=0 or --psi senv:s=0.5,c=1,n=1 or\n"
        "--psi sampled:path=f.csv. Weights: exp | const | power:alpha=A.\n"
        "Orlicz maps: power:e=E | power:p=P,n=N | const:v=V.\n"
        "Grids: cube:r=R,count=K,n=N | box:lo=[..],hi=[..],count=K."};
    app.require_subcommand(1);

    std::string psi_spec, grid_spec, dual_grid_spec;
    std::string h_spec = "power:e=-1", f1_spec = "exp", f2_spec = "exp";
    double p = 1, s = 0.5;
    OutputOptions oo;

    auto add_common = [&](CLI::App* cmd, bool needs_psi = true) {
        if (needs_psi)
            cmd->add_option("--psi", psi_spec, "Potential spec (see top-level help)")->required();
        cmd->add_option("--grid", grid_spec, "Primal integration window override");
        add_output_options(cmd, oo);
    };

    // --- legendre ---------------------------------------------------------
    auto* c_leg = app.add_subcommand("legendre", "Convex conjugate of a potential");
    add_common(c_leg);
    c_leg->add_option("--dual-grid", dual_grid_spec, "Dual-side sampling window override");
    bool force_discrete = false;
    c_leg->add_flag("--discrete", force_discrete, "Skip the closed-form shortcut");

    // --- sdual ------------------------------------------------------------
    auto* c_sd = app.add_subcommand("sdual", "s-dual potential of an s-concave function");
    add_common(c_sd);
    c_sd->add_option("--s", s, "Concavity parameter s > 0")->required();
    c_sd->add_option("--dual-grid", dual_grid_spec, "Dual-side sampling window override");

    // --- integrate --------------------------------------------------------
    auto* c_int = app.add_subcommand("integrate", "Weighted integral of F(psi(x)) dx");
    add_common(c_int);
    c_int->add_option("--F", f1_spec, "Weight spec")->capture_default_str();
    bool over_dual = false;
    c_int->add_flag("--dual", over_dual, "Integrate over the conjugate potential instead");

    // --- asp --------------------------------------------------------------
    auto* c_asp = app.add_subcommand("asp", "L_p affine surface area (direct + variational)");
    add_common(c_asp);
    c_asp->add_option("--p", p, "Index p != -n")->required();
    c_asp->add_option("--F1", f1_spec, "Primal weight")->capture_default_str();
    c_asp->add_option("--F2", f2_spec, "Dual weight")->capture_default_str();
    bool variational = false;
    c_asp->add_flag("--variational", variational, "Also run the inf/sup search");

    // --- orlicz-as / orlicz-gm -------------------------------------------
    auto* c_oas = app.add_subcommand("orlicz-as", "Orlicz affine surface area (inner inf/sup)");
    auto* c_ogm = app.add_subcommand("orlicz-gm",
                                     "Orlicz geominimal surface area (log-concave candidates)");
    std::string sweep_c;
    for (CLI::App* cmd : {c_oas, c_ogm}) {
        add_common(cmd);
        cmd->add_option("--h", h_spec, "Orlicz map")->capture_default_str();
        cmd->add_option("--F1", f1_spec, "Primal weight")->capture_default_str();
        cmd->add_option("--F2", f2_spec, "Dual weight")->capture_default_str();
        cmd->add_option("--sweep-c", sweep_c,
                        "Comma list of Gaussian scales; one output row per scale "
                        "(requires a gaussian --psi)");
    }

    // --- gp ---------------------------------------------------------------
    auto* c_gp = app.add_subcommand("gp", "L_p geominimal surface area, two routes cross-checked");
    add_common(c_gp);
    c_gp->add_option("--p", p, "Index p != -n")->required();
    c_gp->add_option("--F1", f1_spec, "Primal weight")->capture_default_str();
    c_gp->add_option("--F2", f2_spec, "Dual weight")->capture_default_str();

    // --- sconcave ---------------------------------------------------------
    auto* c_sc = app.add_subcommand("sconcave", "s-concave surface-area functionals");
    add_common(c_sc);
    c_sc->add_option("--s", s, "Concavity parameter s > 0")->required();
    std::string sc_h;
    double sc_p = std::numeric_limits<double>::quiet_NaN();
    c_sc->add_option("--p", sc_p, "L_p index: direct + variational value");
    c_sc->add_option("--h", sc_h, "Orlicz map: normalized inf/sup value");
    bool sc_gm = false;
    c_sc->add_flag("--gm", sc_gm, "Restrict candidates to log-concave (geominimal)");

    // --- mixed ------------------------------------------------------------
    auto* c_mx = app.add_subcommand("mixed", "Mixed surface area of an m-tuple of potentials");
    c_mx->set_help_flag("--help", "Print this help message");
    std::vector<std::string> mx_psis, mx_hs, mx_f1s, mx_f2s;
    c_mx->add_option("--psi", mx_psis, "Potential specs (repeat m times)")->required();
    c_mx->add_option("--h", mx_hs, "Orlicz maps (repeat m times, or once to broadcast)");
    c_mx->add_option("--F1", mx_f1s, "Primal weights (default exp)");
    c_mx->add_option("--F2", mx_f2s, "Dual weights (default exp)");
    int mx_i = -1;
    c_mx->add_option("--i", mx_i, "Weighted two-function variant with exponents (n-i)/n, i/n");
    bool mx_gm = false;
    c_mx->add_flag("--gm", mx_gm, "Restrict candidates to log-concave (geominimal)");
    c_mx->add_option("--grid", grid_spec, "Common integration window override");
    add_output_options(c_mx, oo);

    // --- verify -----------------------------------------------------------
    auto* c_vf = app.add_subcommand("verify",
                                    "Run the invariance/inequality suite; JSON-lines body is "
                                    "deterministic for a fixed seed");
    TestSuiteConfig cfg;
    c_vf->add_flag("--quick", cfg.quick, "Trimmed roster for fast runs");
    c_vf->add_option("--seed", cfg.seed, "Roster seed")->capture_default_str();
    c_vf->add_option("--transforms", cfg.transform_count, "Maps per invariance check")
        ->capture_default_str();
    c_vf->add_option("--tol-equality", cfg.tol_equality, "Equality tolerance")
        ->capture_default_str();
    c_vf->add_option("--tol-direction", cfg.tol_direction, "Inequality direction tolerance")
        ->capture_default_str();
    add_output_options(c_vf, oo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_leg) {
            DualOptions opt;
            opt.primal_grid = maybe_grid(grid_spec);
            opt.dual_grid = maybe_grid(dual_grid_spec);
            opt.force_discrete = force_discrete;
            DualPair dp = legendre(parse_function(psi_spec), opt);
            json rec{{"dim", dp.primal.dim()},
                     {"dual_closed_form", dp.dual.closed_form()},
                     {"involution_error", dp.involution_error}};
            if (!oo.out.empty()) {
                write_samples_csv(oo.out, dp.dual, dp.dual_grid);
                rec["samples_written"] = oo.out;
                OutputOptions console = oo;
                console.out.clear();
                emit(console, rec);
            } else {
                emit(oo, rec);
            }
            return 0;
        }
        if (*c_sd) {
            DualOptions opt;
            opt.primal_grid = maybe_grid(grid_spec);
            opt.dual_grid = maybe_grid(dual_grid_spec);
            SDualPair sp = s_dual(parse_function(psi_spec), s, opt);
            json rec{{"dim", sp.primal.dim()},
                     {"s", s},
                     {"dual_closed_form", sp.dual.closed_form()},
                     {"involution_error", sp.involution_error}};
            if (!oo.out.empty()) {
                write_samples_csv(oo.out, sp.dual, sp.dual_grid);
                rec["samples_written"] = oo.out;
                OutputOptions console = oo;
                console.out.clear();
                emit(console, rec);
            } else {
                emit(oo, rec);
            }
            return 0;
        }
        if (*c_int) {
            FunctionRep psi = parse_function(psi_spec);
            WeightFunction F = parse_weight(f1_spec);
            if (over_dual) psi = polar_dual(psi);
            Grid window = grid_spec.empty() ? default_window(psi) : parse_grid(grid_spec);
            IntegralResult r = integrate_weight(F, psi, window);
            emit(oo, json{{"value", r.value},
                          {"est_error", r.est_error},
                          {"points_used", r.points_used},
                          {"clipped", r.clipped}});
            return 0;
        }
        if (*c_asp) {
            OrliczContext ctx =
                make_context(parse_function(psi_spec), maybe_grid(grid_spec));
            WeightFunction F1 = parse_weight(f1_spec), F2 = parse_weight(f2_spec);
            IntegralResult d = asp_direct(p, F1, F2, ctx);
            json rec{{"p", p}, {"direct", d.value}, {"est_error", d.est_error}};
            if (variational) {
                VariationalResult v =
                    asp_variational(p, F1, F2, ctx, CandidateFamily::standard());
                rec["variational"] = variational_json(v);
                rec["discrepancy"] = std::abs(v.value - d.value) / std::max(1e-300, d.value);
            }
            emit(oo, rec);
            return 0;
        }
        if (*c_oas || *c_ogm) {
            bool gm = bool(*c_ogm);
            OrliczFunction h = parse_orlicz(h_spec);
            WeightFunction F1 = parse_weight(f1_spec), F2 = parse_weight(f2_spec);
            auto run_one = [&](const FunctionRep& psi) {
                OrliczContext ctx = make_context(psi, maybe_grid(grid_spec));
                CandidateFamily fam =
                    gm ? CandidateFamily::logconcave() : CandidateFamily::standard();
                return gm ? orlicz_gm(h, F1, F2, ctx, fam) : orlicz_as(h, F1, F2, ctx, fam);
            };
            FunctionRep psi = parse_function(psi_spec);
            if (sweep_c.empty()) {
                emit(oo, variational_json(run_one(psi)));
                return 0;
            }
            if (psi.kind() != FunctionRep::Kind::Gaussian)
                throw std::invalid_argument("--sweep-c requires a gaussian --psi");
            std::vector<json> rows;
            for (double c : parse_list(sweep_c)) {
                VariationalResult r = run_one(FunctionRep::gaussian(c, psi.dim()));
                rows.push_back(json{{"c", c}, {"value", r.value}, {"winner", r.winner}});
            }
            emit(oo, rows.front(), rows);
            return 0;
        }
        if (*c_gp) {
            OrliczContext ctx =
                make_context(parse_function(psi_spec), maybe_grid(grid_spec));
            GpResult r = gp(p, parse_weight(f1_spec), parse_weight(f2_spec), ctx,
                            CandidateFamily::logconcave());
            emit(oo, json{{"p", p},
                          {"value", r.value},
                          {"via_orlicz", r.via_orlicz},
                          {"discrepancy", r.discrepancy},
                          {"winner", r.detail.winner}});
            return 0;
        }
        if (*c_sc) {
            SConcaveContext ctx =
                make_s_context(parse_function(psi_spec), s, maybe_grid(grid_spec));
            CandidateFamily fam =
                sc_gm ? CandidateFamily::logconcave() : CandidateFamily::standard();
            json rec{{"s", s}, {"omega", omega_ns(ctx.n(), s)}};
            FIntegral fi = integral_f_s(ctx.sp);
            rec["volume"] = fi.direct.value;
            rec["volume_discrepancy"] = fi.discrepancy;
            if (!std::isnan(sc_p)) {
                IntegralResult d = asp_s_direct(sc_p, ctx);
                VariationalResult v = asp_s_variational(sc_p, ctx, fam);
                rec["p"] = sc_p;
                rec["direct"] = d.value;
                rec["variational"] = variational_json(v);
            }
            if (!sc_h.empty()) {
                OrliczFunction h = parse_orlicz(sc_h);
                VariationalResult v = sc_gm ? orlicz_gm_s(h, ctx, fam) : orlicz_as_s(h, ctx, fam);
                rec["orlicz"] = variational_json(v);
            }
            emit(oo, rec);
            return 0;
        }
        if (*c_mx) {
            MixedSpec spec;
            for (const std::string& ps : mx_psis) spec.psis.push_back(parse_function(ps));
            int m = spec.m();
            auto broadcast = [&](const std::vector<std::string>& in, const std::string& dflt) {
                std::vector<std::string> out = in;
                if (out.empty()) out.push_back(dflt);
                if (int(out.size()) == 1) out.assign(size_t(m), out.front());
                if (int(out.size()) != m)
                    throw std::invalid_argument("mixed: give 1 or m values per option");
                return out;
            };
            for (const std::string& hs : broadcast(mx_hs, "power:e=-1"))
                spec.hs.push_back(parse_orlicz(hs));
            for (const std::string& fs : broadcast(mx_f1s, "exp"))
                spec.F1s.push_back(parse_weight(fs));
            for (const std::string& fs : broadcast(mx_f2s, "exp"))
                spec.F2s.push_back(parse_weight(fs));
            MixedContext ctx = make_mixed_context(spec, maybe_grid(grid_spec));
            CandidateFamily fam =
                mx_gm ? CandidateFamily::logconcave() : CandidateFamily::standard();
            VariationalResult r;
            if (mx_i >= 0) {
                r = mx_gm ? ith_mixed_gm(ctx, mx_i, fam) : ith_mixed_as(ctx, mx_i, fam);
            } else {
                r = mx_gm ? mixed_orlicz_gm(ctx, fam) : mixed_orlicz_as(ctx, fam);
            }
            json rec = variational_json(r);
            rec["m"] = m;
            if (mx_i >= 0) rec["i"] = mx_i;
            emit(oo, rec);
            return 0;
        }
        if (*c_vf) {
            SuiteReport sr = run_suite(cfg);
            std::string body = oo.format == "table" ? sr.table() : sr.jsonl();
            if (oo.out.empty()) {
                std::cout << body;
            } else {
                std::ofstream os(oo.out);
                if (!os) throw std::runtime_error("cannot write " + oo.out);
                os << body;
            }
            if (oo.format != "table") std::cerr << sr.table();
            std::cerr << (sr.all_pass() ? "PASS" : "FAIL") << ": " << sr.reports.size()
                      << " checks, " << sr.failed << " failed, " << sr.flagged << " flagged ("
                      << sr.total_runtime << "s)\n";
            return sr.all_pass() ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
