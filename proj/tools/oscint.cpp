// Command-line front end: construct / pvint / discrepancy / sublevel / vdc /
// upperbound-trace / sweep / selftest, JSON on stdout or --out.

#include "oscint/acceptance.hpp"
#include "oscint/config.hpp"
#include "oscint/discrepancy.hpp"
#include "oscint/errors.hpp"
#include "oscint/experiments.hpp"
#include "oscint/extremal.hpp"
#include "oscint/io.hpp"
#include "oscint/pvint.hpp"
#include "oscint/sublevel.hpp"
#include "oscint/upperbound.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>

namespace {

using nlohmann::json;
using namespace oscint;

void emit(const json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty()) std::fputs(text.c_str(), stdout);
    else write_text_file(out_path, text);
}

json pv_to_json(const PVResult& r) {
    return json{{"value", r.value},
                {"abs_error_est", r.abs_error_est},
                {"truncation_radius", r.truncation_radius},
                {"lobe_count", r.lobe_count},
                {"converged", r.converged}};
}

json trace_to_json(const KdTrace& t) {
    json j{{"d", t.d},
           {"alpha_used", t.alpha_used},
           {"I1", t.I1},
           {"I2_plus", t.I2_plus},
           {"I2_minus", t.I2_minus},
           {"small_deriv_log_measure", t.small_deriv_log_measure},
           {"oscillatory_piece", t.oscillatory_piece},
           {"tail_coeff_sum", t.tail_coeff_sum},
           {"lambda_norm", t.lambda_norm},
           {"R_eff", t.R_eff},
           {"total_modulus", std::abs(t.total_complex)}};
    if (t.recursion_child) j["recursion_child"] = trace_to_json(*t.recursion_child);
    return j;
}

} // namespace

int oscint_dispatch(int argc, char** argv) {
    CLI::App app{"Stein-Wainger oscillatory integral experiments"};
    app.require_subcommand(1);

    GlobalConfig cfg = GlobalConfig::from_env();
    app.add_option("--tol", cfg.tol, "engine tolerance");
    app.add_option("--precision", cfg.precision_bits, "extended-precision bits");
    app.add_option("--seed", cfg.seed, "seed for randomized suites");

    // construct
    auto* c_construct = app.add_subcommand("construct", "build the extremal polynomial P_k");
    int cn = 4, ck = -1;
    std::string form = "coeff", out_path;
    c_construct->add_option("--n", cn, "profile parameter n")->required();
    c_construct->add_option("--k", ck, "kernel parameter k (default n)");
    c_construct->add_option("--form", form, "coeff|conv (evaluation hint in metadata)");
    c_construct->add_option("--out", out_path, "output file (default stdout)");

    // pvint
    auto* c_pv = app.add_subcommand("pvint", "principal-value oscillatory integral");
    std::string pv_poly;
    int pv_monomial = 0, pv_extremal = 0;
    c_pv->add_option("--poly", pv_poly, "polynomial descriptor file");
    c_pv->add_option("--monomial", pv_monomial, "use t^D");
    c_pv->add_option("--extremal", pv_extremal, "use P_n with n=k=N");
    c_pv->add_option("--out", out_path, "output file");

    // discrepancy
    auto* c_disc = app.add_subcommand("discrepancy", "Lemma-3 style discrepancy report");
    int dn = 8;
    c_disc->add_option("--n", dn, "profile parameter")->required();
    c_disc->add_option("--out", out_path, "output file");

    // sublevel
    auto* c_sub = app.add_subcommand("sublevel", "sublevel-set measure and bound");
    std::string sub_poly;
    double sub_alpha = 0.1, sub_lo = 1.0, sub_hi = 2.0;
    c_sub->add_option("--poly", sub_poly, "polynomial descriptor file")->required();
    c_sub->add_option("--alpha", sub_alpha, "level")->required();
    c_sub->add_option("--lo", sub_lo, "interval start");
    c_sub->add_option("--hi", sub_hi, "interval end");
    c_sub->add_option("--out", out_path, "output file");

    // vdc
    auto* c_vdc = app.add_subcommand("vdc", "van der Corput ratio check");
    std::string vdc_poly;
    int vdc_k = 1;
    double vdc_lambda = 100.0, vdc_a = 0.0, vdc_b = 1.0;
    c_vdc->add_option("--poly", vdc_poly, "phase polynomial file")->required();
    c_vdc->add_option("--k", vdc_k, "derivative order")->required();
    c_vdc->add_option("--lambda", vdc_lambda, "frequency")->required();
    c_vdc->add_option("--a", vdc_a, "interval start")->required();
    c_vdc->add_option("--b", vdc_b, "interval end")->required();
    c_vdc->add_option("--out", out_path, "output file");

    // upperbound-trace
    auto* c_tr = app.add_subcommand("upperbound-trace", "K_d decomposition trace");
    std::string tr_poly, tr_alpha = "auto";
    c_tr->add_option("--poly", tr_poly, "polynomial descriptor file")->required();
    c_tr->add_option("--alpha", tr_alpha, "level or 'auto'");
    c_tr->add_option("--out", out_path, "output file");

    // sweep
    auto* c_sw = app.add_subcommand("sweep", "growth-law sweep");
    int sw_min = 3, sw_max = 8;
    std::string sw_dir = ".";
    bool sw_large = false;
    c_sw->add_option("--n-min", sw_min, "first n")->required();
    c_sw->add_option("--n-max", sw_max, "last n")->required();
    c_sw->add_option("--out", sw_dir, "output directory")->required();
    c_sw->add_flag("--allow-large", sw_large, "lift the desk-scale cap n <= 12");

    // selftest
    auto* c_self = app.add_subcommand("selftest", "run the acceptance suite");

    try {
        app.parse(argc, argv);
        cfg.validate();

        if (c_construct->parsed()) {
            int k = ck > 0 ? ck : cn;
            ExtremalPoly e = construct_extremal(cn, k);
            json j = json::parse(poly_to_json(e.coeff_form));
            j["n"] = e.n;
            j["k"] = e.k;
            j["a_k"] = rational_to_string(e.leading);
            j["form"] = form;
            emit(j, out_path);
        } else if (c_pv->parsed()) {
            Poly p;
            PVHints hints;
            if (pv_monomial > 0) p = Poly::monomial(pv_monomial);
            else if (pv_extremal > 0) {
                p = construct_extremal(pv_extremal, pv_extremal).coeff_form;
                hints.no_critical_beyond = 3.0;
            } else if (!pv_poly.empty()) p = read_poly_file(pv_poly);
            else throw CLI::ValidationError("pvint", "need --poly, --monomial or --extremal");
            emit(pv_to_json(pv_integral(p, cfg.tol, hints)), out_path);
        } else if (c_disc->parsed()) {
            DiscrepancyReport rep = discrepancy_integral(dn, std::min(cfg.tol, 1e-8));
            json regions;
            for (const auto& rv : rep.region_values) regions[rv.name] = rv.value;
            emit(json{{"n", rep.n}, {"D_n", rep.D_n}, {"ratio", rep.ratio}, {"regions", regions}},
                 out_path);
        } else if (c_sub->parsed()) {
            SublevelResult s = sublevel_measure(read_poly_file(sub_poly), sub_alpha, sub_lo, sub_hi);
            json comps = json::array();
            for (auto& c : s.components) comps.push_back({c.first, c.second});
            emit(json{{"measure", s.measure},
                      {"bound", s.bound},
                      {"constant_Mn", rational_to_string(s.constant_Mn)},
                      {"components", comps},
                      {"degenerate", s.degenerate}},
                 out_path);
        } else if (c_vdc->parsed()) {
            VdCCheck v = vdc_check(read_poly_file(vdc_poly), vdc_k, vdc_lambda, vdc_a, vdc_b,
                                   std::min(cfg.tol, 1e-7));
            emit(json{{"k", v.k},
                      {"lambda", v.lambda},
                      {"a", v.a},
                      {"b", v.b},
                      {"integral_modulus", v.integral_modulus},
                      {"ratio", v.ratio},
                      {"precondition_ok", v.precondition_ok}},
                 out_path);
        } else if (c_tr->parsed()) {
            double alpha = tr_alpha == "auto" ? -1.0 : parse_double(tr_alpha);
            KdTrace t = kd_trace(read_poly_file(tr_poly), alpha, cfg.tol);
            emit(trace_to_json(t), out_path);
        } else if (c_sw->parsed()) {
            SweepOutput out = growth_sweep(sw_min, sw_max, cfg.tol, sw_large);
            std::filesystem::create_directories(sw_dir);
            persist_records(out, sw_dir + "/sweep.csv", sw_dir + "/sweep_config.json", cfg);
            std::printf("wrote %s/sweep.csv and %s/sweep_config.json\n", sw_dir.c_str(),
                        sw_dir.c_str());
            for (const auto& a : out.anomalies) std::printf("anomaly: %s\n", a.c_str());
        } else if (c_self->parsed()) {
            int failures = report_acceptance(run_acceptance(cfg));
            return failures == 0 ? 0 : 1;
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

#ifndef OSCINT_NO_MAIN
int main(int argc, char** argv) { return oscint_dispatch(argc, argv); }
#endif
