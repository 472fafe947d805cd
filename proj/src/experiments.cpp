#include "oscint/experiments.hpp"

#include "oscint/discrepancy.hpp"
#include "oscint/errors.hpp"
#include "oscint/extremal.hpp"
#include "oscint/io.hpp"
#include "oscint/pvint.hpp"
#include "oscint/quadrature.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace oscint {

double lemma1_value(int n, double tol) {
    if (n < 2) throw Error("lemma1_value: n must be >= 2");
    if (!(tol > 0)) throw InvalidTolerance(tol);
    double s = 1.0 / n;
    // plateau: sin(1) * int_{1/n}^{1-1/n} dt/t = sin(1) log(n-1), closed form
    double plateau = std::sin(1.0) * std::log(double(n) - 1.0);
    auto ramp0 = [&](double t) { return std::sin(double(n) * t) / t; };
    auto ramp1 = [&](double t) { return std::sin(double(n) * (1.0 - t)) / t; };
    double r0 = require_converged(integrate_adaptive(ramp0, 0.0, s, tol / 4), tol);
    double r1 = require_converged(integrate_adaptive(ramp1, 1.0 - s, 1.0, tol / 4), tol);
    return 2.0 * std::fabs(plateau + r0 + r1);
}

SweepOutput growth_sweep(int n_min, int n_max, double tol, bool allow_large) {
    if (!(2 <= n_min && n_min <= n_max)) throw Error("growth_sweep: need 2 <= n_min <= n_max");
    if (n_max > 12 && !allow_large)
        throw Error("growth_sweep: n_max > 12 needs allow_large (desk-scale guard)");
    if (!(tol > 0)) throw InvalidTolerance(tol);

    SweepOutput out;
    for (int n = n_min; n <= n_max; ++n) {
        SweepRecord rec;
        rec.n = n;
        rec.d = 2 * n * n - 1;
        rec.tol = tol;
        auto t0 = std::chrono::steady_clock::now();
        try {
            ExtremalPoly e = construct_extremal(n, n);
            PVHints hints;
            hints.no_critical_beyond = 3.0; // structural: kernel arguments >= 2 there
            rec.I_Pn = pv_integral(e.coeff_form, tol, hints).value;
            rec.I_fn = lemma1_value(n, std::min(tol, 1e-10));
            rec.D_n = discrepancy_integral(n, std::min(tol, 1e-9)).D_n;
            rec.ratio_logd = rec.I_Pn / std::log(double(rec.d));
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
        }
        auto t1 = std::chrono::steady_clock::now();
        rec.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        out.records.push_back(std::move(rec));
    }
    // expected monotone trend; violations are reported, not fatal
    for (size_t i = 0; i + 1 < out.records.size(); ++i) {
        const auto& a = out.records[i];
        const auto& b = out.records[i + 1];
        if (!a.failed && !b.failed && a.n >= 4 && b.I_Pn < a.I_Pn - 2.0 * tol) {
            std::ostringstream os;
            os << "I_Pn not nondecreasing between n=" << a.n << " and n=" << b.n;
            out.anomalies.push_back(os.str());
        }
    }
    return out;
}

void persist_records(const SweepOutput& out, const std::string& csv_path,
                     const std::string& sidecar_path, const GlobalConfig& cfg) {
    std::ostringstream csv;
    csv << "n,d,I_Pn,I_fn,D_n,ratio_logd,tol,runtime_ms\n";
    for (const auto& r : out.records) {
        csv << r.n << ',' << r.d << ',' << format_double(r.I_Pn) << ',' << format_double(r.I_fn)
            << ',' << format_double(r.D_n) << ',' << format_double(r.ratio_logd) << ','
            << format_double(r.tol) << ',' << format_double(r.runtime_ms) << '\n';
    }
    write_text_file(csv_path, csv.str());

    nlohmann::json side;
    side["tol"] = cfg.tol;
    side["precision_bits"] = cfg.precision_bits;
    side["seed"] = cfg.seed;
    side["ratio_threshold"] = kCalibratedRatioThreshold;
    side["anomalies"] = out.anomalies;
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& r : out.records)
        if (r.failed) failures.push_back({{"n", r.n}, {"error", r.error}});
    side["failures"] = failures;
    write_text_file(sidecar_path, side.dump(2));
}

std::vector<SweepRecord> load_records(const std::string& csv_path) {
    std::string text = read_text_file(csv_path);
    std::istringstream in(text);
    std::string line;
    long lineno = 0;
    std::vector<SweepRecord> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1) {
            if (line != "n,d,I_Pn,I_fn,D_n,ratio_logd,tol,runtime_ms")
                throw ParseError("unexpected CSV header", csv_path, lineno);
            continue;
        }
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 8) throw ParseError("expected 8 fields", csv_path, lineno);
        SweepRecord r;
        try {
            r.n = std::stoi(fields[0]);
            r.d = std::stoi(fields[1]);
            r.I_Pn = parse_double(fields[2]);
            r.I_fn = parse_double(fields[3]);
            r.D_n = parse_double(fields[4]);
            r.ratio_logd = parse_double(fields[5]);
            r.tol = parse_double(fields[6]);
            r.runtime_ms = parse_double(fields[7]);
        } catch (const std::exception&) {
            throw ParseError("malformed row", csv_path, lineno);
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace oscint
