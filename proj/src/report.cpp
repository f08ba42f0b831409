#include "qplab/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace qplab {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

unsigned long long fnv1a(const std::string& s) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hash_hex(const std::string& s) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", fnv1a(s));
    return buf;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("write_text: cannot open " + path);
    out << content;
}

void write_scan_csv(const GapScanResult& scan, const std::string& path,
                    const std::string& config_hash) {
    std::string body;
    body += "# qplab " + std::string(kToolVersion) + " config=" + config_hash + "\n";
    body += "param,status,L_estimate,direction_gap,oracle_min_dist,oracle_robust_dist,"
            "downgraded\n";
    for (const auto& row : scan.rows) {
        body += fmt_double(row.param);
        body += ',';
        body += to_string(row.status);
        body += ',';
        body += fmt_double(row.lyap);
        body += ',';
        body += fmt_double(row.direction_gap);
        body += ',';
        body += fmt_double(row.oracle_min_dist);
        body += ',';
        body += fmt_double(row.oracle_robust_dist);
        body += ',';
        body += row.downgraded ? '1' : '0';
        body += '\n';
    }
    write_text(path, body);
}

void write_gaps_json(const GapScanResult& scan, const std::string& path,
                     const std::string& config_hash) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_hash"] = config_hash;
    j["grid_points"] = scan.rows.size();
    int certified = 0, refuted = 0, inconclusive = 0, downgraded = 0;
    for (const auto& r : scan.rows) {
        switch (r.status) {
            case CertStatus::certified: ++certified; break;
            case CertStatus::refuted_at_budget: ++refuted; break;
            default: ++inconclusive;
        }
        if (r.downgraded) ++downgraded;
    }
    j["certified"] = certified;
    j["refuted_at_budget"] = refuted;
    j["inconclusive"] = inconclusive;
    j["downgraded"] = downgraded;
    j["gaps"] = json::array();
    for (const auto& [lo, hi] : scan.gaps) j["gaps"].push_back({lo, hi});
    write_text(path, j.dump(2) + "\n");
}

std::string certificate_json(const UHCertificate& cert, const std::string& config_hash) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_hash"] = config_hash;
    j["family"] = cert.family;
    j["parameter"] = cert.parameter;
    j["method"] = cert.method;
    j["status"] = to_string(cert.status);
    j["n_used"] = cert.n_used;
    j["c_wit"] = cert.c_wit;
    j["rho_wit"] = cert.rho_wit;
    j["grid_size"] = cert.grid_size;
    j["worst_margin"] = cert.worst_margin;
    j["worst_x"] = cert.worst_x;
    if (!cert.note.empty()) j["note"] = cert.note;
    return j.dump(2) + "\n";
}

std::string induction_trace_json(const InductionState& state, const EstimateReport& est,
                                 const std::string& config_hash) {
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_hash"] = config_hash;
    j["level"] = state.level;
    j["N"] = state.N;
    j["q_N"] = state.q_at(0);
    j["tau"] = state.cfg.tau;
    j["interval_radius"] = state.interval_radius(state.level);
    j["per_t"] = json::array();
    for (const auto& ts : state.per_t) {
        ordered_json e;
        e["t"] = ts.t;
        e["merged"] = ts.merged;
        e["halted"] = ts.halted;
        if (ts.halted) e["halt_reason"] = ts.halt_reason;
        if (ts.resonance_k) {
            e["resonance_k"] = *ts.resonance_k;
            e["resonance_overlap"] = ts.resonance_overlap;
        }
        if (ts.choice_ambiguous) e["choice_ambiguous"] = true;
        e["intervals"] = json::array();
        for (size_t jdx = 0; jdx < ts.intervals.size(); ++jdx) {
            const auto& iv = ts.intervals[jdx];
            ordered_json ie;
            ie["center"] = iv.center;
            ie["classification"] = to_string((ts.merged ? ts.intervals[0] : iv).cls.kind);
            ie["r_plus"] = iv.r_plus;
            ie["r_minus"] = iv.r_minus;
            ie["closeness_to_previous"] = iv.closeness;
            const auto& cls = ts.merged ? ts.intervals[0].cls : iv.cls;
            ordered_json diag;
            for (const auto& [name, ok] : cls.diagnostics) diag[name] = ok;
            ie["diagnostics"] = diag;
            e["intervals"].push_back(ie);
        }
        j["per_t"].push_back(e);
    }
    j["estimates"] = json::array();
    for (const auto& c : est.checks) {
        ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["worst_margin"] = c.worst;
        if (!c.detail.empty()) e["detail"] = c.detail;
        j["estimates"].push_back(e);
    }
    j["all_estimates_pass"] = est.all_pass;
    return j.dump(2) + "\n";
}

}  // namespace qplab
