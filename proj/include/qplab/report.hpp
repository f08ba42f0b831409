#pragma once
// Deterministic serialization of scan results: CSV for tabular outputs,
// JSON for structured reports. Every file embeds the config hash and the
// tool version so a run is identifiable from its artifacts.

#include <string>
#include <vector>

#include "qplab/certifier.hpp"
#include "qplab/induction.hpp"
#include "qplab/spectrum.hpp"

namespace qplab {

inline constexpr const char* kToolVersion = "0.1.0";

// FNV-1a, stable across platforms (std::hash is not).
unsigned long long fnv1a(const std::string& s);
std::string hash_hex(const std::string& s);

// Shortest round-trip-safe decimal for a double ("%.17g").
std::string fmt_double(double v);

void write_scan_csv(const GapScanResult& scan, const std::string& path,
                    const std::string& config_hash);
void write_gaps_json(const GapScanResult& scan, const std::string& path,
                     const std::string& config_hash);
std::string certificate_json(const UHCertificate& cert, const std::string& config_hash);
std::string induction_trace_json(const InductionState& state, const EstimateReport& est,
                                 const std::string& config_hash);
void write_text(const std::string& path, const std::string& content);

}  // namespace qplab
