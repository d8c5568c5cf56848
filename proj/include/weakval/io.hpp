#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "weakval/meter.hpp"
#include "weakval/report.hpp"

namespace weakval::io {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Format { json, csv, table };

/// Parses "json" | "csv" | "table".
std::optional<Format> parse_format(std::string_view text);

/// Canonical real formatting for every payload: 12 significant digits,
/// scientific, C locale, negative zero folded to zero. Identical inputs
/// always produce identical bytes.
std::string format_real(double x);

/// One output row of an interferometer parameter sweep. Dark-port entries
/// keep their error code and serialize as empty fields (CSV/table) or
/// error objects (JSON).
struct SweepRow {
    double q;
    double r;
    double beta;
    Outcome<Complex> weak_n_at_dark;
    Outcome<Complex> weak_n_at_bright;
    Outcome<double> abl_n_given_dark;
    std::string dark_port; // "", "D" or "B"
};

std::string render_report(const ScenarioReport& report, Format format,
                          std::string_view scenario);

std::string render_sweep(const std::vector<SweepRow>& rows, Format format);

/// Inputs echoed alongside a meter simulation result.
struct MeterRequest {
    std::string scenario;
    std::string op;
    double g;
    double sigma;
};

std::string render_meter(const MeterOutcome& outcome, const MeterRequest& request,
                         Format format);

} // namespace weakval::io
