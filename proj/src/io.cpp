#include "weakval/io.hpp"

#include <algorithm>
#include <cstdio>

namespace weakval::io {

namespace {

void append_json_string(std::string& out, std::string_view s) {
    out += '"';
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    out += '"';
}

void append_complex(std::string& out, Complex z) {
    out += "{\"re\":";
    out += format_real(z.real());
    out += ",\"im\":";
    out += format_real(z.imag());
    out += '}';
}

void append_marker(std::string& out, const std::string& code) {
    out += "{\"error\":";
    append_json_string(out, code);
    out += '}';
}

void append_weak(std::string& out, const Outcome<Complex>& w) {
    if (w.has_value()) {
        append_complex(out, *w);
    } else {
        append_marker(out, w.error);
    }
}

void append_abl(std::string& out, const Outcome<ABLDistribution>& dist) {
    if (!dist.has_value()) {
        append_marker(out, dist.error);
        return;
    }
    out += "{\"entries\":[";
    bool first = true;
    for (const auto& entry : dist->entries) {
        if (!first) out += ',';
        first = false;
        out += "{\"eigenvalue\":";
        out += format_real(entry.eigenvalue);
        out += ",\"probability\":";
        out += format_real(entry.probability);
        out += '}';
    }
    out += "]}";
}

std::string envelope_json(std::string_view scenario, const std::string& payload) {
    std::string out = "{\"format\":\"json\",\"payload\":";
    out += payload;
    out += ",\"scenario\":";
    append_json_string(out, scenario);
    out += ",\"tool_version\":";
    append_json_string(out, kToolVersion);
    out += "}\n";
    return out;
}

// CSV fields are quoted only when they contain a delimiter, quote or
// newline, so purely numeric payloads stay pristine.
std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void csv_row(std::string& out, std::string_view kind, std::string_view key, std::string_view a,
             std::string_view b, std::string_view c, std::string_view d) {
    out += csv_field(kind);
    out += ',';
    out += csv_field(key);
    out += ',';
    out += csv_field(a);
    out += ',';
    out += csv_field(b);
    out += ',';
    out += csv_field(c);
    out += ',';
    out += csv_field(d);
    out += '\n';
}

constexpr std::string_view kSectionCsvHeader = "kind,key,a,b,c,d\n";

std::string pad(std::string_view s, std::size_t width) {
    std::string out(s);
    while (out.size() < width) {
        out += ' ';
    }
    return out;
}

std::string index_key(int i) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%03d", i);
    return buf;
}

std::string complex_columns(const Outcome<Complex>& w, std::string_view sep) {
    if (!w.has_value()) {
        return "error:" + w.error;
    }
    return format_real(w->real()) + std::string(sep) + format_real(w->imag());
}

} // namespace

std::optional<Format> parse_format(std::string_view text) {
    if (text == "json") return Format::json;
    if (text == "csv") return Format::csv;
    if (text == "table") return Format::table;
    return std::nullopt;
}

std::string format_real(double x) {
    if (x == 0.0) {
        x = 0.0; // fold negative zero
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return buf;
}

std::string render_report(const ScenarioReport& report, Format format,
                          std::string_view scenario) {
    if (format == Format::json) {
        std::string p = "{\"abl\":{";
        bool first = true;
        for (const auto& [key, dist] : report.abl) {
            if (!first) p += ',';
            first = false;
            append_json_string(p, key);
            p += ':';
            append_abl(p, dist);
        }
        p += "},\"amplitudes\":{";
        first = true;
        for (const auto& [key, z] : report.amplitudes) {
            if (!first) p += ',';
            first = false;
            append_json_string(p, key);
            p += ':';
            append_complex(p, z);
        }
        p += "},\"name\":";
        append_json_string(p, report.name);
        p += ",\"notes\":[";
        first = true;
        for (const auto& note : report.notes) {
            if (!first) p += ',';
            first = false;
            append_json_string(p, note);
        }
        p += "],\"post_selection_probability\":";
        p += format_real(report.post_selection_probability);
        p += ",\"weak_values\":{";
        first = true;
        for (const auto& [key, w] : report.weak_values) {
            if (!first) p += ',';
            first = false;
            append_json_string(p, key);
            p += ':';
            append_weak(p, w);
        }
        p += "}}";
        return envelope_json(scenario, p);
    }

    if (format == Format::csv) {
        std::string out(kSectionCsvHeader);
        csv_row(out, "meta", "name", report.name, "", "", "");
        csv_row(out, "meta", "post_selection_probability",
                format_real(report.post_selection_probability), "", "", "");
        for (const auto& [key, w] : report.weak_values) {
            if (w.has_value()) {
                csv_row(out, "weak", key, format_real(w->real()), format_real(w->imag()), "", "");
            } else {
                csv_row(out, "weak", key, "", "", w.error, "");
            }
        }
        for (const auto& [key, dist] : report.abl) {
            if (dist.has_value()) {
                for (const auto& entry : dist->entries) {
                    csv_row(out, "abl", key, format_real(entry.eigenvalue),
                            format_real(entry.probability), "", "");
                }
            } else {
                csv_row(out, "abl", key, "", "", dist.error, "");
            }
        }
        for (const auto& [key, z] : report.amplitudes) {
            csv_row(out, "amp", key, format_real(z.real()), format_real(z.imag()), "", "");
        }
        for (std::size_t i = 0; i < report.notes.size(); ++i) {
            csv_row(out, "note", index_key(static_cast<int>(i)), report.notes[i], "", "", "");
        }
        return out;
    }

    // table
    std::size_t width = 4;
    for (const auto& [key, w] : report.weak_values) width = std::max(width, key.size());
    for (const auto& [key, d] : report.abl) width = std::max(width, key.size());
    for (const auto& [key, z] : report.amplitudes) width = std::max(width, key.size());

    std::string out = "weakval ";
    out += kToolVersion;
    out += " scenario=";
    out += scenario;
    out += "\nname ";
    out += report.name;
    out += "\npost_selection_probability ";
    out += format_real(report.post_selection_probability);
    out += "\n\n[weak_values]\n";
    for (const auto& [key, w] : report.weak_values) {
        out += "  " + pad(key, width) + "  " + complex_columns(w, "  ") + "\n";
    }
    out += "\n[abl]\n";
    for (const auto& [key, dist] : report.abl) {
        if (dist.has_value()) {
            for (const auto& entry : dist->entries) {
                out += "  " + pad(key, width) + "  " + format_real(entry.eigenvalue) + "  " +
                       format_real(entry.probability) + "\n";
            }
        } else {
            out += "  " + pad(key, width) + "  error:" + dist.error + "\n";
        }
    }
    out += "\n[amplitudes]\n";
    for (const auto& [key, z] : report.amplitudes) {
        out += "  " + pad(key, width) + "  " + format_real(z.real()) + "  " +
               format_real(z.imag()) + "\n";
    }
    out += "\n[notes]\n";
    for (const auto& note : report.notes) {
        out += "  " + note + "\n";
    }
    return out;
}

std::string render_sweep(const std::vector<SweepRow>& rows, Format format) {
    constexpr std::string_view kColumns[] = {"q",       "r",       "beta",
                                             "re_Nw_D", "im_Nw_D", "re_Nw_B",
                                             "im_Nw_B", "abl_N_given_D", "dark_port_flag"};

    const auto fields = [](const SweepRow& row) {
        std::vector<std::string> f;
        f.push_back(format_real(row.q));
        f.push_back(format_real(row.r));
        f.push_back(format_real(row.beta));
        if (row.weak_n_at_dark.has_value()) {
            f.push_back(format_real(row.weak_n_at_dark->real()));
            f.push_back(format_real(row.weak_n_at_dark->imag()));
        } else {
            f.push_back("");
            f.push_back("");
        }
        if (row.weak_n_at_bright.has_value()) {
            f.push_back(format_real(row.weak_n_at_bright->real()));
            f.push_back(format_real(row.weak_n_at_bright->imag()));
        } else {
            f.push_back("");
            f.push_back("");
        }
        f.push_back(row.abl_n_given_dark.has_value() ? format_real(*row.abl_n_given_dark) : "");
        f.push_back(row.dark_port);
        return f;
    };

    if (format == Format::csv) {
        std::string out;
        for (std::size_t i = 0; i < std::size(kColumns); ++i) {
            if (i > 0) out += ',';
            out += kColumns[i];
        }
        out += '\n';
        for (const auto& row : rows) {
            const auto f = fields(row);
            for (std::size_t i = 0; i < f.size(); ++i) {
                if (i > 0) out += ',';
                out += csv_field(f[i]);
            }
            out += '\n';
        }
        return out;
    }

    if (format == Format::json) {
        std::string p = "{\"rows\":[";
        bool first_row = true;
        for (const auto& row : rows) {
            if (!first_row) p += ',';
            first_row = false;
            p += "{\"abl_N_given_D\":";
            if (row.abl_n_given_dark.has_value()) {
                p += format_real(*row.abl_n_given_dark);
            } else {
                append_marker(p, row.abl_n_given_dark.error);
            }
            p += ",\"beta\":";
            p += format_real(row.beta);
            p += ",\"dark_port_flag\":";
            append_json_string(p, row.dark_port);
            p += ",\"q\":";
            p += format_real(row.q);
            p += ",\"r\":";
            p += format_real(row.r);
            p += ",\"weak_N_at_B\":";
            append_weak(p, row.weak_n_at_bright);
            p += ",\"weak_N_at_D\":";
            append_weak(p, row.weak_n_at_dark);
            p += '}';
        }
        p += "]}";
        return envelope_json("mzi-sweep", p);
    }

    // table: fixed 18/19-character scientific columns, header first
    std::string out;
    std::vector<std::vector<std::string>> all;
    all.reserve(rows.size());
    std::vector<std::size_t> widths;
    for (const auto& col : kColumns) {
        widths.push_back(col.size());
    }
    for (const auto& row : rows) {
        all.push_back(fields(row));
        for (std::size_t i = 0; i < all.back().size(); ++i) {
            widths[i] = std::max(widths[i], all.back()[i].size());
        }
    }
    for (std::size_t i = 0; i < std::size(kColumns); ++i) {
        if (i > 0) out += "  ";
        out += pad(kColumns[i], widths[i]);
    }
    out += '\n';
    for (const auto& f : all) {
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (i > 0) out += "  ";
            out += pad(f[i], widths[i]);
        }
        out += '\n';
    }
    return out;
}

std::string render_meter(const MeterOutcome& outcome, const MeterRequest& request,
                         Format format) {
    if (format == Format::json) {
        std::string p = "{\"components\":[";
        bool first = true;
        for (const auto& component : outcome.components) {
            if (!first) p += ',';
            first = false;
            p += "{\"amplitude\":";
            append_complex(p, component.amplitude);
            p += ",\"center\":";
            p += format_real(component.center);
            p += ",\"eigenvalue\":";
            p += format_real(component.eigenvalue);
            p += '}';
        }
        p += "],\"g\":";
        p += format_real(request.g);
        p += ",\"op\":";
        append_json_string(p, request.op);
        p += ",\"pointer_mean\":";
        p += format_real(outcome.pointer_mean);
        p += ",\"pointer_variance\":";
        p += format_real(outcome.pointer_variance);
        p += ",\"post_selection_probability\":";
        p += format_real(outcome.post_selection_probability);
        p += ",\"scenario\":";
        append_json_string(p, request.scenario);
        p += ",\"sigma\":";
        p += format_real(request.sigma);
        p += '}';
        return envelope_json("meter", p);
    }

    if (format == Format::csv) {
        std::string out(kSectionCsvHeader);
        csv_row(out, "meta", "scenario", request.scenario, "", "", "");
        csv_row(out, "meta", "op", request.op, "", "", "");
        csv_row(out, "meta", "g", format_real(request.g), "", "", "");
        csv_row(out, "meta", "sigma", format_real(request.sigma), "", "", "");
        csv_row(out, "meta", "post_selection_probability",
                format_real(outcome.post_selection_probability), "", "", "");
        csv_row(out, "meta", "pointer_mean", format_real(outcome.pointer_mean), "", "", "");
        csv_row(out, "meta", "pointer_variance", format_real(outcome.pointer_variance), "", "",
                "");
        for (std::size_t i = 0; i < outcome.components.size(); ++i) {
            const auto& component = outcome.components[i];
            csv_row(out, "component", index_key(static_cast<int>(i)),
                    format_real(component.eigenvalue), format_real(component.center),
                    format_real(component.amplitude.real()),
                    format_real(component.amplitude.imag()));
        }
        return out;
    }

    std::string out = "weakval ";
    out += kToolVersion;
    out += " scenario=meter\n";
    out += "scenario " + request.scenario + "\n";
    out += "op " + request.op + "\n";
    out += "g " + format_real(request.g) + "\n";
    out += "sigma " + format_real(request.sigma) + "\n";
    out += "post_selection_probability " + format_real(outcome.post_selection_probability) + "\n";
    out += "pointer_mean " + format_real(outcome.pointer_mean) + "\n";
    out += "pointer_variance " + format_real(outcome.pointer_variance) + "\n";
    out += "\n[components]\n";
    for (const auto& component : outcome.components) {
        out += "  " + format_real(component.eigenvalue) + "  " + format_real(component.center) +
               "  " + format_real(component.amplitude.real()) + "  " +
               format_real(component.amplitude.imag()) + "\n";
    }
    return out;
}

} // namespace weakval::io
