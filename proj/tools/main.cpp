#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "weakval/dsl.hpp"
#include "weakval/io.hpp"
#include "weakval/scenarios.hpp"

namespace {

using namespace weakval;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParseEval = 2;
constexpr int kExitDegenerate = 3;

void emit(const std::string& payload) {
    std::cout << payload;
}

int run_wks(const std::string& path, io::Format format) {
    std::ifstream file(path);
    if (!file) {
        std::cerr << "error: cannot open '" << path << "'\n";
        return kExitUsage;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();

    dsl::Program program;
    try {
        program = dsl::parse(buffer.str());
    } catch (const dsl::ParseError& e) {
        std::cerr << path << ":" << e.line() << ":" << e.column() << ": error: " << e.message()
                  << " (near '" << e.offending_text() << "')\n";
        return kExitParseEval;
    }

    ScenarioReport report;
    try {
        report = dsl::evaluate(program);
    } catch (const EvalError& e) {
        std::cerr << path << ": error: " << e.what() << "\n";
        return kExitParseEval;
    }

    emit(io::render_report(report, format, "run"));

    std::size_t queries = report.weak_values.size() + report.abl.size();
    std::size_t errored = 0;
    for (const auto& [key, w] : report.weak_values) {
        if (!w.has_value()) ++errored;
    }
    for (const auto& [key, d] : report.abl) {
        if (!d.has_value()) ++errored;
    }
    if (queries == 0 || errored == queries) {
        std::cerr << "error: no query produced a value\n";
        return kExitDegenerate;
    }
    return kExitOk;
}

int run_sweep(int q_steps, int beta_steps, const std::string& out_path, io::Format format,
              double tol) {
    std::vector<double> qs;
    qs.reserve(static_cast<std::size_t>(q_steps));
    for (int i = 0; i < q_steps; ++i) {
        // half-step offset keeps the degenerate endpoints q = 0, 1 off the grid
        qs.push_back((i + 0.5) / q_steps);
    }
    std::vector<double> betas;
    betas.reserve(static_cast<std::size_t>(beta_steps));
    for (int j = 0; j < beta_steps; ++j) {
        betas.push_back(2.0 * std::numbers::pi * j / beta_steps);
    }

    const std::vector<ScenarioReport> reports = mzi_sweep(qs, betas, tol);
    std::vector<io::SweepRow> rows;
    rows.reserve(reports.size());
    std::size_t index = 0;
    for (double q : qs) {
        for (double beta : betas) {
            const ScenarioReport& report = reports[index++];
            io::SweepRow row;
            row.q = q;
            row.r = std::sqrt(std::max(1.0 - q * q, 0.0));
            row.beta = beta;
            row.weak_n_at_dark = report.weak_values.at("N@D");
            row.weak_n_at_bright = report.weak_values.at("N@B");
            const auto& abl_nd = report.abl.at("N@D");
            row.abl_n_given_dark = abl_nd.has_value()
                                       ? Outcome<double>::ok(abl_nd->probability_of(1.0))
                                       : Outcome<double>::fail(abl_nd.error);
            if (!row.weak_n_at_dark.has_value()) {
                row.dark_port = "D";
            } else if (!row.weak_n_at_bright.has_value()) {
                row.dark_port = "B";
            }
            rows.push_back(std::move(row));
        }
    }

    const std::string payload = io::render_sweep(rows, format);
    if (out_path.empty()) {
        emit(payload);
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write '" << out_path << "'\n";
            return kExitUsage;
        }
        out << payload;
        std::cerr << "wrote " << rows.size() << " rows to " << out_path << "\n";
    }
    return kExitOk;
}

int run_meter(const std::string& scenario, const std::string& op, double g, double sigma,
              io::Format format) {
    try {
        PrePost pp = scenario == "threebox" ? three_box_prepost() : hardy_prepost();
        OperatorMatrix projector = [&]() {
            if (scenario == "threebox") {
                if (op != "A" && op != "B" && op != "C") {
                    throw std::invalid_argument("threebox ops are A, B, C");
                }
                return three_box_projector(op);
            }
            if (op.size() != 4) {
                throw std::invalid_argument("hardy ops are NpNe, NpIe, IpNe, IpIe");
            }
            return hardy_pair_projector(op.substr(0, 2), op.substr(2));
        }();
        const MeterOutcome outcome =
            simulate_pointer(SpectralData::from_projector(projector), pp, PointerModel(g, sigma));
        emit(io::render_meter(outcome, {scenario, op, g, sigma}, format));
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NoConsistentHistory& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pre/post-selected quantum measurement toolkit"};
    app.require_subcommand(1);

    std::string format_name = "json";
    double tol = kDefaultTol;
    app.add_option("--format", format_name, "output format (json, csv, table)")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    app.add_option("--tol", tol, "tolerance used by report self-checks")
        ->check(CLI::PositiveNumber);

    auto* cmd_threebox = app.add_subcommand("threebox", "three-box occupation report");
    auto* cmd_hardy = app.add_subcommand("hardy", "double-interferometer coincidence report");

    double q = 0.0;
    double beta = 0.0;
    auto* cmd_mzi = app.add_subcommand("mzi", "single interferometer report");
    cmd_mzi->add_option("--q", q, "transmission amplitude of the second splitter")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    cmd_mzi->add_option("--beta", beta, "phase of the second splitter (radians)");

    int q_steps = 0;
    int beta_steps = 0;
    std::string out_path;
    auto* cmd_sweep = app.add_subcommand("mzi-sweep", "grid sweep over (q, beta)");
    cmd_sweep->add_option("--q-steps", q_steps, "grid points in q (open interval)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--beta-steps", beta_steps, "grid points in beta over [0, 2pi)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--out", out_path, "write rows to this file instead of stdout");

    std::string wks_path;
    auto* cmd_run = app.add_subcommand("run", "evaluate a .wks scenario program");
    cmd_run->add_option("file", wks_path, "scenario program")
        ->required()
        ->check(CLI::ExistingFile);

    std::string meter_scenario;
    std::string meter_op;
    double g = 0.0;
    double sigma = 0.0;
    auto* cmd_meter = app.add_subcommand("meter", "Gaussian pointer readout");
    cmd_meter->add_option("--scenario", meter_scenario, "threebox or hardy")
        ->required()
        ->check(CLI::IsMember({"threebox", "hardy"}));
    cmd_meter->add_option("--op", meter_op, "occupation projector to couple to")->required();
    cmd_meter->add_option("--g", g, "coupling strength")->required()->check(CLI::PositiveNumber);
    cmd_meter->add_option("--sigma", sigma, "pointer width")
        ->required()
        ->check(CLI::PositiveNumber);

    for (auto* sub : app.get_subcommands({})) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const io::Format format = *io::parse_format(format_name);
    try {
        if (app.got_subcommand(cmd_threebox)) {
            emit(io::render_report(three_box(tol), format, "threebox"));
            return kExitOk;
        }
        if (app.got_subcommand(cmd_hardy)) {
            emit(io::render_report(hardy(tol), format, "hardy"));
            return kExitOk;
        }
        if (app.got_subcommand(cmd_mzi)) {
            emit(io::render_report(mzi(BeamSplitter::from_q(q, beta), tol), format, "mzi"));
            return kExitOk;
        }
        if (app.got_subcommand(cmd_sweep)) {
            io::Format sweep_format = format;
            if (app.count("--format") == 0) {
                sweep_format = io::Format::csv; // the sweep's natural shape is CSV rows
            }
            return run_sweep(q_steps, beta_steps, out_path, sweep_format, tol);
        }
        if (app.got_subcommand(cmd_run)) {
            return run_wks(wks_path, format);
        }
        if (app.got_subcommand(cmd_meter)) {
            return run_meter(meter_scenario, meter_op, g, sigma, format);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
