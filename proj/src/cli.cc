// Copyright 2026 The cjlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cjlab/cli.h"

#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cjlab/config.h"
#include "cjlab/detector.h"
#include "cjlab/distributions.h"
#include "cjlab/errors.h"
#include "cjlab/fitting.h"
#include "cjlab/fock.h"
#include "cjlab/grid_io.h"
#include "cjlab/inversion.h"
#include "cjlab/montecarlo.h"
#include "cjlab/spectral.h"
#include "cjlab/wigner.h"

namespace cjlab {

using nlohmann::json;

namespace {

constexpr int kReportedPn = 10;

struct Invocation {
    std::optional<std::string> config_path;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void write_output(const std::string &path, const std::string &content, std::ostream &out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot open " + path + " for writing");
    }
    f << content;
    if (!f) {
        throw IoError("failed writing " + path);
    }
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

int model_cutoff(const RunConfig &rc, const ExperimentModel &model) {
    return rc.cutoff > 0 ? rc.cutoff : default_cutoff(model);
}

json stats_json(const CoincidenceStats &s) {
    json j;
    j["probs"] = s.probs;
    if (!s.sigma.empty()) {
        j["sigma"] = s.sigma;
    }
    if (!s.counts.empty()) {
        j["counts"] = s.counts;
    }
    j["pulses"] = s.pulses;
    return j;
}

CoincidenceStats load_stats(const std::string &path, const std::string &field, const std::string &stage) {
    if (path.empty()) {
        throw ConfigError(field, "missing stage: the " + stage + " run is required");
    }
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open stats file " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError(field, path + ": invalid JSON: " + e.what());
    }
    const json &body = j.contains("stats") ? j["stats"] : j;
    CoincidenceStats s;
    try {
        s.probs = body.at("probs").get<std::vector<double>>();
        if (body.contains("sigma")) {
            s.sigma = body["sigma"].get<std::vector<double>>();
        }
        if (body.contains("counts")) {
            s.counts = body["counts"].get<std::vector<int64_t>>();
        }
        if (body.contains("pulses")) {
            s.pulses = body["pulses"].get<int64_t>();
        }
        s.validate();
    } catch (const json::exception &e) {
        throw ConfigError(field, path + ": " + e.what());
    } catch (const DomainError &e) {
        throw ConfigError(field, path + ": " + e.what());
    }
    return s;
}

json fit_json(const FitResult &r) {
    return {
        {"value", r.value},
        {"ci_low", r.ci_low},
        {"ci_high", r.ci_high},
        {"residual", r.residual},
        {"iterations", r.iterations},
        {"weighted", r.weighted},
        {"at_boundary", r.at_boundary},
        {"identifiable", r.identifiable},
    };
}

std::vector<double> head(const PhotonNumberDist &d, int n) {
    std::vector<double> out;
    for (int i = 0; i <= n; i++) {
        out.push_back(d.at(i));
    }
    return out;
}

// Setter for a scanned parameter; returns false for unknown names.
bool set_parameter(const std::string &name, double x, ExperimentModel &model, double &transmittance,
                   double &total_efficiency, int count) {
    static const std::map<std::string, double ExperimentModel::*> fields{
        {"g", &ExperimentModel::g},           {"o1", &ExperimentModel::o1},
        {"o2", &ExperimentModel::o2},         {"g1", &ExperimentModel::g1},
        {"g2", &ExperimentModel::g2},         {"eta_t1", &ExperimentModel::eta_t1},
        {"eta_t2", &ExperimentModel::eta_t2}, {"transmission", &ExperimentModel::transmission},
    };
    if (name == "T") {
        transmittance = x;
        return true;
    }
    if (name == "total_efficiency") {
        total_efficiency = x;
        model.eta = x / count;
        return true;
    }
    auto it = fields.find(name);
    if (it == fields.end()) {
        return false;
    }
    model.*(it->second) = x;
    return true;
}

std::string cmd_scan(const RunConfig &rc) {
    const ScanConfig &scan = rc.scan;
    const int count = rc.detectors.count();
    bool needs_dist = false;
    std::vector<std::string> header{scan.parameter};
    for (const auto &q : scan.quantities) {
        if (q == "hom_p11") {
            if (scan.parameter != "T") {
                throw ConfigError("scan.quantities", "hom_p11 requires scan.parameter = T");
            }
            header.push_back(q);
        } else if (q == "cj_p11") {
            header.push_back(q);
        } else if (q == "p1") {
            needs_dist = true;
            header.push_back(q);
        } else if (q == "p1_5det" || q == "p1_6det") {
            int m = q == "p1_5det" ? 5 : 6;
            if (count < m) {
                throw ConfigError("scan.quantities", q + " needs at least " + std::to_string(m) + " detectors");
            }
            needs_dist = true;
            header.push_back(q);
        } else if (q == "cm") {
            needs_dist = true;
            for (int m = 1; m <= count; m++) {
                header.push_back("c" + std::to_string(m));
            }
        } else if (q == "pn") {
            needs_dist = true;
            for (int n = 0; n <= kReportedPn; n++) {
                header.push_back("pn_" + std::to_string(n));
            }
        } else {
            throw ConfigError("scan.quantities", "unknown quantity '" + q + "'");
        }
    }

    std::ostringstream csv;
    for (size_t i = 0; i < header.size(); i++) {
        csv << (i ? "," : "") << header[i];
    }
    csv << "\r\n";
    for (int step = 0; step < scan.steps; step++) {
        double x = scan.steps == 1 ? scan.start : scan.start + (scan.stop - scan.start) * step / (scan.steps - 1);
        ExperimentModel model = rc.model;
        double transmittance = 0.5;
        double total = rc.total_efficiency;
        if (!set_parameter(scan.parameter, x, model, transmittance, total, count)) {
            throw ConfigError("scan.parameter", "unknown parameter '" + scan.parameter + "'");
        }
        std::vector<double> row{x};
        try {
            model.validate();
            require(total > 0.0 && total <= 1.0, "total_efficiency must lie in (0, 1]");
            PhotonNumberDist dist;
            CoincidenceStats stats;
            if (needs_dist) {
                dist = full_output_dist(model, model_cutoff(rc, model));
                stats = coincidence_probs(dist, model.eta, count);
            }
            for (const auto &q : scan.quantities) {
                if (q == "hom_p11") {
                    row.push_back(hom_p11(transmittance));
                } else if (q == "cj_p11") {
                    row.push_back(cj_p11(model.g));
                } else if (q == "p1") {
                    row.push_back(dist.at(1));
                } else if (q == "p1_5det") {
                    row.push_back(p1_truncated(stats, model.eta, 5).value);
                } else if (q == "p1_6det") {
                    row.push_back(p1_truncated(stats, model.eta, 6).value);
                } else if (q == "cm") {
                    row.insert(row.end(), stats.probs.begin(), stats.probs.end());
                } else if (q == "pn") {
                    for (int n = 0; n <= kReportedPn; n++) {
                        row.push_back(dist.at(n));
                    }
                }
            }
        } catch (const DomainError &e) {
            throw ConfigError("scan", "at " + scan.parameter + " = " + format_double(x) + ": " + e.what());
        }
        for (size_t i = 0; i < row.size(); i++) {
            csv << (i ? "," : "") << format_double(row[i]);
        }
        csv << "\r\n";
    }
    return csv.str();
}

std::string cmd_simulate(const RunConfig &rc, const json &resolved) {
    if (!rc.seed) {
        throw ConfigError("seed", "a seed is required for simulate");
    }
    SampleOptions options;
    options.chunk_size = rc.simulate.chunk_size;
    ClickRecord record = sample_pulses(rc.model, rc.detectors, rc.simulate.pulses, *rc.seed, options);
    if (!rc.simulate.record.empty()) {
        std::ofstream f(rc.simulate.record, std::ios::binary);
        if (!f) {
            throw IoError("cannot open " + rc.simulate.record + " for writing");
        }
        write_click_record(record, f);
    }
    CoincidenceStats stats = estimate_cm(record, record.detectors);
    std::vector<int64_t> singles;
    for (int d = 0; d < record.detectors; d++) {
        singles.push_back(record.singles(d));
    }
    Prediction exact = predict_interference(rc.model, record.detectors);
    json report;
    report["command"] = "simulate";
    report["seed"] = *rc.seed;
    report["chunk_size"] = record.chunk_size;
    report["stats"] = stats_json(stats);
    report["singles"] = singles;
    report["closed_form"] = {{"probs", exact.stats.probs}, {"p1", exact.dist.at(1)}};
    report["config"] = resolved;
    return dump(report);
}

std::string cmd_fit(const RunConfig &rc, const json &resolved) {
    CoincidenceStats spdc = load_stats(rc.fit.spdc, "fit.spdc", "SPDC (both sources blocked)");
    CoincidenceStats h_run = load_stats(rc.fit.h_run, "fit.h_run", "H-photon (|~1,0>)");
    CoincidenceStats v_run = load_stats(rc.fit.v_run, "fit.v_run", "V-photon (|~0,1>)");
    const double eta = rc.model.eta;
    FitOptions options;
    options.weighted = rc.fit.weighted;

    FitResult g = fit_gain(spdc, eta, options);
    FitResult o1 = fit_overlap(h_run, eta, g.value, OverlapMode::kHInput, options);
    FitResult o2 = fit_overlap(v_run, eta, g.value, OverlapMode::kVInput, options);

    ExperimentModel model = rc.model;
    model.g = g.value;
    model.o1 = o1.value;
    model.o2 = o2.value;
    model.input = InputState::k11;
    const int orders = rc.detectors.count();
    Prediction pred = predict_interference(model, orders);

    json report;
    report["command"] = "fit";
    report["eta"] = eta;
    report["g"] = fit_json(g);
    report["o1"] = fit_json(o1);
    report["o2"] = fit_json(o2);
    report["deduced_pn"] = head(pred.dist, kReportedPn);
    report["predicted_cm"] = pred.stats.probs;
    if (!rc.fit.interference.empty()) {
        CoincidenceStats meas = load_stats(rc.fit.interference, "fit.interference", "interference");
        json inter;
        inter["measured_cm"] = meas.probs;
        for (int m : {5, 6}) {
            if (meas.order() >= m) {
                Estimate e = p1_truncated(meas, eta, m);
                inter["p1_" + std::to_string(m) + "det"] = {{"value", e.value}, {"sigma", e.sigma}};
            }
        }
        report["interference"] = inter;
    }
    report["config"] = resolved;
    return dump(report);
}

std::string cmd_wigner(const RunConfig &rc, std::ostream &err) {
    int cutoff = rc.wigner.cutoff > 0 ? rc.wigner.cutoff : choose_cutoff(rc.model.g, 2);
    TwoModeMixedState state = output_mixed_state(rc.model, cutoff);
    WignerGrid grid = wigner_slice(state, rc.wigner.grid);
    if (grid.cutoff_warning) {
        err << "warning: top Fock layers hold more than 1e-6 of the population; increase wigner.cutoff\n";
    }
    std::ostringstream out;
    if (rc.wigner.format == "csv") {
        write_wigner_csv(grid, out);
    } else {
        write_wigner_grid(grid, out);
    }
    return out.str();
}

std::string cmd_spectral(const RunConfig &rc, const json &resolved) {
    const SpectralConfig &sp = rc.spectral;
    JointSpectralAmplitude jsa = build_jsa(sp.jsa);
    double unfiltered = schmidt_purity(jsa).purity;
    if (sp.filter) {
        try {
            jsa = apply_filter(jsa, sp.filter_center, sp.filter_width, sp.filter_mode);
        } catch (const DomainError &e) {
            throw ConfigError("spectral.filter", e.what());
        }
    }
    SchmidtSpectrum schmidt = schmidt_purity(jsa);
    if (!sp.csv.empty()) {
        std::ostringstream csv;
        write_jsa_csv(jsa, csv);
        write_output(sp.csv, csv.str(), std::cout);
    }
    if (!sp.grid.empty()) {
        std::ostringstream bin;
        write_jsa_grid(jsa, bin);
        write_output(sp.grid, bin.str(), std::cout);
    }
    std::vector<double> top(schmidt.coefficients.begin(),
                            schmidt.coefficients.begin() + std::min<size_t>(32, schmidt.coefficients.size()));
    json report;
    report["command"] = "spectral";
    report["purity"] = schmidt.purity;
    report["unfiltered_purity"] = unfiltered;
    report["schmidt_coefficients"] = top;
    report["transmitted_fraction"] = jsa.transmitted_fraction;
    report["low_transmission"] = jsa.low_transmission;
    report["axis_unit"] = jsa.unit;
    report["config"] = resolved;
    return dump(report);
}

std::string cmd_invert(const RunConfig &rc, const json &resolved) {
    CoincidenceStats stats = load_stats(rc.invert.stats, "invert.stats", "coincidence");
    const double eta = rc.model.eta;
    if (rc.invert.order > stats.order()) {
        throw ConfigError("invert.order", "exceeds the " + std::to_string(stats.order()) + " orders in the stats");
    }
    if (rc.invert.cutoff > stats.order()) {
        throw ConfigError("invert.cutoff", "exceeds the " + std::to_string(stats.order()) + " orders in the stats");
    }
    json estimates = json::array();
    for (int m = 1; m <= rc.invert.order; m++) {
        Estimate e = p1_truncated(stats, eta, m);
        estimates.push_back({{"m", m}, {"value", e.value}, {"sigma", e.sigma}});
    }
    PnSolution sol = pn_solve(stats, eta, rc.invert.cutoff);
    json report;
    report["command"] = "invert";
    report["eta"] = eta;
    report["p1_truncated"] = estimates;
    report["pn"] = {
        {"probs", sol.dist.probs},
        {"sigma", sol.sigma},
        {"ill_conditioned", sol.ill_conditioned},
        {"negative", sol.negative},
        {"negative_components", sol.negative_components},
    };
    report["config"] = resolved;
    return dump(report);
}

void add_common(CLI::App *sub, Invocation &inv) {
    sub->add_option_function<std::string>(
        "-c,--config", [&inv](const std::string &v) { inv.config_path = v; }, "JSON configuration file");
    sub->add_option_function<std::vector<std::string>>(
           "--set",
           [&inv](const std::vector<std::string> &items) {
               for (const auto &item : items) {
                   auto eq = item.find('=');
                   if (eq == std::string::npos) {
                       throw ConfigError(item, "--set expects path=value");
                   }
                   inv.overrides.emplace_back(item.substr(0, eq), item.substr(eq + 1));
               }
           },
           "Override any config field, e.g. --set model.g=1.5")
        ->take_all();
    const std::pair<const char *, const char *> flags[] = {
        {"-o,--output", "output"},
        {"--seed", "seed"},
        {"--cutoff", "cutoff"},
        {"--g", "model.g"},
        {"--o1", "model.o1"},
        {"--o2", "model.o2"},
        {"--transmission", "model.transmission"},
        {"--input", "model.input"},
        {"--sources", "model.sources"},
        {"--detectors", "detector.count"},
        {"--efficiency", "detector.total_efficiency"},
        {"--dead-pulses", "detector.dead_pulses"},
    };
    for (auto [flag, path] : flags) {
        std::string p = path;
        sub->add_option_function<std::string>(
            flag, [&inv, p](const std::string &v) { inv.overrides.emplace_back(p, v); }, "Sets " + p);
    }
}

void add_flag(CLI::App *sub, Invocation &inv, const std::string &flag, const std::string &path) {
    sub->add_option_function<std::string>(
        flag, [&inv, path](const std::string &v) { inv.overrides.emplace_back(path, v); }, "Sets " + path);
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"cjlab: nonlinear two-photon interference lab"};
    app.require_subcommand(1);
    Invocation inv;

    CLI::App *scan = app.add_subcommand("scan", "Sweep one parameter and tabulate output quantities");
    add_common(scan, inv);
    add_flag(scan, inv, "--param", "scan.parameter");
    add_flag(scan, inv, "--start", "scan.start");
    add_flag(scan, inv, "--stop", "scan.stop");
    add_flag(scan, inv, "--steps", "scan.steps");
    add_flag(scan, inv, "--quantities", "scan.quantities");

    CLI::App *simulate = app.add_subcommand("simulate", "Monte Carlo click record and coincidence statistics");
    add_common(simulate, inv);
    add_flag(simulate, inv, "--pulses", "simulate.pulses");
    add_flag(simulate, inv, "--chunk-size", "simulate.chunk_size");
    add_flag(simulate, inv, "--record", "simulate.record");

    CLI::App *fit = app.add_subcommand("fit", "Staged fit of g, o1, o2 from auxiliary runs");
    add_common(fit, inv);
    add_flag(fit, inv, "--spdc", "fit.spdc");
    add_flag(fit, inv, "--h-run", "fit.h_run");
    add_flag(fit, inv, "--v-run", "fit.v_run");
    add_flag(fit, inv, "--interference", "fit.interference");
    fit->add_flag_callback("--unweighted", [&inv] { inv.overrides.emplace_back("fit.weighted", "false"); },
                           "Unit weights instead of 1/sigma^2");

    CLI::App *wigner = app.add_subcommand("wigner", "Wigner slice W(x=0, p_x, y, p_y=0) of the output state");
    add_common(wigner, inv);
    add_flag(wigner, inv, "--format", "wigner.format");
    add_flag(wigner, inv, "--wigner-cutoff", "wigner.cutoff");

    CLI::App *spectral = app.add_subcommand("spectral", "Joint spectrum, filtering and Schmidt purity");
    add_common(spectral, inv);
    add_flag(spectral, inv, "--filter-width", "spectral.filter.width");
    add_flag(spectral, inv, "--filter-center", "spectral.filter.center");
    add_flag(spectral, inv, "--filter-mode", "spectral.filter.mode");
    add_flag(spectral, inv, "--csv", "spectral.csv");
    add_flag(spectral, inv, "--grid", "spectral.grid");
    spectral->add_flag_callback(
        "--filter", [&inv] { inv.overrides.emplace_back("spectral.filter.enabled", "true"); }, "Apply the filter");

    CLI::App *invert = app.add_subcommand("invert", "P_1 and P_n from coincidence statistics");
    add_common(invert, inv);
    add_flag(invert, inv, "--stats", "invert.stats");
    add_flag(invert, inv, "--order", "invert.order");
    add_flag(invert, inv, "--invert-cutoff", "invert.cutoff");

    try {
        try {
            app.parse(argc, argv);
        } catch (const CLI::CallForHelp &e) {
            out << app.help();
            return kExitOk;
        } catch (const CLI::ParseError &e) {
            // Subcommand help requests carry their own text.
            if (e.get_exit_code() == 0) {
                for (CLI::App *sub : app.get_subcommands()) {
                    out << sub->help();
                }
                return kExitOk;
            }
            err << "error: " << e.what() << "\n";
            return kExitConfig;
        }
        json resolved = resolve_config(inv.config_path, inv.overrides);
        RunConfig rc = parse_run_config(resolved);

        std::string content;
        if (scan->parsed()) {
            content = cmd_scan(rc);
        } else if (simulate->parsed()) {
            content = cmd_simulate(rc, resolved);
        } else if (fit->parsed()) {
            content = cmd_fit(rc, resolved);
        } else if (wigner->parsed()) {
            content = cmd_wigner(rc, err);
        } else if (spectral->parsed()) {
            content = cmd_spectral(rc, resolved);
        } else if (invert->parsed()) {
            content = cmd_invert(rc, resolved);
        }
        write_output(rc.output, content, out);
        return kExitOk;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const DomainError &e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConvergenceError &e) {
        err << "numeric error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const CutoffTooSmallError &e) {
        err << "numeric error: " << e.what() << "\n";
        return kExitNonConvergence;
    } catch (const IoError &e) {
        err << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace cjlab
