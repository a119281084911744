// Command-line surface for the modemix toolkit: mode solving, band maps,
// band identification and down-conversion analysis from one shared
// configuration document. Exit codes: 0 success, 2 validation error,
// 3 numerical failure, 4 flagged results.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "modemix/config.hpp"
#include "modemix/identification.hpp"
#include "modemix/io.hpp"
#include "modemix/overlap.hpp"
#include "modemix/spdc.hpp"
#include "modemix/units.hpp"

namespace fs = std::filesystem;
using namespace modemix;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitFlagged = 4;

WavelengthRange parse_range(const std::string& s) {
    WavelengthRange r;
    std::istringstream ss(s);
    std::string a, b, c;
    if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':'))
        throw ValidationError("range '" + s + "' must be start:stop[:step] in nm");
    r.start_nm = std::stod(a);
    r.stop_nm = std::stod(b);
    if (std::getline(ss, c, ':')) r.step_nm = std::stod(c);
    if (!(r.step_nm > 0.0) || !(r.stop_nm >= r.start_nm))
        throw ValidationError("range '" + s + "' is not increasing with positive step");
    return r;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open output file '" + path + "'");
    return out;
}

FieldOrientation orientation_for(const ProjectConfig& cfg, Pol pol) {
    if (pol == Pol::S)
        return cfg.mapping.s_vertical() ? FieldOrientation::Vertical
                                        : FieldOrientation::Horizontal;
    return default_orientation(pol);
}

std::vector<Triplet> read_triplets_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open triplet list '" + path + "'");
    std::vector<Triplet> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        out.push_back(parse_triplet(line));
    }
    if (out.empty()) throw ValidationError("triplet list '" + path + "' is empty");
    return out;
}

int cmd_solve_modes(const std::string& config_path, double lambda_nm, const std::string& pol_s,
                    int count, const std::string& out_dir) {
    const ProjectConfig cfg = ProjectConfig::load(config_path);
    if (!cfg.box_warning.empty()) std::cerr << "warning: " << cfg.box_warning << '\n';
    const Pol pol = parse_pol(pol_s);
    const IndexGrid grid =
        index_profile(cfg.waveguide, cfg.materials, cfg.mapping.axis_for(pol), lambda_nm);
    const auto result = solve_modes(grid, pol, count, orientation_for(cfg, pol));

    if (result.modes.empty()) {
        std::cout << "no guided modes at " << format_double(lambda_nm) << " nm ("
                  << result.diagnostic << ")\n";
        return kExitOk;
    }
    if (!out_dir.empty()) fs::create_directories(out_dir);
    std::cout << "label  n_eff\n";
    for (const ModeField& m : result.modes) {
        std::cout << m.label.str() << "  " << format_double(m.n_eff) << '\n';
        if (m.dominant_energy_fraction < 0.9)
            std::cerr << "warning: mode " << m.label.str()
                      << " dominant-component energy fraction "
                      << format_double(m.dominant_energy_fraction) << " < 0.9\n";
        if (out_dir.empty()) continue;
        auto jf = open_out(out_dir + "/mode_" + m.label.str() + ".json");
        write_mode_json(m, jf);
        auto cf = open_out(out_dir + "/mode_" + m.label.str() + "_intensity.csv");
        write_intensity_csv(m, cf);
        auto pf = open_out(out_dir + "/mode_" + m.label.str() + "_intensity.pgm");
        write_intensity_pgm(m, pf);
    }
    return kExitOk;
}

std::unique_ptr<ModelIndexProvider> make_provider(const ProjectConfig& cfg) {
    return std::make_unique<ModelIndexProvider>(cfg.materials, cfg.mapping,
                                                cfg.gauge_corrections());
}

int cmd_band_map(const std::string& config_path, const std::string& triplet_s,
                 const std::string& range_v_s, const std::string& range_h_s,
                 double blur_fwhm_nm, const std::string& out_path) {
    const ProjectConfig cfg = ProjectConfig::load(config_path);
    const Triplet triplet = parse_triplet(triplet_s);
    const auto provider = make_provider(cfg);
    BandMap map = band_map(*provider, triplet, cfg.waveguide.poling_period_um,
                           cfg.waveguide.length_mm, parse_range(range_v_s),
                           parse_range(range_h_s));
    if (blur_fwhm_nm > 0.0) gaussian_blur(map, blur_fwhm_nm);
    auto out = open_out(out_path);
    write_band_map_csv(map, out);
    auto meta = open_out(out_path + ".meta.json");
    write_band_map_metadata(map, meta);
    std::cout << "band map " << triplet.str() << ": " << map.lambda_v_nm.size() << " x "
              << map.lambda_h_nm.size() << " cells -> " << out_path << '\n';
    return kExitOk;
}

int cmd_degenerate_scan(const std::string& config_path, const std::string& triplet_s,
                        const std::string& range_s, const std::string& out_path) {
    const ProjectConfig cfg = ProjectConfig::load(config_path);
    const Triplet triplet = parse_triplet(triplet_s);
    const auto provider = make_provider(cfg);
    const auto scan = degenerate_scan(*provider, triplet, cfg.waveguide.poling_period_um,
                                      cfg.waveguide.length_mm, parse_range(range_s));
    auto out = open_out(out_path);
    out << "# schema_version 1\n";
    out << "lambda_nm,intensity\n";
    for (const auto& [lam, inten] : scan)
        out << format_double(lam) << ',' << format_double(inten) << '\n';
    std::cout << "degenerate scan " << triplet.str() << ": " << scan.size() << " points -> "
              << out_path << '\n';
    return kExitOk;
}

int cmd_band_centers(const std::string& scan_path, double min_prominence,
                     const std::string& out_path) {
    const MeasuredScan scan = read_scan_file(scan_path);
    const auto centers = detect_band_centers(scan, min_prominence);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
    }
    *out << "# schema_version 1\n";
    *out << "center_nm\n";
    for (double c : centers) *out << format_double(c) << '\n';
    if (centers.empty()) std::cerr << "no bands above prominence threshold\n";
    return kExitOk;
}

struct Seed {
    Triplet triplet;
    double approx_center_nm;
};

std::vector<Seed> read_seeds_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open seeds file '" + path + "'");
    std::vector<Seed> seeds;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto at = line.find('@');
        if (at == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": expected 'TRIPLET @ center_nm'");
        Seed s;
        s.triplet = parse_triplet(line.substr(0, at));
        s.approx_center_nm = std::stod(line.substr(at + 1));
        seeds.push_back(s);
    }
    if (seeds.empty()) throw ValidationError("seeds file '" + path + "' is empty");
    return seeds;
}

double snap_to_center(double approx_nm, const std::vector<double>& centers, double window_nm) {
    double best = 0.0, dist = window_nm;
    bool found = false;
    for (double c : centers) {
        const double d = std::abs(c - approx_nm);
        if (d <= dist) {
            dist = d;
            best = c;
            found = true;
        }
    }
    if (!found)
        throw ValidationError("no detected band center within " + format_double(window_nm) +
                              " nm of seed position " + format_double(approx_nm) + " nm");
    return best;
}

int cmd_identify(const std::string& config_path, const std::string& scans_dir,
                 const std::string& candidates_path, const std::string& anchor_s,
                 const std::string& seeds_path, double min_prominence, double seed_window_nm,
                 bool allow_flagged, const std::string& report_path,
                 const std::string& corrections_out) {
    const ProjectConfig cfg = ProjectConfig::load(config_path);
    const Triplet anchor = anchor_s.empty() ? cfg.anchor : parse_triplet(anchor_s);

    // gather centers from every scan in the directory
    std::vector<std::string> scan_files;
    if (!fs::is_directory(scans_dir))
        throw ValidationError("scans directory '" + scans_dir + "' does not exist");
    for (const auto& entry : fs::directory_iterator(scans_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            scan_files.push_back(entry.path().string());
    std::sort(scan_files.begin(), scan_files.end());
    if (scan_files.empty())
        throw ValidationError("scans directory '" + scans_dir + "' holds no .csv scans");

    std::vector<double> centers;
    for (const auto& f : scan_files) {
        const auto c = detect_band_centers(read_scan_file(f), min_prominence);
        centers.insert(centers.end(), c.begin(), c.end());
    }
    std::sort(centers.begin(), centers.end());
    // merge duplicates seen in several scans
    std::vector<double> merged;
    for (double c : centers) {
        if (!merged.empty() && c - merged.back() < 0.05)
            merged.back() = 0.5 * (merged.back() + c);
        else
            merged.push_back(c);
    }

    const auto candidates = read_triplets_file(candidates_path);

    // gauge: the anchor's 00 modes are pinned, the grating period comes
    // from the anchor's measured center
    GeometricCorrections corrections = cfg.gauge_corrections();
    ModelIndexProvider gauge_provider(cfg.materials, cfg.mapping, corrections);
    std::vector<Seed> seeds;
    if (!seeds_path.empty()) seeds = read_seeds_file(seeds_path);

    double anchor_center = 0.0;
    bool have_anchor_center = false;
    for (const auto& s : seeds)
        if (s.triplet == anchor) {
            anchor_center = snap_to_center(s.approx_center_nm, merged, seed_window_nm);
            have_anchor_center = true;
        }
    if (!have_anchor_center) {
        if (merged.empty()) throw ValidationError("no band centers detected in any scan");
        // fall back to the strongest convention: the anchor band is the
        // brightest one, which detection orders first by wavelength; use
        // the center closest to the model prediction instead
        const double predicted =
            degenerate_wavelength(gauge_provider, anchor, cfg.waveguide.poling_period_um);
        anchor_center = snap_to_center(predicted, merged, 5.0);
    }
    const double poling_period = fit_poling_period(gauge_provider, anchor, anchor_center);

    // each further seed introduces at most one unknown correction
    for (const auto& s : seeds) {
        if (s.triplet == anchor) continue;
        const double center = snap_to_center(s.approx_center_nm, merged, seed_window_nm);
        std::vector<ModeLabel> unknown;
        for (const ModeLabel& l : {s.triplet.v, s.triplet.h, s.triplet.s})
            if (!corrections.has(l)) unknown.push_back(l);
        if (unknown.empty()) continue; // fully determined; assignment will verify it
        if (unknown.size() > 1) {
            std::string names;
            for (const auto& l : unknown) names += " " + l.str();
            throw ContractError("seed band " + s.triplet.str() +
                                " introduces more than one unknown correction:" + names +
                                "; order seeds so each adds at most one");
        }
        const double dn = solve_band_correction(s.triplet, unknown.front(), center, corrections,
                                                cfg.materials, cfg.mapping, poling_period);
        corrections.set(unknown.front(), dn);
    }
    if (!merged.empty()) {
        corrections.window_min_nm = merged.front();
        corrections.window_max_nm = merged.back();
    }

    ModelIndexProvider provider(cfg.materials, cfg.mapping, corrections);
    const AssignmentReport report =
        assign_triplets(merged, candidates, provider, poling_period);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!report_path.empty()) {
        file = open_out(report_path);
        out = &file;
    }
    *out << "# gauge: anchor " << anchor.str() << " at " << format_double(anchor_center)
         << " nm, poling period " << format_double(poling_period) << " um\n";
    write_assignment_report(report, *out);
    if (!corrections_out.empty()) {
        auto cf = open_out(corrections_out);
        save_corrections(corrections, cf);
    }
    std::cout << "assigned " << report.assignments.size() << " bands, max residual "
              << format_double(report.max_residual_nm) << " nm\n";
    if (report.any_flagged && !allow_flagged) {
        std::cerr << "error: assignments exceed the 0.2 nm consistency level "
                     "(rerun with --allow-flagged to accept)\n";
        return kExitFlagged;
    }
    return kExitOk;
}

int cmd_overlap_table(const std::string& config_path, double lambda_nm,
                      const std::string& triplets_path, int count_vh, int count_s,
                      const std::string& out_path) {
    const ProjectConfig cfg = ProjectConfig::load(config_path);
    const double lambda_s_nm = sum_frequency_wavelength_nm(lambda_nm, lambda_nm);

    std::map<ModeLabel, ModeField> fields;
    auto solve_into = [&](Pol pol, double lam, int count) {
        const IndexGrid grid =
            index_profile(cfg.waveguide, cfg.materials, cfg.mapping.axis_for(pol), lam);
        auto result = solve_modes(grid, pol, count, orientation_for(cfg, pol));
        for (auto& m : result.modes) fields.emplace(m.label, std::move(m));
    };
    solve_into(Pol::V, lambda_nm, count_vh);
    solve_into(Pol::H, lambda_nm, count_vh);
    solve_into(Pol::S, lambda_s_nm, count_s);

    std::vector<Triplet> triplets;
    if (!triplets_path.empty()) {
        triplets = read_triplets_file(triplets_path);
    } else {
        for (const auto& [lv, fv] : fields) {
            if (lv.pol != Pol::V) continue;
            for (const auto& [lh, fh] : fields) {
                if (lh.pol != Pol::H) continue;
                for (const auto& [ls, fsld] : fields) {
                    if (ls.pol != Pol::S) continue;
                    triplets.push_back(Triplet{lv, lh, ls});
                }
            }
        }
    }

    const auto provider = make_provider(cfg);
    // drop combinations with no degenerate root in the default window
    std::vector<Triplet> usable;
    for (const auto& t : triplets) {
        if (!fields.count(t.v) || !fields.count(t.h) || !fields.count(t.s)) {
            std::cerr << "skipping " << t.str() << ": mode not among solved fields\n";
            continue;
        }
        try {
            degenerate_wavelength(*provider, t, cfg.waveguide.poling_period_um);
            usable.push_back(t);
        } catch (const Error& e) {
            std::cerr << "skipping " << t.str() << ": " << e.what() << '\n';
        }
    }

    const auto rows = efficiency_table(
        usable, [&](const ModeLabel& l) -> const ModeField& { return fields.at(l); },
        *provider, cfg.waveguide.poling_period_um);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
    }
    *out << "# schema_version 1\n";
    *out << "triplet,degenerate_wavelength_nm,calculated_eff,measured_eff\n";
    for (const auto& r : rows)
        *out << r.triplet.str() << ',' << format_double(r.degenerate_nm) << ','
             << format_double(r.efficiency) << ','
             << (r.measured ? format_double(*r.measured) : "") << '\n';
    return kExitOk;
}

int cmd_jsi(const std::string& config_path, const std::string& triplet_s, double pump_center,
            double pump_fwhm, const std::string& range_v_s, const std::string& range_h_s,
            double efficiency, const std::string& out_path) {
    const ProjectConfig cfg = ProjectConfig::load(config_path);
    const Triplet triplet = parse_triplet(triplet_s);
    const auto provider = make_provider(cfg);
    PumpSpec pump;
    pump.center_nm = pump_center;
    pump.fwhm_nm = pump_fwhm;
    const BandMap grid = jsi(*provider, triplet, cfg.waveguide.poling_period_um,
                             cfg.waveguide.length_mm, pump, parse_range(range_v_s),
                             parse_range(range_h_s), efficiency);
    auto out = open_out(out_path);
    write_band_map_csv(grid, out);
    auto meta = open_out(out_path + ".meta.json");
    write_band_map_metadata(grid, meta);
    std::cout << "jsi " << triplet.str() << " -> " << out_path << '\n';
    return kExitOk;
}

int cmd_separation(const std::string& config_path, const std::string& triplets_path,
                   double guard_nm, const std::string& out_path) {
    const ProjectConfig cfg = ProjectConfig::load(config_path);
    const auto triplets = read_triplets_file(triplets_path);
    const auto provider = make_provider(cfg);
    const auto report = band_separation_report(*provider, triplets,
                                               cfg.waveguide.poling_period_um,
                                               cfg.waveguide.length_mm, guard_nm);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file = open_out(out_path);
        out = &file;
    }
    write_band_separation_report(report, *out);
    return kExitOk;
}

int cmd_render_profile(const std::string& config_path, double lambda_nm,
                       const std::string& pol_s, const std::string& out_path) {
    const ProjectConfig cfg = ProjectConfig::load(config_path);
    const Pol pol = parse_pol(pol_s);
    const IndexGrid grid =
        index_profile(cfg.waveguide, cfg.materials, cfg.mapping.axis_for(pol), lambda_nm);
    auto out = open_out(out_path);
    render_profile(grid, out);
    std::cout << "profile " << grid.nx << " x " << grid.ny << " nodes -> " << out_path << '\n';
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"modemix: multimode quasi-phase-matched three-wave mixing toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_path, pol_s = "V", triplet_s, range_v_s, range_h_s, range_s;
    std::string scan_path, scans_dir, candidates_path, seeds_path, anchor_s, corrections_out;
    std::string triplets_path;
    double lambda_nm = 800.0, min_prominence = 0.05, blur_fwhm = 0.0;
    double pump_center = 399.8, pump_fwhm = 1.0, efficiency = 1.0, guard_nm = 0.5;
    double seed_window_nm = 0.3;
    int count = 4, count_vh = 3, count_s = 8;
    bool allow_flagged = false;

    auto* solve = app.add_subcommand("solve-modes", "solve guided modes of the configured guide");
    solve->add_option("--config", config_path, "configuration document")->required();
    solve->add_option("--wavelength", lambda_nm, "vacuum wavelength, nm")->required();
    solve->add_option("--pol", pol_s, "polarization tag V|H|S");
    solve->add_option("--count", count, "number of modes requested");
    solve->add_option("--out", out_path, "output directory for mode exports");

    auto* bmap = app.add_subcommand("band-map", "2D sum-frequency intensity map for a triplet");
    bmap->add_option("--config", config_path)->required();
    bmap->add_option("--triplet", triplet_s, "e.g. 00V+00H>00S")->required();
    bmap->add_option("--range-v", range_v_s, "start:stop[:step] nm")->required();
    bmap->add_option("--range-h", range_h_s, "start:stop[:step] nm")->required();
    bmap->add_option("--blur-fwhm", blur_fwhm, "optional Gaussian smear FWHM, nm");
    bmap->add_option("--out", out_path, "output CSV path")->required();

    auto* dscan = app.add_subcommand("degenerate-scan", "1D cross section at equal wavelengths");
    dscan->add_option("--config", config_path)->required();
    dscan->add_option("--triplet", triplet_s)->required();
    dscan->add_option("--range", range_s, "start:stop[:step] nm")->required();
    dscan->add_option("--out", out_path)->required();

    auto* centers = app.add_subcommand("band-centers", "detect band centers in a measured scan");
    centers->add_option("--scan", scan_path, "scan CSV (lambda_nm,intensity)")->required();
    centers->add_option("--min-prominence", min_prominence, "fraction of global max");
    centers->add_option("--out", out_path, "output CSV (default stdout)");

    auto* ident = app.add_subcommand("identify", "assign triplets to measured band centers");
    ident->add_option("--config", config_path)->required();
    ident->add_option("--scans", scans_dir, "directory of scan CSV files")->required();
    ident->add_option("--candidates", candidates_path, "candidate triplets, one per line")
        ->required();
    ident->add_option("--anchor", anchor_s, "gauge anchor triplet (default from config)");
    ident->add_option("--seeds", seeds_path, "seed bands 'TRIPLET @ center_nm', one per line");
    ident->add_option("--min-prominence", min_prominence);
    ident->add_option("--seed-window", seed_window_nm, "seed snapping window, nm");
    ident->add_flag("--allow-flagged", allow_flagged, "exit 0 even with residuals > 0.2 nm");
    ident->add_option("--out", out_path, "report path (default stdout)");
    ident->add_option("--corrections-out", corrections_out, "fitted corrections JSON");

    auto* table = app.add_subcommand("overlap-table", "relative squared-overlap table");
    table->add_option("--config", config_path)->required();
    table->add_option("--wavelength", lambda_nm, "degenerate fundamental wavelength, nm");
    table->add_option("--triplets", triplets_path, "triplet list (default: all solved combos)");
    table->add_option("--count-vh", count_vh, "modes per fundamental polarization");
    table->add_option("--count-s", count_s, "sum-frequency modes");
    table->add_option("--out", out_path, "output CSV (default stdout)");

    auto* jsig = app.add_subcommand("jsi", "joint spectral intensity grid");
    jsig->add_option("--config", config_path)->required();
    jsig->add_option("--triplet", triplet_s)->required();
    jsig->add_option("--pump-center", pump_center, "pump center wavelength, nm");
    jsig->add_option("--pump-fwhm", pump_fwhm, "pump intensity FWHM, nm");
    jsig->add_option("--range-v", range_v_s)->required();
    jsig->add_option("--range-h", range_h_s)->required();
    jsig->add_option("--efficiency", efficiency, "relative triplet efficiency factor");
    jsig->add_option("--out", out_path)->required();

    auto* sep = app.add_subcommand("separation", "band separation / isolation report");
    sep->add_option("--config", config_path)->required();
    sep->add_option("--triplets", triplets_path, "triplet list")->required();
    sep->add_option("--guard", guard_nm, "isolation guard, nm");
    sep->add_option("--out", out_path, "report path (default stdout)");

    auto* prof = app.add_subcommand("render-profile", "dump the index profile as CSV");
    prof->add_option("--config", config_path)->required();
    prof->add_option("--wavelength", lambda_nm)->required();
    prof->add_option("--pol", pol_s);
    prof->add_option("--out", out_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*solve) return cmd_solve_modes(config_path, lambda_nm, pol_s, count, out_path);
        if (*bmap)
            return cmd_band_map(config_path, triplet_s, range_v_s, range_h_s, blur_fwhm,
                                out_path);
        if (*dscan) return cmd_degenerate_scan(config_path, triplet_s, range_s, out_path);
        if (*centers) return cmd_band_centers(scan_path, min_prominence, out_path);
        if (*ident)
            return cmd_identify(config_path, scans_dir, candidates_path, anchor_s, seeds_path,
                                min_prominence, seed_window_nm, allow_flagged, out_path,
                                corrections_out);
        if (*table)
            return cmd_overlap_table(config_path, lambda_nm, triplets_path, count_vh, count_s,
                                     out_path);
        if (*jsig)
            return cmd_jsi(config_path, triplet_s, pump_center, pump_fwhm, range_v_s, range_h_s,
                           efficiency, out_path);
        if (*sep) return cmd_separation(config_path, triplets_path, guard_nm, out_path);
        if (*prof) return cmd_render_profile(config_path, lambda_nm, pol_s, out_path);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const LookupError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const SignError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const Error& e) { // solver, tracking, root-find, normalization
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
