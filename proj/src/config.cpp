#include "modemix/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "modemix/io.hpp"

namespace modemix {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::string dirname_of(const std::string& path) {
    const auto slash = path.find_last_of('/');
    return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

} // namespace

KeyValueDocument KeyValueDocument::parse(std::istream& in, const std::string& origin) {
    KeyValueDocument doc;
    doc.origin_ = origin;
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ValidationError(origin + ":" + std::to_string(lineno) +
                                      ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(origin + ":" + std::to_string(lineno) +
                                  ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": empty key");
        const std::string full = section.empty() ? key : section + "." + key;
        if (doc.values_.count(full))
            throw ValidationError(origin + ":" + std::to_string(lineno) + ": duplicate key '" +
                                  full + "'");
        doc.values_[full] = value;
    }
    return doc;
}

KeyValueDocument KeyValueDocument::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    return parse(in, path);
}

std::string KeyValueDocument::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end())
        throw ValidationError(origin_ + ": missing required key '" + key + "'");
    return it->second;
}

std::string KeyValueDocument::get_string(const std::string& key,
                                         const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueDocument::get_double(const std::string& key) const {
    const std::string s = get_string(key);
    try {
        size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ValidationError(origin_ + ": key '" + key + "' is not a number: '" + s + "'");
    }
}

double KeyValueDocument::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

int KeyValueDocument::get_int(const std::string& key) const {
    const double v = get_double(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ValidationError(origin_ + ": key '" + key + "' is not an integer");
    return i;
}

int KeyValueDocument::get_int(const std::string& key, int fallback) const {
    return has(key) ? get_int(key) : fallback;
}

GeometricCorrections ProjectConfig::gauge_corrections() const {
    GeometricCorrections c = corrections.value_or(GeometricCorrections{});
    if (!c.has(anchor.v)) c.set(anchor.v, delta_n_ref_v);
    if (!c.has(anchor.h)) c.set(anchor.h, delta_n_ref_h);
    if (!c.has(anchor.s)) c.set(anchor.s, delta_n_ref_s);
    return c;
}

ProjectConfig ProjectConfig::load(const std::string& path) {
    const KeyValueDocument doc = KeyValueDocument::parse_file(path);

    static const char* known[] = {
        "schema_version",
        "material.sellmeier_file", "material.axis_v", "material.axis_h", "material.axis_s",
        "waveguide.width_um", "waveguide.depth_um",
        "waveguide.delta_n_x", "waveguide.delta_n_y", "waveguide.delta_n_z",
        "waveguide.lateral_profile", "waveguide.edge_scale_um",
        "waveguide.poling_period_um", "waveguide.length_mm",
        "waveguide.box_halfwidth_um", "waveguide.box_depth_um", "waveguide.air_margin_um",
        "waveguide.grid_step_x_um", "waveguide.grid_step_y_um",
        "gauge.anchor_triplet", "gauge.delta_n_ref_v", "gauge.delta_n_ref_h",
        "gauge.delta_n_ref_s", "corrections.file",
    };
    for (const auto& [key, value] : doc.values()) {
        if (std::find_if(std::begin(known), std::end(known),
                         [&](const char* k) { return key == k; }) == std::end(known))
            throw ValidationError(path + ": unknown configuration key '" + key + "'");
    }

    const int version = doc.get_int("schema_version");
    if (version != 1)
        throw ValidationError(path + ": unsupported schema_version " + std::to_string(version));

    ProjectConfig cfg;
    cfg.config_dir = dirname_of(path);
    auto resolve = [&](const std::string& p) {
        return (p.empty() || p.front() == '/') ? p : cfg.config_dir + "/" + p;
    };

    cfg.materials = SellmeierModel::from_file(resolve(doc.get_string("material.sellmeier_file")));
    cfg.mapping.v = parse_axis(doc.get_string("material.axis_v", "z"));
    cfg.mapping.h = parse_axis(doc.get_string("material.axis_h", "y"));
    cfg.mapping.s = parse_axis(doc.get_string("material.axis_s", "y"));

    WaveguideSpec& wg = cfg.waveguide;
    wg.width_um = doc.get_double("waveguide.width_um", wg.width_um);
    wg.depth_um = doc.get_double("waveguide.depth_um", wg.depth_um);
    wg.delta_n[0] = doc.get_double("waveguide.delta_n_x", wg.delta_n[0]);
    wg.delta_n[1] = doc.get_double("waveguide.delta_n_y", wg.delta_n[1]);
    wg.delta_n[2] = doc.get_double("waveguide.delta_n_z", wg.delta_n[2]);
    const std::string lateral = doc.get_string("waveguide.lateral_profile", "step");
    if (lateral == "step")
        wg.lateral = LateralProfile::Step;
    else if (lateral == "smoothed")
        wg.lateral = LateralProfile::SmoothedStep;
    else
        throw ValidationError(path + ": lateral_profile must be 'step' or 'smoothed'");
    wg.edge_scale_um = doc.get_double("waveguide.edge_scale_um", wg.edge_scale_um);
    wg.poling_period_um = doc.get_double("waveguide.poling_period_um", wg.poling_period_um);
    wg.length_mm = doc.get_double("waveguide.length_mm", wg.length_mm);
    wg.box_halfwidth_um = doc.get_double("waveguide.box_halfwidth_um", wg.box_halfwidth_um);
    wg.box_depth_um = doc.get_double("waveguide.box_depth_um", wg.box_depth_um);
    wg.air_margin_um = doc.get_double("waveguide.air_margin_um", wg.air_margin_um);
    wg.hx_um = doc.get_double("waveguide.grid_step_x_um", wg.hx_um);
    wg.hy_um = doc.get_double("waveguide.grid_step_y_um", wg.hy_um);
    cfg.box_warning = wg.validate();

    cfg.anchor = parse_triplet(doc.get_string("gauge.anchor_triplet", "00V+00H>00S"));
    cfg.delta_n_ref_v = doc.get_double("gauge.delta_n_ref_v", 0.0);
    cfg.delta_n_ref_h = doc.get_double("gauge.delta_n_ref_h", 0.0);
    cfg.delta_n_ref_s = doc.get_double("gauge.delta_n_ref_s", 0.0);

    if (doc.has("corrections.file"))
        cfg.corrections = load_corrections_file(resolve(doc.get_string("corrections.file")));
    return cfg;
}

void save_corrections(const GeometricCorrections& corrections, std::ostream& out) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["window_nm"] = {corrections.window_min_nm, corrections.window_max_nm};
    auto& entries = j["entries"] = nlohmann::ordered_json::array();
    for (const auto& [label, entry] : corrections.entries) {
        nlohmann::ordered_json e;
        e["label"] = label.str();
        e["delta_n"] = entry.delta_n;
        e["residual"] = entry.residual;
        entries.push_back(e);
    }
    out << j.dump(2) << '\n';
}

GeometricCorrections load_corrections(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("corrections document is not valid JSON: ") + e.what());
    }
    if (!j.contains("schema_version") || j["schema_version"] != 1)
        throw ValidationError("corrections document: missing or unsupported schema_version");
    GeometricCorrections c;
    c.window_min_nm = j.at("window_nm").at(0).get<double>();
    c.window_max_nm = j.at("window_nm").at(1).get<double>();
    for (const auto& e : j.at("entries"))
        c.set(parse_mode_label(e.at("label").get<std::string>()), e.at("delta_n").get<double>(),
              e.value("residual", 0.0));
    return c;
}

GeometricCorrections load_corrections_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open corrections file '" + path + "'");
    return load_corrections(in);
}

void write_mode_json(const ModeField& mode, std::ostream& out) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["label"] = mode.label.str();
    j["lambda_nm"] = mode.lambda_nm;
    j["n_eff"] = mode.n_eff;
    j["grid"] = {{"x0_um", mode.x0_um}, {"y0_um", mode.y0_um}, {"hx_um", mode.hx_um},
                 {"hy_um", mode.hy_um}, {"nx", mode.nx},       {"ny", mode.ny}};
    j["ordering"] = "row-major, y over rows: value(ix, iy) = data[iy*nx + ix]";
    j["normalized"] = mode.normalized;
    j["dominant_energy_fraction"] = mode.dominant_energy_fraction;
    j["dominant"] = mode.dominant;
    j["minor"] = mode.minor;
    out << j.dump() << '\n';
}

void write_band_map_csv(const BandMap& map, std::ostream& out) {
    out << "lambda_V_nm,lambda_H_nm,intensity\n";
    for (size_t iv = 0; iv < map.lambda_v_nm.size(); ++iv)
        for (size_t ih = 0; ih < map.lambda_h_nm.size(); ++ih)
            out << format_double(map.lambda_v_nm[iv]) << ',' << format_double(map.lambda_h_nm[ih])
                << ',' << format_double(map.intensity[iv * map.lambda_h_nm.size() + ih]) << '\n';
}

void write_band_map_metadata(const BandMap& map, std::ostream& out) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["triplet"] = map.triplet.str();
    j["poling_period_um"] = map.poling_period_um;
    j["length_mm"] = map.length_mm;
    auto axis = [](const std::vector<double>& g) {
        nlohmann::ordered_json a;
        a["start_nm"] = g.empty() ? 0.0 : g.front();
        a["stop_nm"] = g.empty() ? 0.0 : g.back();
        a["points"] = g.size();
        a["step_nm"] = g.size() > 1 ? g[1] - g[0] : 0.0;
        return a;
    };
    j["lambda_v"] = axis(map.lambda_v_nm);
    j["lambda_h"] = axis(map.lambda_h_nm);
    out << j.dump(2) << '\n';
}

} // namespace modemix
