#pragma once

#include <map>
#include <optional>
#include <string>

#include "modemix/dispersion.hpp"
#include "modemix/phase_matching.hpp"
#include "modemix/waveguide.hpp"

namespace modemix {

// Flat key = value document with [section] headers and '#' comments.
// Keys are exposed as "section.key". schema_version is required.
class KeyValueDocument {
public:
    static KeyValueDocument parse(std::istream& in, const std::string& origin = "<stream>");
    static KeyValueDocument parse_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key) const;
    int get_int(const std::string& key, int fallback) const;

    const std::map<std::string, std::string>& values() const { return values_; }
    const std::string& origin() const { return origin_; }

private:
    std::map<std::string, std::string> values_;
    std::string origin_;
};

// The one configuration document shared by all CLI commands: material data,
// axis mapping, waveguide geometry and the gauge convention.
struct ProjectConfig {
    SellmeierModel materials = SellmeierModel::constant(1.5);
    AxisMapping mapping;
    WaveguideSpec waveguide;

    Triplet anchor;                       // gauge anchor band
    double delta_n_ref_v = 0.0;           // gauge references for the 00 modes
    double delta_n_ref_h = 0.0;
    double delta_n_ref_s = 0.0;

    std::optional<GeometricCorrections> corrections; // from corrections.file
    std::string config_dir;                          // for relative paths
    std::string box_warning;                          // non-fatal geometry warning

    // Gauge-fixed starting corrections: the three 00 modes pinned to the
    // reference values.
    GeometricCorrections gauge_corrections() const;

    static ProjectConfig load(const std::string& path);
};

// Corrections exchange format (versioned JSON document).
void save_corrections(const GeometricCorrections& corrections, std::ostream& out);
GeometricCorrections load_corrections(std::istream& in);
GeometricCorrections load_corrections_file(const std::string& path);

// Mode export: label, wavelength, n_eff, grid geometry and both field
// component arrays (row-major, y over rows).
void write_mode_json(const ModeField& mode, std::ostream& out);

// Band map / JSI export: CSV plus sidecar metadata document.
void write_band_map_csv(const BandMap& map, std::ostream& out);
void write_band_map_metadata(const BandMap& map, std::ostream& out);

} // namespace modemix
