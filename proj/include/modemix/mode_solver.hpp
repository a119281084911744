#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "modemix/waveguide.hpp"

namespace modemix {

// Transverse mode label: i counts field nodes along x (parallel to the top
// surface), j along y (perpendicular to it), plus the polarization tag.
struct ModeLabel {
    int i = 0;
    int j = 0;
    Pol pol = Pol::V;

    bool operator==(const ModeLabel&) const = default;
    bool operator<(const ModeLabel& o) const {
        if (pol != o.pol) return static_cast<int>(pol) < static_cast<int>(o.pol);
        if (i != o.i) return i < o.i;
        return j < o.j;
    }
    std::string str() const {
        return std::to_string(i) + std::to_string(j) + "_" + to_string(pol);
    }
};

// Parses "02H", "02_H", "10V", ...
ModeLabel parse_mode_label(const std::string& s);

// Which lab direction the dominant transverse E component points along.
enum class FieldOrientation { Vertical, Horizontal };

// Default lab orientation per polarization tag: V vertical, H horizontal,
// S horizontal (S shares the H crystal axis in the default mapping); use
// AxisMapping::s_vertical() to override for exotic mappings.
FieldOrientation default_orientation(Pol pol);

// One solved guided mode. `dominant` and `minor` are the transverse E
// components on the source grid (row-major, y over rows, matching
// IndexGrid): for a vertical mode dominant = Ey, minor = Ex; swapped for
// a horizontal one. Fields are real, sign convention: positive at the
// peak of |dominant|.
struct ModeField {
    ModeLabel label;
    double lambda_nm = 0.0;
    double n_eff = 0.0;

    double x0_um = 0.0, y0_um = 0.0, hx_um = 0.0, hy_um = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> dominant;
    std::vector<double> minor;

    bool normalized = false;
    double dominant_energy_fraction = 0.0; // < 0.9 flags a poorly guided mode
    double residual = 0.0;                 // ||A v - beta^2 v|| / ||v||

    double dom(int ix, int iy) const { return dominant[static_cast<size_t>(iy) * nx + ix]; }
    double min_c(int ix, int iy) const { return minor[static_cast<size_t>(iy) * nx + ix]; }
    bool same_grid(const ModeField& o) const {
        return nx == o.nx && ny == o.ny && x0_um == o.x0_um && y0_um == o.y0_um &&
               hx_um == o.hx_um && hy_um == o.hy_um;
    }
    // Discrete integral of dominant_a*dominant_b + minor_a*minor_b.
    double inner_product(const ModeField& o) const;
};

struct SolveOptions {
    double residual_tol = 1e-9; // on ||A v - beta^2 v||/||v||, rad^2/um^2
    int krylov_dim = 0;         // 0: chosen from count
    int max_restarts = 3;
    std::uint32_t seed = 0xC0FFEE; // start-vector seed; fixed for determinism
};

struct ModeSolveResult {
    std::vector<ModeField> modes; // sorted by decreasing n_eff
    std::string diagnostic;      // non-empty when no guided mode was found
    int arnoldi_dim = 0;
    double worst_residual = 0.0;
};

// Solves the coupled two-component (Ex, Ey) finite-difference eigenproblem
// on the grid, zero-field outer boundary, eigenpairs located by
// shift-invert Arnoldi targeting just below (max n)^2 k0^2. Superstrate
// rows of exact air fold into the zero-field boundary (the guided field's
// evanescent tail in air is far below one grid step). Returns up to
// `count` guided modes (n_eff above the grid's cladding index) on the
// branch matching `orientation`, normalized and classified.
ModeSolveResult solve_modes(const IndexGrid& grid, Pol pol, int count,
                            FieldOrientation orientation, const SolveOptions& options = {});

inline ModeSolveResult solve_modes(const IndexGrid& grid, Pol pol, int count) {
    return solve_modes(grid, pol, count, default_orientation(pol));
}

// Node counting along one horizontal and one vertical cut through the
// dominant component's marginal-energy peaks (the intensity centroid lies
// on a nodal line for odd-order modes); sign changes counted only between
// samples above 1e-3 of the peak. Throws ContractError on an all-zero field.
ModeLabel classify_mode(const ModeField& mode, Pol pol);

// |dominant|^2 + |minor|^2 per node, peak-normalized to 1.
std::vector<double> mode_intensity_image(const ModeField& mode);

// Writers for the exported artifacts (CSV grid and 8-bit PGM preview).
void write_intensity_csv(const ModeField& mode, std::ostream& out);
void write_intensity_pgm(const ModeField& mode, std::ostream& out);

} // namespace modemix
