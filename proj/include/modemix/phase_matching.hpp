#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modemix/dispersion.hpp"

namespace modemix {

// One interacting mode combination ij_V + i'j'_H -> kl_S.
struct Triplet {
    ModeLabel v{0, 0, Pol::V};
    ModeLabel h{0, 0, Pol::H};
    ModeLabel s{0, 0, Pol::S};

    bool operator==(const Triplet&) const = default;
    bool operator<(const Triplet& o) const;
    std::string str() const { return v.str() + "+" + h.str() + ">" + s.str(); }
};

// Parses the label grammar "ijV+i'j'H>klS", e.g. "00V+00H>00S" (also
// accepts "->" for the arrow and underscores inside labels).
Triplet parse_triplet(const std::string& s);

// Phase mismatch of the QPM condition in vacuum-wavelength form, rad/um:
//   dbeta = 2 pi [ n_S/l_S - n_V/l_V - n_H/l_H ] - 2 pi / Lambda
// with l_S from energy conservation and wavelengths in um. dbeta = 0 is
// the phase matching condition; the grating term enters with the minus
// sign of the first-order QPM equation.
double phase_mismatch(const IndexProvider& provider, const Triplet& triplet,
                      double lambda_v_nm, double lambda_h_nm, double poling_period_um);

struct DegenerateSearch {
    double lambda_lo_nm = 760.0;
    double lambda_hi_nm = 860.0;
    int scan_points = 501;
    double dbeta_tol = 1e-12; // rad/um
};

struct DegenerateResult {
    std::vector<double> roots_nm;  // ordered ascending
    bool everywhere = false;       // dbeta vanished over the whole window
    double dbeta_lo = 0.0;         // endpoint values, reported on failure
    double dbeta_hi = 0.0;
};

// Roots of dbeta(lambda, lambda) = 0 on the search window, bracketed
// bisection refined to |dbeta| <= tol. Throws NoRootError (with the
// endpoint mismatch values) when no sign change exists.
DegenerateResult degenerate_wavelengths(const IndexProvider& provider, const Triplet& triplet,
                                        double poling_period_um,
                                        const DegenerateSearch& search = {});

// First (shortest-wavelength) degenerate root; convenience wrapper.
double degenerate_wavelength(const IndexProvider& provider, const Triplet& triplet,
                             double poling_period_um, const DegenerateSearch& search = {});

// Exact inversion of the phase matching condition for the grating period
// at a degenerate target wavelength. Throws SignError when the index
// bracket is <= 0 (first-order QPM sign convention violated).
double fit_poling_period(const IndexProvider& provider, const Triplet& triplet,
                         double lambda_degenerate_nm);

struct WavelengthRange {
    double start_nm = 792.0;
    double stop_nm = 815.0;
    double step_nm = 0.2;

    std::vector<double> grid() const;
};

// Relative SF intensity sinc^2(dbeta L / 2) over a wavelength rectangle.
// Cells whose evaluation leaves a validity window are masked (NaN), never
// aborting the rest of the map.
struct BandMap {
    std::vector<double> lambda_v_nm;
    std::vector<double> lambda_h_nm;
    std::vector<double> intensity; // row-major: [iv * nh + ih]
    Triplet triplet;
    double poling_period_um = 0.0;
    double length_mm = 0.0;

    double at(int iv, int ih) const { return intensity[static_cast<size_t>(iv) * lambda_h_nm.size() + ih]; }
};

BandMap band_map(const IndexProvider& provider, const Triplet& triplet,
                 double poling_period_um, double length_mm, const WavelengthRange& range_v,
                 const WavelengthRange& range_h);

// Degenerate 1D cross section: intensity(lambda, lambda) over one range.
std::vector<std::pair<double, double>> degenerate_scan(const IndexProvider& provider,
                                                       const Triplet& triplet,
                                                       double poling_period_um, double length_mm,
                                                       const WavelengthRange& range);

// Optional smearing of a map with a Gaussian of the given intensity FWHM
// (nm) along both wavelength axes; models finite filter bandwidth. Off by
// default everywhere.
void gaussian_blur(BandMap& map, double fwhm_nm);

// Implicit-function slope d(lambda_H)/d(lambda_V) of the band through an
// on-band point (|dbeta| <= 1e-6 rad/um required), central differences
// with 0.01 nm steps. Throws SolverError with a vertical-band diagnostic
// when d(dbeta)/d(lambda_H) vanishes.
double band_slope(const IndexProvider& provider, const Triplet& triplet,
                  double poling_period_um, double lambda_v_nm, double lambda_h_nm);

// Numeric FWHM (nm) of the degenerate cross-section band around a center.
double degenerate_band_fwhm(const IndexProvider& provider, const Triplet& triplet,
                            double poling_period_um, double length_mm, double center_nm);

} // namespace modemix
