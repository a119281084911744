#pragma once

#include <optional>
#include <string>
#include <vector>

#include "modemix/phase_matching.hpp"

namespace modemix {

// Gaussian pump spectrum for the down-conversion analysis.
struct PumpSpec {
    double center_nm = 399.8;
    double fwhm_nm = 1.0; // intensity FWHM

    void validate() const;
};

// Spectral weight of a fundamental wavelength pair under the pump,
// Gaussian in the sum-frequency wavelength fixed by energy conservation:
// exp(-4 ln2 (lambda_S - lambda_p)^2 / FWHM^2).
double pump_envelope(const PumpSpec& pump, double lambda_v_nm, double lambda_h_nm);

// Joint spectral intensity grid: relative_efficiency * sinc^2(dbeta L/2) *
// pump envelope, masked cells propagated as in band_map.
BandMap jsi(const IndexProvider& provider, const Triplet& triplet, double poling_period_um,
            double length_mm, const PumpSpec& pump, const WavelengthRange& range_v,
            const WavelengthRange& range_h, double relative_efficiency = 1.0);

struct BandSeparationRow {
    Triplet triplet;
    double center_nm = 0.0;
    double fwhm_nm = 0.0;
    bool isolated = false;            // from every other listed band
    double min_separation_nm = 0.0;   // 0 when alone
    std::string note;                  // root-find failure diagnostics
    bool valid = true;
};

struct BandSeparationReport {
    std::vector<BandSeparationRow> rows;          // ordered by center
    std::vector<std::vector<double>> separations; // |c_i - c_j| for valid rows
    double guard_nm = 0.5;
    double length_mm = 0.0;
};

// Degenerate centers, pairwise separations and band widths for a family of
// triplets (typically all candidates pumped through one S mode). A band is
// isolated from another when their separation exceeds the half-width sum
// plus the guard.
BandSeparationReport band_separation_report(const IndexProvider& provider,
                                            const std::vector<Triplet>& triplets,
                                            double poling_period_um, double length_mm,
                                            double guard_nm = 0.5,
                                            const DegenerateSearch& search = {});

void write_band_separation_report(const BandSeparationReport& report, std::ostream& out);

} // namespace modemix
