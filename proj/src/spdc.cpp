#include "modemix/spdc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "modemix/io.hpp"
#include "modemix/units.hpp"

namespace modemix {

void PumpSpec::validate() const {
    if (!(center_nm > 0.0)) throw ValidationError("pump: center wavelength must be > 0");
    if (!(fwhm_nm > 0.0)) throw ValidationError("pump: FWHM must be > 0");
}

double pump_envelope(const PumpSpec& pump, double lambda_v_nm, double lambda_h_nm) {
    pump.validate();
    if (!(lambda_v_nm > 0.0) || !(lambda_h_nm > 0.0))
        throw ValidationError("pump_envelope: wavelengths must be positive");
    const double lambda_s = sum_frequency_wavelength_nm(lambda_v_nm, lambda_h_nm);
    const double d = lambda_s - pump.center_nm;
    return std::exp(-4.0 * std::log(2.0) * d * d / (pump.fwhm_nm * pump.fwhm_nm));
}

BandMap jsi(const IndexProvider& provider, const Triplet& triplet, double poling_period_um,
            double length_mm, const PumpSpec& pump, const WavelengthRange& range_v,
            const WavelengthRange& range_h, double relative_efficiency) {
    pump.validate();
    BandMap map = band_map(provider, triplet, poling_period_um, length_mm, range_v, range_h);
    const size_t nh = map.lambda_h_nm.size();
    for (size_t iv = 0; iv < map.lambda_v_nm.size(); ++iv)
        for (size_t ih = 0; ih < nh; ++ih) {
            double& cell = map.intensity[iv * nh + ih];
            if (std::isnan(cell)) continue;
            cell *= relative_efficiency *
                    pump_envelope(pump, map.lambda_v_nm[iv], map.lambda_h_nm[ih]);
        }
    return map;
}

BandSeparationReport band_separation_report(const IndexProvider& provider,
                                            const std::vector<Triplet>& triplets,
                                            double poling_period_um, double length_mm,
                                            double guard_nm, const DegenerateSearch& search) {
    if (triplets.empty())
        throw ValidationError("band_separation_report: need at least one triplet");
    BandSeparationReport report;
    report.guard_nm = guard_nm;
    report.length_mm = length_mm;

    for (const Triplet& t : triplets) {
        BandSeparationRow row;
        row.triplet = t;
        try {
            row.center_nm = degenerate_wavelength(provider, t, poling_period_um, search);
            row.fwhm_nm =
                degenerate_band_fwhm(provider, t, poling_period_um, length_mm, row.center_nm);
        } catch (const Error& e) {
            row.valid = false;
            row.note = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    std::sort(report.rows.begin(), report.rows.end(),
              [](const BandSeparationRow& a, const BandSeparationRow& b) {
                  if (a.valid != b.valid) return a.valid;
                  return a.center_nm < b.center_nm;
              });

    const size_t n = report.rows.size();
    report.separations.assign(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        auto& ri = report.rows[i];
        if (!ri.valid) continue;
        ri.isolated = true;
        ri.min_separation_nm = std::numeric_limits<double>::infinity();
        bool has_neighbor = false;
        for (size_t j = 0; j < n; ++j) {
            if (j == i || !report.rows[j].valid) continue;
            const auto& rj = report.rows[j];
            const double sep = std::abs(ri.center_nm - rj.center_nm);
            report.separations[i][j] = sep;
            has_neighbor = true;
            ri.min_separation_nm = std::min(ri.min_separation_nm, sep);
            if (!(sep > 0.5 * (ri.fwhm_nm + rj.fwhm_nm) + guard_nm)) ri.isolated = false;
        }
        if (!has_neighbor) {
            ri.min_separation_nm = 0.0; // alone: trivially isolated
            ri.isolated = true;
        }
    }
    return report;
}

void write_band_separation_report(const BandSeparationReport& report, std::ostream& out) {
    out << "# band separation report (schema_version 1, L = "
        << format_double(report.length_mm)
        << " mm, guard = " << format_double(report.guard_nm) << " nm)\n";
    out << "# triplet  center_nm  fwhm_nm  min_separation_nm  isolated\n";
    for (const auto& r : report.rows) {
        if (!r.valid) {
            out << r.triplet.str() << "  (no degenerate root: " << r.note << ")\n";
            continue;
        }
        out << r.triplet.str() << "  " << format_double(r.center_nm) << "  "
            << format_double(r.fwhm_nm) << "  " << format_double(r.min_separation_nm) << "  "
            << (r.isolated ? "yes" : "no") << '\n';
    }
}

} // namespace modemix
