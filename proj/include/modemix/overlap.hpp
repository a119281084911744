#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "modemix/phase_matching.hpp"

namespace modemix {

// Trapezoid-rule integral of u_V * u_H * u_S over the common grid, using
// each mode's dominant transverse component (fields real, peak-positive
// convention applied at normalization). All three modes must be
// normalized and share the grid geometry.
double overlap_integral(const ModeField& mode_v, const ModeField& mode_h,
                        const ModeField& mode_s);

struct EfficiencyRow {
    Triplet triplet;
    double degenerate_nm = 0.0;
    double overlap = 0.0;        // signed overlap integral
    double efficiency = 0.0;     // 100 * |O|^2 / |O_ref|^2
    std::optional<double> measured; // optional experimental slot
};

// Relative squared-overlap table normalized to 100 for the fundamental
// triplet 00V+00H>00S and ordered by the degenerate wavelength of each
// triplet. `fields` resolves a label to a solved mode at that label's
// interaction wavelength. Measured values, when provided, ride along.
std::vector<EfficiencyRow> efficiency_table(
    const std::vector<Triplet>& triplets,
    const std::function<const ModeField&(const ModeLabel&)>& fields,
    const IndexProvider& provider, double poling_period_um,
    const std::map<Triplet, double>* measured = nullptr);

} // namespace modemix
