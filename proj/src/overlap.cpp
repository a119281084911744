#include "modemix/overlap.hpp"

#include <algorithm>
#include <cmath>

namespace modemix {

double overlap_integral(const ModeField& mode_v, const ModeField& mode_h,
                        const ModeField& mode_s) {
    const ModeField* modes[3] = {&mode_v, &mode_h, &mode_s};
    for (const ModeField* m : modes)
        if (!m->normalized)
            throw ContractError("overlap_integral: mode " + m->label.str() +
                                " is not normalized");
    if (!mode_v.same_grid(mode_h) || !mode_v.same_grid(mode_s))
        throw ContractError(
            "overlap_integral: modes live on different grids; resampling required");

    const int nx = mode_v.nx, ny = mode_v.ny;
    double acc = 0.0;
    for (int iy = 0; iy < ny; ++iy) {
        const double wy = (iy == 0 || iy == ny - 1) ? 0.5 : 1.0;
        for (int ix = 0; ix < nx; ++ix) {
            const double wx = (ix == 0 || ix == nx - 1) ? 0.5 : 1.0;
            acc += wx * wy * mode_v.dom(ix, iy) * mode_h.dom(ix, iy) * mode_s.dom(ix, iy);
        }
    }
    return acc * mode_v.hx_um * mode_v.hy_um;
}

std::vector<EfficiencyRow> efficiency_table(
    const std::vector<Triplet>& triplets,
    const std::function<const ModeField&(const ModeLabel&)>& fields,
    const IndexProvider& provider, double poling_period_um,
    const std::map<Triplet, double>* measured) {
    const Triplet reference; // 00V+00H>00S
    if (std::find(triplets.begin(), triplets.end(), reference) == triplets.end())
        throw ContractError("efficiency_table: reference triplet " + reference.str() +
                            " must be present");

    std::vector<EfficiencyRow> rows;
    rows.reserve(triplets.size());
    double ref_sq = 0.0;
    for (const Triplet& t : triplets) {
        EfficiencyRow row;
        row.triplet = t;
        row.overlap = overlap_integral(fields(t.v), fields(t.h), fields(t.s));
        row.degenerate_nm = degenerate_wavelength(provider, t, poling_period_um);
        if (measured) {
            const auto it = measured->find(t);
            if (it != measured->end()) row.measured = it->second;
        }
        if (t == reference) ref_sq = row.overlap * row.overlap;
        rows.push_back(std::move(row));
    }
    if (!(ref_sq > 1e-24)) // |O_ref| below 1e-12 is zero at working precision
        throw NormalizationError("efficiency_table: reference overlap is zero");
    for (auto& row : rows) {
        const double sq = row.overlap * row.overlap;
        row.efficiency = 100.0 * (sq / ref_sq); // reference row lands on 100 exactly
    }
    std::sort(rows.begin(), rows.end(), [](const EfficiencyRow& a, const EfficiencyRow& b) {
        return a.degenerate_nm < b.degenerate_nm;
    });
    return rows;
}

} // namespace modemix
