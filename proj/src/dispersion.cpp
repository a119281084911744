#include "modemix/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace modemix {

double GeometricCorrections::delta_n(const ModeLabel& label) const {
    const auto it = entries.find(label);
    if (it == entries.end())
        throw LookupError("no geometric correction for mode label " + label.str());
    return it->second.delta_n;
}

double GeometricCorrections::residual(const ModeLabel& label) const {
    const auto it = entries.find(label);
    if (it == entries.end())
        throw LookupError("no geometric correction for mode label " + label.str());
    return it->second.residual;
}

void GeometricCorrections::set(const ModeLabel& label, double delta_n, double residual) {
    if (!std::isfinite(delta_n))
        throw ValidationError("geometric correction for " + label.str() + " must be finite");
    entries[label] = Entry{delta_n, residual};
}

void GeometricCorrections::merge(const GeometricCorrections& other) {
    for (const auto& [label, entry] : other.entries) entries[label] = entry;
    if (entries.empty()) return;
    if (window_min_nm == 0.0 && window_max_nm == 0.0) {
        window_min_nm = other.window_min_nm;
        window_max_nm = other.window_max_nm;
    } else if (!(other.window_min_nm == 0.0 && other.window_max_nm == 0.0)) {
        window_min_nm = std::min(window_min_nm, other.window_min_nm);
        window_max_nm = std::max(window_max_nm, other.window_max_nm);
    }
}

double ModelIndexProvider::effective_index(const ModeLabel& label, double lambda_nm) const {
    return materials_.index(mapping_.axis_for(label.pol), lambda_nm) +
           corrections_.delta_n(label);
}

NumericIndexProvider::NumericIndexProvider(WaveguideSpec spec, SellmeierModel materials,
                                           AxisMapping mapping, int solve_count)
    : spec_(std::move(spec)), materials_(std::move(materials)), mapping_(mapping),
      solve_count_(solve_count) {}

const std::vector<ModeField>& NumericIndexProvider::modes(Pol pol, double lambda_nm) const {
    const auto key = std::make_pair(static_cast<int>(pol), lambda_nm);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        const IndexGrid grid = index_profile(spec_, materials_, mapping_.axis_for(pol), lambda_nm);
        const FieldOrientation orient = pol == Pol::S
                                            ? (mapping_.s_vertical() ? FieldOrientation::Vertical
                                                                     : FieldOrientation::Horizontal)
                                            : default_orientation(pol);
        auto solved = solve_modes(grid, pol, solve_count_, orient);
        it = cache_.emplace(key, std::move(solved.modes)).first;
    }
    return it->second;
}

double NumericIndexProvider::effective_index(const ModeLabel& label, double lambda_nm) const {
    for (const ModeField& m : modes(label.pol, lambda_nm))
        if (m.label == label) return m.n_eff;
    throw TrackingError("mode " + label.str() + " not found among solved modes at " +
                        std::to_string(lambda_nm) + " nm");
}

GeometricCorrections extract_corrections(const WaveguideSpec& spec,
                                         const SellmeierModel& materials,
                                         const AxisMapping& mapping,
                                         const std::vector<ModeLabel>& labels,
                                         const std::vector<double>& lambda_grid_nm,
                                         int solve_count) {
    if (labels.empty()) throw ValidationError("extract_corrections: no labels requested");
    if (lambda_grid_nm.empty())
        throw ValidationError("extract_corrections: empty wavelength grid");
    const Pol pol = labels.front().pol;
    for (const auto& l : labels)
        if (l.pol != pol)
            throw ValidationError(
                "extract_corrections: all labels must share one polarization per call");

    const CrystalAxis axis = mapping.axis_for(pol);
    const FieldOrientation orient =
        pol == Pol::S ? (mapping.s_vertical() ? FieldOrientation::Vertical
                                              : FieldOrientation::Horizontal)
                      : default_orientation(pol);
    int count = solve_count;
    if (count <= 0) {
        // enough room for every requested label plus a margin of neighbors
        int max_order = 0;
        for (const auto& l : labels) max_order = std::max(max_order, (l.i + 1) * (l.j + 1));
        count = std::max<int>(static_cast<int>(labels.size()) + 4, max_order + 4);
    }

    // per label: n_eff - n_bulk samples over the grid
    std::map<ModeLabel, std::vector<double>> samples;
    std::map<ModeLabel, ModeField> previous; // for overlap tracking

    for (double lambda : lambda_grid_nm) {
        const IndexGrid grid = index_profile(spec, materials, axis, lambda);
        auto solved = solve_modes(grid, pol, count, orient);
        if (solved.modes.empty())
            throw TrackingError("no guided modes at " + std::to_string(lambda) + " nm: " +
                                solved.diagnostic);
        const double n_bulk = materials.index(axis, lambda);

        for (const auto& label : labels) {
            const ModeField* match = nullptr;
            const auto prev_it = previous.find(label);
            if (prev_it != previous.end()) {
                // track by maximal overlap with the previous wavelength's field
                double best = 0.0;
                for (const ModeField& m : solved.modes) {
                    const double ov = std::abs(prev_it->second.inner_product(m));
                    if (ov > best) {
                        best = ov;
                        match = &m;
                    }
                }
                // node counts can flicker near degeneracies; only trust a
                // solid overlap, otherwise fall back to re-classification
                if (best < 0.5) match = nullptr;
            }
            if (!match) {
                for (const ModeField& m : solved.modes)
                    if (m.label == label) {
                        match = &m;
                        break;
                    }
            }
            if (!match)
                throw TrackingError("mode " + label.str() + " lost at " +
                                    std::to_string(lambda) + " nm (cutoff or misclassification)");
            samples[label].push_back(match->n_eff - n_bulk);
            previous[label] = *match;
        }
    }

    GeometricCorrections out;
    out.window_min_nm = *std::min_element(lambda_grid_nm.begin(), lambda_grid_nm.end());
    out.window_max_nm = *std::max_element(lambda_grid_nm.begin(), lambda_grid_nm.end());
    for (const auto& label : labels) {
        const auto& v = samples[label];
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
        double res = 0.0;
        for (double s : v) res = std::max(res, std::abs(s - mean));
        out.set(label, mean, res);
    }
    return out;
}

} // namespace modemix
