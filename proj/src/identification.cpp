#include "modemix/identification.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "modemix/io.hpp"
#include "modemix/units.hpp"

namespace modemix {

void MeasuredScan::validate() const {
    if (lambda_nm.size() != intensity.size())
        throw ValidationError("scan: wavelength and intensity columns differ in length");
    if (lambda_nm.size() < 3) throw ValidationError("scan: need at least 3 samples");
    for (size_t k = 0; k < lambda_nm.size(); ++k) {
        if (!std::isfinite(lambda_nm[k]) || !std::isfinite(intensity[k]))
            throw ValidationError("scan: NaN or infinite sample at row " + std::to_string(k));
        if (intensity[k] < 0.0)
            throw ValidationError("scan: negative intensity at row " + std::to_string(k));
        if (k > 0 && !(lambda_nm[k] > lambda_nm[k - 1]))
            throw ValidationError("scan: wavelengths must be strictly increasing (row " +
                                  std::to_string(k) + ")");
    }
}

MeasuredScan read_scan_csv(std::istream& in) {
    const CsvTable t = read_csv(in);
    MeasuredScan scan;
    for (const auto& row : t.rows) {
        if (row.size() < 2) throw ValidationError("scan CSV: rows need lambda_nm,intensity");
        scan.lambda_nm.push_back(row[0]);
        scan.intensity.push_back(row[1]);
    }
    scan.validate();
    return scan;
}

MeasuredScan read_scan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scan file '" + path + "'");
    return read_scan_csv(in);
}

std::vector<double> detect_band_centers(const MeasuredScan& scan, double min_prominence) {
    scan.validate();
    const auto& y = scan.intensity;
    const auto& x = scan.lambda_nm;
    const size_t n = y.size();
    const double global_max = *std::max_element(y.begin(), y.end());
    if (!(global_max > 0.0)) return {};
    const double level = min_prominence * global_max;

    std::vector<double> centers;
    for (size_t k = 1; k + 1 < n; ++k) {
        if (!(y[k] > y[k - 1] && y[k] >= y[k + 1])) continue;
        // topographic prominence: walk out to higher ground on both sides
        double left_min = y[k];
        for (size_t m = k; m-- > 0;) {
            if (y[m] > y[k]) break;
            left_min = std::min(left_min, y[m]);
        }
        double right_min = y[k];
        for (size_t m = k + 1; m < n; ++m) {
            if (y[m] > y[k]) break;
            right_min = std::min(right_min, y[m]);
        }
        const double prominence = y[k] - std::max(left_min, right_min);
        if (prominence < level) continue;
        // parabolic refinement over the three points around the maximum
        const double x0 = x[k - 1], x1 = x[k], x2 = x[k + 1];
        const double y0 = y[k - 1], y1 = y[k], y2 = y[k + 1];
        const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
        double center = x1;
        if (denom != 0.0) {
            const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
            const double b =
                (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
            if (a < 0.0) center = -b / (2.0 * a);
        }
        centers.push_back(center);
    }
    std::sort(centers.begin(), centers.end());
    return centers;
}

namespace {

int differing_slots(const Triplet& a, const Triplet& b, int& slot) {
    int n = 0;
    if (!(a.v == b.v)) { slot = 0; ++n; }
    if (!(a.h == b.h)) { slot = 1; ++n; }
    if (!(a.s == b.s)) { slot = 2; ++n; }
    return n;
}

const ModeLabel& slot_label(const Triplet& t, int slot) {
    return slot == 0 ? t.v : slot == 1 ? t.h : t.s;
}

} // namespace

double solve_band_correction(const Triplet& triplet, const ModeLabel& unknown,
                             double center_nm, const GeometricCorrections& gauge,
                             const SellmeierModel& materials, const AxisMapping& mapping,
                             double poling_period_um) {
    int slot = -1;
    int hits = 0;
    if (triplet.v == unknown) { slot = 0; ++hits; }
    if (triplet.h == unknown) { slot = 1; ++hits; }
    if (triplet.s == unknown) { slot = 2; ++hits; }
    if (hits != 1)
        throw ContractError("solve_band_correction: label " + unknown.str() +
                            " must occupy exactly one slot of " + triplet.str());

    const double lam = center_nm;
    const double lambda_s = sum_frequency_wavelength_nm(lam, lam);

    // dbeta is linear in the unknown correction: dbeta = base + coeff * dn
    auto term = [&](const ModeLabel& label, double lambda, double sign) {
        const double n_bulk = materials.index(mapping.axis_for(label.pol), lambda);
        const double dn = label == unknown ? 0.0 : gauge.delta_n(label);
        return sign * 2.0 * kPi * (n_bulk + dn) / nm_to_um(lambda);
    };
    const double base = term(triplet.s, lambda_s, +1.0) + term(triplet.v, lam, -1.0) +
                        term(triplet.h, lam, -1.0) - 2.0 * kPi / poling_period_um;
    const double coeff = (slot == 2 ? +1.0 : -1.0) * 2.0 * kPi / nm_to_um(slot == 2 ? lambda_s : lam);
    return -base / coeff;
}

DifferenceFit fit_correction_differences(const std::vector<SeedPair>& pairs,
                                         const GeometricCorrections& gauge,
                                         const SellmeierModel& materials,
                                         const AxisMapping& mapping, double poling_period_um) {
    DifferenceFit fit;
    fit.corrections = gauge;
    for (const SeedPair& pair : pairs) {
        int slot = -1;
        const int n = differing_slots(pair.first, pair.second, slot);
        if (n != 1)
            throw ContractError("seed pair " + pair.first.str() + " / " + pair.second.str() +
                                " must differ in exactly one mode slot (differs in " +
                                std::to_string(n) + ")");
        const ModeLabel la = slot_label(pair.first, slot);
        const ModeLabel lb = slot_label(pair.second, slot);

        auto resolve = [&](const Triplet& t, const ModeLabel& label, double center) {
            if (fit.corrections.has(label)) return fit.corrections.delta_n(label);
            const double dn = solve_band_correction(t, label, center, fit.corrections,
                                                    materials, mapping, poling_period_um);
            fit.corrections.set(label, dn);
            return dn;
        };
        const double dn_a = resolve(pair.first, la, pair.center_first_nm);
        const double dn_b = resolve(pair.second, lb, pair.center_second_nm);
        fit.differences.push_back(CorrectionDifference{la, lb, dn_a - dn_b});
    }
    return fit;
}

namespace {

// Exact min-cost assignment of centers to candidate predictions by subset
// DP over the smaller side (fine up to 12 bands), greedy beyond.
std::vector<int> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
    const int nr = static_cast<int>(cost.size());
    if (nr == 0) return {};
    const int nc = static_cast<int>(cost[0].size());
    std::vector<int> row_to_col(nr, -1);

    if (nc <= 12) {
        const int full = 1 << nc;
        const double inf = std::numeric_limits<double>::infinity();
        // dp[mask] = min cost assigning rows 0..popcount-ish; process rows in order,
        // each row may also stay unassigned when columns run short.
        std::vector<std::vector<double>> dp(nr + 1, std::vector<double>(full, inf));
        std::vector<std::vector<int>> choice(nr + 1, std::vector<int>(full, -2));
        dp[0][0] = 0.0;
        for (int r = 0; r < nr; ++r)
            for (int mask = 0; mask < full; ++mask) {
                if (dp[r][mask] == inf) continue;
                const int assigned = __builtin_popcount(mask);
                // leave this row unassigned only if rows outnumber columns
                if (nr - r > nc - assigned) {
                    if (dp[r][mask] < dp[r + 1][mask]) {
                        dp[r + 1][mask] = dp[r][mask];
                        choice[r + 1][mask] = -1;
                    }
                }
                for (int c = 0; c < nc; ++c) {
                    if (mask & (1 << c)) continue;
                    const double v = dp[r][mask] + cost[r][c];
                    if (v < dp[r + 1][mask | (1 << c)]) {
                        dp[r + 1][mask | (1 << c)] = v;
                        choice[r + 1][mask | (1 << c)] = c;
                    }
                }
            }
        int best_mask = 0;
        double best = inf;
        for (int mask = 0; mask < full; ++mask)
            if (dp[nr][mask] < best) {
                best = dp[nr][mask];
                best_mask = mask;
            }
        int mask = best_mask;
        for (int r = nr; r-- > 0;) {
            const int c = choice[r + 1][mask];
            if (c >= 0) {
                row_to_col[r] = c;
                mask &= ~(1 << c);
            }
        }
        return row_to_col;
    }

    // greedy nearest-neighbor fallback for large problems
    std::vector<std::tuple<double, int, int>> edges;
    for (int r = 0; r < nr; ++r)
        for (int c = 0; c < nc; ++c) edges.emplace_back(cost[r][c], r, c);
    std::sort(edges.begin(), edges.end());
    std::vector<bool> used_col(nc, false);
    for (const auto& [w, r, c] : edges) {
        if (row_to_col[r] != -1 || used_col[c]) continue;
        row_to_col[r] = c;
        used_col[c] = true;
    }
    return row_to_col;
}

} // namespace

AssignmentReport assign_triplets(const std::vector<double>& centers_nm,
                                 const std::vector<Triplet>& candidates,
                                 const IndexProvider& provider, double poling_period_um,
                                 double flag_level_nm, const DegenerateSearch& search) {
    AssignmentReport report;
    std::vector<double> predictions;
    std::vector<const Triplet*> predictable;
    for (const Triplet& t : candidates) {
        try {
            predictions.push_back(degenerate_wavelength(provider, t, poling_period_um, search));
            predictable.push_back(&t);
        } catch (const Error&) {
            report.unmatched_candidates.push_back(t); // no root in window
        }
    }

    std::vector<std::vector<double>> cost(centers_nm.size(),
                                          std::vector<double>(predictions.size()));
    for (size_t r = 0; r < centers_nm.size(); ++r)
        for (size_t c = 0; c < predictions.size(); ++c)
            cost[r][c] = std::abs(centers_nm[r] - predictions[c]);

    const std::vector<int> match = min_cost_assignment(cost);
    std::vector<bool> candidate_used(predictions.size(), false);
    for (size_t r = 0; r < centers_nm.size(); ++r) {
        const int c = r < match.size() ? match[r] : -1;
        if (c < 0) {
            report.unassigned_centers.push_back(centers_nm[r]);
            continue;
        }
        candidate_used[c] = true;
        BandAssignment a;
        a.center_nm = centers_nm[r];
        a.triplet = *predictable[c];
        a.predicted_nm = predictions[c];
        a.residual_nm = std::abs(a.center_nm - a.predicted_nm);
        a.flagged = a.residual_nm > flag_level_nm;
        report.assignments.push_back(a);
        report.max_residual_nm = std::max(report.max_residual_nm, a.residual_nm);
        report.any_flagged = report.any_flagged || a.flagged;
    }
    for (size_t c = 0; c < predictions.size(); ++c)
        if (!candidate_used[c]) report.unmatched_candidates.push_back(*predictable[c]);
    std::sort(report.assignments.begin(), report.assignments.end(),
              [](const BandAssignment& a, const BandAssignment& b) {
                  return a.center_nm < b.center_nm;
              });
    return report;
}

void write_assignment_report(const AssignmentReport& report, std::ostream& out) {
    out << "# band assignment report (schema_version 1)\n";
    out << "# center_nm  triplet  predicted_nm  residual_nm  flag\n";
    for (const auto& a : report.assignments)
        out << format_double(a.center_nm) << "  " << a.triplet.str() << "  "
            << format_double(a.predicted_nm) << "  " << format_double(a.residual_nm) << "  "
            << (a.flagged ? "FLAGGED" : "ok") << '\n';
    for (double c : report.unassigned_centers)
        out << format_double(c) << "  (unassigned center; possible impure excitation)\n";
    for (const auto& t : report.unmatched_candidates)
        out << "unmatched candidate: " << t.str() << '\n';
    out << "# max residual: " << format_double(report.max_residual_nm) << " nm\n";
}

} // namespace modemix
