#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "modemix/phase_matching.hpp"

namespace modemix {

// One ingested 1D degenerate scan: normalized SF intensity against the
// common fundamental wavelength, strictly increasing in lambda.
struct MeasuredScan {
    std::vector<double> lambda_nm;
    std::vector<double> intensity;
    std::string coupling; // free-text coupling description
    std::string date;

    void validate() const; // monotonicity, finiteness, non-negativity
};

MeasuredScan read_scan_csv(std::istream& in);
MeasuredScan read_scan_file(const std::string& path);

// Local maxima with topographic prominence >= min_prominence * global
// maximum, centers refined by a parabola through the three points around
// each maximum. An empty result is valid (no bands).
std::vector<double> detect_band_centers(const MeasuredScan& scan, double min_prominence = 0.05);

// A pair of candidate triplets differing in exactly one mode slot,
// together with the measured degenerate band centers they were assigned.
struct SeedPair {
    Triplet first;
    Triplet second;
    double center_first_nm = 0.0;
    double center_second_nm = 0.0;
};

struct CorrectionDifference {
    ModeLabel a;
    ModeLabel b;
    double difference = 0.0; // delta_n(a) - delta_n(b)
};

struct DifferenceFit {
    GeometricCorrections corrections; // gauge-fixed map including solved labels
    std::vector<CorrectionDifference> differences;
};

// Solves the phase matching condition at each band's degenerate center
// for the one unknown correction of that band (the mismatch is linear in
// it), seeded by a gauge-fixed corrections map that covers the shared
// modes. Records the per-pair difference of the two differing-slot
// corrections.
DifferenceFit fit_correction_differences(const std::vector<SeedPair>& pairs,
                                         const GeometricCorrections& gauge,
                                         const SellmeierModel& materials,
                                         const AxisMapping& mapping, double poling_period_um);

// Solves one band's center for the correction of `unknown` (which must
// occupy exactly one slot of the triplet); every other slot must already
// be covered by `gauge`.
double solve_band_correction(const Triplet& triplet, const ModeLabel& unknown,
                             double center_nm, const GeometricCorrections& gauge,
                             const SellmeierModel& materials, const AxisMapping& mapping,
                             double poling_period_um);

struct BandAssignment {
    double center_nm = 0.0;
    Triplet triplet;
    double predicted_nm = 0.0;
    double residual_nm = 0.0; // |center - predicted|
    bool flagged = false;     // residual above the 0.2 nm consistency level
};

struct AssignmentReport {
    std::vector<BandAssignment> assignments;  // ordered by center
    std::vector<double> unassigned_centers;   // impure-excitation artifacts
    std::vector<Triplet> unmatched_candidates;
    double max_residual_nm = 0.0;
    bool any_flagged = false;
};

// Predicts the degenerate center of every candidate and assigns centers to
// candidates minimizing the total |residual| (exact assignment for up to
// 12 bands, greedy beyond), flagging residuals above flag_level_nm.
AssignmentReport assign_triplets(const std::vector<double>& centers_nm,
                                 const std::vector<Triplet>& candidates,
                                 const IndexProvider& provider, double poling_period_um,
                                 double flag_level_nm = 0.2,
                                 const DegenerateSearch& search = {});

void write_assignment_report(const AssignmentReport& report, std::ostream& out);

} // namespace modemix
