#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modemix/mode_solver.hpp"
#include "modemix/sellmeier.hpp"
#include "modemix/waveguide.hpp"

namespace modemix {

// Constant geometric index corrections per mode label, n_eff(lambda) =
// n_bulk(lambda) + delta_n, with the wavelength window they were
// extracted over and the per-label constancy residual
// max |n_eff - n_bulk - delta_n| actually observed on that window.
struct GeometricCorrections {
    struct Entry {
        double delta_n = 0.0;
        double residual = 0.0;
    };
    std::map<ModeLabel, Entry> entries;
    double window_min_nm = 0.0;
    double window_max_nm = 0.0;

    bool has(const ModeLabel& label) const { return entries.count(label) != 0; }
    double delta_n(const ModeLabel& label) const;
    double residual(const ModeLabel& label) const;
    void set(const ModeLabel& label, double delta_n, double residual = 0.0);
    // Disjoint or overwriting merge; window grows to the hull.
    void merge(const GeometricCorrections& other);
};

// Frequency-dependent effective index per mode label. Implementations are
// immutable once built and safe for concurrent reads.
class IndexProvider {
public:
    virtual ~IndexProvider() = default;
    virtual double effective_index(const ModeLabel& label, double lambda_nm) const = 0;
    virtual double lambda_min_nm() const = 0;
    virtual double lambda_max_nm() const = 0;
};

// The decomposition backend: n_eff = n_bulk(axis(pol), lambda) + delta_n(label).
class ModelIndexProvider : public IndexProvider {
public:
    ModelIndexProvider(SellmeierModel materials, AxisMapping mapping,
                       GeometricCorrections corrections)
        : materials_(std::move(materials)), mapping_(mapping),
          corrections_(std::move(corrections)) {}

    double effective_index(const ModeLabel& label, double lambda_nm) const override;
    double lambda_min_nm() const override { return materials_.lambda_min_nm(); }
    double lambda_max_nm() const override { return materials_.lambda_max_nm(); }

    const SellmeierModel& materials() const { return materials_; }
    const AxisMapping& mapping() const { return mapping_; }
    const GeometricCorrections& corrections() const { return corrections_; }

private:
    SellmeierModel materials_;
    AxisMapping mapping_;
    GeometricCorrections corrections_;
};

// Numeric backend: every lookup runs (or reuses) a full mode solve at that
// wavelength and picks the requested label. Same calling contract as the
// model backend so phase-matching code is backend-agnostic.
class NumericIndexProvider : public IndexProvider {
public:
    NumericIndexProvider(WaveguideSpec spec, SellmeierModel materials, AxisMapping mapping,
                         int solve_count = 8);

    double effective_index(const ModeLabel& label, double lambda_nm) const override;
    double lambda_min_nm() const override { return materials_.lambda_min_nm(); }
    double lambda_max_nm() const override { return materials_.lambda_max_nm(); }

    // Full mode set behind a lookup (cached per pol/wavelength).
    const std::vector<ModeField>& modes(Pol pol, double lambda_nm) const;

private:
    WaveguideSpec spec_;
    SellmeierModel materials_;
    AxisMapping mapping_;
    int solve_count_;
    mutable std::map<std::pair<int, double>, std::vector<ModeField>> cache_;
};

// Solves modes across lambda_grid, tracks each requested label (maximal
// field overlap with the previous wavelength, falling back to label
// re-classification), and fits delta_n as the mean of n_eff - n_bulk.
// All labels must share one polarization per call (their window is
// polarization specific). Throws TrackingError naming the wavelength if a
// label disappears mid-grid.
GeometricCorrections extract_corrections(const WaveguideSpec& spec,
                                         const SellmeierModel& materials,
                                         const AxisMapping& mapping,
                                         const std::vector<ModeLabel>& labels,
                                         const std::vector<double>& lambda_grid_nm,
                                         int solve_count = 0);

} // namespace modemix
