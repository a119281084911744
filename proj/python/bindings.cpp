#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "modemix/config.hpp"
#include "modemix/identification.hpp"
#include "modemix/overlap.hpp"
#include "modemix/spdc.hpp"
#include "modemix/units.hpp"

namespace py = pybind11;
using namespace modemix;

namespace {

py::array_t<double> grid_array(const std::vector<double>& data, int nx, int ny) {
    py::array_t<double> out({ny, nx});
    std::copy(data.begin(), data.end(), out.mutable_data());
    return out;
}

} // namespace

PYBIND11_MODULE(_modemix, m) {
    m.doc() = "Type-II three-wave mixing in multimode quasi-phase-matched waveguides";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<RangeError>(m, "RangeError", PyExc_ValueError);
    py::register_exception<LookupError>(m, "CorrectionLookupError", PyExc_KeyError);
    py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);
    py::register_exception<ContractError>(m, "ContractError", PyExc_ValueError);
    py::register_exception<TrackingError>(m, "TrackingError", PyExc_RuntimeError);
    py::register_exception<SignError>(m, "SignError", PyExc_ValueError);
    py::register_exception<NormalizationError>(m, "NormalizationError", PyExc_RuntimeError);
    py::register_exception<NoRootError>(m, "NoRootError", PyExc_RuntimeError);

    py::enum_<CrystalAxis>(m, "CrystalAxis")
        .value("X", CrystalAxis::X)
        .value("Y", CrystalAxis::Y)
        .value("Z", CrystalAxis::Z);
    py::enum_<Pol>(m, "Pol").value("V", Pol::V).value("H", Pol::H).value("S", Pol::S);
    py::enum_<LateralProfile>(m, "LateralProfile")
        .value("Step", LateralProfile::Step)
        .value("SmoothedStep", LateralProfile::SmoothedStep);
    py::enum_<FieldOrientation>(m, "FieldOrientation")
        .value("Vertical", FieldOrientation::Vertical)
        .value("Horizontal", FieldOrientation::Horizontal);

    py::class_<SellmeierModel>(m, "SellmeierModel")
        .def_static("from_file", &SellmeierModel::from_file, py::arg("path"))
        .def_static("constant", &SellmeierModel::constant, py::arg("n"),
                    py::arg("lambda_min_nm") = 100.0, py::arg("lambda_max_nm") = 10000.0)
        .def("index", &SellmeierModel::index, py::arg("axis"), py::arg("lambda_nm"))
        .def("group_index", &SellmeierModel::group_index, py::arg("axis"), py::arg("lambda_nm"))
        .def("index_derivative", &SellmeierModel::index_derivative)
        .def_property_readonly("lambda_min_nm", &SellmeierModel::lambda_min_nm)
        .def_property_readonly("lambda_max_nm", &SellmeierModel::lambda_max_nm);

    py::class_<AxisMapping>(m, "AxisMapping")
        .def(py::init<>())
        .def_readwrite("v", &AxisMapping::v)
        .def_readwrite("h", &AxisMapping::h)
        .def_readwrite("s", &AxisMapping::s)
        .def("axis_for", &AxisMapping::axis_for)
        .def("s_vertical", &AxisMapping::s_vertical);

    py::class_<WaveguideSpec>(m, "WaveguideSpec")
        .def(py::init<>())
        .def_readwrite("width_um", &WaveguideSpec::width_um)
        .def_readwrite("depth_um", &WaveguideSpec::depth_um)
        .def_readwrite("delta_n", &WaveguideSpec::delta_n)
        .def_readwrite("lateral", &WaveguideSpec::lateral)
        .def_readwrite("edge_scale_um", &WaveguideSpec::edge_scale_um)
        .def_readwrite("poling_period_um", &WaveguideSpec::poling_period_um)
        .def_readwrite("length_mm", &WaveguideSpec::length_mm)
        .def_readwrite("box_halfwidth_um", &WaveguideSpec::box_halfwidth_um)
        .def_readwrite("box_depth_um", &WaveguideSpec::box_depth_um)
        .def_readwrite("air_margin_um", &WaveguideSpec::air_margin_um)
        .def_readwrite("hx_um", &WaveguideSpec::hx_um)
        .def_readwrite("hy_um", &WaveguideSpec::hy_um)
        .def("validate", &WaveguideSpec::validate);

    py::class_<IndexGrid>(m, "IndexGrid")
        .def_readonly("x0_um", &IndexGrid::x0_um)
        .def_readonly("y0_um", &IndexGrid::y0_um)
        .def_readonly("hx_um", &IndexGrid::hx_um)
        .def_readonly("hy_um", &IndexGrid::hy_um)
        .def_readonly("nx", &IndexGrid::nx)
        .def_readonly("ny", &IndexGrid::ny)
        .def_readonly("lambda_nm", &IndexGrid::lambda_nm)
        .def("max_index", &IndexGrid::max_index)
        .def("min_index", &IndexGrid::min_index)
        .def("cladding_index", &IndexGrid::cladding_index)
        .def("array", [](const IndexGrid& g) { return grid_array(g.n, g.nx, g.ny); });

    m.def("index_profile", &index_profile, py::arg("spec"), py::arg("materials"),
          py::arg("axis"), py::arg("lambda_nm"));

    py::class_<ModeLabel>(m, "ModeLabel")
        .def(py::init([](int i, int j, Pol pol) { return ModeLabel{i, j, pol}; }),
             py::arg("i"), py::arg("j"), py::arg("pol"))
        .def_readonly("i", &ModeLabel::i)
        .def_readonly("j", &ModeLabel::j)
        .def_readonly("pol", &ModeLabel::pol)
        .def("__str__", &ModeLabel::str)
        .def("__repr__", &ModeLabel::str)
        .def("__eq__", [](const ModeLabel& a, const ModeLabel& b) { return a == b; })
        .def("__hash__", [](const ModeLabel& a) {
            return std::hash<std::string>()(a.str());
        });
    m.def("parse_mode_label", &parse_mode_label);

    py::class_<ModeField>(m, "ModeField")
        .def_readonly("label", &ModeField::label)
        .def_readonly("lambda_nm", &ModeField::lambda_nm)
        .def_readonly("n_eff", &ModeField::n_eff)
        .def_readonly("nx", &ModeField::nx)
        .def_readonly("ny", &ModeField::ny)
        .def_readonly("hx_um", &ModeField::hx_um)
        .def_readonly("hy_um", &ModeField::hy_um)
        .def_readonly("normalized", &ModeField::normalized)
        .def_readonly("dominant_energy_fraction", &ModeField::dominant_energy_fraction)
        .def_readonly("residual", &ModeField::residual)
        .def("dominant_array",
             [](const ModeField& f) { return grid_array(f.dominant, f.nx, f.ny); })
        .def("minor_array", [](const ModeField& f) { return grid_array(f.minor, f.nx, f.ny); })
        .def("intensity_image",
             [](const ModeField& f) { return grid_array(mode_intensity_image(f), f.nx, f.ny); })
        .def("inner_product", &ModeField::inner_product);

    py::class_<ModeSolveResult>(m, "ModeSolveResult")
        .def_readonly("modes", &ModeSolveResult::modes)
        .def_readonly("diagnostic", &ModeSolveResult::diagnostic)
        .def_readonly("worst_residual", &ModeSolveResult::worst_residual);

    m.def(
        "solve_modes",
        [](const IndexGrid& grid, Pol pol, int count, std::optional<FieldOrientation> orient) {
            return orient ? solve_modes(grid, pol, count, *orient)
                          : solve_modes(grid, pol, count);
        },
        py::arg("grid"), py::arg("pol"), py::arg("count") = 4,
        py::arg("orientation") = std::nullopt);
    m.def("classify_mode", &classify_mode, py::arg("mode"), py::arg("pol"));

    py::class_<GeometricCorrections>(m, "GeometricCorrections")
        .def(py::init<>())
        .def_readwrite("window_min_nm", &GeometricCorrections::window_min_nm)
        .def_readwrite("window_max_nm", &GeometricCorrections::window_max_nm)
        .def("has", &GeometricCorrections::has)
        .def("delta_n", &GeometricCorrections::delta_n)
        .def("residual", &GeometricCorrections::residual)
        .def("set", &GeometricCorrections::set, py::arg("label"), py::arg("delta_n"),
             py::arg("residual") = 0.0)
        .def("merge", &GeometricCorrections::merge)
        .def("labels", [](const GeometricCorrections& c) {
            std::vector<ModeLabel> out;
            for (const auto& [label, entry] : c.entries) out.push_back(label);
            return out;
        });

    py::class_<IndexProvider>(m, "IndexProvider")
        .def("effective_index", &IndexProvider::effective_index);
    py::class_<ModelIndexProvider, IndexProvider>(m, "ModelIndexProvider")
        .def(py::init<SellmeierModel, AxisMapping, GeometricCorrections>());
    py::class_<NumericIndexProvider, IndexProvider>(m, "NumericIndexProvider")
        .def(py::init<WaveguideSpec, SellmeierModel, AxisMapping, int>(), py::arg("spec"),
             py::arg("materials"), py::arg("mapping"), py::arg("solve_count") = 8);

    m.def("extract_corrections", &extract_corrections, py::arg("spec"), py::arg("materials"),
          py::arg("mapping"), py::arg("labels"), py::arg("lambda_grid_nm"),
          py::arg("solve_count") = 0);

    py::class_<Triplet>(m, "Triplet")
        .def(py::init([](ModeLabel v, ModeLabel h, ModeLabel s) { return Triplet{v, h, s}; }))
        .def_readonly("v", &Triplet::v)
        .def_readonly("h", &Triplet::h)
        .def_readonly("s", &Triplet::s)
        .def("__str__", &Triplet::str)
        .def("__repr__", &Triplet::str)
        .def("__eq__", [](const Triplet& a, const Triplet& b) { return a == b; });
    m.def("parse_triplet", &parse_triplet);

    py::class_<DegenerateSearch>(m, "DegenerateSearch")
        .def(py::init<>())
        .def_readwrite("lambda_lo_nm", &DegenerateSearch::lambda_lo_nm)
        .def_readwrite("lambda_hi_nm", &DegenerateSearch::lambda_hi_nm);

    m.def("phase_mismatch", &phase_mismatch, py::arg("provider"), py::arg("triplet"),
          py::arg("lambda_v_nm"), py::arg("lambda_h_nm"), py::arg("poling_period_um"));
    m.def("fit_poling_period", &fit_poling_period);
    m.def(
        "degenerate_wavelength",
        [](const IndexProvider& p, const Triplet& t, double period) {
            return degenerate_wavelength(p, t, period);
        },
        py::arg("provider"), py::arg("triplet"), py::arg("poling_period_um"));
    m.def("band_slope", &band_slope);
    m.def("degenerate_band_fwhm", &degenerate_band_fwhm);
    m.def("sum_frequency_wavelength_nm", &sum_frequency_wavelength_nm);

    py::class_<WavelengthRange>(m, "WavelengthRange")
        .def(py::init([](double a, double b, double s) {
                 WavelengthRange r;
                 r.start_nm = a;
                 r.stop_nm = b;
                 r.step_nm = s;
                 return r;
             }),
             py::arg("start_nm"), py::arg("stop_nm"), py::arg("step_nm") = 0.2)
        .def("grid", &WavelengthRange::grid);

    py::class_<BandMap>(m, "BandMap")
        .def_readonly("lambda_v_nm", &BandMap::lambda_v_nm)
        .def_readonly("lambda_h_nm", &BandMap::lambda_h_nm)
        .def_readonly("poling_period_um", &BandMap::poling_period_um)
        .def_readonly("length_mm", &BandMap::length_mm)
        .def("array", [](const BandMap& b) {
            return grid_array(b.intensity, static_cast<int>(b.lambda_h_nm.size()),
                              static_cast<int>(b.lambda_v_nm.size()));
        });
    m.def("band_map", &band_map);
    m.def("degenerate_scan", &degenerate_scan);
    m.def("gaussian_blur", &gaussian_blur);

    m.def("overlap_integral", &overlap_integral);

    py::class_<MeasuredScan>(m, "MeasuredScan")
        .def(py::init([](std::vector<double> lam, std::vector<double> inten) {
                 MeasuredScan s;
                 s.lambda_nm = std::move(lam);
                 s.intensity = std::move(inten);
                 s.validate();
                 return s;
             }),
             py::arg("lambda_nm"), py::arg("intensity"))
        .def_readonly("lambda_nm", &MeasuredScan::lambda_nm)
        .def_readonly("intensity", &MeasuredScan::intensity);
    m.def("read_scan_file", &read_scan_file);
    m.def("detect_band_centers", &detect_band_centers, py::arg("scan"),
          py::arg("min_prominence") = 0.05);
    m.def("solve_band_correction", &solve_band_correction);

    py::class_<BandAssignment>(m, "BandAssignment")
        .def_readonly("center_nm", &BandAssignment::center_nm)
        .def_readonly("triplet", &BandAssignment::triplet)
        .def_readonly("predicted_nm", &BandAssignment::predicted_nm)
        .def_readonly("residual_nm", &BandAssignment::residual_nm)
        .def_readonly("flagged", &BandAssignment::flagged);
    py::class_<AssignmentReport>(m, "AssignmentReport")
        .def_readonly("assignments", &AssignmentReport::assignments)
        .def_readonly("unassigned_centers", &AssignmentReport::unassigned_centers)
        .def_readonly("max_residual_nm", &AssignmentReport::max_residual_nm)
        .def_readonly("any_flagged", &AssignmentReport::any_flagged);
    m.def(
        "assign_triplets",
        [](const std::vector<double>& centers, const std::vector<Triplet>& candidates,
           const IndexProvider& provider, double period, double flag_level) {
            return assign_triplets(centers, candidates, provider, period, flag_level);
        },
        py::arg("centers_nm"), py::arg("candidates"), py::arg("provider"),
        py::arg("poling_period_um"), py::arg("flag_level_nm") = 0.2);

    py::class_<PumpSpec>(m, "PumpSpec")
        .def(py::init([](double center, double fwhm) {
                 PumpSpec p;
                 p.center_nm = center;
                 p.fwhm_nm = fwhm;
                 return p;
             }),
             py::arg("center_nm") = 399.8, py::arg("fwhm_nm") = 1.0)
        .def_readwrite("center_nm", &PumpSpec::center_nm)
        .def_readwrite("fwhm_nm", &PumpSpec::fwhm_nm);
    m.def("pump_envelope", &pump_envelope);
    m.def("jsi", &jsi, py::arg("provider"), py::arg("triplet"), py::arg("poling_period_um"),
          py::arg("length_mm"), py::arg("pump"), py::arg("range_v"), py::arg("range_h"),
          py::arg("relative_efficiency") = 1.0);

    py::class_<BandSeparationRow>(m, "BandSeparationRow")
        .def_readonly("triplet", &BandSeparationRow::triplet)
        .def_readonly("center_nm", &BandSeparationRow::center_nm)
        .def_readonly("fwhm_nm", &BandSeparationRow::fwhm_nm)
        .def_readonly("isolated", &BandSeparationRow::isolated)
        .def_readonly("min_separation_nm", &BandSeparationRow::min_separation_nm)
        .def_readonly("valid", &BandSeparationRow::valid);
    py::class_<BandSeparationReport>(m, "BandSeparationReport")
        .def_readonly("rows", &BandSeparationReport::rows)
        .def_readonly("guard_nm", &BandSeparationReport::guard_nm)
        .def("text", [](const BandSeparationReport& r) {
            std::ostringstream out;
            write_band_separation_report(r, out);
            return out.str();
        });
    m.def("band_separation_report", &band_separation_report, py::arg("provider"),
          py::arg("triplets"), py::arg("poling_period_um"), py::arg("length_mm"),
          py::arg("guard_nm") = 0.5, py::arg("search") = DegenerateSearch{});

}
