#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "modemix/sellmeier.hpp"

namespace modemix {

enum class LateralProfile { Step, SmoothedStep };

// Parametric description of one ion-exchanged channel waveguide.
//
// Coordinates: x runs parallel to the top crystal surface (guide centered
// at x = 0), y runs from the surface (y = 0) down into the crystal. The
// air superstrate occupies y < 0. The computational box spans
// x in [-box_halfwidth, box_halfwidth], y in [-air_margin, box_depth].
struct WaveguideSpec {
    double width_um = 4.0;
    double depth_um = 6.0;
    std::array<double, 3> delta_n{0.006, 0.014, 0.022}; // surface index increase per axis x,y,z

    LateralProfile lateral = LateralProfile::Step;
    double edge_scale_um = 0.5; // smoothed-step only

    double poling_period_um = 9.35;
    double length_mm = 4.8;

    double box_halfwidth_um = 8.0;
    double box_depth_um = 19.0;
    double air_margin_um = 1.0;
    double hx_um = 0.1;
    double hy_um = 0.1;

    // Throws ValidationError on non-positive geometry. Returns a warning
    // string (empty if none) for a box that barely fits the guided region.
    std::string validate() const;

    // Lateral shape g(x) in [0,1]; g = 1 on |x| <= width/2 for the step.
    double lateral_factor(double x_um) const;

    // Depth shape h(y) = erfc(y / depth), h(0) = 1.
    double depth_factor(double y_um) const;
};

// A sampled 2D refractive index map n(x, y) for one crystal axis at one
// wavelength. Row-major storage, y varying over rows: value(ix, iy) =
// data[iy * nx + ix]. Immutable by convention once built.
struct IndexGrid {
    double x0_um = 0.0; // coordinate of ix = 0
    double y0_um = 0.0; // coordinate of iy = 0
    double hx_um = 0.0;
    double hy_um = 0.0;
    int nx = 0;
    int ny = 0;
    std::vector<double> n;
    CrystalAxis axis = CrystalAxis::Z;
    double lambda_nm = 0.0;

    double x_um(int ix) const { return x0_um + ix * hx_um; }
    double y_um(int iy) const { return y0_um + iy * hy_um; }
    double at(int ix, int iy) const { return n[static_cast<size_t>(iy) * nx + ix]; }
    double& at(int ix, int iy) { return n[static_cast<size_t>(iy) * nx + ix]; }

    double max_index() const;
    double min_index() const;
    // Substrate index (largest value on the bottom boundary row); guided
    // modes must exceed this.
    double cladding_index() const;
};

// Builds n(x,y) = 1 for y < 0 and n_bulk(lambda) + delta_n * g(x) * h(y)
// for y >= 0 on the spec's computational box.
IndexGrid index_profile(const WaveguideSpec& spec, const SellmeierModel& materials,
                        CrystalAxis axis, double lambda_nm);

// Row-per-node CSV dump (x_um, y_um, n).
void render_profile(const IndexGrid& grid, std::ostream& out);

// Parses a dump produced by render_profile back into a grid (geometry is
// reconstructed from the node coordinates).
IndexGrid parse_profile(std::istream& in);

} // namespace modemix
