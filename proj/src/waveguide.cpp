#include "modemix/waveguide.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "modemix/io.hpp"

namespace modemix {

std::string WaveguideSpec::validate() const {
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0))
            throw ValidationError(std::string("waveguide spec: ") + name + " must be > 0");
    };
    positive(width_um, "width_um");
    positive(depth_um, "depth_um");
    positive(poling_period_um, "poling_period_um");
    positive(length_mm, "length_mm");
    positive(box_halfwidth_um, "box_halfwidth_um");
    positive(box_depth_um, "box_depth_um");
    positive(hx_um, "hx_um");
    positive(hy_um, "hy_um");
    if (air_margin_um < 0.0)
        throw ValidationError("waveguide spec: air_margin_um must be >= 0");
    for (double dn : delta_n)
        if (dn < 0.0) throw ValidationError("waveguide spec: delta_n must be >= 0 per axis");
    if (lateral == LateralProfile::SmoothedStep) positive(edge_scale_um, "edge_scale_um");

    std::string warning;
    if (box_halfwidth_um < width_um)
        warning += "box halfwidth < guide width; guided fields may touch the wall. ";
    if (box_depth_um < 3.0 * depth_um)
        warning += "box depth < 3x exchange depth; guided fields may touch the wall. ";
    return warning;
}

double WaveguideSpec::lateral_factor(double x_um) const {
    if (lateral == LateralProfile::Step)
        return std::abs(x_um) <= width_um / 2.0 ? 1.0 : 0.0;
    const double s = edge_scale_um;
    const double g = 0.5 * (std::erf((x_um + width_um / 2.0) / s) -
                            std::erf((x_um - width_um / 2.0) / s));
    // erf differences can round slightly outside [0,1]
    return std::clamp(g, 0.0, 1.0);
}

double WaveguideSpec::depth_factor(double y_um) const {
    return std::erfc(y_um / depth_um);
}

double IndexGrid::max_index() const { return *std::max_element(n.begin(), n.end()); }

double IndexGrid::min_index() const { return *std::min_element(n.begin(), n.end()); }

double IndexGrid::cladding_index() const {
    // Substrate value at the bottom of the box. Guided modes of a
    // surface guide must exceed this; side walls are excluded so that
    // laterally uniform (slab) configurations keep their substrate as
    // the cladding reference.
    double m = 1.0;
    for (int ix = 0; ix < nx; ++ix) m = std::max(m, at(ix, ny - 1));
    return m;
}

IndexGrid index_profile(const WaveguideSpec& spec, const SellmeierModel& materials,
                        CrystalAxis axis, double lambda_nm) {
    spec.validate();
    const double n_bulk = materials.index(axis, lambda_nm); // throws RangeError if out of range
    const double dn = spec.delta_n[static_cast<int>(axis)];

    IndexGrid g;
    g.hx_um = spec.hx_um;
    g.hy_um = spec.hy_um;
    g.x0_um = -spec.box_halfwidth_um;
    g.y0_um = -spec.air_margin_um;
    g.nx = static_cast<int>(std::lround(2.0 * spec.box_halfwidth_um / spec.hx_um)) + 1;
    g.ny = static_cast<int>(std::lround((spec.box_depth_um + spec.air_margin_um) / spec.hy_um)) + 1;
    g.axis = axis;
    g.lambda_nm = lambda_nm;
    g.n.resize(static_cast<size_t>(g.nx) * g.ny);

    for (int iy = 0; iy < g.ny; ++iy) {
        const double y = g.y_um(iy);
        if (y < 0.0) {
            for (int ix = 0; ix < g.nx; ++ix) g.at(ix, iy) = 1.0; // air
            continue;
        }
        const double h = spec.depth_factor(y);
        for (int ix = 0; ix < g.nx; ++ix)
            g.at(ix, iy) = n_bulk + dn * spec.lateral_factor(g.x_um(ix)) * h;
    }
    return g;
}

void render_profile(const IndexGrid& grid, std::ostream& out) {
    out << "# schema_version 1\n";
    out << "x_um,y_um,n\n";
    for (int iy = 0; iy < grid.ny; ++iy)
        for (int ix = 0; ix < grid.nx; ++ix)
            out << format_double(grid.x_um(ix)) << ',' << format_double(grid.y_um(iy)) << ','
                << format_double(grid.at(ix, iy)) << '\n';
}

IndexGrid parse_profile(std::istream& in) {
    std::string header;
    do {
        if (!std::getline(in, header)) throw ValidationError("empty profile dump");
    } while (header.empty() || header[0] == '#');
    std::vector<double> xs, ys, ns;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string fx, fy, fn;
        if (!std::getline(ss, fx, ',') || !std::getline(ss, fy, ',') || !std::getline(ss, fn))
            throw ValidationError("malformed profile dump row: " + line);
        xs.push_back(std::stod(fx));
        ys.push_back(std::stod(fy));
        ns.push_back(std::stod(fn));
    }
    if (ns.empty()) throw ValidationError("profile dump has no rows");

    IndexGrid g;
    // x varies fastest; count distinct x values in the first row block
    g.nx = 1;
    while (g.nx < static_cast<int>(xs.size()) && xs[g.nx] != xs[0]) ++g.nx;
    g.ny = static_cast<int>(ns.size()) / g.nx;
    if (static_cast<size_t>(g.nx) * g.ny != ns.size())
        throw ValidationError("profile dump is not a full rectangular grid");
    g.x0_um = xs[0];
    g.y0_um = ys[0];
    g.hx_um = g.nx > 1 ? xs[1] - xs[0] : 1.0;
    g.hy_um = g.ny > 1 ? ys[g.nx] - ys[0] : 1.0;
    g.n = std::move(ns);
    return g;
}

} // namespace modemix
