#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "modemix/mode_solver.hpp"
#include "modemix/units.hpp"
#include "test_helpers.hpp"

using namespace modemix;
using testutil::make_field;

namespace {

double hermite(int n, double u) {
    switch (n) {
        case 0: return 1.0;
        case 1: return 2.0 * u;
        case 2: return 4.0 * u * u - 2.0;
        default: return 0.0;
    }
}

ModeField hg_field(int i, int j, Pol pol) {
    const double w = 1.4;
    return make_field(
        [=](double x, double y) {
            return hermite(i, x / w) * hermite(j, y / w) *
                   std::exp(-(x * x + y * y) / (w * w));
        },
        ModeLabel{i, j, pol}, 7.0, 0.07);
}

// Symmetric slab in the depth direction: cladding everywhere except a core
// band of half-thickness t centered mid-box, interfaces midway between
// grid nodes. Uniform along x.
IndexGrid slab_grid(double n_core, double n_clad, double t_um, double lambda_nm,
                    double hy_um = 0.05, double box_y_um = 9.0, double half_x_um = 20.0,
                    double hx_um = 0.5) {
    IndexGrid g;
    g.hx_um = hx_um;
    g.hy_um = hy_um;
    g.x0_um = -half_x_um;
    g.y0_um = 0.0;
    g.nx = static_cast<int>(std::lround(2.0 * half_x_um / hx_um)) + 1;
    g.ny = static_cast<int>(std::lround(box_y_um / hy_um)) + 1;
    g.lambda_nm = lambda_nm;
    g.n.resize(static_cast<size_t>(g.nx) * g.ny);
    const double center = box_y_um / 2.0 + hy_um / 2.0; // interfaces between nodes
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix)
            g.at(ix, iy) = std::abs(g.y_um(iy) - center) < t_um ? n_core : n_clad;
    return g;
}

// Independent 1D oracle: fundamental root of the symmetric-slab dispersion
// relation, kappa t = atan(eta gamma / kappa), by bisection.
double slab_fundamental(double n_core, double n_clad, double t_um, double lambda_nm, bool tm) {
    const double k0 = vacuum_wavenumber_per_um(lambda_nm);
    const double eta = tm ? (n_core * n_core) / (n_clad * n_clad) : 1.0;
    auto phase = [&](double ne) {
        const double kappa = k0 * std::sqrt(n_core * n_core - ne * ne);
        const double gamma = k0 * std::sqrt(ne * ne - n_clad * n_clad);
        return kappa * t_um - std::atan(eta * gamma / kappa);
    };
    double lo = n_clad + 1e-12, hi = n_core - 1e-12;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phase(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

WaveguideSpec coarse_spec() {
    WaveguideSpec s;
    s.width_um = 4.0;
    s.depth_um = 6.0;
    s.delta_n = {0.006, 0.014, 0.022};
    s.lateral = LateralProfile::SmoothedStep;
    s.edge_scale_um = 0.5;
    s.box_halfwidth_um = 6.0;
    s.box_depth_um = 14.0;
    s.air_margin_um = 0.8;
    s.hx_um = 0.2;
    s.hy_um = 0.2;
    return s;
}

} // namespace

TEST_CASE("classification counts nodes along the centroid cuts") {
    CHECK(classify_mode(hg_field(0, 0, Pol::V), Pol::V) == ModeLabel{0, 0, Pol::V});
    CHECK(classify_mode(hg_field(1, 0, Pol::H), Pol::H) == ModeLabel{1, 0, Pol::H});
    CHECK(classify_mode(hg_field(0, 2, Pol::H), Pol::H) == ModeLabel{0, 2, Pol::H});
    CHECK(classify_mode(hg_field(2, 1, Pol::S), Pol::S) == ModeLabel{2, 1, Pol::S});
}

TEST_CASE("classification rejects an all-zero field") {
    auto zero = make_field([](double, double) { return 0.0; }, ModeLabel{0, 0, Pol::V});
    CHECK_THROWS_AS(classify_mode(zero, Pol::V), ContractError);
}

TEST_CASE("intensity image: peak one, dominant-only equality, unit integral scaling") {
    const auto m = hg_field(0, 1, Pol::V);
    const auto img = mode_intensity_image(m);
    double peak = 0.0;
    for (double v : img) peak = std::max(peak, v);
    CHECK(peak == 1.0);
    // zero minor component: image equals |dominant|^2 peak-normalized
    double dom_peak = 0.0;
    for (double v : m.dominant) dom_peak = std::max(dom_peak, v * v);
    for (size_t k = 0; k < img.size(); ++k)
        CHECK(img[k] == doctest::Approx(m.dominant[k] * m.dominant[k] / dom_peak).epsilon(1e-12));
    // normalization carries over: integral of the image is 1/peak_intensity
    double integral = 0.0;
    for (double v : img) integral += v;
    integral *= m.hx_um * m.hy_um;
    CHECK(integral == doctest::Approx(1.0 / dom_peak).epsilon(1e-10));
}

TEST_CASE("uniform grid guides nothing") {
    IndexGrid g = slab_grid(1.75, 1.75, 1.0, 800.0, 0.2, 6.0, 5.0, 0.5);
    const auto result = solve_modes(g, Pol::V, 2);
    CHECK(result.modes.empty());
    CHECK(!result.diagnostic.empty());
}

TEST_CASE("slab oracle: TE fundamental matches the dispersion relation to 1e-4") {
    const double n_clad = 1.8446, n_core = n_clad + 0.02, t = 1.0;
    const IndexGrid g = slab_grid(n_core, n_clad, t, 800.0);
    const auto result = solve_modes(g, Pol::H, 1, FieldOrientation::Horizontal);
    REQUIRE(result.modes.size() == 1);
    const double expected = slab_fundamental(n_core, n_clad, t, 800.0, /*tm=*/false);
    CHECK(std::abs(result.modes[0].n_eff - expected) <= 1e-4);
    CHECK(result.modes[0].label.i == 0);
    CHECK(result.modes[0].label.j == 0);
}

TEST_CASE("slab oracle: TM fundamental matches the dispersion relation to 1e-4") {
    const double n_clad = 1.8446, n_core = n_clad + 0.02, t = 1.0;
    const IndexGrid g = slab_grid(n_core, n_clad, t, 800.0);
    const auto result = solve_modes(g, Pol::V, 1, FieldOrientation::Vertical);
    REQUIRE(result.modes.size() == 1);
    const double expected = slab_fundamental(n_core, n_clad, t, 800.0, /*tm=*/true);
    CHECK(std::abs(result.modes[0].n_eff - expected) <= 1e-4);
}

TEST_CASE("channel guide: bounds, unique labels, parity, orthogonality, dominance") {
    const WaveguideSpec spec = coarse_spec();
    const auto materials = SellmeierModel::constant(1.8446);
    const IndexGrid g = index_profile(spec, materials, CrystalAxis::Z, 800.0);
    const auto result = solve_modes(g, Pol::V, 4);
    REQUIRE(result.modes.size() >= 3);

    std::set<std::string> labels;
    for (const auto& m : result.modes) {
        CHECK(m.n_eff > g.cladding_index());
        CHECK(m.n_eff < g.max_index());
        CHECK(m.n_eff > g.min_index());
        CHECK(m.normalized);
        CHECK(m.dominant_energy_fraction >= 0.9);
        labels.insert(m.label.str());

        // discrete norm is one
        double norm2 = 0.0;
        for (size_t k = 0; k < m.dominant.size(); ++k)
            norm2 += m.dominant[k] * m.dominant[k] + m.minor[k] * m.minor[k];
        norm2 *= m.hx_um * m.hy_um;
        CHECK(norm2 == doctest::Approx(1.0).epsilon(1e-10));

        // x-parity of the dominant component: even or odd within 1e-6 energy
        double even_mismatch = 0.0, odd_mismatch = 0.0;
        for (int iy = 0; iy < m.ny; ++iy)
            for (int ix = 0; ix < m.nx; ++ix) {
                const double a = m.dom(ix, iy);
                const double b = m.dom(m.nx - 1 - ix, iy);
                even_mismatch += (a - b) * (a - b);
                odd_mismatch += (a + b) * (a + b);
            }
        const double defect = std::min(even_mismatch, odd_mismatch) * m.hx_um * m.hy_um / 4.0;
        CHECK(defect <= 1e-6);
    }
    CHECK(labels.size() == result.modes.size());

    // decreasing n_eff ordering and near-orthogonality. Pairs of opposite
    // x parity cancel exactly; same-parity pairs of the full-vector
    // operator are power-orthogonal, not L2-orthogonal, and their plain
    // field inner product is bounded by the vector-coupling scale.
    for (size_t a = 0; a < result.modes.size(); ++a) {
        for (size_t b = a + 1; b < result.modes.size(); ++b) {
            CHECK(result.modes[a].n_eff >= result.modes[b].n_eff);
            const bool opposite_parity =
                (result.modes[a].label.i + result.modes[b].label.i) % 2 == 1;
            const double ip = std::abs(result.modes[a].inner_product(result.modes[b]));
            CHECK(ip <= (opposite_parity ? 1e-6 : 5e-3));
        }
    }
}

TEST_CASE("repeated solves are bit-identical") {
    const WaveguideSpec spec = coarse_spec();
    const auto materials = SellmeierModel::constant(1.8446);
    const IndexGrid g = index_profile(spec, materials, CrystalAxis::Z, 800.0);
    const auto a = solve_modes(g, Pol::V, 3);
    const auto b = solve_modes(g, Pol::V, 3);
    REQUIRE(a.modes.size() == b.modes.size());
    for (size_t k = 0; k < a.modes.size(); ++k) {
        CHECK(a.modes[k].n_eff == b.modes[k].n_eff);
        CHECK(a.modes[k].dominant == b.modes[k].dominant);
    }
}

TEST_CASE("eigenpair residuals meet the declared tolerance") {
    const WaveguideSpec spec = coarse_spec();
    const auto materials = SellmeierModel::constant(1.8446);
    const IndexGrid g = index_profile(spec, materials, CrystalAxis::Z, 800.0);
    const auto result = solve_modes(g, Pol::V, 3);
    for (const auto& m : result.modes) CHECK(m.residual <= 1e-9);
}

TEST_CASE("solver contract validation") {
    IndexGrid g = slab_grid(1.76, 1.75, 1.0, 800.0, 0.2, 6.0, 5.0, 0.5);
    CHECK_THROWS_AS(solve_modes(g, Pol::V, 0), ValidationError);
    IndexGrid tiny;
    tiny.nx = 3;
    tiny.ny = 3;
    tiny.hx_um = tiny.hy_um = 0.1;
    tiny.lambda_nm = 800.0;
    tiny.n.assign(9, 1.75);
    CHECK_THROWS_AS(solve_modes(tiny, Pol::V, 1), ValidationError);
}

TEST_CASE("pgm and csv intensity writers emit well-formed documents") {
    const auto m = hg_field(1, 0, Pol::V);
    std::ostringstream pgm;
    write_intensity_pgm(m, pgm);
    CHECK(pgm.str().substr(0, 2) == "P2");
    std::ostringstream csv;
    write_intensity_csv(m, csv);
    CHECK(csv.str().find("# schema_version 1") == 0);
    CHECK(csv.str().find("x_um,y_um,intensity") != std::string::npos);
}
