#include <doctest.h>

#include <cmath>
#include <random>

#include "modemix/phase_matching.hpp"
#include "modemix/units.hpp"
#include "test_helpers.hpp"

using namespace modemix;
using testutil::constant_provider;

namespace {

const ModeLabel l00v{0, 0, Pol::V};
const ModeLabel l00h{0, 0, Pol::H};
const ModeLabel l00s{0, 0, Pol::S};
const Triplet t000{l00v, l00h, l00s};

ModelIndexProvider ktp_provider(double dnv = 0.0, double dnh = 0.0, double dns = 0.0) {
    GeometricCorrections c;
    c.window_min_nm = 350.0;
    c.window_max_nm = 3500.0;
    c.set(l00v, dnv);
    c.set(l00h, dnh);
    c.set(l00s, dns);
    return ModelIndexProvider(SellmeierModel::from_file(std::string(MODEMIX_SOURCE_DIR) +
                                                        "/data/ktp_sellmeier.txt"),
                              AxisMapping{}, c);
}

// Linear-dispersion toy model with independently computable roots.
class LinearToyProvider : public IndexProvider {
public:
    // n_F(lambda) = a + b (lambda - 800), n_S(lambda) = c + d (lambda - 400), nm
    LinearToyProvider(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {}
    double effective_index(const ModeLabel& label, double lambda_nm) const override {
        if (label.pol == Pol::S) return c_ + d_ * (lambda_nm - 400.0);
        return a_ + b_ * (lambda_nm - 800.0);
    }
    double lambda_min_nm() const override { return 300.0; }
    double lambda_max_nm() const override { return 1200.0; }

private:
    double a_, b_, c_, d_;
};

} // namespace

TEST_CASE("triplet parser round trips the ijV+i'j'H>klS label grammar") {
    const Triplet t = parse_triplet("00V+02H>10S");
    CHECK(t.v == ModeLabel{0, 0, Pol::V});
    CHECK(t.h == ModeLabel{0, 2, Pol::H});
    CHECK(t.s == ModeLabel{1, 0, Pol::S});
    CHECK(parse_triplet("00V + 02H -> 10S") == t);
    CHECK(parse_mode_label("02H") == ModeLabel{0, 2, Pol::H});
    CHECK(parse_mode_label("02_H") == ModeLabel{0, 2, Pol::H});
    CHECK(t.str() == "00_V+02_H>10_S");
    CHECK_THROWS_AS(parse_triplet("00V+02H"), ValidationError);
    CHECK_THROWS_AS(parse_triplet("00H+02V>10S"), ValidationError);
    CHECK_THROWS_AS(parse_mode_label("0xV"), ValidationError);
}

TEST_CASE("dispersionless material with infinite grating gives zero mismatch everywhere") {
    const auto p = constant_provider(2.0, {{l00v, 0.0}, {l00h, 0.0}, {l00s, 0.0}});
    for (double lv : {720.0, 800.0, 880.0})
        for (double lh : {760.0, 800.0, 840.0})
            CHECK(std::abs(phase_mismatch(p, t000, lv, lh, 1e18)) < 1e-12);
}

TEST_CASE("finite grating leaves exactly the grating term") {
    const auto p = constant_provider(2.0, {{l00v, 0.0}, {l00h, 0.0}, {l00s, 0.0}});
    CHECK(phase_mismatch(p, t000, 800.0, 800.0, 10.0) ==
          doctest::Approx(-2.0 * kPi / 10.0).epsilon(1e-12));
}

TEST_CASE("fitted poling period zeroes the mismatch at the target") {
    const auto p = ktp_provider();
    const double period = fit_poling_period(p, t000, 800.0);
    CHECK(period > 5.0);
    CHECK(period < 15.0);
    CHECK(std::abs(phase_mismatch(p, t000, 800.0, 800.0, period)) <= 1e-10);
}

TEST_CASE("dispersionless material has no first-order QPM solution") {
    const auto p = constant_provider(2.0, {{l00v, 0.0}, {l00h, 0.0}, {l00s, 0.0}});
    CHECK_THROWS_AS(fit_poling_period(p, t000, 800.0), SignError);
}

TEST_CASE("raising the S correction shrinks the fitted period") {
    double prev = 0.0;
    for (double dns : {0.0, 1e-3, 2e-3, 4e-3}) {
        const auto p = ktp_provider(0.0, 0.0, dns);
        const double period = fit_poling_period(p, t000, 800.0);
        if (prev != 0.0) CHECK(period < prev);
        prev = period;
    }
}

TEST_CASE("degenerate search flags an everywhere-matched toy model") {
    const auto p = constant_provider(2.0, {{l00v, 0.0}, {l00h, 0.0}, {l00s, 0.0}});
    const auto r = degenerate_wavelengths(p, t000, 1e18);
    CHECK(r.everywhere);
    CHECK(r.roots_nm.empty());
}

TEST_CASE("linear-dispersion toy model root matches the algebraic solution") {
    // n_F = a + b(l-800), n_S = c + d(l/2-400); root of
    // 2[n_S(l/2) - n_F(l)] = l_um / Lambda_um is linear in l.
    const double a = 1.80, b = -2e-4, c = 1.85, d = -3.5e-4, target = 810.0;
    const LinearToyProvider p(a, b, c, d);
    const double bracket =
        2.0 * ((c - a - 400.0 * d + 800.0 * b) + (d / 2.0 - b) * target);
    const double period = (target * 1e-3) / bracket; // um
    const double root = degenerate_wavelength(p, t000, period);
    CHECK(root == doctest::Approx(target).epsilon(1e-9 / 810.0));
}

TEST_CASE("fit and degenerate root are mutually inverse across the band window") {
    const auto p = ktp_provider(0.0, 1.5e-3, 3e-3);
    for (double target = 792.0; target <= 815.0 + 1e-9; target += 2.3) {
        const double period = fit_poling_period(p, t000, target);
        const double back = degenerate_wavelength(p, t000, period);
        CHECK(std::abs(back - target) <= 1e-6);
    }
}

TEST_CASE("no sign change raises a diagnostic with endpoint values") {
    const auto p = ktp_provider();
    CHECK_THROWS_AS(degenerate_wavelength(p, t000, 5.0), NoRootError);
    try {
        degenerate_wavelength(p, t000, 5.0);
    } catch (const NoRootError& e) {
        CHECK(std::string(e.what()).find("rad/um") != std::string::npos);
    }
}

TEST_CASE("band map cells equal the pointwise mismatch-sinc composition") {
    const auto p = ktp_provider();
    const double period = fit_poling_period(p, t000, 803.0);
    WavelengthRange rv{800.0, 806.0, 0.5};
    WavelengthRange rh{801.0, 805.0, 0.5};
    const BandMap map = band_map(p, t000, period, 4.8, rv, rh);
    REQUIRE(map.lambda_v_nm.size() == 13);
    REQUIRE(map.lambda_h_nm.size() == 9);

    std::mt19937 rng(7);
    for (int k = 0; k < 25; ++k) {
        const int iv = static_cast<int>(rng() % map.lambda_v_nm.size());
        const int ih = static_cast<int>(rng() % map.lambda_h_nm.size());
        const double db = phase_mismatch(p, t000, map.lambda_v_nm[iv], map.lambda_h_nm[ih], period);
        const double s = sinc(db * 0.5 * 4.8e3);
        CHECK(map.at(iv, ih) == s * s);
    }
    // on-band cell reaches 1, sinc zero reaches 0
    for (double v : map.intensity) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-15);
    }
}

TEST_CASE("map diagonal equals the direct degenerate scan bit-for-bit") {
    const auto p = ktp_provider();
    const double period = fit_poling_period(p, t000, 803.0);
    WavelengthRange r{801.0, 805.0, 0.2};
    const BandMap map = band_map(p, t000, period, 4.8, r, r);
    const auto scan = degenerate_scan(p, t000, period, 4.8, r);
    REQUIRE(scan.size() == map.lambda_v_nm.size());
    for (size_t k = 0; k < scan.size(); ++k) CHECK(map.at(k, k) == scan[k].second);
}

TEST_CASE("cells outside the validity window are masked, not fatal") {
    // tight validity range around 800 nm: the SF wavelength is always out
    const auto p = constant_provider(2.0, {{l00v, 0.0}, {l00h, 0.0}, {l00s, 0.0}}, 780.0, 820.0);
    WavelengthRange r{790.0, 810.0, 5.0};
    const BandMap map = band_map(p, t000, 10.0, 4.8, r, r);
    for (double v : map.intensity) CHECK(std::isnan(v));
}

TEST_CASE("sinc-squared width halves when the sample length doubles") {
    const auto p = ktp_provider();
    const double period = fit_poling_period(p, t000, 803.0);
    const double center = degenerate_wavelength(p, t000, period);
    const double w1 = degenerate_band_fwhm(p, t000, period, 4.8, center);
    const double w2 = degenerate_band_fwhm(p, t000, period, 9.6, center);
    CHECK(w2 / w1 == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("band slope is -1 for exchange-symmetric dispersion") {
    // V and H share the crystal y axis and corrections: exact exchange symmetry
    GeometricCorrections c;
    c.set(l00v, 1e-3);
    c.set(l00h, 1e-3);
    c.set(l00s, 3e-3);
    AxisMapping map;
    map.v = CrystalAxis::Y;
    map.h = CrystalAxis::Y;
    map.s = CrystalAxis::Y;
    const ModelIndexProvider p(SellmeierModel::from_file(std::string(MODEMIX_SOURCE_DIR) +
                                                         "/data/ktp_sellmeier.txt"),
                               map, c);
    const double period = fit_poling_period(p, t000, 802.0);
    const double root = degenerate_wavelength(p, t000, period);
    CHECK(band_slope(p, t000, period, root, root) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("unequal V/H group indices tilt the band away from -1") {
    const auto p = ktp_provider();
    const double period = fit_poling_period(p, t000, 800.0);
    const double root = degenerate_wavelength(p, t000, period);
    const double slope = band_slope(p, t000, period, root, root);
    CHECK(std::abs(slope + 1.0) > 0.05);
    // the group indices differ between the z and y axes at 800 nm
    const auto& m = p.materials();
    CHECK(std::abs(m.group_index(CrystalAxis::Z, 800.0) -
                   m.group_index(CrystalAxis::Y, 800.0)) > 0.01);
}

TEST_CASE("stepping the other fundamental gives the reciprocal slope") {
    const auto p = ktp_provider();
    const double period = fit_poling_period(p, t000, 800.0);
    const double root = degenerate_wavelength(p, t000, period);
    const double s_vh = band_slope(p, t000, period, root, root);
    // swap the roles of the two fundamentals by exchanging axis mappings and labels
    AxisMapping swapped;
    swapped.v = CrystalAxis::Y;
    swapped.h = CrystalAxis::Z;
    swapped.s = CrystalAxis::Y;
    GeometricCorrections c;
    c.set(l00v, 0.0);
    c.set(l00h, 0.0);
    c.set(l00s, 0.0);
    const ModelIndexProvider q(p.materials(), swapped, c);
    const double s_hv = band_slope(q, t000, period, root, root);
    CHECK(s_vh * s_hv == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mismatch is symmetric under a full V-H exchange") {
    const auto p = ktp_provider(1e-3, 2e-3, 3e-3);
    AxisMapping swapped;
    swapped.v = CrystalAxis::Y;
    swapped.h = CrystalAxis::Z;
    swapped.s = CrystalAxis::Y;
    GeometricCorrections c;
    c.set(l00v, 2e-3); // exchanged corrections
    c.set(l00h, 1e-3);
    c.set(l00s, 3e-3);
    const ModelIndexProvider q(p.materials(), swapped, c);
    for (double lv : {795.0, 801.0})
        for (double lh : {799.0, 812.0})
            CHECK(phase_mismatch(p, t000, lv, lh, 9.0) ==
                  doctest::Approx(phase_mismatch(q, t000, lh, lv, 9.0)).epsilon(1e-14));
}

TEST_CASE("off-band points and vertical bands are rejected") {
    const auto p = ktp_provider();
    const double period = fit_poling_period(p, t000, 800.0);
    CHECK_THROWS_AS(band_slope(p, t000, period, 805.0, 812.0), ContractError);
}

TEST_CASE("optional gaussian smear conserves the map roughly and stays off by default") {
    const auto p = ktp_provider();
    const double period = fit_poling_period(p, t000, 803.0);
    WavelengthRange r{801.0, 805.0, 0.1};
    BandMap map = band_map(p, t000, period, 4.8, r, r);
    const BandMap reference = map;
    gaussian_blur(map, 0.6);
    double before = 0.0, after = 0.0;
    for (size_t k = 0; k < map.intensity.size(); ++k) {
        before += reference.intensity[k];
        after += map.intensity[k];
    }
    CHECK(after == doctest::Approx(before).epsilon(0.05));
    CHECK_THROWS_AS(gaussian_blur(map, 0.0), ValidationError);
}
