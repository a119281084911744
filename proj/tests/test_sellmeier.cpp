#include <doctest.h>

#include <cmath>

#include "modemix/sellmeier.hpp"
#include "modemix/units.hpp"

using namespace modemix;

namespace {
SellmeierModel ktp() {
    return SellmeierModel::from_file(std::string(MODEMIX_SOURCE_DIR) +
                                     "/data/ktp_sellmeier.txt");
}
} // namespace

TEST_CASE("constant material is dispersionless") {
    const auto m = SellmeierModel::constant(1.5);
    CHECK(m.index(CrystalAxis::X, 800.0) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(m.index(CrystalAxis::Z, 400.0) == doctest::Approx(1.5).epsilon(1e-15));
    // group index equals the phase index exactly when dn/dlambda = 0
    CHECK(m.group_index(CrystalAxis::Y, 800.0) == m.index(CrystalAxis::Y, 800.0));
    CHECK(m.index_derivative(CrystalAxis::Y, 633.0) == 0.0);
}

TEST_CASE("KTP z axis matches an independent evaluation of the published formula") {
    const auto m = ktp();
    // python: sqrt(4.59423 + 0.06206/(0.64-0.04763) + 110.80672/(0.64-86.12171))
    CHECK(m.index(CrystalAxis::Z, 800.0) == doctest::Approx(1.844649906982153).epsilon(1e-12));
    // same one-liner for the y axis at both band-relevant wavelengths
    CHECK(m.index(CrystalAxis::Y, 800.0) == doctest::Approx(1.756528661679592).epsilon(1e-12));
    CHECK(m.index(CrystalAxis::Y, 400.0) == doctest::Approx(1.843463064590674).epsilon(1e-12));
}

TEST_CASE("normal dispersion ordering: n(400) > n(800) on the z axis") {
    const auto m = ktp();
    CHECK(m.index(CrystalAxis::Z, 400.0) > m.index(CrystalAxis::Z, 800.0));
}

TEST_CASE("out-of-range wavelengths name the violated bound") {
    const auto m = ktp();
    CHECK_THROWS_AS(m.index(CrystalAxis::X, 100.0), RangeError);
    CHECK_THROWS_AS(m.index(CrystalAxis::X, 9000.0), RangeError);
    try {
        m.index(CrystalAxis::X, 100.0);
    } catch (const RangeError& e) {
        CHECK(std::string(e.what()).find("lower bound") != std::string::npos);
    }
    // group index needs the open interval
    CHECK_THROWS_AS(m.group_index(CrystalAxis::X, m.lambda_min_nm()), RangeError);
    CHECK_NOTHROW(m.index(CrystalAxis::X, m.lambda_min_nm()));
}

TEST_CASE("group index exceeds phase index under normal dispersion") {
    const auto m = ktp();
    for (CrystalAxis ax : {CrystalAxis::X, CrystalAxis::Y, CrystalAxis::Z})
        CHECK(m.group_index(ax, 800.0) > m.index(ax, 800.0));
}

TEST_CASE("analytic and finite-difference derivatives agree to 1e-8") {
    const auto m = ktp();
    const double h = 0.005; // nm, well under the 0.01 nm cap
    for (CrystalAxis ax : {CrystalAxis::X, CrystalAxis::Y, CrystalAxis::Z}) {
        const double fd =
            (m.index(ax, 805.0 + h) - m.index(ax, 805.0 - h)) / (2.0 * h);
        const double an = m.index_derivative(ax, 805.0);
        CHECK(std::abs(fd - an) / std::abs(an) < 1e-8);
        const double ng_fd = m.index(ax, 805.0) - 805.0 * fd;
        CHECK(m.group_index(ax, 805.0) == doctest::Approx(ng_fd).epsilon(1e-8));
    }
}

TEST_CASE("indices are finite, above 1 and monotone decreasing across the band window") {
    const auto m = ktp();
    for (CrystalAxis ax : {CrystalAxis::X, CrystalAxis::Y, CrystalAxis::Z}) {
        double prev = 0.0;
        for (double lam = 792.0; lam <= 815.0 + 1e-9; lam += 0.2) {
            const double n = m.index(ax, lam);
            CHECK(std::isfinite(n));
            CHECK(n > 1.0);
            if (prev != 0.0) CHECK(n < prev);
            prev = n;
        }
    }
}

TEST_CASE("validation rejects empty ranges and non-physical sets") {
    SellmeierCoefficients c;
    c.a = 2.25;
    CHECK_THROWS_AS(SellmeierModel({c, c, c}, 800.0, 800.0), ValidationError);
    SellmeierCoefficients bad;
    bad.a = 0.5; // n^2 < 1
    CHECK_THROWS_AS(SellmeierModel({bad, bad, bad}, 400.0, 800.0), ValidationError);
}

TEST_CASE("axis mapping: every tag maps to one axis, default is type-II KTP") {
    AxisMapping map;
    CHECK(map.axis_for(Pol::V) == CrystalAxis::Z);
    CHECK(map.axis_for(Pol::H) == CrystalAxis::Y);
    CHECK(map.axis_for(Pol::S) == CrystalAxis::Y);
    CHECK_FALSE(map.s_vertical());
}
