#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "modemix/errors.hpp"

namespace modemix {

enum class CrystalAxis { X = 0, Y = 1, Z = 2 };

enum class Pol { V, H, S };

const char* to_string(CrystalAxis axis);
const char* to_string(Pol pol);
CrystalAxis parse_axis(const std::string& s);
Pol parse_pol(const std::string& s);

// One axis of a Sellmeier-type dispersion relation,
//
//   n^2(lambda) = A + sum_k B_k / (lambda^2 - C_k) - D * lambda^2
//
// with lambda in um. This covers the common published KTP coefficient
// sets (single- and double-resonance forms, with or without the
// infrared -D*lambda^2 correction).
struct SellmeierCoefficients {
    double a = 1.0;
    std::vector<std::pair<double, double>> resonances; // (B_k, C_k), C_k in um^2
    double d = 0.0;

    double n_squared(double lambda_um) const;
    double dn2_dlambda(double lambda_um) const; // per um
};

// Bulk-crystal chromatic dispersion, one coefficient set per crystal axis,
// with a shared validity window in nm. Immutable after construction and
// safe to evaluate concurrently.
class SellmeierModel {
public:
    SellmeierModel(std::array<SellmeierCoefficients, 3> axes,
                   double lambda_min_nm, double lambda_max_nm);

    // Reads the bundled coefficient file format (see data/README in repo):
    // one record per axis:  <axis> <A> <B1> <C1> <B2> <C2> <D> <min_nm> <max_nm>
    static SellmeierModel from_file(const std::string& path);

    // Dispersionless test material with the same index on all axes.
    static SellmeierModel constant(double n, double lambda_min_nm = 100.0,
                                   double lambda_max_nm = 10000.0);

    // n(lambda); lambda must lie within the validity range (inclusive).
    double index(CrystalAxis axis, double lambda_nm) const;

    // Group index n_g = n - lambda * dn/dlambda, analytic derivative.
    // lambda must lie strictly inside the validity range.
    double group_index(CrystalAxis axis, double lambda_nm) const;

    // dn/dlambda in 1/nm, analytic.
    double index_derivative(CrystalAxis axis, double lambda_nm) const;

    double lambda_min_nm() const { return lambda_min_nm_; }
    double lambda_max_nm() const { return lambda_max_nm_; }
    bool in_range(double lambda_nm) const {
        return lambda_nm >= lambda_min_nm_ && lambda_nm <= lambda_max_nm_;
    }

private:
    void check_range(double lambda_nm, bool strict) const;

    std::array<SellmeierCoefficients, 3> axes_;
    double lambda_min_nm_;
    double lambda_max_nm_;
};

// Assignment of the polarization tags to crystal axes. The default is the
// usual type-II configuration of an ion-exchanged KTP chip: vertical
// polarization along the crystal z axis, horizontal and sum-frequency
// along y.
struct AxisMapping {
    CrystalAxis v = CrystalAxis::Z;
    CrystalAxis h = CrystalAxis::Y;
    CrystalAxis s = CrystalAxis::Y;

    CrystalAxis axis_for(Pol pol) const {
        switch (pol) {
            case Pol::V: return v;
            case Pol::H: return h;
            default: return s;
        }
    }

    // Lab orientation of the S field: vertical if S shares the V axis,
    // horizontal otherwise (it shares the H axis in the default mapping).
    bool s_vertical() const { return s == v && s != h; }
};

} // namespace modemix
