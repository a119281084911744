#include "modemix/sellmeier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "modemix/units.hpp"

namespace modemix {

const char* to_string(CrystalAxis axis) {
    switch (axis) {
        case CrystalAxis::X: return "x";
        case CrystalAxis::Y: return "y";
        default: return "z";
    }
}

const char* to_string(Pol pol) {
    switch (pol) {
        case Pol::V: return "V";
        case Pol::H: return "H";
        default: return "S";
    }
}

CrystalAxis parse_axis(const std::string& s) {
    if (s == "x" || s == "X") return CrystalAxis::X;
    if (s == "y" || s == "Y") return CrystalAxis::Y;
    if (s == "z" || s == "Z") return CrystalAxis::Z;
    throw ValidationError("unknown crystal axis '" + s + "' (expected x, y or z)");
}

Pol parse_pol(const std::string& s) {
    if (s == "V" || s == "v") return Pol::V;
    if (s == "H" || s == "h") return Pol::H;
    if (s == "S" || s == "s") return Pol::S;
    throw ValidationError("unknown polarization tag '" + s + "' (expected V, H or S)");
}

double SellmeierCoefficients::n_squared(double lambda_um) const {
    const double l2 = lambda_um * lambda_um;
    double n2 = a - d * l2;
    for (const auto& [b, c] : resonances) n2 += b / (l2 - c);
    return n2;
}

double SellmeierCoefficients::dn2_dlambda(double lambda_um) const {
    const double l2 = lambda_um * lambda_um;
    double g = -2.0 * d * lambda_um;
    for (const auto& [b, c] : resonances) {
        const double den = l2 - c;
        g -= 2.0 * b * lambda_um / (den * den);
    }
    return g;
}

SellmeierModel::SellmeierModel(std::array<SellmeierCoefficients, 3> axes,
                               double lambda_min_nm, double lambda_max_nm)
    : axes_(std::move(axes)), lambda_min_nm_(lambda_min_nm), lambda_max_nm_(lambda_max_nm) {
    if (!(lambda_min_nm_ < lambda_max_nm_))
        throw ValidationError("Sellmeier validity range is empty: lambda_min must be < lambda_max");
    // n must stay real and > 1 across the declared window; probe a grid.
    for (int ax = 0; ax < 3; ++ax) {
        for (int k = 0; k <= 64; ++k) {
            const double lam = lambda_min_nm_ + (lambda_max_nm_ - lambda_min_nm_) * k / 64.0;
            const double n2 = axes_[ax].n_squared(nm_to_um(lam));
            if (!(n2 > 1.0) || !std::isfinite(n2))
                throw ValidationError("Sellmeier set for axis " + std::string(to_string(CrystalAxis(ax))) +
                                      " gives n^2 <= 1 or non-finite inside its validity range");
        }
    }
}

SellmeierModel SellmeierModel::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open Sellmeier coefficient file '" + path + "'");
    std::array<SellmeierCoefficients, 3> axes;
    std::array<bool, 3> seen{false, false, false};
    double lo = 0.0, hi = 0.0;
    bool have_range = false;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string axis_tag;
        if (!(ss >> axis_tag)) continue; // blank line
        const CrystalAxis axis = parse_axis(axis_tag);
        SellmeierCoefficients c;
        double b1, c1, b2, c2, mn, mx;
        if (!(ss >> c.a >> b1 >> c1 >> b2 >> c2 >> c.d >> mn >> mx))
            throw ValidationError("malformed Sellmeier record at " + path + ":" +
                                  std::to_string(lineno));
        if (b1 != 0.0 || c1 != 0.0) c.resonances.emplace_back(b1, c1);
        if (b2 != 0.0 || c2 != 0.0) c.resonances.emplace_back(b2, c2);
        axes[static_cast<int>(axis)] = c;
        seen[static_cast<int>(axis)] = true;
        if (have_range && (mn != lo || mx != hi))
            throw ValidationError("inconsistent validity ranges across axes in " + path);
        lo = mn;
        hi = mx;
        have_range = true;
    }
    if (!(seen[0] && seen[1] && seen[2]))
        throw ValidationError("Sellmeier file " + path + " must define all of axes x, y, z");
    return SellmeierModel(axes, lo, hi);
}

SellmeierModel SellmeierModel::constant(double n, double lambda_min_nm, double lambda_max_nm) {
    SellmeierCoefficients c;
    c.a = n * n;
    return SellmeierModel({c, c, c}, lambda_min_nm, lambda_max_nm);
}

void SellmeierModel::check_range(double lambda_nm, bool strict) const {
    const bool ok = strict ? (lambda_nm > lambda_min_nm_ && lambda_nm < lambda_max_nm_)
                           : (lambda_nm >= lambda_min_nm_ && lambda_nm <= lambda_max_nm_);
    if (!ok) {
        std::ostringstream msg;
        msg << "wavelength " << lambda_nm << " nm outside "
            << (strict ? "open" : "closed") << " validity range ["
            << lambda_min_nm_ << ", " << lambda_max_nm_ << "] nm";
        if (lambda_nm <= lambda_min_nm_)
            msg << " (violates lower bound " << lambda_min_nm_ << " nm)";
        else
            msg << " (violates upper bound " << lambda_max_nm_ << " nm)";
        throw RangeError(msg.str());
    }
}

double SellmeierModel::index(CrystalAxis axis, double lambda_nm) const {
    check_range(lambda_nm, /*strict=*/false);
    return std::sqrt(axes_[static_cast<int>(axis)].n_squared(nm_to_um(lambda_nm)));
}

double SellmeierModel::index_derivative(CrystalAxis axis, double lambda_nm) const {
    check_range(lambda_nm, /*strict=*/true);
    const double lambda_um = nm_to_um(lambda_nm);
    const auto& c = axes_[static_cast<int>(axis)];
    const double n = std::sqrt(c.n_squared(lambda_um));
    // dn/dlambda = (d n^2/dlambda) / (2 n); convert from per-um to per-nm.
    return c.dn2_dlambda(lambda_um) / (2.0 * n) * 1e-3;
}

double SellmeierModel::group_index(CrystalAxis axis, double lambda_nm) const {
    check_range(lambda_nm, /*strict=*/true);
    return index(axis, lambda_nm) - lambda_nm * index_derivative(axis, lambda_nm);
}

} // namespace modemix
