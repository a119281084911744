#include "modemix/phase_matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "modemix/units.hpp"

namespace modemix {

bool Triplet::operator<(const Triplet& o) const {
    if (!(v == o.v)) return v < o.v;
    if (!(h == o.h)) return h < o.h;
    return s < o.s;
}

Triplet parse_triplet(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
    const auto plus = t.find('+');
    auto arrow = t.find("->");
    size_t arrow_len = 2;
    if (arrow == std::string::npos) {
        arrow = t.find('>');
        arrow_len = 1;
    }
    if (plus == std::string::npos || arrow == std::string::npos || arrow < plus)
        throw ValidationError("malformed triplet '" + s + "' (expected e.g. 00V+00H>00S)");
    Triplet out;
    out.v = parse_mode_label(t.substr(0, plus));
    out.h = parse_mode_label(t.substr(plus + 1, arrow - plus - 1));
    out.s = parse_mode_label(t.substr(arrow + arrow_len));
    if (out.v.pol != Pol::V || out.h.pol != Pol::H || out.s.pol != Pol::S)
        throw ValidationError("triplet '" + s + "' must combine V + H -> S polarizations");
    return out;
}

double phase_mismatch(const IndexProvider& provider, const Triplet& triplet,
                      double lambda_v_nm, double lambda_h_nm, double poling_period_um) {
    if (!(lambda_v_nm > 0.0) || !(lambda_h_nm > 0.0))
        throw ValidationError("phase_mismatch: wavelengths must be positive");
    if (!(poling_period_um != 0.0))
        throw ValidationError("phase_mismatch: poling period must be nonzero");
    const double lambda_s_nm = sum_frequency_wavelength_nm(lambda_v_nm, lambda_h_nm);
    const double n_v = provider.effective_index(triplet.v, lambda_v_nm);
    const double n_h = provider.effective_index(triplet.h, lambda_h_nm);
    const double n_s = provider.effective_index(triplet.s, lambda_s_nm);
    return 2.0 * kPi *
               (n_s / nm_to_um(lambda_s_nm) - n_v / nm_to_um(lambda_v_nm) -
                n_h / nm_to_um(lambda_h_nm)) -
           2.0 * kPi / poling_period_um;
}

DegenerateResult degenerate_wavelengths(const IndexProvider& provider, const Triplet& triplet,
                                        double poling_period_um, const DegenerateSearch& search) {
    DegenerateResult result;
    const int n = std::max(3, search.scan_points);

    auto eval = [&](double lam) -> std::optional<double> {
        try {
            return phase_mismatch(provider, triplet, lam, lam, poling_period_um);
        } catch (const RangeError&) {
            return std::nullopt;
        }
    };

    std::vector<std::pair<double, double>> samples; // (lambda, dbeta)
    for (int k = 0; k < n; ++k) {
        const double lam =
            search.lambda_lo_nm + (search.lambda_hi_nm - search.lambda_lo_nm) * k / (n - 1);
        if (auto v = eval(lam)) samples.emplace_back(lam, *v);
    }
    if (samples.size() < 2)
        throw RangeError("degenerate_wavelengths: search window lies outside the validity range");

    result.dbeta_lo = samples.front().second;
    result.dbeta_hi = samples.back().second;

    bool all_zero = true;
    for (const auto& [lam, v] : samples)
        if (std::abs(v) > search.dbeta_tol) all_zero = false;
    if (all_zero) {
        result.everywhere = true; // flagged, not iterated
        return result;
    }

    for (size_t k = 0; k + 1 < samples.size(); ++k) {
        auto [la, fa] = samples[k];
        auto [lb, fb] = samples[k + 1];
        if (fa == 0.0) {
            result.roots_nm.push_back(la);
            continue;
        }
        if (fa * fb >= 0.0) continue;
        // bisection; dbeta is smooth, the bracket is genuine
        for (int it = 0; it < 200; ++it) {
            const double lm = 0.5 * (la + lb);
            const auto fm_opt = eval(lm);
            if (!fm_opt) break;
            const double fm = *fm_opt;
            if (fm == 0.0) { // exact zero: lm is the root
                la = lb = lm;
                break;
            }
            const bool tight = (lb - la) < 1e-9 || (lb - la) < 1e-13 * lm;
            if ((std::abs(fm) <= search.dbeta_tol && tight) || (lb - la) < 1e-13 * lm) {
                la = lb = lm;
                break;
            }
            if (fa * fm < 0.0) {
                lb = lm;
                fb = fm;
            } else {
                la = lm;
                fa = fm;
            }
        }
        result.roots_nm.push_back(0.5 * (la + lb));
    }
    if (samples.back().second == 0.0) result.roots_nm.push_back(samples.back().first);

    std::sort(result.roots_nm.begin(), result.roots_nm.end());
    if (result.roots_nm.empty()) {
        std::ostringstream msg;
        msg << "no degenerate phase-matching root for " << triplet.str() << " in ["
            << search.lambda_lo_nm << ", " << search.lambda_hi_nm << "] nm; endpoint dbeta = "
            << result.dbeta_lo << " and " << result.dbeta_hi << " rad/um";
        throw NoRootError(msg.str());
    }
    return result;
}

double degenerate_wavelength(const IndexProvider& provider, const Triplet& triplet,
                             double poling_period_um, const DegenerateSearch& search) {
    const auto r = degenerate_wavelengths(provider, triplet, poling_period_um, search);
    if (r.everywhere)
        throw SolverError("degenerate_wavelength: phase mismatch vanishes identically over the window");
    return r.roots_nm.front();
}

double fit_poling_period(const IndexProvider& provider, const Triplet& triplet,
                         double lambda_degenerate_nm) {
    const double lam = lambda_degenerate_nm;
    const double lambda_s_nm = sum_frequency_wavelength_nm(lam, lam);
    const double bracket = provider.effective_index(triplet.s, lambda_s_nm) / nm_to_um(lambda_s_nm) -
                           provider.effective_index(triplet.v, lam) / nm_to_um(lam) -
                           provider.effective_index(triplet.h, lam) / nm_to_um(lam);
    if (!(bracket > 0.0)) {
        std::ostringstream msg;
        msg << "fit_poling_period: index bracket " << bracket
            << " 1/um is not positive at " << lam
            << " nm; first-order QPM sign convention violated for " << triplet.str();
        throw SignError(msg.str());
    }
    return 1.0 / bracket;
}

std::vector<double> WavelengthRange::grid() const {
    if (!(step_nm > 0.0)) throw ValidationError("wavelength range: step must be > 0");
    if (!(stop_nm >= start_nm)) throw ValidationError("wavelength range: stop must be >= start");
    std::vector<double> g;
    const int n = static_cast<int>(std::floor((stop_nm - start_nm) / step_nm + 1e-9)) + 1;
    g.reserve(n);
    for (int k = 0; k < n; ++k) g.push_back(start_nm + k * step_nm);
    return g;
}

BandMap band_map(const IndexProvider& provider, const Triplet& triplet,
                 double poling_period_um, double length_mm, const WavelengthRange& range_v,
                 const WavelengthRange& range_h) {
    BandMap map;
    map.lambda_v_nm = range_v.grid();
    map.lambda_h_nm = range_h.grid();
    map.triplet = triplet;
    map.poling_period_um = poling_period_um;
    map.length_mm = length_mm;
    map.intensity.resize(map.lambda_v_nm.size() * map.lambda_h_nm.size());
    const double half_length_um = 0.5 * mm_to_um(length_mm);
    for (size_t iv = 0; iv < map.lambda_v_nm.size(); ++iv)
        for (size_t ih = 0; ih < map.lambda_h_nm.size(); ++ih) {
            double value;
            try {
                const double db = phase_mismatch(provider, triplet, map.lambda_v_nm[iv],
                                                 map.lambda_h_nm[ih], poling_period_um);
                const double s = sinc(db * half_length_um);
                value = s * s;
            } catch (const RangeError&) {
                value = std::numeric_limits<double>::quiet_NaN(); // masked cell
            }
            map.intensity[iv * map.lambda_h_nm.size() + ih] = value;
        }
    return map;
}

std::vector<std::pair<double, double>> degenerate_scan(const IndexProvider& provider,
                                                       const Triplet& triplet,
                                                       double poling_period_um, double length_mm,
                                                       const WavelengthRange& range) {
    std::vector<std::pair<double, double>> out;
    const double half_length_um = 0.5 * mm_to_um(length_mm);
    for (double lam : range.grid()) {
        double value;
        try {
            const double db = phase_mismatch(provider, triplet, lam, lam, poling_period_um);
            const double s = sinc(db * half_length_um);
            value = s * s;
        } catch (const RangeError&) {
            value = std::numeric_limits<double>::quiet_NaN();
        }
        out.emplace_back(lam, value);
    }
    return out;
}

void gaussian_blur(BandMap& map, double fwhm_nm) {
    if (!(fwhm_nm > 0.0)) throw ValidationError("gaussian_blur: FWHM must be > 0");
    auto blur_axis = [&](const std::vector<double>& axis, bool along_v) {
        const double sigma = fwhm_nm / (2.0 * std::sqrt(2.0 * std::log(2.0)));
        if (axis.size() < 2) return;
        const double step = axis[1] - axis[0];
        const int half = std::max(1, static_cast<int>(std::ceil(3.0 * sigma / step)));
        std::vector<double> kernel(2 * half + 1);
        double sum = 0.0;
        for (int k = -half; k <= half; ++k)
            sum += kernel[k + half] = std::exp(-0.5 * (k * step) * (k * step) / (sigma * sigma));
        for (double& w : kernel) w /= sum;

        const int nv = static_cast<int>(map.lambda_v_nm.size());
        const int nh = static_cast<int>(map.lambda_h_nm.size());
        std::vector<double> next(map.intensity.size());
        for (int iv = 0; iv < nv; ++iv)
            for (int ih = 0; ih < nh; ++ih) {
                double acc = 0.0, wsum = 0.0;
                for (int k = -half; k <= half; ++k) {
                    const int jv = along_v ? iv + k : iv;
                    const int jh = along_v ? ih : ih + k;
                    if (jv < 0 || jv >= nv || jh < 0 || jh >= nh) continue;
                    const double cell = map.intensity[static_cast<size_t>(jv) * nh + jh];
                    if (std::isnan(cell)) continue;
                    acc += kernel[k + half] * cell;
                    wsum += kernel[k + half];
                }
                next[static_cast<size_t>(iv) * nh + ih] =
                    wsum > 0.0 ? acc / wsum : std::numeric_limits<double>::quiet_NaN();
            }
        map.intensity.swap(next);
    };
    blur_axis(map.lambda_v_nm, true);
    blur_axis(map.lambda_h_nm, false);
}

double band_slope(const IndexProvider& provider, const Triplet& triplet,
                  double poling_period_um, double lambda_v_nm, double lambda_h_nm) {
    const double on_band =
        phase_mismatch(provider, triplet, lambda_v_nm, lambda_h_nm, poling_period_um);
    if (std::abs(on_band) > 1e-6)
        throw ContractError("band_slope: point is off band (|dbeta| = " +
                            std::to_string(std::abs(on_band)) + " rad/um, tolerance 1e-6)");
    const double h = 0.01; // nm
    const double dv = (phase_mismatch(provider, triplet, lambda_v_nm + h, lambda_h_nm,
                                      poling_period_um) -
                       phase_mismatch(provider, triplet, lambda_v_nm - h, lambda_h_nm,
                                      poling_period_um)) /
                      (2.0 * h);
    const double dh = (phase_mismatch(provider, triplet, lambda_v_nm, lambda_h_nm + h,
                                      poling_period_um) -
                       phase_mismatch(provider, triplet, lambda_v_nm, lambda_h_nm - h,
                                      poling_period_um)) /
                      (2.0 * h);
    if (std::abs(dh) < 1e-12 * std::max(1.0, std::abs(dv)))
        throw SolverError("band_slope: band is vertical (d dbeta / d lambda_H ~ 0)");
    return -dv / dh;
}

double degenerate_band_fwhm(const IndexProvider& provider, const Triplet& triplet,
                            double poling_period_um, double length_mm, double center_nm) {
    const double half_length_um = 0.5 * mm_to_um(length_mm);
    auto intensity = [&](double lam) {
        const double db = phase_mismatch(provider, triplet, lam, lam, poling_period_um);
        const double s = sinc(db * half_length_um);
        return s * s;
    };
    const double peak = intensity(center_nm);
    if (peak < 0.5)
        throw ContractError("degenerate_band_fwhm: center is not on the band peak");
    auto crossing = [&](double direction) {
        double step = 0.005;
        double prev = center_nm;
        for (int k = 1; k < 40000; ++k) {
            const double lam = center_nm + direction * step * k;
            if (intensity(lam) < 0.5 * peak) {
                // bisect between prev and lam
                double a = prev, b = lam;
                for (int it = 0; it < 80; ++it) {
                    const double mfull = 0.5 * (a + b);
                    if (intensity(mfull) >= 0.5 * peak)
                        a = mfull;
                    else
                        b = mfull;
                }
                return 0.5 * (a + b);
            }
            prev = lam;
        }
        throw SolverError("degenerate_band_fwhm: half-maximum crossing not found");
    };
    return crossing(+1.0) - crossing(-1.0);
}

} // namespace modemix
