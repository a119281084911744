#include "modemix/mode_solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "modemix/io.hpp"
#include "modemix/units.hpp"

namespace modemix {

ModeLabel parse_mode_label(const std::string& s) {
    std::string t = s;
    t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
    if (t.size() != 3 || !std::isdigit(static_cast<unsigned char>(t[0])) ||
        !std::isdigit(static_cast<unsigned char>(t[1])))
        throw ValidationError("malformed mode label '" + s + "' (expected e.g. 02H or 02_H)");
    ModeLabel label;
    label.i = t[0] - '0';
    label.j = t[1] - '0';
    label.pol = parse_pol(t.substr(2));
    return label;
}

FieldOrientation default_orientation(Pol pol) {
    return pol == Pol::V ? FieldOrientation::Vertical : FieldOrientation::Horizontal;
}

double ModeField::inner_product(const ModeField& o) const {
    double acc = 0.0;
    for (size_t k = 0; k < dominant.size(); ++k)
        acc += dominant[k] * o.dominant[k] + minor[k] * o.minor[k];
    return acc * hx_um * hy_um;
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// Coupled transverse-E finite-difference operator:
//   beta^2 Ex = Lap(Ex) + k0^2 eps Ex + d/dx [ Lx Ex + Ly Ey ]
//   beta^2 Ey = Lap(Ey) + k0^2 eps Ey + d/dy [ Lx Ex + Ly Ey ]
// with L = grad(ln eps); exact in both 1D slab limits (TE and TM).
// Unknown ordering: [Ex at interior nodes; Ey at interior nodes],
// zero field on the outer boundary.
SpMat assemble_operator(const IndexGrid& g, double k0) {
    const int nx = g.nx, ny = g.ny;
    const int nix = nx - 2, niy = ny - 2;
    const std::ptrdiff_t nint = static_cast<std::ptrdiff_t>(nix) * niy;
    const double hx = g.hx_um, hy = g.hy_um;

    auto nid = [nx](int ix, int iy) { return static_cast<size_t>(iy) * nx + ix; };
    std::vector<double> lneps(static_cast<size_t>(nx) * ny), eps(lneps.size());
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double e = g.at(ix, iy) * g.at(ix, iy);
            eps[nid(ix, iy)] = e;
            lneps[nid(ix, iy)] = std::log(e);
        }

    // grad(ln eps), needed at interior nodes only
    std::vector<double> lx(lneps.size(), 0.0), ly(lneps.size(), 0.0);
    for (int iy = 1; iy < ny - 1; ++iy)
        for (int ix = 1; ix < nx - 1; ++ix) {
            lx[nid(ix, iy)] = (lneps[nid(ix + 1, iy)] - lneps[nid(ix - 1, iy)]) / (2.0 * hx);
            ly[nid(ix, iy)] = (lneps[nid(ix, iy + 1)] - lneps[nid(ix, iy - 1)]) / (2.0 * hy);
        }

    auto interior = [&](int ix, int iy) { return ix >= 1 && ix <= nx - 2 && iy >= 1 && iy <= ny - 2; };
    auto pidx = [&](int ix, int iy) {
        return static_cast<std::ptrdiff_t>(iy - 1) * nix + (ix - 1);
    };

    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<size_t>(nint) * 12);
    const double ax = 1.0 / (hx * hx), ay = 1.0 / (hy * hy);
    const double k02 = k0 * k0;

    for (int iy = 1; iy <= ny - 2; ++iy) {
        for (int ix = 1; ix <= nx - 2; ++ix) {
            const std::ptrdiff_t p = pidx(ix, iy);
            const std::ptrdiff_t rx = p;        // Ex row
            const std::ptrdiff_t ry = nint + p; // Ey row
            const double diag = -2.0 * ax - 2.0 * ay + k02 * eps[nid(ix, iy)];
            trip.emplace_back(rx, rx, diag);
            trip.emplace_back(ry, ry, diag);

            if (interior(ix + 1, iy)) {
                const std::ptrdiff_t q = pidx(ix + 1, iy);
                trip.emplace_back(rx, q, ax + lx[nid(ix + 1, iy)] / (2.0 * hx));
                trip.emplace_back(rx, nint + q, ly[nid(ix + 1, iy)] / (2.0 * hx));
                trip.emplace_back(ry, nint + q, ax);
            }
            if (interior(ix - 1, iy)) {
                const std::ptrdiff_t q = pidx(ix - 1, iy);
                trip.emplace_back(rx, q, ax - lx[nid(ix - 1, iy)] / (2.0 * hx));
                trip.emplace_back(rx, nint + q, -ly[nid(ix - 1, iy)] / (2.0 * hx));
                trip.emplace_back(ry, nint + q, ax);
            }
            if (interior(ix, iy + 1)) {
                const std::ptrdiff_t q = pidx(ix, iy + 1);
                trip.emplace_back(ry, nint + q, ay + ly[nid(ix, iy + 1)] / (2.0 * hy));
                trip.emplace_back(ry, q, lx[nid(ix, iy + 1)] / (2.0 * hy));
                trip.emplace_back(rx, q, ay);
            }
            if (interior(ix, iy - 1)) {
                const std::ptrdiff_t q = pidx(ix, iy - 1);
                trip.emplace_back(ry, nint + q, ay - ly[nid(ix, iy - 1)] / (2.0 * hy));
                trip.emplace_back(ry, q, -lx[nid(ix, iy - 1)] / (2.0 * hy));
                trip.emplace_back(rx, q, ay);
            }
        }
    }

    SpMat A(2 * nint, 2 * nint);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    return A;
}

struct RitzPair {
    double beta2 = 0.0;
    Eigen::VectorXd vec;
    double residual = 0.0;
};

// Shift-invert Arnoldi around sigma; returns Ritz pairs with beta^2 inside
// (beta2_lo, beta2_hi], deduplicated, sorted by decreasing beta^2.
std::vector<RitzPair> shift_invert_eigs(const SpMat& A, double sigma, double beta2_lo,
                                        double beta2_hi, int krylov_dim, std::uint32_t seed,
                                        const Eigen::SparseLU<SpMat>& lu) {
    const std::ptrdiff_t n = A.rows();
    const int m = std::min<std::ptrdiff_t>(krylov_dim, n);

    Eigen::MatrixXd v_basis(n, m + 1);
    Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m);

    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    Eigen::VectorXd v0(n);
    for (std::ptrdiff_t k = 0; k < n; ++k) v0[k] = ud(rng);
    v0.normalize();
    v_basis.col(0) = v0;

    int built = m;
    for (int j = 0; j < m; ++j) {
        Eigen::VectorXd w = lu.solve(v_basis.col(j));
        for (int pass = 0; pass < 2; ++pass)
            for (int i = 0; i <= j; ++i) {
                const double c = v_basis.col(i).dot(w);
                hess(i, j) += c;
                w -= c * v_basis.col(i);
            }
        const double beta = w.norm();
        hess(j + 1, j) = beta;
        if (beta < 1e-12) { // invariant subspace reached
            built = j + 1;
            break;
        }
        v_basis.col(j + 1) = w / beta;
    }

    Eigen::EigenSolver<Eigen::MatrixXd> es(hess.topLeftCorner(built, built));
    if (es.info() != Eigen::Success)
        throw SolverError("Hessenberg eigendecomposition failed in shift-invert Arnoldi");

    std::vector<RitzPair> out;
    for (int k = 0; k < built; ++k) {
        const std::complex<double> theta = es.eigenvalues()[k];
        if (std::abs(theta) < 1e-300) continue;
        const std::complex<double> beta2c = sigma + 1.0 / theta;
        if (std::abs(beta2c.imag()) > 1e-8 * std::abs(beta2c.real())) continue;
        const double beta2 = beta2c.real();
        if (!(beta2 > beta2_lo && beta2 <= beta2_hi)) continue;
        Eigen::VectorXcd yc = es.eigenvectors().col(k);
        Eigen::VectorXd y = yc.real();
        if (y.norm() < 1e-12) y = yc.imag();
        RitzPair rp;
        rp.beta2 = beta2;
        rp.vec = v_basis.leftCols(built) * y;
        const double vnorm = rp.vec.norm();
        if (vnorm < 1e-300) continue;
        rp.vec /= vnorm;
        rp.residual = (A * rp.vec - beta2 * rp.vec).norm();
        // conjugate pairs and repeated Ritz values collapse to one entry
        bool dup = false;
        for (const auto& q : out)
            if (std::abs(q.beta2 - beta2) < 1e-12 * std::abs(beta2) &&
                std::abs(std::abs(q.vec.dot(rp.vec)) - 1.0) < 1e-6)
                dup = true;
        if (!dup) out.push_back(std::move(rp));
    }
    std::sort(out.begin(), out.end(),
              [](const RitzPair& a, const RitzPair& b) { return a.beta2 > b.beta2; });
    return out;
}

// Cut rows/columns for node counting: the peak of the dominant
// component's marginal energy along each direction. The raw intensity
// centroid sits exactly on a nodal line for odd-order modes, where the
// cut would see nothing.
void cut_indices(const ModeField& f, int& ixc, int& iyc) {
    std::vector<double> mx(f.nx, 0.0), my(f.ny, 0.0);
    double total = 0.0;
    for (int iy = 0; iy < f.ny; ++iy)
        for (int ix = 0; ix < f.nx; ++ix) {
            const double w = f.dom(ix, iy) * f.dom(ix, iy);
            mx[ix] += w;
            my[iy] += w;
            total += w;
        }
    if (total <= 0.0) throw ContractError("classify_mode: field is identically zero");
    ixc = static_cast<int>(std::max_element(mx.begin(), mx.end()) - mx.begin());
    iyc = static_cast<int>(std::max_element(my.begin(), my.end()) - my.begin());
}

int count_sign_changes(const std::vector<double>& cut, double peak) {
    const double thresh = 1e-3 * peak;
    int changes = 0;
    double prev = 0.0;
    bool have_prev = false;
    for (double v : cut) {
        if (std::abs(v) <= thresh) continue;
        if (have_prev && v * prev < 0.0) ++changes;
        prev = v;
        have_prev = true;
    }
    return changes;
}

} // namespace

ModeLabel classify_mode(const ModeField& mode, Pol pol) {
    int ixc = 0, iyc = 0;
    cut_indices(mode, ixc, iyc);
    double peak = 0.0;
    for (double v : mode.dominant) peak = std::max(peak, std::abs(v));
    if (peak <= 0.0) throw ContractError("classify_mode: dominant component is zero");

    std::vector<double> row(mode.nx), col(mode.ny);
    for (int ix = 0; ix < mode.nx; ++ix) row[ix] = mode.dom(ix, iyc);
    for (int iy = 0; iy < mode.ny; ++iy) col[iy] = mode.dom(ixc, iy);

    ModeLabel label;
    label.i = count_sign_changes(row, peak);
    label.j = count_sign_changes(col, peak);
    label.pol = pol;
    return label;
}

std::vector<double> mode_intensity_image(const ModeField& mode) {
    std::vector<double> img(mode.dominant.size());
    double peak = 0.0;
    for (size_t k = 0; k < img.size(); ++k) {
        img[k] = mode.dominant[k] * mode.dominant[k] + mode.minor[k] * mode.minor[k];
        peak = std::max(peak, img[k]);
    }
    if (peak > 0.0)
        for (double& v : img) v /= peak;
    return img;
}

void write_intensity_csv(const ModeField& mode, std::ostream& out) {
    const auto img = mode_intensity_image(mode);
    out << "# schema_version 1\n";
    out << "x_um,y_um,intensity\n";
    for (int iy = 0; iy < mode.ny; ++iy)
        for (int ix = 0; ix < mode.nx; ++ix)
            out << format_double(mode.x0_um + ix * mode.hx_um) << ','
                << format_double(mode.y0_um + iy * mode.hy_um) << ','
                << format_double(img[static_cast<size_t>(iy) * mode.nx + ix]) << '\n';
}

void write_intensity_pgm(const ModeField& mode, std::ostream& out) {
    const auto img = mode_intensity_image(mode);
    out << "P2\n# schema_version 1\n" << mode.nx << ' ' << mode.ny << "\n255\n";
    for (int iy = 0; iy < mode.ny; ++iy) {
        for (int ix = 0; ix < mode.nx; ++ix)
            out << static_cast<int>(std::lround(img[static_cast<size_t>(iy) * mode.nx + ix] * 255.0))
                << (ix + 1 == mode.nx ? '\n' : ' ');
    }
}

ModeSolveResult solve_modes(const IndexGrid& grid, Pol pol, int count,
                            FieldOrientation orientation, const SolveOptions& options) {
    if (count < 1) throw ValidationError("solve_modes: count must be >= 1");
    if (grid.nx < 5 || grid.ny < 5)
        throw ValidationError("solve_modes: grid too small (need at least 5x5 nodes)");

    ModeSolveResult result;
    const double n_max = grid.max_index();
    const double n_clad = grid.cladding_index();
    if (n_max - n_clad < 1e-12) {
        result.diagnostic = "no guiding structure: peak index equals the cladding index";
        return result;
    }

    // The guided field is evanescent in the superstrate with a decay length
    // far below any practical grid step, so rows of exact air (n = 1) are
    // folded into the zero-field boundary: the surface becomes a Dirichlet
    // line and the interior stencil never straddles the index jump.
    int clip_rows = 0;
    while (clip_rows < grid.ny - 4) {
        bool all_air = true;
        for (int ix = 0; ix < grid.nx && all_air; ++ix)
            if (grid.at(ix, clip_rows) != 1.0) all_air = false;
        if (!all_air) break;
        ++clip_rows;
    }
    IndexGrid clipped;
    const IndexGrid* work = &grid;
    if (clip_rows > 0) {
        clipped.x0_um = grid.x0_um;
        clipped.y0_um = grid.y_um(clip_rows);
        clipped.hx_um = grid.hx_um;
        clipped.hy_um = grid.hy_um;
        clipped.nx = grid.nx;
        clipped.ny = grid.ny - clip_rows;
        clipped.axis = grid.axis;
        clipped.lambda_nm = grid.lambda_nm;
        clipped.n.assign(grid.n.begin() + static_cast<size_t>(clip_rows) * grid.nx,
                         grid.n.end());
        work = &clipped;
    }

    const double k0 = vacuum_wavenumber_per_um(grid.lambda_nm);
    const SpMat a_op = assemble_operator(*work, k0);
    const double sigma = n_max * n_max * k0 * k0 * (1.0 - 1e-9);
    const double beta2_lo = n_clad * n_clad * k0 * k0;
    const double beta2_hi = n_max * n_max * k0 * k0;

    SpMat shifted = a_op;
    {
        SpMat eye(a_op.rows(), a_op.cols());
        eye.setIdentity();
        shifted -= sigma * eye;
    }
    Eigen::SparseLU<SpMat> lu;
    lu.analyzePattern(shifted);
    lu.factorize(shifted);
    if (lu.info() != Eigen::Success)
        throw SolverError("sparse LU factorization of the shifted operator failed");

    // The operator holds both the vertical and horizontal branch; ask for
    // enough Ritz pairs to cover `count` modes of the requested branch.
    int m = options.krylov_dim > 0 ? options.krylov_dim : std::max(40, 16 + 6 * count);
    const std::ptrdiff_t nint = a_op.rows() / 2;

    std::vector<RitzPair> pairs;
    std::vector<const RitzPair*> selected;
    for (int attempt = 0;; ++attempt) {
        pairs = shift_invert_eigs(a_op, sigma, beta2_lo, beta2_hi, m, options.seed, lu);
        selected.clear();
        double worst = 0.0;
        for (const auto& rp : pairs) {
            if (static_cast<int>(selected.size()) >= count) break;
            const double n_eff = std::sqrt(rp.beta2) / k0;
            if (!(n_eff > n_clad + 1e-9)) continue;
            double ex_energy = 0.0, ey_energy = 0.0;
            for (std::ptrdiff_t q = 0; q < nint; ++q) {
                ex_energy += rp.vec[q] * rp.vec[q];
                ey_energy += rp.vec[nint + q] * rp.vec[nint + q];
            }
            const bool vertical = ey_energy >= ex_energy;
            if ((orientation == FieldOrientation::Vertical) != vertical) continue;
            selected.push_back(&rp);
            worst = std::max(worst, rp.residual);
        }
        if (selected.empty() || worst <= options.residual_tol) break;
        if (attempt >= options.max_restarts) {
            std::ostringstream msg;
            msg << "eigensolver did not reach residual tolerance " << options.residual_tol
                << " (worst residual " << worst << " with Krylov dimension " << m << ")";
            throw SolverError(msg.str());
        }
        m = m * 3 / 2 + 8;
    }
    result.arnoldi_dim = m;

    for (const RitzPair* rpp : selected) {
        const RitzPair& rp = *rpp;
        const double n_eff = std::sqrt(rp.beta2) / k0;
        double ex_energy = 0.0, ey_energy = 0.0;
        for (std::ptrdiff_t q = 0; q < nint; ++q) {
            ex_energy += rp.vec[q] * rp.vec[q];
            ey_energy += rp.vec[nint + q] * rp.vec[nint + q];
        }
        const bool vertical = ey_energy >= ex_energy;

        ModeField f;
        f.lambda_nm = grid.lambda_nm;
        f.n_eff = n_eff;
        f.x0_um = grid.x0_um;
        f.y0_um = grid.y0_um;
        f.hx_um = grid.hx_um;
        f.hy_um = grid.hy_um;
        f.nx = grid.nx;
        f.ny = grid.ny;
        f.dominant.assign(static_cast<size_t>(grid.nx) * grid.ny, 0.0);
        f.minor.assign(f.dominant.size(), 0.0);
        f.residual = rp.residual;

        const int nix = work->nx - 2;
        for (int iy = 1; iy <= work->ny - 2; ++iy)
            for (int ix = 1; ix <= work->nx - 2; ++ix) {
                const std::ptrdiff_t p = static_cast<std::ptrdiff_t>(iy - 1) * nix + (ix - 1);
                const double ex = rp.vec[p];
                const double ey = rp.vec[nint + p];
                const size_t node = static_cast<size_t>(iy + clip_rows) * grid.nx + ix;
                f.dominant[node] = vertical ? ey : ex;
                f.minor[node] = vertical ? ex : ey;
            }

        // normalize (discrete integral of |field|^2 = 1) with positive peak
        double norm2 = 0.0, peak = 0.0;
        size_t peak_at = 0;
        for (size_t q = 0; q < f.dominant.size(); ++q) {
            norm2 += f.dominant[q] * f.dominant[q] + f.minor[q] * f.minor[q];
            if (std::abs(f.dominant[q]) > peak) {
                peak = std::abs(f.dominant[q]);
                peak_at = q;
            }
        }
        norm2 *= f.hx_um * f.hy_um;
        const double scale = (f.dominant[peak_at] < 0.0 ? -1.0 : 1.0) / std::sqrt(norm2);
        for (size_t q = 0; q < f.dominant.size(); ++q) {
            f.dominant[q] *= scale;
            f.minor[q] *= scale;
        }
        f.normalized = true;
        const double dom_e = vertical ? ey_energy : ex_energy;
        f.dominant_energy_fraction = dom_e / (ex_energy + ey_energy);
        f.label = classify_mode(f, pol);
        result.modes.push_back(std::move(f));
        result.worst_residual = std::max(result.worst_residual, rp.residual);
    }

    if (result.modes.empty())
        result.diagnostic = "no guided mode: no eigenvalue above the cladding index " +
                            format_double(n_clad) + " on the requested branch";
    return result;
}

} // namespace modemix
