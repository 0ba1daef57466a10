#include "nlsf/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlsf/errors.hpp"

namespace nlsf {

namespace {

void check_decay(const ComplexField& q) {
    validate(q);
    const double m = max_abs(q);
    if (m == 0.0) return;
    const double edge = std::max(std::abs(q.values.front()), std::abs(q.values.back()));
    if (edge > 1e-8 * m)
        throw EdgeDecay("scattering: potential does not decay at the grid edges");
}

// Potential samples at the two Gauss-Legendre nodes of every cell (cubic
// interpolation from the four surrounding samples), shared across all z
// evaluations on the same field.
struct CellNodes {
    double dx = 0.0;
    std::vector<cplx> a, b; // per cell, nodes at 1/2 -+ sqrt(3)/6
};

cplx interp_cubic(const std::vector<cplx>& u, std::size_t i, double alpha) {
    const std::size_t n = u.size();
    if (i == 0 || i + 2 >= n) // edge cells: the potential is ~0 there anyway
        return (1.0 - alpha) * u[i] + alpha * u[i + 1];
    const double am = alpha - 1.0, ap = alpha + 1.0, a2 = alpha - 2.0;
    return u[i - 1] * (-alpha * am * a2 / 6.0) + u[i] * (ap * am * a2 / 2.0) +
           u[i + 1] * (-ap * alpha * a2 / 2.0) + u[i + 2] * (ap * alpha * am / 6.0);
}

CellNodes gauss_nodes(const ComplexField& q) {
    const double c1 = 0.5 - std::sqrt(3.0) / 6.0;
    const double c2 = 0.5 + std::sqrt(3.0) / 6.0;
    CellNodes nodes;
    nodes.dx = q.dx;
    const std::size_t cells = q.size() - 1;
    nodes.a.resize(cells);
    nodes.b.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        nodes.a[i] = interp_cubic(q.values, i, c1);
        nodes.b[i] = interp_cubic(q.values, i, c2);
    }
    return nodes;
}

// Fourth-order Gauss-Magnus cell step for mu' = A(x) mu with
// A = [[0, q], [-conj(q), 2iz]]: Omega = (h/2)(A1 + A2)
// + (sqrt(3)/12) h^2 [A2, A1]. `sign` = -1 gives the inverse propagator.
Mat2 magnus_cell(cplx qa, cplx qb, cplx two_iz_entry, bool upper, double h, double sign) {
    const Mat2 a1 = upper ? Mat2{0.0, qa, -std::conj(qa), two_iz_entry}
                          : Mat2{two_iz_entry, qa, -std::conj(qa), 0.0};
    const Mat2 a2 = upper ? Mat2{0.0, qb, -std::conj(qb), two_iz_entry}
                          : Mat2{two_iz_entry, qb, -std::conj(qb), 0.0};
    const Mat2 comm = a2 * a1 - a1 * a2;
    const Mat2 omega = (a1 + a2) * cplx(sign * 0.5 * h) +
                       comm * cplx(sign * std::sqrt(3.0) / 12.0 * h * h);
    return exp2(omega);
}

// March mu = psi^- e^{izx} from the left edge up to index `stop`.
ZsVector march_left(const CellNodes& nodes, cplx z, std::vector<ZsVector>* trace = nullptr,
                    std::size_t stop = SIZE_MAX) {
    const std::size_t last = std::min(stop, nodes.a.size());
    const cplx two_iz = cplx(0.0, 2.0) * z;
    ZsVector mu{1.0, 0.0};
    if (trace) { trace->assign(last + 1, ZsVector{}); (*trace)[0] = mu; }
    for (std::size_t i = 0; i < last; ++i) {
        mu = magnus_cell(nodes.a[i], nodes.b[i], two_iz, true, nodes.dx, 1.0) * mu;
        if (trace) (*trace)[i + 1] = mu;
    }
    return mu;
}

// March nu = psi^+ e^{-izx} from the right edge down to index `stop`.
ZsVector march_right(const CellNodes& nodes, cplx z, std::vector<ZsVector>* trace = nullptr,
                     std::size_t stop = 0) {
    const std::size_t n = nodes.a.size() + 1;
    const cplx m_two_iz = cplx(0.0, -2.0) * z;
    ZsVector nu{0.0, 1.0};
    if (trace) { trace->assign(n, ZsVector{}); (*trace)[n - 1] = nu; }
    for (std::size_t i = n - 1; i > stop; --i) {
        nu = magnus_cell(nodes.a[i - 1], nodes.b[i - 1], m_two_iz, false, nodes.dx, -1.0) * nu;
        if (trace) (*trace)[i - 1] = nu;
    }
    return nu;
}

cplx coefficient_a_unchecked(const CellNodes& nodes, cplx z) {
    return march_left(nodes, z)[0];
}

} // namespace


cplx scattering_coefficient_a(const ComplexField& q, cplx z) {
    check_decay(q);
    if (z.imag() < 0.0)
        throw PoleEvaluation("scattering_coefficient_a: Im(z) must be >= 0");
    return coefficient_a_unchecked(gauss_nodes(q), z);
}

namespace {

std::vector<double> scan_region(const CellNodes& nodes, const SearchRegion& region,
                                bool parallel) {
    const int nx = region.scan_nx, ny = region.scan_ny;
    std::vector<double> grid(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
#pragma omp parallel for schedule(static) if (parallel)
    for (long idx = 0; idx < static_cast<long>(grid.size()); ++idx) {
        const int ix = static_cast<int>(idx) % nx;
        const int iy = static_cast<int>(idx) / nx;
        const double xi = region.xi_min + (region.xi_max - region.xi_min) *
                                              (ix + 0.5) / static_cast<double>(nx);
        const double eta = region.eta_min + (region.eta_max - region.eta_min) *
                                                (iy + 0.5) / static_cast<double>(ny);
        grid[static_cast<std::size_t>(idx)] =
            std::abs(coefficient_a_unchecked(nodes, cplx(xi, eta)));
    }
    return grid;
}

} // namespace

std::vector<double> scan_abs_a(const ComplexField& q, const SearchRegion& region) {
    return scan_region(gauss_nodes(q), region, true);
}

namespace ref {

std::vector<double> scan_abs_a(const ComplexField& q, const SearchRegion& region) {
    return scan_region(gauss_nodes(q), region, false);
}

} // namespace ref

namespace {

// Phase increment of a(z) along a segment, subdividing until each piece
// rotates by less than pi/2.
double phase_sweep(const CellNodes& nodes, cplx z0, cplx z1, cplx a0, cplx a1, int depth) {
    const double d = std::arg(a1 / a0);
    if (std::abs(d) < M_PI / 2.0 || depth >= 14) return d;
    const cplx zm = 0.5 * (z0 + z1);
    const cplx am = coefficient_a_unchecked(nodes, zm);
    return phase_sweep(nodes, z0, zm, a0, am, depth + 1) +
           phase_sweep(nodes, zm, z1, am, a1, depth + 1);
}

int winding_number_nodes(const CellNodes& nodes, const SearchRegion& region) {
    if (!(region.eta_min > 0.0))
        throw PoleEvaluation("winding_number: region must lie in the upper half-plane");
    const cplx corners[5] = {cplx(region.xi_min, region.eta_min),
                             cplx(region.xi_max, region.eta_min),
                             cplx(region.xi_max, region.eta_max),
                             cplx(region.xi_min, region.eta_max),
                             cplx(region.xi_min, region.eta_min)};
    double total = 0.0;
    for (int side = 0; side < 4; ++side) {
        const int segs = 24;
        std::vector<cplx> zs(segs + 1), as(segs + 1);
        for (int s = 0; s <= segs; ++s) {
            const double f = static_cast<double>(s) / segs;
            zs[s] = corners[side] + f * (corners[side + 1] - corners[side]);
        }
#pragma omp parallel for schedule(static)
        for (long s = 0; s <= segs; ++s)
            as[static_cast<std::size_t>(s)] =
                coefficient_a_unchecked(nodes, zs[static_cast<std::size_t>(s)]);
        for (int s = 0; s < segs; ++s)
            total += phase_sweep(nodes, zs[s], zs[s + 1], as[s], as[s + 1], 0);
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

// Newton on the analytic a(z); derivative by a centered real-step difference.
bool newton_polish(const CellNodes& nodes, cplx& z, double tol) {
    const double h = 1e-6;
    for (int it = 0; it < 40; ++it) {
        const cplx a = coefficient_a_unchecked(nodes, z);
        if (std::abs(a) < 1e-13) return true;
        const cplx ap = coefficient_a_unchecked(nodes, z + h);
        const cplx am = coefficient_a_unchecked(nodes, z - h);
        const cplx da = (ap - am) / (2.0 * h);
        if (std::abs(da) == 0.0) return false;
        const cplx step = a / da;
        z -= step;
        if (std::abs(step) < 1e-13 * (1.0 + std::abs(z)))
            return std::abs(coefficient_a_unchecked(nodes, z)) < tol;
    }
    return std::abs(coefficient_a_unchecked(nodes, z)) < tol;
}

std::vector<SpectralPoint> scan_and_polish(const CellNodes& nodes, const SearchRegion& region,
                                           double eta_floor) {
    const std::vector<double> grid = scan_region(nodes, region, true);
    const int nx = region.scan_nx, ny = region.scan_ny;
    const auto at = [&](int ix, int iy) { return grid[static_cast<std::size_t>(iy) * nx + ix]; };

    std::vector<cplx> candidates;
    for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) {
            const double v = at(ix, iy);
            if (v > 0.9) continue;
            bool is_min = true;
            for (int dy = -1; dy <= 1 && is_min; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int jx = ix + dx, jy = iy + dy;
                    if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
                    if (at(jx, jy) < v) { is_min = false; break; }
                }
            if (is_min)
                candidates.emplace_back(
                    region.xi_min + (region.xi_max - region.xi_min) * (ix + 0.5) / nx,
                    region.eta_min + (region.eta_max - region.eta_min) * (iy + 0.5) / ny);
        }

    std::vector<SpectralPoint> zeros;
    for (cplx z : candidates) {
        if (!newton_polish(nodes, z, 1e-10)) continue;
        if (z.real() < region.xi_min - 1e-9 || z.real() > region.xi_max + 1e-9 ||
            z.imag() < region.eta_min - 1e-9 || z.imag() > region.eta_max + 1e-9)
            continue;
        if (z.imag() <= eta_floor) continue;
        bool dup = false;
        for (const SpectralPoint& zp : zeros)
            if (std::abs(zp.z() - z) < 1e-7 * (1.0 + std::abs(z))) { dup = true; break; }
        if (!dup) zeros.push_back(SpectralPoint{z.real(), z.imag()});
    }
    std::sort(zeros.begin(), zeros.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
        return a.xi != b.xi ? a.xi < b.xi : a.eta < b.eta;
    });
    return zeros;
}

} // namespace

int winding_number(const ComplexField& q, const SearchRegion& region) {
    check_decay(q);
    return winding_number_nodes(gauss_nodes(q), region);
}

std::vector<SpectralPoint> find_eigenvalues(const ComplexField& q, const SearchRegion& region,
                                            double eta_floor) {
    check_decay(q);
    if (!(region.eta_min > 0.0))
        throw PoleEvaluation("find_eigenvalues: region must lie in the upper half-plane");

    SearchRegion r = region;
    r.eta_min = std::max(r.eta_min, eta_floor); // near-real states are out of scope
    const CellNodes nodes = gauss_nodes(q);
    const int expected = winding_number_nodes(nodes, r);
    if (expected == 0) return {}; // no zeros inside; skip the scan
    for (int attempt = 0; attempt < 3; ++attempt) {
        const std::vector<SpectralPoint> zeros = scan_and_polish(nodes, r, eta_floor);
        if (static_cast<int>(zeros.size()) == expected) return zeros;
        r.scan_nx *= 2;
        r.scan_ny *= 2;
    }
    throw CountMismatch("find_eigenvalues: Newton count disagrees with winding number " +
                        std::to_string(expected));
}

namespace {

struct JostAtMid {
    ZsVector mu, nu;
    cplx c; // norming constant from the gluing point
};

JostAtMid jost_at_mid(const ComplexField& q, const CellNodes& nodes, cplx z,
                      std::vector<ZsVector>* lt = nullptr, std::vector<ZsVector>* rt = nullptr) {
    const std::size_t mid = q.size() / 2;
    std::vector<ZsVector> lt_local, rt_local;
    std::vector<ZsVector>& l = lt ? *lt : lt_local;
    std::vector<ZsVector>& r = rt ? *rt : rt_local;
    march_left(nodes, z, &l, mid);
    march_right(nodes, z, &r, mid);
    JostAtMid out;
    out.mu = l[mid];
    out.nu = r[mid];
    // mu e^{-izx} = c nu e^{izx} at the gluing point
    out.c = dot(out.nu, out.mu) / norm2(out.nu) * std::exp(cplx(0.0, -2.0) * z * q.x(mid));
    return out;
}

void require_eigenvalue(const CellNodes& nodes, cplx z, const char* who) {
    const cplx a = coefficient_a_unchecked(nodes, z);
    if (std::abs(a) > 1e-8)
        throw NotAnEigenvalue(std::string(who) + ": |a(z)| = " + std::to_string(std::abs(a)));
}

} // namespace

SpectralPoint polish_eigenvalue(const ComplexField& q, SpectralPoint guess) {
    check_decay(q);
    const CellNodes nodes = gauss_nodes(q);
    cplx z = guess.z();
    if (!newton_polish(nodes, z, 1e-10) || z.imag() <= 0.0)
        throw NotAnEigenvalue("polish_eigenvalue: no zero of a near the guess");
    return SpectralPoint{z.real(), z.imag()};
}

cplx norming_constant(const ComplexField& q, SpectralPoint zj) {
    check_decay(q);
    const CellNodes nodes = gauss_nodes(q);
    require_eigenvalue(nodes, zj.z(), "norming_constant");
    return jost_at_mid(q, nodes, zj.z()).c;
}

ZsVectorField bound_state(const ComplexField& q, SpectralPoint zj) {
    check_decay(q);
    const CellNodes nodes = gauss_nodes(q);
    const cplx z = zj.z();
    require_eigenvalue(nodes, z, "bound_state");

    const std::size_t n = q.size();
    const std::size_t mid = n / 2;
    std::vector<ZsVector> lt, rt;
    const JostAtMid jm = jost_at_mid(q, nodes, z, &lt, &rt);
    const double logc = std::log(std::abs(jm.c));
    const cplx cphase = jm.c / std::abs(jm.c);

    ZsVectorField r = make_zs_field(q.grid(), zj, q.t);
    for (std::size_t i = 0; i <= mid; ++i) {
        // psi^- = mu e^{-izx}; |e^{-izx}| = e^{eta x}
        const cplx ph = std::exp(cplx(0.0, -zj.xi * q.x(i)));
        r.c1[i] = lt[i][0] * ph;
        r.c2[i] = lt[i][1] * ph;
        r.logscale[i] = zj.eta * q.x(i);
    }
    for (std::size_t i = mid + 1; i < n; ++i) {
        // psi^- = c psi^+ = c nu e^{izx} right of the gluing point
        const cplx ph = cphase * std::exp(cplx(0.0, zj.xi * q.x(i)));
        r.c1[i] = rt[i][0] * ph;
        r.c2[i] = rt[i][1] * ph;
        r.logscale[i] = -zj.eta * q.x(i) + logc;
    }
    r.normalize_mantissas();
    r.normalize_l2();
    return r;
}

ScatteringData scatter(const ComplexField& q, const SearchRegion& region) {
    ScatteringData data;
    data.grid = q.grid();
    data.t = q.t;
    data.eigenvalues = find_eigenvalues(q, region, data.eta_floor);
    const CellNodes nodes = gauss_nodes(q);
    data.norming.reserve(data.eigenvalues.size());
    for (const SpectralPoint& zj : data.eigenvalues) {
        require_eigenvalue(nodes, zj.z(), "scatter");
        data.norming.push_back(jost_at_mid(q, nodes, zj.z()).c);
    }
    // real-axis samples of a: |a| = 1 there marks a reflectionless field
    for (int k = 0; k <= 8; ++k) {
        const cplx z(region.xi_min + (region.xi_max - region.xi_min) * k / 8.0, 0.0);
        data.a_samples.emplace_back(z, coefficient_a_unchecked(nodes, z));
    }
    return data;
}

std::vector<SolitonParams> params_from_scattering(const ScatteringData& data) {
    const std::size_t n = data.eigenvalues.size();
    if (n != data.norming.size())
        throw GridMismatch("params_from_scattering: eigenvalue/norming count mismatch");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(data.eigenvalues[i].z() - data.eigenvalues[j].z()) < 1e-8)
                throw DegenerateEigenvalues("params_from_scattering: coinciding eigenvalues");

    // reference multi-soliton with zero offsets at the measured eigenvalues
    std::vector<SolitonParams> reference(n);
    for (std::size_t j = 0; j < n; ++j)
        reference[j] = SolitonParams{data.eigenvalues[j].xi, data.eigenvalues[j].eta, 0.0, 0.0};
    const ComplexField qref = n_soliton(reference, data.grid, 0.0);
    const CellNodes ref_nodes = gauss_nodes(qref);

    std::vector<SolitonParams> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx zr = data.eigenvalues[j].z();
        newton_polish(ref_nodes, zr, 1e-8); // land on the reference grid's own zero
        const cplx cstar = jost_at_mid(qref, ref_nodes, zr).c;
        const cplx ratio = data.norming[j] / cstar;
        const double xi = data.eigenvalues[j].xi;
        const double eta = data.eigenvalues[j].eta;
        const double x0 = std::log(std::abs(ratio)) / (2.0 * eta);
        double theta = std::remainder(-0.5 * std::arg(ratio) - xi * x0, M_PI);
        if (theta <= -M_PI / 2.0) theta += M_PI;
        out[j] = SolitonParams{xi, eta, x0, theta};
    }
    return out;
}

} // namespace nlsf
