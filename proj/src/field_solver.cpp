#include "afvp/field_solver.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include <fftw3.h>

namespace afvp {

std::vector<double> ChargeDensity::stations() const
{
    std::vector<double> out(2 * interface.size());
    for (std::size_t i = 0; i < interface.size(); ++i) {
        out[2 * i] = interface[i];
        out[2 * i + 1] = center[i];
    }
    return out;
}

double FieldProfile::center_point(int i) const noexcept
{
    if (layout == FieldLayout::homogeneous) return center[i];
    return center_from_line_average(center[i], interface[i], interface[wrap(i + 1, size())]);
}

double FieldProfile::center_average(int i) const noexcept
{
    if (layout == FieldLayout::inhomogeneous) return center[i];
    return simpson_line_average(interface[i], center[i], interface[wrap(i + 1, size())]);
}

std::vector<double> FieldProfile::stations() const
{
    std::vector<double> out(2 * interface.size());
    for (int i = 0; i < size(); ++i) {
        out[2 * i] = interface[i];
        out[2 * i + 1] = center_point(i);
    }
    return out;
}

FieldProfile FieldProfile::zero(int n_x, FieldLayout layout)
{
    return {layout, std::vector<double>(n_x, 0.0), std::vector<double>(n_x, 0.0)};
}

ChargeDensity density_inhomogeneous(const InhomogeneousGrid& grid)
{
    const DomainSpec& d = grid.domain;
    const double dv = d.dv();
    ChargeDensity rho;
    rho.interface.assign(d.n_x, 0.0);
    rho.line_average.assign(d.n_x, 0.0);
    rho.center.assign(d.n_x, 0.0);
    for (int j = 0; j < d.n_v; ++j) {
        for (int i = 0; i < d.n_x; ++i) {
            rho.interface[i] += grid.v_edge_avg(i, j);
            rho.line_average[i] += grid.cell_avg(i, j);
        }
    }
    for (int i = 0; i < d.n_x; ++i) {
        rho.interface[i] = 1.0 - dv * rho.interface[i];
        rho.line_average[i] = 1.0 - dv * rho.line_average[i];
    }
    for (int i = 0; i < d.n_x; ++i)
        rho.center[i] = center_from_line_average(rho.line_average[i], rho.interface[i],
                                                 rho.interface[wrap(i + 1, d.n_x)]);
    return rho;
}

ChargeDensity density_homogeneous(const HomogeneousGrid& grid)
{
    const DomainSpec& d = grid.domain;
    const int mx = 2 * d.n_x;
    const int mv = 2 * d.n_v;
    // Composite Simpson weights in units of dv: 1/3 on shared edges, 2/3 on midpoints.
    std::vector<double> n_e(mx, 0.0);
    for (int b = 0; b < mv; ++b) {
        const double w = (b % 2 == 0 ? 1.0 / 3.0 : 2.0 / 3.0) * d.dv();
        const double* row = grid.points.row(b);
        for (int a = 0; a < mx; ++a) n_e[a] += w * row[a];
    }
    ChargeDensity rho;
    rho.interface.resize(d.n_x);
    rho.center.resize(d.n_x);
    rho.line_average.resize(d.n_x);
    for (int i = 0; i < d.n_x; ++i) {
        rho.interface[i] = 1.0 - n_e[2 * i];
        rho.center[i] = 1.0 - n_e[2 * i + 1];
    }
    for (int i = 0; i < d.n_x; ++i)
        rho.line_average[i] = simpson_line_average(rho.interface[i], rho.center[i],
                                                   rho.interface[wrap(i + 1, d.n_x)]);
    return rho;
}

struct PoissonSolver::Plans {
    int n = 0;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;
};

namespace {

struct FftwBuffer {
    explicit FftwBuffer(std::size_t bytes) : ptr(fftw_malloc(bytes)) {}
    ~FftwBuffer() { fftw_free(ptr); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    void* ptr;
};

} // namespace

PoissonSolver::PoissonSolver(int n) : plans_(std::make_unique<Plans>())
{
    if (n < 2) throw ConfigError("PoissonSolver: need at least 2 stations");
    plans_->n = n;
    FftwBuffer real(sizeof(double) * n);
    FftwBuffer spectrum(sizeof(fftw_complex) * (n / 2 + 1));
    auto* r = static_cast<double*>(real.ptr);
    auto* c = static_cast<fftw_complex*>(spectrum.ptr);
    plans_->forward = fftw_plan_dft_r2c_1d(n, r, c, FFTW_ESTIMATE);
    plans_->backward = fftw_plan_dft_c2r_1d(n, c, r, FFTW_ESTIMATE);
}

PoissonSolver::~PoissonSolver()
{
    if (plans_) {
        fftw_destroy_plan(plans_->forward);
        fftw_destroy_plan(plans_->backward);
    }
}

PoissonSolver::PoissonSolver(PoissonSolver&&) noexcept = default;
PoissonSolver& PoissonSolver::operator=(PoissonSolver&&) noexcept = default;

int PoissonSolver::size() const noexcept { return plans_->n; }

std::vector<double> PoissonSolver::solve(std::span<const double> rho, double length) const
{
    const int n = plans_->n;
    if (static_cast<int>(rho.size()) != n) throw ConfigError("PoissonSolver: size mismatch");
    if (!(length > 0.0)) throw ConfigError("PoissonSolver: length must be positive");

    const int nk = n / 2 + 1;
    FftwBuffer real(sizeof(double) * n);
    FftwBuffer spectrum(sizeof(fftw_complex) * nk);
    auto* r = static_cast<double*>(real.ptr);
    auto* c = reinterpret_cast<std::complex<double>*>(spectrum.ptr);
    std::copy(rho.begin(), rho.end(), r);
    fftw_execute_dft_r2c(plans_->forward, r, reinterpret_cast<fftw_complex*>(c));

    const double base = 2.0 * std::numbers::pi / length;
    c[0] = 0.0;
    for (int k = 1; k < nk; ++k) {
        if (2 * k == n) {
            c[k] = 0.0;
            continue;
        }
        const double kappa = base * k;
        c[k] *= std::complex<double>(0.0, -1.0 / kappa);
    }
    fftw_execute_dft_c2r(plans_->backward, reinterpret_cast<fftw_complex*>(c), r);

    std::vector<double> e(r, r + n);
    for (double& v : e) v /= n;
    return e;
}

std::vector<double> solve_poisson_spectral(std::span<const double> rho, double length)
{
    return PoissonSolver(static_cast<int>(rho.size())).solve(rho, length);
}

std::vector<double> solve_poisson_spectral(std::span<const double> x, std::span<const double> rho,
                                           double length)
{
    if (x.size() != rho.size()) throw ConfigError("solve_poisson_spectral: size mismatch");
    const double h = length / static_cast<double>(x.size());
    for (std::size_t m = 1; m < x.size(); ++m)
        if (std::abs((x[m] - x[m - 1]) - h) > 1e-9 * h)
            throw ConfigError("solve_poisson_spectral: stations must be equally spaced");
    return solve_poisson_spectral(rho, length);
}

FieldProfile field_to_profile(std::span<const double> e, FieldLayout layout)
{
    const int n = static_cast<int>(e.size()) / 2;
    FieldProfile f;
    f.layout = layout;
    f.interface.resize(n);
    f.center.resize(n);
    for (int i = 0; i < n; ++i) {
        f.interface[i] = e[2 * i];
        f.center[i] = layout == FieldLayout::homogeneous
                          ? e[2 * i + 1]
                          : simpson_line_average(e[2 * i], e[2 * i + 1], e[wrap(2 * i + 2, 2 * n)]);
    }
    return f;
}

FieldProfile compute_field(const InhomogeneousGrid& grid, const PoissonSolver& solver)
{
    const auto rho = density_inhomogeneous(grid).stations();
    const auto e = solver.solve(rho, grid.domain.length_x());
    return field_to_profile(e, FieldLayout::inhomogeneous);
}

FieldProfile compute_field(const HomogeneousGrid& grid, const PoissonSolver& solver)
{
    const auto rho = density_homogeneous(grid).stations();
    const auto e = solver.solve(rho, grid.domain.length_x());
    return field_to_profile(e, FieldLayout::homogeneous);
}

} // namespace afvp
