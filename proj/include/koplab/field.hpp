#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "koplab/grid.hpp"
#include "koplab/params.hpp"

namespace koplab {

using Complex = std::complex<double>;
using PhysicalData = std::vector<std::vector<double>>;  // per component

/// Complex Fourier coefficients of a real scalar or vector field on a
/// periodic grid. Coefficients follow the amplitude convention: a constant
/// field has coefficient value at k = 0 and zeros elsewhere.
struct SpectralField {
    GridSpec grid;
    std::vector<std::vector<Complex>> comps;

    SpectralField() = default;
    SpectralField(const GridSpec& g, int ncomps)
        : grid(g), comps(static_cast<std::size_t>(ncomps),
                         std::vector<Complex>(g.size())) {}

    int ncomps() const { return static_cast<int>(comps.size()); }
    bool scalar() const { return comps.size() == 1; }
};

SpectralField dft_forward(const GridSpec& grid, const PhysicalData& phys);
PhysicalData dft_inverse(const SpectralField& f);

/// Pointwise multiplication of the spectrum by m(xi). Throws
/// SingularMultiplier when m is non-finite at a grid frequency. Hermitian
/// symmetry is restored after application.
SpectralField apply_multiplier(
    const SpectralField& f,
    const std::function<Complex(const std::array<double, 3>&)>& m);

/// Projects each coefficient onto its Hermitian-symmetric part, making the
/// physical field exactly real.
void enforce_hermitian(SpectralField& f);

/// Largest deviation |coeff(-k) - conj(coeff(k))| over the spectrum.
double hermitian_defect(const SpectralField& f);

/// Nonlocal capillary operator alpha^2 (phi_alpha * q - q); Fourier symbol
/// -|xi|^2 / (1 + |xi|^2/alpha^2).
SpectralField capillary_op(const SpectralField& q, const CouplingAlpha& alpha);

/// Mollification by phi_alpha; Fourier symbol 1 / (1 + |xi|^2/alpha^2).
SpectralField mollifier_phi_alpha(const SpectralField& q,
                                  const CouplingAlpha& alpha);

/// Helmholtz decomposition u = -Lambda^{-1} grad v + Lambda^{-1} div w plus
/// the separately carried mean mode (Lambda^{-1} is undefined at xi = 0).
/// w stores the independent components of the antisymmetric matrix
/// Lambda^{-1}(d_a u_b - d_b u_a), pairs (a,b) in lexicographic order.
struct HelmholtzParts {
    SpectralField v;  // Lambda^{-1} div u, scalar, mean-free
    SpectralField w;  // d(d-1)/2 components; empty spectrum for d = 1
    std::vector<double> u_mean;
};

HelmholtzParts helmholtz_split(const SpectralField& u);
SpectralField helmholtz_recompose(const HelmholtzParts& parts);

/// Friedrichs projector J_n: keeps the annulus 2^{-n} <= |xi| <= (8/3) 2^n.
SpectralField friedrichs_project(const SpectralField& f, int n_trunc);

/// Two-thirds rule: zeroes every mode with any per-axis |k_i| > n/3.
SpectralField dealias(const SpectralField& f);

/// Grid L^2 norm, sqrt(L^d sum_k |fhat_k|^2), summed over components.
double l2_norm(const SpectralField& f);

double linf_norm(const PhysicalData& phys);

/// Mean of component c (the k = 0 coefficient).
double field_mean(const SpectralField& f, int c = 0);

SpectralField field_add(const SpectralField& a, const SpectralField& b);
SpectralField field_sub(const SpectralField& a, const SpectralField& b);
SpectralField field_scale(const SpectralField& a, double s);
void field_axpy(SpectralField& y, double a, const SpectralField& x);

/// Snapshot format: text header "KOPLAB1 d n L kind t" then row-major
/// float64 little-endian physical samples, one component after another.
void write_snapshot(std::ostream& out, const SpectralField& f,
                    const std::string& kind, double t);
SpectralField read_snapshot(std::istream& in, std::string* kind = nullptr,
                            double* t = nullptr);
void write_snapshot_file(const std::string& path, const SpectralField& f,
                         const std::string& kind, double t);
SpectralField read_snapshot_file(const std::string& path,
                                 std::string* kind = nullptr,
                                 double* t = nullptr);

} // namespace koplab
