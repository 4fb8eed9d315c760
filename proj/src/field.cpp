#include "koplab/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "koplab/fft.hpp"

namespace koplab {
namespace {

std::size_t conjugate_partner(const GridSpec& g, std::size_t flat) {
    const auto idx = g.index(flat);
    std::size_t out = 0;
    for (int axis = 0; axis < g.d; ++axis) {
        const int i = idx[static_cast<std::size_t>(axis)];
        const int j = (g.n - i) % g.n;
        out = out * static_cast<std::size_t>(g.n) + static_cast<std::size_t>(j);
    }
    return out;
}

bool has_nyquist_mode(const GridSpec& g, std::size_t flat) {
    const auto idx = g.index(flat);
    for (int axis = 0; axis < g.d; ++axis)
        if (idx[static_cast<std::size_t>(axis)] == g.n / 2) return true;
    return false;
}

} // namespace

SpectralField dft_forward(const GridSpec& grid, const PhysicalData& phys) {
    const std::size_t total = grid.size();
    SpectralField f(grid, static_cast<int>(phys.size()));
    const double inv_n = 1.0 / static_cast<double>(total);
    for (std::size_t c = 0; c < phys.size(); ++c) {
        if (phys[c].size() != total)
            throw Error(ErrorCode::SizeMismatch,
                        "dft_forward: sample count does not match grid");
        auto& spec = f.comps[c];
        for (std::size_t i = 0; i < total; ++i) spec[i] = phys[c][i];
        fft::forward(grid.d, grid.n, spec.data());
        for (auto& z : spec) z *= inv_n;
    }
    return f;
}

PhysicalData dft_inverse(const SpectralField& f) {
    const std::size_t total = f.grid.size();
    PhysicalData phys(f.comps.size(), std::vector<double>(total));
    std::vector<Complex> buf(total);
    for (std::size_t c = 0; c < f.comps.size(); ++c) {
        if (f.comps[c].size() != total)
            throw Error(ErrorCode::SizeMismatch,
                        "dft_inverse: spectrum size does not match grid");
        buf = f.comps[c];
        fft::inverse(f.grid.d, f.grid.n, buf.data());
        for (std::size_t i = 0; i < total; ++i) phys[c][i] = buf[i].real();
    }
    return phys;
}

SpectralField apply_multiplier(
    const SpectralField& f,
    const std::function<Complex(const std::array<double, 3>&)>& m) {
    SpectralField out = f;
    const std::size_t total = f.grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        const Complex mv = m(f.grid.xi(i));
        if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag()))
            throw Error(ErrorCode::SingularMultiplier,
                        "apply_multiplier: multiplier not finite at a grid frequency");
        for (auto& comp : out.comps) comp[i] *= mv;
    }
    enforce_hermitian(out);
    return out;
}

void enforce_hermitian(SpectralField& f) {
    const std::size_t total = f.grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t j = conjugate_partner(f.grid, i);
        if (j < i) continue;
        for (auto& comp : f.comps) {
            if (i == j) {
                comp[i] = Complex(comp[i].real(), 0.0);
            } else {
                const Complex sym = 0.5 * (comp[i] + std::conj(comp[j]));
                comp[i] = sym;
                comp[j] = std::conj(sym);
            }
        }
    }
}

double hermitian_defect(const SpectralField& f) {
    double worst = 0.0;
    const std::size_t total = f.grid.size();
    for (std::size_t i = 0; i < total; ++i) {
        const std::size_t j = conjugate_partner(f.grid, i);
        for (const auto& comp : f.comps)
            worst = std::max(worst, std::abs(comp[i] - std::conj(comp[j])));
    }
    return worst;
}

SpectralField capillary_op(const SpectralField& q, const CouplingAlpha& alpha) {
    const double a2 = alpha.alpha * alpha.alpha;
    return apply_multiplier(q, [a2](const std::array<double, 3>& xi) {
        const double x = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        return Complex(-x / (1.0 + x / a2), 0.0);
    });
}

SpectralField mollifier_phi_alpha(const SpectralField& q,
                                  const CouplingAlpha& alpha) {
    const double a2 = alpha.alpha * alpha.alpha;
    return apply_multiplier(q, [a2](const std::array<double, 3>& xi) {
        const double x = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        return Complex(1.0 / (1.0 + x / a2), 0.0);
    });
}

HelmholtzParts helmholtz_split(const SpectralField& u) {
    const GridSpec& g = u.grid;
    const int d = g.d;
    if (u.ncomps() != d)
        throw Error(ErrorCode::SizeMismatch,
                    "helmholtz_split expects a d-component vector field");

    HelmholtzParts parts;
    parts.v = SpectralField(g, 1);
    const int nw = d * (d - 1) / 2;
    parts.w = SpectralField(g, std::max(nw, 0));
    parts.u_mean.resize(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c)
        parts.u_mean[static_cast<std::size_t>(c)] = u.comps[static_cast<std::size_t>(c)][0].real();

    const std::size_t total = g.size();
    const Complex I(0.0, 1.0);
    for (std::size_t k = 0; k < total; ++k) {
        const auto xi = g.xi(k);
        const double norm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        if (norm == 0.0) continue;
        // The sign multipliers i xi / |xi| break Hermitian pairing on the
        // Nyquist planes; those modes are dropped instead.
        if (has_nyquist_mode(g, k)) continue;
        Complex div(0.0, 0.0);
        for (int a = 0; a < d; ++a)
            div += I * xi[static_cast<std::size_t>(a)] * u.comps[static_cast<std::size_t>(a)][k];
        parts.v.comps[0][k] = div / norm;
        int wi = 0;
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b, ++wi)
                parts.w.comps[static_cast<std::size_t>(wi)][k] =
                    (I * xi[static_cast<std::size_t>(a)] * u.comps[static_cast<std::size_t>(b)][k] -
                     I * xi[static_cast<std::size_t>(b)] * u.comps[static_cast<std::size_t>(a)][k]) /
                    norm;
    }
    enforce_hermitian(parts.v);
    if (nw > 0) enforce_hermitian(parts.w);
    return parts;
}

SpectralField helmholtz_recompose(const HelmholtzParts& parts) {
    const GridSpec& g = parts.v.grid;
    const int d = g.d;
    SpectralField u(g, d);
    const std::size_t total = g.size();
    const Complex I(0.0, 1.0);
    for (std::size_t k = 0; k < total; ++k) {
        const auto xi = g.xi(k);
        const double norm = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        if (norm == 0.0) {
            for (int a = 0; a < d; ++a)
                u.comps[static_cast<std::size_t>(a)][k] =
                    parts.u_mean[static_cast<std::size_t>(a)];
            continue;
        }
        // Antisymmetric matrix W from its packed upper-triangular components.
        Complex W[3][3] = {};
        int wi = 0;
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b, ++wi) {
                W[a][b] = parts.w.comps[static_cast<std::size_t>(wi)][k];
                W[b][a] = -W[a][b];
            }
        for (int a = 0; a < d; ++a) {
            Complex val = -I * xi[static_cast<std::size_t>(a)] * parts.v.comps[0][k] / norm;
            // (div W)_a = d_b W_{ab}; the second Lambda^{-1} divides by |xi|.
            for (int b = 0; b < d; ++b)
                val += I * xi[static_cast<std::size_t>(b)] * W[a][b] / norm;
            u.comps[static_cast<std::size_t>(a)][k] = val;
        }
    }
    enforce_hermitian(u);
    return u;
}

SpectralField friedrichs_project(const SpectralField& f, int n_trunc) {
    if (n_trunc < 0)
        throw Error(ErrorCode::ParameterOutOfRange, "friedrichs n_trunc >= 0");
    const double lo = std::ldexp(1.0, -n_trunc);
    const double hi = (8.0 / 3.0) * std::ldexp(1.0, n_trunc);
    SpectralField out = f;
    const std::size_t total = f.grid.size();
    for (std::size_t k = 0; k < total; ++k) {
        const double norm = std::sqrt(f.grid.xi_norm2(k));
        if (norm < lo || norm > hi)
            for (auto& comp : out.comps) comp[k] = 0.0;
    }
    return out;
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    const std::size_t total = f.grid.size();
    const int kmax = f.grid.dealias_kmax();
    for (std::size_t k = 0; k < total; ++k) {
        const auto idx = f.grid.index(k);
        bool kill = false;
        for (int axis = 0; axis < f.grid.d; ++axis)
            if (std::abs(f.grid.wavenumber(idx[static_cast<std::size_t>(axis)])) > kmax)
                kill = true;
        if (kill)
            for (auto& comp : out.comps) comp[k] = 0.0;
    }
    return out;
}

double l2_norm(const SpectralField& f) {
    double s = 0.0;
    for (const auto& comp : f.comps)
        for (const auto& z : comp) s += std::norm(z);
    return std::sqrt(s * std::pow(f.grid.L, f.grid.d));
}

double linf_norm(const PhysicalData& phys) {
    double m = 0.0;
    for (const auto& comp : phys)
        for (double v : comp) m = std::max(m, std::abs(v));
    return m;
}

double field_mean(const SpectralField& f, int c) {
    return f.comps[static_cast<std::size_t>(c)][0].real();
}

SpectralField field_add(const SpectralField& a, const SpectralField& b) {
    SpectralField out = a;
    field_axpy(out, 1.0, b);
    return out;
}

SpectralField field_sub(const SpectralField& a, const SpectralField& b) {
    SpectralField out = a;
    field_axpy(out, -1.0, b);
    return out;
}

SpectralField field_scale(const SpectralField& a, double s) {
    SpectralField out = a;
    for (auto& comp : out.comps)
        for (auto& z : comp) z *= s;
    return out;
}

void field_axpy(SpectralField& y, double a, const SpectralField& x) {
    if (!(y.grid == x.grid) || y.ncomps() != x.ncomps())
        throw Error(ErrorCode::SizeMismatch, "field_axpy: shape mismatch");
    for (std::size_t c = 0; c < y.comps.size(); ++c)
        for (std::size_t i = 0; i < y.comps[c].size(); ++i)
            y.comps[c][i] += a * x.comps[c][i];
}

void write_snapshot(std::ostream& out, const SpectralField& f,
                    const std::string& kind, double t) {
    std::ostringstream header;
    header.precision(17);
    header << "KOPLAB1 " << f.grid.d << ' ' << f.grid.n << ' ' << f.grid.L
           << ' ' << kind << ' ' << t << '\n';
    out << header.str();
    const PhysicalData phys = dft_inverse(f);
    for (const auto& comp : phys)
        out.write(reinterpret_cast<const char*>(comp.data()),
                  static_cast<std::streamsize>(comp.size() * sizeof(double)));
    if (!out) throw Error(ErrorCode::IoError, "write_snapshot: stream failure");
}

SpectralField read_snapshot(std::istream& in, std::string* kind, double* t) {
    std::string line;
    if (!std::getline(in, line))
        throw Error(ErrorCode::IoError, "read_snapshot: missing header");
    std::istringstream hs(line);
    std::string magic, kind_str;
    int d = 0, n = 0;
    double L = 0, time = 0;
    hs >> magic >> d >> n >> L >> kind_str >> time;
    if (magic != "KOPLAB1" || !hs)
        throw Error(ErrorCode::IoError, "read_snapshot: bad header");
    if (kind) *kind = kind_str;
    if (t) *t = time;

    GridSpec grid(d, n, L);
    PhysicalData phys;
    const std::size_t total = grid.size();
    while (in.peek() != std::char_traits<char>::eof()) {
        std::vector<double> comp(total);
        in.read(reinterpret_cast<char*>(comp.data()),
                static_cast<std::streamsize>(total * sizeof(double)));
        if (in.gcount() == 0) break;
        if (static_cast<std::size_t>(in.gcount()) != total * sizeof(double))
            throw Error(ErrorCode::IoError, "read_snapshot: truncated payload");
        phys.push_back(std::move(comp));
    }
    if (phys.empty())
        throw Error(ErrorCode::IoError, "read_snapshot: no components");
    return dft_forward(grid, phys);
}

void write_snapshot_file(const std::string& path, const SpectralField& f,
                         const std::string& kind, double t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoError, "cannot open " + path);
    write_snapshot(out, f, kind, t);
}

SpectralField read_snapshot_file(const std::string& path, std::string* kind,
                                 double* t) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
    return read_snapshot(in, kind, t);
}

} // namespace koplab
