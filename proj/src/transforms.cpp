#include "loewner/transforms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "loewner/parallel.hpp"
#include "loewner/rng.hpp"

namespace loewner {

namespace {

double trapezoid(const std::vector<double>& x, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        s += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return s;
}

}  // namespace

double DensityCurve::integral() const { return trapezoid(grid, values); }

double DensityCurve::moment(int k) const {
    std::vector<double> f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) f[i] = std::pow(grid[i], k) * values[i];
    return trapezoid(grid, f);
}

Complex cauchy_transform(const RealMeasure& measure, Complex z) {
    if (!(z.imag() > 0.0))
        throw std::invalid_argument("cauchy_transform: Im z must be positive");
    return measure.cauchy(z);
}

Complex psi_transform(const CircleMeasure& measure, Complex z) {
    if (!(std::abs(z) < 1.0))
        throw std::invalid_argument("psi_transform: |z| must be below 1");
    return measure.psi(z);
}

DensityCurve stieltjes_invert(const std::function<Complex(Complex)>& evaluator, double window_lo,
                              double window_hi, int grid_size,
                              const std::vector<double>& eps_ladder) {
    if (!(window_lo < window_hi)) throw std::invalid_argument("stieltjes_invert: empty window");
    if (grid_size < 2) throw std::invalid_argument("stieltjes_invert: grid_size must be >= 2");
    if (eps_ladder.size() < 2)
        throw std::invalid_argument("stieltjes_invert: ladder needs at least two rungs");
    for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
        if (!(eps_ladder[i] > 0.0) || (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1])))
            throw std::invalid_argument("stieltjes_invert: ladder must be positive and decreasing");
    }
    DensityCurve curve;
    curve.eps_ladder = eps_ladder;
    curve.grid.resize(grid_size);
    curve.values.assign(grid_size, 0.0);
    for (int i = 0; i < grid_size; ++i)
        curve.grid[i] = window_lo + (window_hi - window_lo) * i / (grid_size - 1);

    const double eps1 = eps_ladder[eps_ladder.size() - 2];
    const double eps2 = eps_ladder[eps_ladder.size() - 1];
    std::vector<double> raw(grid_size);
    std::vector<std::string> failures(grid_size);
    parallel_for(static_cast<std::size_t>(grid_size), [&](std::size_t i) {
        auto probe = [&](double eps) {
            const Complex z(curve.grid[i], eps);
            try {
                return evaluator(z);
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "evaluator failed at probe (" << z.real() << ", " << z.imag()
                   << "i): " << e.what();
                failures[i] = os.str();
                return Complex(0.0, 0.0);
            }
        };
        const double f1 = -probe(eps1).imag() / std::numbers::pi;
        const double f2 = -probe(eps2).imag() / std::numbers::pi;
        // Linear extrapolation to eps = 0 from the two smallest rungs.
        raw[i] = (eps1 * f2 - eps2 * f1) / (eps1 - eps2);
    });
    for (int i = 0; i < grid_size; ++i)
        if (!failures[i].empty()) throw std::runtime_error("stieltjes_invert: " + failures[i]);

    double min_raw = 0.0;
    for (int i = 0; i < grid_size; ++i) {
        min_raw = std::min(min_raw, raw[i]);
        curve.values[i] = std::max(raw[i], 0.0);
    }
    curve.min_raw_value = min_raw;
    curve.mass_defect = 1.0 - curve.integral();
    return curve;
}

// --- free convolution calculus ----------------------------------------------

namespace {

void require_probability(const MomentSeries& m, const char* who) {
    if (m.m.empty() || std::abs(m.m[0] - 1.0) > 1e-9)
        throw std::invalid_argument(std::string(who) + ": moments must have m_0 = 1");
}

FormalSeries ghat_from_moments(const MomentSeries& m, int order) {
    // G as a series in 1/z: coefficient of z^{-(n+1)} is m_n.
    std::vector<Complex> c(static_cast<std::size_t>(order) + 2, Complex(0.0));
    for (int n = 0; n <= std::min(order, m.order); ++n) c[n + 1] = m.m[n];
    return FormalSeries(FormalSeries::Var::kInvZ, 0, std::move(c));
}

}  // namespace

FormalSeries r_transform_series(const MomentSeries& moments) {
    require_probability(moments, "r_transform_series");
    const int n = moments.order;
    const FormalSeries k = series_revert(ghat_from_moments(moments, n), n - 1);
    // R(z) = K(z) - 1/z; the pole coefficient of K is exactly m_0 = 1.
    std::vector<Complex> r(static_cast<std::size_t>(n), Complex(0.0));
    for (int j = 0; j < n; ++j) r[j] = k.coeff(j);
    return FormalSeries(FormalSeries::Var::kZ, 0, std::move(r));
}

MomentSeries free_add_convolve(const MomentSeries& a, const MomentSeries& b, int order) {
    require_probability(a, "free_add_convolve");
    require_probability(b, "free_add_convolve");
    const int n = std::min({order, a.order, b.order});
    if (n < 2) throw std::invalid_argument("free_add_convolve: order must be >= 2");
    const FormalSeries r = series_add(r_transform_series(a), r_transform_series(b));
    // K(w) w = 1 + w R(w), so 1/K is a compositional unit whose reversion
    // recovers the G series of the convolution.
    std::vector<Complex> kw(static_cast<std::size_t>(n) + 1, Complex(0.0));
    kw[0] = 1.0;
    for (int j = 1; j <= n; ++j) kw[j] = r.coeff(j - 1);
    std::vector<Complex> khat_over_u = ps_inv(kw, n + 1);  // (1/K)(w)/w
    std::vector<Complex> khat(static_cast<std::size_t>(n) + 2, Complex(0.0));
    for (int j = 0; j <= n; ++j) khat[j + 1] = khat_over_u[j];
    std::vector<Complex> ghat = ps_revert(khat, n + 2);
    MomentSeries out;
    out.order = n;
    out.time = a.time + b.time;
    out.m.resize(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) out.m[j] = ghat[j + 1].real();
    return out;
}

FormalSeries s_transform_series(const CircleMomentSeries& moments) {
    if (std::abs(moments.mass - 1.0) > 1e-9)
        throw std::invalid_argument("s_transform_series: measure must be a probability measure");
    if (moments.p.empty() || std::abs(moments.p[0]) < 1e-12)
        throw std::invalid_argument("s_transform_series: first moment vanishes");
    const int n = moments.order;
    std::vector<Complex> psi(static_cast<std::size_t>(n) + 1, Complex(0.0));
    for (int k = 1; k <= n; ++k) psi[k] = moments.p[k - 1];
    const std::vector<Complex> chi = ps_revert(psi, n + 1);
    // S(z) = ((1 + z)/z) chi(z): coefficients chi_{k+1} + chi_k.
    std::vector<Complex> s(static_cast<std::size_t>(n), Complex(0.0));
    for (int k = 0; k < n; ++k) s[k] = chi[k + 1] + (k >= 1 ? chi[k] : Complex(0.0));
    return FormalSeries(FormalSeries::Var::kZ, 0, std::move(s));
}

CircleMomentSeries free_mult_convolve(const CircleMomentSeries& a, const CircleMomentSeries& b,
                                      int order) {
    const int n = std::min({order, a.order, b.order});
    if (n < 1) throw std::invalid_argument("free_mult_convolve: order must be >= 1");
    const FormalSeries s = series_mul(s_transform_series(a), s_transform_series(b), n - 1);
    // chi(z) = z S(z) / (1 + z), then psi = chi^{-1} and moments follow.
    std::vector<Complex> sv(static_cast<std::size_t>(n), Complex(0.0));
    for (int k = 0; k < n; ++k) sv[k] = s.coeff(k);
    std::vector<Complex> one_plus(static_cast<std::size_t>(n), Complex(0.0));
    one_plus[0] = 1.0;
    if (n > 1) one_plus[1] = 1.0;
    const std::vector<Complex> s_over = ps_mul(sv, ps_inv(one_plus, n), n);
    std::vector<Complex> chi(static_cast<std::size_t>(n) + 1, Complex(0.0));
    for (int k = 1; k <= n; ++k) chi[k] = s_over[k - 1];
    const std::vector<Complex> psi = ps_revert(chi, n + 1);
    CircleMomentSeries out;
    out.order = n;
    out.time = a.time + b.time;
    out.mass = 1.0;
    out.p.assign(psi.begin() + 1, psi.end());
    return out;
}

// --- random-matrix moment oracle ----------------------------------------------

MatrixMomentEstimate empirical_matrix_moments(int n, int samples, std::uint64_t seed, int k_max) {
    if (n < 2) throw std::invalid_argument("empirical_matrix_moments: n must be >= 2");
    if (samples < 1) throw std::invalid_argument("empirical_matrix_moments: samples must be >= 1");
    if (k_max < 1) throw std::invalid_argument("empirical_matrix_moments: k_max must be >= 1");

    const std::size_t nn = static_cast<std::size_t>(n);
    std::vector<std::vector<double>> per_sample(samples, std::vector<double>(k_max, 0.0));
    parallel_for(static_cast<std::size_t>(samples), [&](std::size_t s) {
        // Hermitian matrix: diagonal real N(0, 1/n), off-diagonal complex with
        // total variance 1/n.
        std::vector<Complex> x(nn * nn);
        const double diag_scale = 1.0 / std::sqrt(static_cast<double>(n));
        const double off_scale = 1.0 / std::sqrt(2.0 * n);
        for (std::size_t i = 0; i < nn; ++i) {
            const std::uint64_t c0 = 2 * (i * nn + i);
            x[i * nn + i] = Complex(diag_scale * rng::normal(seed, s, c0), 0.0);
            for (std::size_t j = i + 1; j < nn; ++j) {
                const std::uint64_t c = 2 * (i * nn + j);
                const Complex v(off_scale * rng::normal(seed, s, c),
                                off_scale * rng::normal(seed, s, c + 1));
                x[i * nn + j] = v;
                x[j * nn + i] = std::conj(v);
            }
        }
        std::vector<Complex> p = x, tmp(nn * nn);
        for (int k = 1; k <= k_max; ++k) {
            Complex tr = 0.0;
            for (std::size_t i = 0; i < nn; ++i) tr += p[i * nn + i];
            per_sample[s][k - 1] = tr.real() / n;
            if (k == k_max) break;
            for (std::size_t i = 0; i < nn; ++i) {
                for (std::size_t j = 0; j < nn; ++j) tmp[i * nn + j] = 0.0;
                for (std::size_t l = 0; l < nn; ++l) {
                    const Complex pil = p[i * nn + l];
                    if (pil == Complex(0.0)) continue;
                    const Complex* xrow = &x[l * nn];
                    Complex* trow = &tmp[i * nn];
                    for (std::size_t j = 0; j < nn; ++j) trow[j] += pil * xrow[j];
                }
            }
            p.swap(tmp);
        }
    });

    MatrixMomentEstimate est;
    est.moments.order = k_max;
    est.moments.m.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    est.moments.m[0] = 1.0;
    est.standard_error.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (int k = 1; k <= k_max; ++k) {
        double mean = 0.0;
        for (int s = 0; s < samples; ++s) mean += per_sample[s][k - 1];
        mean /= samples;
        double var = 0.0;
        for (int s = 0; s < samples; ++s) {
            const double d = per_sample[s][k - 1] - mean;
            var += d * d;
        }
        var = samples > 1 ? var / (samples - 1) : 0.0;
        est.moments.m[k] = mean;
        est.standard_error[k] = std::sqrt(var / samples);
    }
    return est;
}

}  // namespace loewner
