#ifndef LOEWNER_TRANSFORMS_HPP
#define LOEWNER_TRANSFORMS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "loewner/measures.hpp"
#include "loewner/series.hpp"

namespace loewner {

/// Default truncation order of the transform calculus.
inline constexpr int kDefaultSeriesOrder = 16;

/// Densities below this are clipped to zero; anything more negative is a
/// diagnostic for the caller (min_raw_value keeps the pre-clip floor).
inline constexpr double kNegativeDensityTol = 1e-6;

/// Recovered density on a grid, with the inversion bookkeeping attached.
struct DensityCurve {
    std::vector<double> grid;
    std::vector<double> values;     // clipped at 0 on output
    double mass_defect = 0.0;       // 1 - trapezoid integral
    double min_raw_value = 0.0;     // most negative pre-clip value
    std::vector<double> eps_ladder;

    double integral() const;
    /// Trapezoid moment of the curve.
    double moment(int k) const;
};

/// Cauchy transform of a real measure at z with Im z > 0 (rejected otherwise).
Complex cauchy_transform(const RealMeasure& measure, Complex z);

/// psi transform of a circle measure at |z| < 1 (rejected otherwise).
Complex psi_transform(const CircleMeasure& measure, Complex z);

/// Recovers a density from a Cauchy-transform evaluator by Stieltjes
/// inversion: -(1/pi) Im G(x + i eps), linearly Richardson-extrapolated in
/// eps using the two smallest ladder rungs. Evaluator failures are rethrown
/// with the probe point attached.
DensityCurve stieltjes_invert(const std::function<Complex(Complex)>& evaluator, double window_lo,
                              double window_hi, int grid_size,
                              const std::vector<double>& eps_ladder);

/// R-transform coefficients R(z) = kappa_1 + kappa_2 z + ... + kappa_N z^{N-1}
/// of a probability moment series (m_0 = 1 required).
FormalSeries r_transform_series(const MomentSeries& moments);

/// Moments of the free additive convolution, computed by adding R-series and
/// inverting the pipeline. Result order = min(order, operand orders).
MomentSeries free_add_convolve(const MomentSeries& a, const MomentSeries& b, int order);

/// S-transform series of a circle probability law with nonvanishing mean.
FormalSeries s_transform_series(const CircleMomentSeries& moments);

/// Moments of the free multiplicative convolution via S-series product.
CircleMomentSeries free_mult_convolve(const CircleMomentSeries& a, const CircleMomentSeries& b,
                                      int order);

/// Monte Carlo moment oracle: averaged normalized traces E[Tr(X^k)/n] of
/// Hermitian matrices with independent Gaussian entries scaled by 1/sqrt(n).
/// Returns m_0..m_{k_max} plus standard errors of the estimates.
struct MatrixMomentEstimate {
    MomentSeries moments;
    std::vector<double> standard_error;
};
MatrixMomentEstimate empirical_matrix_moments(int n, int samples, std::uint64_t seed, int k_max);

}  // namespace loewner

#endif  // LOEWNER_TRANSFORMS_HPP
