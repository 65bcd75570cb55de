#ifndef LOEWNER_MEASURES_HPP
#define LOEWNER_MEASURES_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace loewner {

using Complex = std::complex<double>;

/// Point mass.  For circle measures `position` is an angle in [0, 2*pi).
struct Atom {
    double position = 0.0;
    double mass = 0.0;
};

/// Density sampled on a strictly increasing grid. Integrals against the
/// density use the trapezoid rule on exactly these nodes; values are per
/// unit length (real line) or per radian (circle).
struct DensityGrid {
    std::vector<double> grid;
    std::vector<double> values;
};

/// Finite positive measure on the real line with bounded support,
/// represented as atoms plus an optional gridded density part.
/// Immutable after construction; all methods are pure.
class RealMeasure {
public:
    RealMeasure(std::vector<Atom> atoms, std::optional<DensityGrid> density,
                double support_bound);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<DensityGrid>& density() const { return density_; }
    double support_bound() const { return support_bound_; }
    double total_mass() const { return mass_; }
    double support_lo() const { return supp_lo_; }
    double support_hi() const { return supp_hi_; }

    /// k-th raw moment: atoms summed exactly, density part by trapezoid rule.
    double moment(int k) const;

    /// Cauchy transform  int mu(dx) / (z - x)  for z off the support.
    /// Atoms are summed exactly. The density part uses the trapezoid rule
    /// far from the support and switches to the exact integral of the
    /// piecewise-linear interpolant when z comes close, so evaluations
    /// remain accurate down to distances of order 1e-3.
    Complex cauchy(Complex z) const;

    /// Euclidean distance from z to the support (atoms and density hull).
    double distance_to_support(Complex z) const;

private:
    std::vector<Atom> atoms_;
    std::optional<DensityGrid> density_;
    double support_bound_ = 0.0;
    double mass_ = 0.0;
    double supp_lo_ = 0.0;
    double supp_hi_ = 0.0;
};

/// Finite positive measure on the unit circle, atoms (by angle) plus an
/// optional density part on an angle grid. Immutable after construction.
class CircleMeasure {
public:
    CircleMeasure(std::vector<Atom> atoms, std::optional<DensityGrid> density);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<DensityGrid>& density() const { return density_; }
    double total_mass() const { return mass_; }

    /// Conjugate Fourier moments p_n = int e^{-i n theta} mu(dtheta),
    /// n = 1..n_max.
    std::vector<Complex> moments(int n_max) const;

    /// psi transform  int z e^{-i theta} / (1 - z e^{-i theta}) mu(dtheta),
    /// |z| < 1.
    Complex psi(Complex z) const;

    /// Herglotz integral  int (e^{i theta} + w) / (e^{i theta} - w) mu(dtheta),
    /// |w| < 1.
    Complex herglotz(Complex w) const;

    /// Distance from w to the closest support point on the circle.
    double distance_to_support(Complex w) const;

private:
    std::vector<Atom> atoms_;
    std::optional<DensityGrid> density_;
    double mass_ = 0.0;
};

/// Truncated moment sequence m_0..m_N of a real measure at a time stamp.
struct MomentSeries {
    int order = 0;
    double time = 0.0;
    std::vector<double> m;
};

/// Truncated circle moments: total mass (p_0) and p_1..p_N with
/// p_n = int e^{-i n theta} mu(dtheta); p[k] holds p_{k+1}.
struct CircleMomentSeries {
    int order = 0;
    double time = 0.0;
    double mass = 0.0;
    std::vector<Complex> p;
};

enum class Interpolation { kPiecewiseConstant, kLinearInMoments };

template <class M>
struct PathSegment {
    double t_start = 0.0;
    double t_end = 0.0;
    M measure;
};

/// Time-indexed path of measures, piecewise-defined on [0, t_end] with a
/// uniform mass bound. Piecewise-constant evaluation returns the segment's
/// measure; linear-in-moments interpolation (moment-flow consumers only)
/// interpolates the per-segment moment tables between segment midpoints,
/// clamped outside the first/last midpoint.
template <class M>
class MeasurePathT {
public:
    MeasurePathT(std::vector<PathSegment<M>> segments, Interpolation interp,
                 double mass_sup);

    double t_end() const { return segments_.back().t_end; }
    double mass_sup() const { return mass_sup_; }
    Interpolation interpolation() const { return interp_; }
    const std::vector<PathSegment<M>>& segments() const { return segments_; }

    /// Index of the segment containing t (segments are [t_start, t_end),
    /// the final segment also owns its right endpoint).
    std::size_t segment_index(double t) const;

    /// Piecewise-constant lookup of the driving measure at time t.
    const M& measure_at(double t) const;

    /// Cached per-segment moments; order capped at kMomentCacheOrder.
    const std::vector<double>& segment_real_moments(std::size_t i) const;
    const std::vector<Complex>& segment_circle_moments(std::size_t i) const;
    double segment_mass(std::size_t i) const { return seg_mass_[i]; }

    static constexpr int kMomentCacheOrder = 26;

private:
    std::vector<PathSegment<M>> segments_;
    Interpolation interp_;
    double mass_sup_ = 0.0;
    std::vector<double> seg_mass_;
    std::vector<std::vector<double>> real_moments_;     // real paths
    std::vector<std::vector<Complex>> circle_moments_;  // circle paths
};

using RealMeasurePath = MeasurePathT<RealMeasure>;
using CircleMeasurePath = MeasurePathT<CircleMeasure>;

// --- operations ------------------------------------------------------------

/// Raw moments m_0..m_{n_max}; requires n_max >= 2.
MomentSeries real_moments(const RealMeasure& measure, int n_max);

/// Circle moments p_1..p_{n_max}; requires n_max >= 1.
CircleMomentSeries circle_moments(const CircleMeasure& measure, int n_max);

/// Default node count for catalog densities, inverse-cosine clustered so
/// endpoint behavior (sqrt vanishing / inverse-sqrt divergence) is resolved.
inline constexpr int kDefaultLawGrid = 4096;

/// Centered semicircle law with the given variance, support [-2s, 2s].
RealMeasure make_semicircle(double variance, int grid_n = kDefaultLawGrid);

/// Arcsine law with the given variance: density 1/(pi sqrt(2v - x^2)) on
/// (-sqrt(2v), sqrt(2v)). Stored as cell-mass-preserving node values since
/// the density diverges at the endpoints.
RealMeasure make_arcsine(double variance, int grid_n = kDefaultLawGrid);

/// mass * delta_{position}.
RealMeasure make_point(double position, double mass = 1.0);

/// Catalog entry point keyed by name: semicircle(variance),
/// arcsine(variance), point(position[, mass]), scaled_point(position, mass).
RealMeasure law_catalog(const std::string& name, const std::vector<double>& params,
                        int grid_n = kDefaultLawGrid);

/// Point mass on the circle at the given angle.
CircleMeasure make_circle_point(double angle, double mass = 1.0);

/// Normalized arc-length (Haar) measure, gridded.
CircleMeasure make_haar(double mass = 1.0, int grid_n = kDefaultLawGrid);

/// Piecewise-constant path evaluation; 0 <= t <= path.t_end().
template <class M>
const M& path_at(const MeasurePathT<M>& path, double t) {
    return path.measure_at(t);
}

/// Driver moments m_0..m_{n_max} at time t following the path's
/// interpolation mode.
std::vector<double> path_moments_at(const RealMeasurePath& path, double t, int n_max);

/// Driver circle moments (mass, p_1..p_{n_max}) at time t.
std::pair<double, std::vector<Complex>> path_circle_moments_at(
    const CircleMeasurePath& path, double t, int n_max);

/// max_{k <= K} |a_k - b_k|; both series need order >= K.
double moment_distance(const MomentSeries& a, const MomentSeries& b, int K);

/// Circle version: max over |mass difference| and |p_n differences|, n <= K.
double moment_distance(const CircleMomentSeries& a, const CircleMomentSeries& b, int K);

/// Warns (one message per offense) when adjacent segment moments jump by
/// more than jump_tol; weak-topology continuity is not enforced structurally.
std::vector<std::string> validate_path_continuity(const RealMeasurePath& path,
                                                  double jump_tol, int order = 4);

/// Convenience: constant-in-time path of a single measure on [0, t_end].
RealMeasurePath constant_path(const RealMeasure& measure, double t_end);
CircleMeasurePath constant_circle_path(const CircleMeasure& measure, double t_end);

}  // namespace loewner

#endif  // LOEWNER_MEASURES_HPP
