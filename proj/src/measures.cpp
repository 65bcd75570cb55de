#include "loewner/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace loewner {

namespace {

constexpr double kPi = std::numbers::pi;

// Trapezoid weight of node j on a nonuniform grid.
double trapezoid_weight(const std::vector<double>& g, std::size_t j) {
    double w = 0.0;
    if (j > 0) w += 0.5 * (g[j] - g[j - 1]);
    if (j + 1 < g.size()) w += 0.5 * (g[j + 1] - g[j]);
    return w;
}

double density_integral(const DensityGrid& d, const std::vector<double>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < d.grid.size(); ++i)
        s += 0.5 * (d.grid[i + 1] - d.grid[i]) * (f[i] + f[i + 1]);
    return s;
}

void check_density(const DensityGrid& d, const char* what) {
    if (d.grid.size() < 2 || d.grid.size() != d.values.size())
        throw std::invalid_argument(std::string(what) + ": density grid/value size mismatch");
    for (std::size_t i = 0; i + 1 < d.grid.size(); ++i)
        if (!(d.grid[i] < d.grid[i + 1]))
            throw std::invalid_argument(std::string(what) + ": density grid not strictly increasing");
    for (double v : d.values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": negative or non-finite density value");
}

// Distance switch between the far-field trapezoid sum and the exact
// integral of the piecewise-linear density interpolant, with a linear
// blend over [kNearDist, kFarDist] to keep the value continuous in z.
constexpr double kNearDist = 0.2;
constexpr double kFarDist = 0.3;

Complex cauchy_density_trapezoid(const DensityGrid& d, Complex z) {
    Complex s = 0.0;
    const auto& g = d.grid;
    const auto& v = d.values;
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double h = g[i + 1] - g[i];
        s += 0.5 * h * (v[i] / (z - g[i]) + v[i + 1] / (z - g[i + 1]));
    }
    return s;
}

// Exact Cauchy integral of the piecewise-linear interpolant:
// per cell [p,q]:  [v_p + s (z - p)] log((z-p)/(z-q)) - s (q - p).
Complex cauchy_density_linear(const DensityGrid& d, Complex z) {
    const auto& g = d.grid;
    const auto& v = d.values;
    Complex total = 0.0;
    Complex log_prev = std::log(z - g[0]);
    for (std::size_t i = 0; i + 1 < g.size(); ++i) {
        const double h = g[i + 1] - g[i];
        const double slope = (v[i + 1] - v[i]) / h;
        const Complex log_next = std::log(z - g[i + 1]);
        total += (v[i] + slope * (z - g[i])) * (log_prev - log_next) - slope * h;
        log_prev = log_next;
    }
    return total;
}

}  // namespace

// --- RealMeasure -------------------------------------------------------------

RealMeasure::RealMeasure(std::vector<Atom> atoms, std::optional<DensityGrid> density,
                         double support_bound)
    : atoms_(std::move(atoms)), density_(std::move(density)), support_bound_(support_bound) {
    if (!(support_bound_ > 0.0) || !std::isfinite(support_bound_))
        throw std::invalid_argument("RealMeasure: support_bound must be positive and finite");
    supp_lo_ = support_bound_;
    supp_hi_ = -support_bound_;
    for (const Atom& a : atoms_) {
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.position))
            throw std::invalid_argument("RealMeasure: bad atom");
        if (std::abs(a.position) > support_bound_ * (1.0 + 1e-12) + 1e-300)
            throw std::invalid_argument("RealMeasure: atom outside [-m, m]");
        mass_ += a.mass;
        supp_lo_ = std::min(supp_lo_, a.position);
        supp_hi_ = std::max(supp_hi_, a.position);
    }
    if (density_) {
        check_density(*density_, "RealMeasure");
        if (density_->grid.front() < -support_bound_ * (1.0 + 1e-12) ||
            density_->grid.back() > support_bound_ * (1.0 + 1e-12))
            throw std::invalid_argument("RealMeasure: density grid outside [-m, m]");
        mass_ += density_integral(*density_, density_->values);
        supp_lo_ = std::min(supp_lo_, density_->grid.front());
        supp_hi_ = std::max(supp_hi_, density_->grid.back());
    }
    if (!(mass_ > 0.0) || !std::isfinite(mass_))
        throw std::invalid_argument("RealMeasure: total mass must be positive and finite");
}

double RealMeasure::moment(int k) const {
    double s = 0.0;
    for (const Atom& a : atoms_) s += a.mass * std::pow(a.position, k);
    if (density_) {
        const auto& g = density_->grid;
        const auto& v = density_->values;
        std::vector<double> f(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) f[i] = std::pow(g[i], k) * v[i];
        s += density_integral(*density_, f);
    }
    return s;
}

Complex RealMeasure::cauchy(Complex z) const {
    Complex s = 0.0;
    for (const Atom& a : atoms_) s += a.mass / (z - a.position);
    if (density_) {
        const double dx = std::max({0.0, density_->grid.front() - z.real(),
                                    z.real() - density_->grid.back()});
        const double dist = std::hypot(dx, z.imag());
        if (dist >= kFarDist) {
            s += cauchy_density_trapezoid(*density_, z);
        } else if (dist <= kNearDist) {
            s += cauchy_density_linear(*density_, z);
        } else {
            const double w = (dist - kNearDist) / (kFarDist - kNearDist);
            s += w * cauchy_density_trapezoid(*density_, z) +
                 (1.0 - w) * cauchy_density_linear(*density_, z);
        }
    }
    return s;
}

double RealMeasure::distance_to_support(Complex z) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Atom& a : atoms_)
        best = std::min(best, std::abs(z - Complex(a.position, 0.0)));
    if (density_) {
        const double dx = std::max({0.0, density_->grid.front() - z.real(),
                                    z.real() - density_->grid.back()});
        best = std::min(best, std::hypot(dx, z.imag()));
    }
    return best;
}

// --- CircleMeasure -----------------------------------------------------------

CircleMeasure::CircleMeasure(std::vector<Atom> atoms, std::optional<DensityGrid> density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
    for (Atom& a : atoms_) {
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass) || !std::isfinite(a.position))
            throw std::invalid_argument("CircleMeasure: bad atom");
        a.position = std::fmod(a.position, 2.0 * kPi);
        if (a.position < 0.0) a.position += 2.0 * kPi;
        mass_ += a.mass;
    }
    if (density_) {
        check_density(*density_, "CircleMeasure");
        if (density_->grid.back() - density_->grid.front() > 2.0 * kPi + 1e-9)
            throw std::invalid_argument("CircleMeasure: angle grid spans more than 2*pi");
        mass_ += density_integral(*density_, density_->values);
    }
    if (!(mass_ > 0.0) || !std::isfinite(mass_))
        throw std::invalid_argument("CircleMeasure: total mass must be positive and finite");
}

std::vector<Complex> CircleMeasure::moments(int n_max) const {
    std::vector<Complex> p(static_cast<std::size_t>(n_max), Complex(0.0, 0.0));
    for (const Atom& a : atoms_) {
        const Complex step = std::exp(Complex(0.0, -a.position));
        Complex phase = step;
        for (int n = 1; n <= n_max; ++n) {
            p[n - 1] += a.mass * phase;
            phase *= step;
        }
    }
    if (density_) {
        const auto& g = density_->grid;
        const auto& v = density_->values;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double w = trapezoid_weight(g, j) * v[j];
            const Complex step = std::exp(Complex(0.0, -g[j]));
            Complex phase = step;
            for (int n = 1; n <= n_max; ++n) {
                p[n - 1] += w * phase;
                phase *= step;
            }
        }
    }
    return p;
}

Complex CircleMeasure::herglotz(Complex w) const {
    Complex s = 0.0;
    for (const Atom& a : atoms_) {
        const Complex e = std::exp(Complex(0.0, a.position));
        s += a.mass * (e + w) / (e - w);
    }
    if (density_) {
        const auto& g = density_->grid;
        const auto& v = density_->values;
        const bool full_circle = (g.back() - g.front()) >= 2.0 * kPi - 2.0 * (g[1] - g[0]);
        const double dist = 1.0 - std::abs(w);
        if (full_circle && dist < 0.1) {
            // Pole subtraction: integrate (rho - rho0) against the kernel and
            // add the exact full-circle integral of the constant, 2*pi*rho0.
            double theta0 = std::arg(w);
            if (theta0 < g.front()) theta0 += 2.0 * kPi;
            const auto it = std::upper_bound(g.begin(), g.end(), theta0);
            const std::size_t j = std::min(g.size() - 2,
                                           static_cast<std::size_t>(std::max<std::ptrdiff_t>(
                                               0, it - g.begin() - 1)));
            const double u = (theta0 - g[j]) / (g[j + 1] - g[j]);
            const double rho0 = (1.0 - u) * v[j] + u * v[j + 1];
            Complex acc = 0.0;
            for (std::size_t i = 0; i + 1 < g.size(); ++i) {
                const double h = g[i + 1] - g[i];
                const Complex e0 = std::exp(Complex(0.0, g[i]));
                const Complex e1 = std::exp(Complex(0.0, g[i + 1]));
                const Complex f0 = (v[i] - rho0) * (e0 + w) / (e0 - w);
                const Complex f1 = (v[i + 1] - rho0) * (e1 + w) / (e1 - w);
                acc += 0.5 * h * (f0 + f1);
            }
            s += acc + 2.0 * kPi * rho0;
        } else {
            for (std::size_t i = 0; i + 1 < g.size(); ++i) {
                const double h = g[i + 1] - g[i];
                const Complex e0 = std::exp(Complex(0.0, g[i]));
                const Complex e1 = std::exp(Complex(0.0, g[i + 1]));
                s += 0.5 * h * (v[i] * (e0 + w) / (e0 - w) + v[i + 1] * (e1 + w) / (e1 - w));
            }
        }
    }
    return s;
}

Complex CircleMeasure::psi(Complex z) const {
    return 0.5 * (herglotz(z) - mass_);
}

double CircleMeasure::distance_to_support(Complex w) const {
    double best = std::numeric_limits<double>::infinity();
    for (const Atom& a : atoms_)
        best = std::min(best, std::abs(w - std::exp(Complex(0.0, a.position))));
    if (density_) {
        const auto& g = density_->grid;
        const bool full_circle = (g.back() - g.front()) >= 2.0 * kPi - 2.0 * (g[1] - g[0]);
        if (full_circle) {
            best = std::min(best, std::abs(1.0 - std::abs(w)));
        } else {
            double theta = std::arg(w);
            if (theta < 0.0) theta += 2.0 * kPi;
            if (theta >= g.front() && theta <= g.back()) {
                best = std::min(best, std::abs(1.0 - std::abs(w)));
            } else {
                best = std::min({best, std::abs(w - std::exp(Complex(0.0, g.front()))),
                                 std::abs(w - std::exp(Complex(0.0, g.back())))});
            }
        }
    }
    return best;
}

// --- paths -------------------------------------------------------------------

template <class M>
MeasurePathT<M>::MeasurePathT(std::vector<PathSegment<M>> segments, Interpolation interp,
                              double mass_sup)
    : segments_(std::move(segments)), interp_(interp), mass_sup_(mass_sup) {
    if (segments_.empty()) throw std::invalid_argument("MeasurePath: no segments");
    if (std::abs(segments_.front().t_start) > 1e-12)
        throw std::invalid_argument("MeasurePath: first segment must start at t = 0");
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (!(segments_[i].t_start < segments_[i].t_end))
            throw std::invalid_argument("MeasurePath: segment must have t_start < t_end");
        if (i > 0 && std::abs(segments_[i].t_start - segments_[i - 1].t_end) > 1e-12)
            throw std::invalid_argument("MeasurePath: segments leave a gap");
    }
    seg_mass_.reserve(segments_.size());
    for (const auto& s : segments_) {
        seg_mass_.push_back(s.measure.total_mass());
        if (seg_mass_.back() > mass_sup_ * (1.0 + 1e-12))
            throw std::invalid_argument("MeasurePath: segment mass exceeds mass_sup");
    }
    if constexpr (std::is_same_v<M, RealMeasure>) {
        real_moments_.reserve(segments_.size());
        for (const auto& s : segments_) {
            std::vector<double> m(kMomentCacheOrder + 1);
            for (int k = 0; k <= kMomentCacheOrder; ++k) m[k] = s.measure.moment(k);
            real_moments_.push_back(std::move(m));
        }
    } else {
        circle_moments_.reserve(segments_.size());
        for (const auto& s : segments_)
            circle_moments_.push_back(s.measure.moments(kMomentCacheOrder));
    }
}

template <class M>
std::size_t MeasurePathT<M>::segment_index(double t) const {
    if (t < -1e-12 || t > t_end() + 1e-12)
        throw std::out_of_range("MeasurePath: time outside [0, t_end]");
    std::size_t lo = 0, hi = segments_.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (t < segments_[mid].t_end)
            hi = mid;
        else
            lo = mid + 1;
    }
    return lo;
}

template <class M>
const M& MeasurePathT<M>::measure_at(double t) const {
    return segments_[segment_index(t)].measure;
}

template <class M>
const std::vector<double>& MeasurePathT<M>::segment_real_moments(std::size_t i) const {
    return real_moments_[i];
}

template <class M>
const std::vector<Complex>& MeasurePathT<M>::segment_circle_moments(std::size_t i) const {
    return circle_moments_[i];
}

template class MeasurePathT<RealMeasure>;
template class MeasurePathT<CircleMeasure>;

// --- operations --------------------------------------------------------------

MomentSeries real_moments(const RealMeasure& measure, int n_max) {
    if (n_max < 2) throw std::invalid_argument("real_moments: n_max must be >= 2");
    MomentSeries out;
    out.order = n_max;
    out.m.resize(static_cast<std::size_t>(n_max) + 1);
    for (int k = 0; k <= n_max; ++k) out.m[k] = measure.moment(k);
    return out;
}

CircleMomentSeries circle_moments(const CircleMeasure& measure, int n_max) {
    if (n_max < 1) throw std::invalid_argument("circle_moments: n_max must be >= 1");
    CircleMomentSeries out;
    out.order = n_max;
    out.mass = measure.total_mass();
    out.p = measure.moments(n_max);
    return out;
}

RealMeasure make_semicircle(double variance, int grid_n) {
    if (!(variance > 0.0)) throw std::invalid_argument("semicircle: variance must be positive");
    const double radius = 2.0 * std::sqrt(variance);
    DensityGrid d;
    d.grid.resize(grid_n);
    d.values.resize(grid_n);
    for (int j = 0; j < grid_n; ++j) {
        const double x = -radius * std::cos(kPi * j / (grid_n - 1));
        d.grid[j] = x;
        d.values[j] = std::sqrt(std::max(radius * radius - x * x, 0.0)) / (2.0 * kPi * variance);
    }
    return RealMeasure({}, std::move(d), radius);
}

RealMeasure make_arcsine(double variance, int grid_n) {
    if (!(variance > 0.0)) throw std::invalid_argument("arcsine: variance must be positive");
    const double radius = std::sqrt(2.0 * variance);
    DensityGrid d;
    d.grid.resize(grid_n);
    for (int j = 0; j < grid_n; ++j)
        d.grid[j] = -radius * std::cos(kPi * j / (grid_n - 1));
    // Node values chosen so the trapezoid rule reproduces the exact mass of
    // each cell around a node; the pointwise density diverges at the ends.
    auto cdf = [&](double x) {
        return 0.5 + std::asin(std::clamp(x / radius, -1.0, 1.0)) / kPi;
    };
    d.values.resize(grid_n);
    for (int j = 0; j < grid_n; ++j) {
        const double lo = (j == 0) ? d.grid[0] : 0.5 * (d.grid[j - 1] + d.grid[j]);
        const double hi = (j == grid_n - 1) ? d.grid[grid_n - 1] : 0.5 * (d.grid[j] + d.grid[j + 1]);
        d.values[j] = (cdf(hi) - cdf(lo)) / trapezoid_weight(d.grid, j);
    }
    return RealMeasure({}, std::move(d), radius);
}

RealMeasure make_point(double position, double mass) {
    const double bound = std::max(std::abs(position), 1.0);
    return RealMeasure({Atom{position, mass}}, std::nullopt, bound);
}

RealMeasure law_catalog(const std::string& name, const std::vector<double>& params, int grid_n) {
    auto need = [&](std::size_t n) {
        if (params.size() < n)
            throw std::invalid_argument("law_catalog: " + name + " needs " + std::to_string(n) +
                                        " parameter(s)");
    };
    if (name == "semicircle") {
        need(1);
        return make_semicircle(params[0], grid_n);
    }
    if (name == "arcsine") {
        need(1);
        return make_arcsine(params[0], grid_n);
    }
    if (name == "point") {
        need(1);
        return make_point(params[0], params.size() > 1 ? params[1] : 1.0);
    }
    if (name == "scaled_point") {
        need(2);
        return make_point(params[0], params[1]);
    }
    throw std::invalid_argument("law_catalog: unknown law '" + name + "'");
}

CircleMeasure make_circle_point(double angle, double mass) {
    return CircleMeasure({Atom{angle, mass}}, std::nullopt);
}

CircleMeasure make_haar(double mass, int grid_n) {
    DensityGrid d;
    d.grid.resize(grid_n + 1);
    d.values.assign(grid_n + 1, mass / (2.0 * kPi));
    for (int j = 0; j <= grid_n; ++j) d.grid[j] = 2.0 * kPi * j / grid_n;
    return CircleMeasure({}, std::move(d));
}

namespace {

// Linear interpolation between per-segment moment tables, with nodes at
// segment midpoints and clamping outside the first/last midpoint.
template <class M, class Table>
Table interp_moments(const MeasurePathT<M>& path, double t,
                     const Table& (MeasurePathT<M>::*get)(std::size_t) const) {
    const auto& segs = path.segments();
    auto mid = [&](std::size_t i) { return 0.5 * (segs[i].t_start + segs[i].t_end); };
    if (segs.size() == 1 || t <= mid(0)) return (path.*get)(0);
    if (t >= mid(segs.size() - 1)) return (path.*get)(segs.size() - 1);
    std::size_t i = path.segment_index(t);
    if (t < mid(i)) --i;
    const double u = (t - mid(i)) / (mid(i + 1) - mid(i));
    Table out = (path.*get)(i);
    const Table& next = (path.*get)(i + 1);
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = out[k] * (1.0 - u) + next[k] * u;
    return out;
}

}  // namespace

std::vector<double> path_moments_at(const RealMeasurePath& path, double t, int n_max) {
    if (n_max > RealMeasurePath::kMomentCacheOrder)
        throw std::invalid_argument("path_moments_at: order above moment cache");
    std::vector<double> m;
    if (path.interpolation() == Interpolation::kPiecewiseConstant)
        m = path.segment_real_moments(path.segment_index(t));
    else
        m = interp_moments(path, t, &RealMeasurePath::segment_real_moments);
    m.resize(static_cast<std::size_t>(n_max) + 1);
    return m;
}

std::pair<double, std::vector<Complex>> path_circle_moments_at(const CircleMeasurePath& path,
                                                               double t, int n_max) {
    if (n_max > CircleMeasurePath::kMomentCacheOrder)
        throw std::invalid_argument("path_circle_moments_at: order above moment cache");
    std::vector<Complex> p;
    double mass = 0.0;
    if (path.interpolation() == Interpolation::kPiecewiseConstant) {
        const std::size_t i = path.segment_index(t);
        p = path.segment_circle_moments(i);
        mass = path.segment_mass(i);
    } else {
        p = interp_moments(path, t, &CircleMeasurePath::segment_circle_moments);
        const auto& segs = path.segments();
        auto mid = [&](std::size_t i) { return 0.5 * (segs[i].t_start + segs[i].t_end); };
        if (segs.size() == 1 || t <= mid(0)) {
            mass = path.segment_mass(0);
        } else if (t >= mid(segs.size() - 1)) {
            mass = path.segment_mass(segs.size() - 1);
        } else {
            std::size_t i = path.segment_index(t);
            if (t < mid(i)) --i;
            const double u = (t - mid(i)) / (mid(i + 1) - mid(i));
            mass = (1.0 - u) * path.segment_mass(i) + u * path.segment_mass(i + 1);
        }
    }
    p.resize(static_cast<std::size_t>(n_max));
    return {mass, std::move(p)};
}

double moment_distance(const MomentSeries& a, const MomentSeries& b, int K) {
    if (a.order < K || b.order < K)
        throw std::invalid_argument("moment_distance: both series need order >= K");
    double d = 0.0;
    for (int k = 0; k <= K; ++k) d = std::max(d, std::abs(a.m[k] - b.m[k]));
    return d;
}

double moment_distance(const CircleMomentSeries& a, const CircleMomentSeries& b, int K) {
    if (a.order < K || b.order < K)
        throw std::invalid_argument("moment_distance: both series need order >= K");
    double d = std::abs(a.mass - b.mass);
    for (int k = 1; k <= K; ++k) d = std::max(d, std::abs(a.p[k - 1] - b.p[k - 1]));
    return d;
}

std::vector<std::string> validate_path_continuity(const RealMeasurePath& path, double jump_tol,
                                                  int order) {
    std::vector<std::string> warnings;
    const auto& segs = path.segments();
    for (std::size_t i = 0; i + 1 < segs.size(); ++i) {
        const auto& a = path.segment_real_moments(i);
        const auto& b = path.segment_real_moments(i + 1);
        for (int k = 0; k <= order; ++k) {
            const double jump = std::abs(a[k] - b[k]);
            if (jump > jump_tol) {
                warnings.push_back("moment m_" + std::to_string(k) + " jumps by " +
                                   std::to_string(jump) + " at t = " +
                                   std::to_string(segs[i].t_end));
                break;
            }
        }
    }
    return warnings;
}

RealMeasurePath constant_path(const RealMeasure& measure, double t_end) {
    std::vector<PathSegment<RealMeasure>> segs;
    segs.push_back({0.0, t_end, measure});
    return RealMeasurePath(std::move(segs), Interpolation::kPiecewiseConstant,
                           measure.total_mass());
}

CircleMeasurePath constant_circle_path(const CircleMeasure& measure, double t_end) {
    std::vector<PathSegment<CircleMeasure>> segs;
    segs.push_back({0.0, t_end, measure});
    return CircleMeasurePath(std::move(segs), Interpolation::kPiecewiseConstant,
                             measure.total_mass());
}

}  // namespace loewner
