#ifndef LOEWNER_ODE_HPP
#define LOEWNER_ODE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

namespace loewner {

namespace ode_detail {

using Cx = std::complex<double>;

inline void st_axpy(double a, const Cx& x, Cx& y) { y += a * x; }
template <class T>
void st_axpy(double a, const std::vector<T>& x, std::vector<T>& y) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

inline double st_err(const Cx& e, const Cx& y0, const Cx& y1, double atol, double rtol) {
    return std::abs(e) / (atol + rtol * std::max(std::abs(y0), std::abs(y1)));
}
template <class T>
double st_err(const std::vector<T>& e, const std::vector<T>& y0, const std::vector<T>& y1,
              double atol, double rtol) {
    double m = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i)
        m = std::max(m, std::abs(e[i]) / (atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]))));
    return m;
}

}  // namespace ode_detail

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double dt_init = 0.0;        // 0: start from the span (controller adapts)
    double dt_underflow = 1e-14; // below this the step is declared dead
};

struct OdeStats {
    long accepted = 0;
    long rejected = 0;
    double min_dt = std::numeric_limits<double>::infinity();

    void merge(const OdeStats& o) {
        accepted += o.accepted;
        rejected += o.rejected;
        min_dt = std::min(min_dt, o.min_dt);
    }
};

enum class OdeOutcome { kReachedEnd, kStoppedByMonitor, kStepUnderflow };

template <class State>
struct OdeResult {
    State y{};
    double t = 0.0;
    OdeOutcome outcome = OdeOutcome::kReachedEnd;
    // Bracket of the last accepted step (monitor stops) or of the underflow.
    double t_bracket_lo = 0.0;
    double t_bracket_hi = 0.0;
    OdeStats stats;
};

/// Dormand-Prince 5(4) embedded pair over [t0, t1], FSAL, max-norm error
/// control with factor clamp [0.2, 5].
///
/// rhs(t, y, dydt); step_cap(t, y) bounds the next step (return +inf for
/// none); monitor(t, y) runs after each accepted step, returning false stops
/// the integration there (the previous accepted time is reported as the
/// bracket floor).
template <class State, class Rhs, class StepCap, class Monitor>
OdeResult<State> integrate_ode(Rhs&& rhs, State y, double t0, double t1, const OdeOptions& opts,
                               StepCap&& step_cap, Monitor&& monitor) {
    using ode_detail::st_axpy;
    using ode_detail::st_err;

    static constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double kA[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static constexpr double kB4[7] = {5179.0 / 57600, 0.0,           7571.0 / 16695, 393.0 / 640,
                                      -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

    OdeResult<State> out;
    out.y = std::move(y);
    out.t = t0;
    if (t1 <= t0) return out;

    State k[7] = {out.y, out.y, out.y, out.y, out.y, out.y, out.y};
    State y_try = out.y;
    State y_err = out.y;

    double dt = std::min(t1 - t0, step_cap(t0, out.y));
    if (opts.dt_init > 0.0) dt = std::min(dt, opts.dt_init);
    bool have_k0 = false;

    while (out.t < t1 * (1.0 - 1e-15) - 1e-300) {
        dt = std::min({dt, t1 - out.t, step_cap(out.t, out.y)});
        if (!(dt > opts.dt_underflow)) {
            out.outcome = OdeOutcome::kStepUnderflow;
            out.t_bracket_lo = out.t;
            out.t_bracket_hi = out.t + std::max(dt, opts.dt_underflow);
            return out;
        }
        if (!have_k0) {
            rhs(out.t, out.y, k[0]);
            have_k0 = true;
        }
        for (int s = 1; s < 7; ++s) {
            y_try = out.y;
            for (int j = 0; j < s; ++j) st_axpy(dt * kA[s][j], k[j], y_try);
            rhs(out.t + kC[s] * dt, y_try, k[s]);
        }
        // Stage 7 used b-row weights, so y_try is the 5th-order value.
        y_err = out.y;
        for (int j = 0; j < 7; ++j) st_axpy(dt * kB4[j], k[j], y_err);
        st_axpy(-1.0, y_try, y_err);

        const double err = st_err(y_err, out.y, y_try, opts.atol, opts.rtol);
        if (err <= 1.0) {
            const double t_prev = out.t;
            out.t = t_prev + dt;
            out.y = y_try;
            std::swap(k[0], k[6]);  // FSAL
            ++out.stats.accepted;
            out.stats.min_dt = std::min(out.stats.min_dt, dt);
            if (!monitor(out.t, out.y)) {
                out.outcome = OdeOutcome::kStoppedByMonitor;
                out.t_bracket_lo = t_prev;
                out.t_bracket_hi = out.t;
                return out;
            }
            const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            dt *= std::clamp(grow, 0.2, 5.0);
        } else {
            ++out.stats.rejected;
            have_k0 = true;  // k[0] still matches (t, y)
            dt *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
        }
    }
    out.t = t1;
    return out;
}

template <class State, class Rhs>
OdeResult<State> integrate_ode(Rhs&& rhs, State y, double t0, double t1,
                               const OdeOptions& opts = {}) {
    return integrate_ode(
        std::forward<Rhs>(rhs), std::move(y), t0, t1, opts,
        [](double, const State&) { return std::numeric_limits<double>::infinity(); },
        [](double, const State&) { return true; });
}

}  // namespace loewner

#endif  // LOEWNER_ODE_HPP
