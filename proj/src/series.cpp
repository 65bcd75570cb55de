#include "loewner/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace loewner {

namespace {

std::vector<Complex> ps_sub_identity(std::vector<Complex> a) {
    if (a.size() > 1) a[1] -= 1.0;
    return a;
}

std::vector<Complex> ps_derivative(const std::vector<Complex>& a) {
    std::vector<Complex> d(a.size() > 1 ? a.size() - 1 : 1, Complex(0.0));
    for (std::size_t k = 1; k < a.size(); ++k) d[k - 1] = static_cast<double>(k) * a[k];
    return d;
}

}  // namespace

std::vector<Complex> ps_mul(const std::vector<Complex>& a, const std::vector<Complex>& b,
                            int n_terms) {
    std::vector<Complex> c(static_cast<std::size_t>(n_terms), Complex(0.0));
    const std::size_t na = std::min<std::size_t>(a.size(), n_terms);
    for (std::size_t i = 0; i < na; ++i) {
        if (a[i] == Complex(0.0)) continue;
        const std::size_t nb = std::min<std::size_t>(b.size(), n_terms - i);
        for (std::size_t j = 0; j < nb; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

std::vector<Complex> ps_inv(const std::vector<Complex>& a, int n_terms) {
    if (a.empty() || a[0] == Complex(0.0))
        throw std::invalid_argument("ps_inv: constant term vanishes");
    std::vector<Complex> b(static_cast<std::size_t>(n_terms), Complex(0.0));
    b[0] = 1.0 / a[0];
    for (int k = 1; k < n_terms; ++k) {
        Complex s = 0.0;
        const int jmax = std::min<int>(k, static_cast<int>(a.size()) - 1);
        for (int j = 1; j <= jmax; ++j) s += a[j] * b[k - j];
        b[k] = -s / a[0];
    }
    return b;
}

std::vector<Complex> ps_compose(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                int n_terms) {
    if (!b.empty() && b[0] != Complex(0.0))
        throw std::invalid_argument("ps_compose: inner series must vanish at 0");
    std::vector<Complex> r(static_cast<std::size_t>(n_terms), Complex(0.0));
    if (a.empty()) return r;
    // Horner on series coefficients.
    const int top = std::min<int>(static_cast<int>(a.size()) - 1, n_terms - 1);
    r[0] = a[top];
    for (int k = top - 1; k >= 0; --k) {
        r = ps_mul(r, b, n_terms);
        r[0] += a[k];
    }
    return r;
}

std::vector<Complex> ps_revert(const std::vector<Complex>& a, int n_terms) {
    if (a.size() < 2 || a[0] != Complex(0.0) || a[1] == Complex(0.0))
        throw std::invalid_argument("ps_revert: series is not a compositional unit");
    std::vector<Complex> g = {Complex(0.0), 1.0 / a[1]};
    const std::vector<Complex> da = ps_derivative(a);
    int order = 2;  // coefficients correct below this power
    while (static_cast<int>(g.size()) < n_terms || order < n_terms) {
        const int w = std::min(2 * order, n_terms);
        g.resize(static_cast<std::size_t>(w), Complex(0.0));
        std::vector<Complex> res = ps_sub_identity(ps_compose(a, g, w));
        std::vector<Complex> dcomp = ps_compose(da, g, w);
        std::vector<Complex> corr = ps_mul(res, ps_inv(dcomp, w), w);
        for (int k = 0; k < w; ++k) g[k] -= corr[k];
        order = w;
        if (w == n_terms) break;
    }
    g.resize(static_cast<std::size_t>(n_terms), Complex(0.0));
    return g;
}

// --- FormalSeries ------------------------------------------------------------

FormalSeries::FormalSeries(Var var, int min_power, std::vector<Complex> coeff)
    : var_(var), min_power_(min_power), coeff_(std::move(coeff)) {
    if (coeff_.size() < 1) throw std::invalid_argument("FormalSeries: empty coefficient list");
    if (min_power_ < -1) throw std::invalid_argument("FormalSeries: min_power below -1");
}

Complex FormalSeries::coeff(int k) const {
    if (k < min_power_ || k > max_power()) return Complex(0.0);
    return coeff_[static_cast<std::size_t>(k - min_power_)];
}

FormalSeries FormalSeries::truncated(int max_power) const {
    if (max_power < min_power_) throw std::invalid_argument("FormalSeries: empty truncation");
    std::vector<Complex> c(static_cast<std::size_t>(max_power - min_power_) + 1, Complex(0.0));
    for (int k = min_power_; k <= std::min(max_power, this->max_power()); ++k)
        c[static_cast<std::size_t>(k - min_power_)] = coeff(k);
    return FormalSeries(var_, min_power_, std::move(c));
}

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b) {
    if (a.var() != b.var())
        throw std::invalid_argument("series_add: variable conventions differ");
    const int lo = std::min(a.min_power(), b.min_power());
    const int hi = std::min(a.max_power(), b.max_power());
    std::vector<Complex> c(static_cast<std::size_t>(hi - lo) + 1, Complex(0.0));
    for (int k = lo; k <= hi; ++k) c[static_cast<std::size_t>(k - lo)] = a.coeff(k) + b.coeff(k);
    return FormalSeries(a.var(), lo, std::move(c));
}

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b, int max_power) {
    if (a.var() != b.var())
        throw std::invalid_argument("series_mul: variable conventions differ");
    const int lo = a.min_power() + b.min_power();
    if (lo < -1) throw std::invalid_argument("series_mul: pole order above 1");
    std::vector<Complex> c(static_cast<std::size_t>(max_power - lo) + 1, Complex(0.0));
    for (int i = a.min_power(); i <= a.max_power(); ++i) {
        if (a.coeff(i) == Complex(0.0)) continue;
        for (int j = b.min_power(); j <= std::min(b.max_power(), max_power - i); ++j)
            c[static_cast<std::size_t>(i + j - lo)] += a.coeff(i) * b.coeff(j);
    }
    return FormalSeries(a.var(), lo, std::move(c));
}

FormalSeries series_revert(const FormalSeries& series, int order) {
    if (series.var() == FormalSeries::Var::kZ) {
        if (series.min_power() < 0 || series.coeff(0) != Complex(0.0) ||
            series.coeff(1) == Complex(0.0))
            throw std::invalid_argument("series_revert: series is not a compositional unit");
        std::vector<Complex> a(static_cast<std::size_t>(order) + 1, Complex(0.0));
        for (int k = 0; k <= order; ++k) a[k] = series.coeff(k);
        return FormalSeries(FormalSeries::Var::kZ, 0, ps_revert(a, order + 1));
    }
    // 1/z kind: G = c_1/z + c_2/z^2 + ...; require decay at infinity and a
    // nonvanishing 1/z coefficient, then K(w) = 1/h(w) for h the power-series
    // inverse of u -> sum c_k u^k.
    if (series.coeff(0) != Complex(0.0))
        throw std::invalid_argument("series_revert: 1/z series has a constant term");
    if (series.coeff(1) == Complex(0.0))
        throw std::invalid_argument("series_revert: 1/z coefficient vanishes");
    std::vector<Complex> ghat(static_cast<std::size_t>(order) + 2, Complex(0.0));
    for (int k = 0; k < static_cast<int>(ghat.size()); ++k) ghat[k] = series.coeff(k);
    std::vector<Complex> h = ps_revert(ghat, order + 2);
    std::vector<Complex> h_over_u(h.begin() + 1, h.end());  // h(u)/u, constant term != 0
    std::vector<Complex> k = ps_inv(h_over_u, order + 2);   // K(w) w = 1/(h(w)/w)
    k.resize(static_cast<std::size_t>(order) + 2, Complex(0.0));
    return FormalSeries(FormalSeries::Var::kZ, -1, std::move(k));
}

FormalSeries series_compose(const FormalSeries& a, const FormalSeries& b, int order) {
    std::vector<Complex> inner;
    if (b.min_power() == -1) {
        if (b.coeff(-1) == Complex(0.0))
            throw std::invalid_argument("series_compose: vanishing pole coefficient");
        // 1/b as a power series with zero constant term.
        std::vector<Complex> bw(static_cast<std::size_t>(b.max_power()) + 2, Complex(0.0));
        for (int k = -1; k <= b.max_power(); ++k) bw[k + 1] = b.coeff(k);
        std::vector<Complex> inv_bw = ps_inv(bw, order + 1);
        inner.assign(static_cast<std::size_t>(order) + 1, Complex(0.0));
        for (int k = 1; k <= order; ++k) inner[k] = inv_bw[k - 1];
    } else {
        if (b.min_power() < 1 && b.coeff(0) != Complex(0.0))
            throw std::invalid_argument("series_compose: inner series must vanish at 0");
        inner.assign(static_cast<std::size_t>(order) + 1, Complex(0.0));
        for (int k = 1; k <= std::min(order, b.max_power()); ++k) inner[k] = b.coeff(k);
    }
    if (a.var() == FormalSeries::Var::kInvZ) {
        // a(b) = sum c_k (1/b)^k; with b carrying a pole, 1/b vanishes at 0,
        // so compose the u-side power series with the reciprocal of b.
        if (b.min_power() != -1)
            throw std::invalid_argument("series_compose: 1/z outer needs a pole-type inner");
        std::vector<Complex> ahat(static_cast<std::size_t>(order) + 1, Complex(0.0));
        for (int k = 0; k <= order; ++k) ahat[k] = a.coeff(k);
        return FormalSeries(FormalSeries::Var::kZ, 0, ps_compose(ahat, inner, order + 1));
    }
    if (a.min_power() < 0)
        throw std::invalid_argument("series_compose: outer Laurent series unsupported");
    std::vector<Complex> av(static_cast<std::size_t>(order) + 1, Complex(0.0));
    for (int k = 0; k <= order; ++k) av[k] = a.coeff(k);
    return FormalSeries(a.var(), 0, ps_compose(av, inner, order + 1));
}

}  // namespace loewner
