#ifndef LOEWNER_SERIES_HPP
#define LOEWNER_SERIES_HPP

#include <complex>
#include <vector>

#include "loewner/measures.hpp"

namespace loewner {

/// Truncated formal series in one variable. The tag records whether the
/// variable is z or 1/z; binary operations reject mixed tags. Coefficients
/// run over powers [min_power, min_power + size), min_power = -1 appears
/// only for reverted transforms of the 1/z kind (simple pole at 0).
class FormalSeries {
public:
    enum class Var { kZ, kInvZ };

    FormalSeries(Var var, int min_power, std::vector<Complex> coeff);

    Var var() const { return var_; }
    int min_power() const { return min_power_; }
    int max_power() const { return min_power_ + static_cast<int>(coeff_.size()) - 1; }
    const std::vector<Complex>& raw() const { return coeff_; }

    /// Coefficient of power k (zero outside the stored window).
    Complex coeff(int k) const;

    FormalSeries truncated(int max_power) const;

private:
    Var var_ = Var::kZ;
    int min_power_ = 0;
    std::vector<Complex> coeff_;
};

FormalSeries series_add(const FormalSeries& a, const FormalSeries& b);
FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b, int max_power);

/// Compositional/functional inverse through the requested order.
///
/// * Var::kZ input f = c_1 u + ...  (c_0 = 0, c_1 != 0): returns the series
///   g with f(g(u)) = u through u^order, same tag.
/// * Var::kInvZ input G = c_1/z + c_2/z^2 + ... (coefficient of 1/z nonzero):
///   returns the functional inverse K with G(K(w)) = w as a Var::kZ series
///   with min_power = -1 (K(w) = c/w + ...), max power = order.
FormalSeries series_revert(const FormalSeries& series, int order);

/// Evaluates a(b(u)) through u^order. For a Var::kInvZ the composition uses
/// 1/b(u); b may carry the pole term produced by series_revert.
FormalSeries series_compose(const FormalSeries& a, const FormalSeries& b, int order);

// --- plain power-series kernel (coefficients of u^0..u^n) -------------------

std::vector<Complex> ps_mul(const std::vector<Complex>& a, const std::vector<Complex>& b,
                            int n_terms);
/// Reciprocal; requires a[0] != 0.
std::vector<Complex> ps_inv(const std::vector<Complex>& a, int n_terms);
/// a(b(u)); requires b[0] == 0.
std::vector<Complex> ps_compose(const std::vector<Complex>& a, const std::vector<Complex>& b,
                                int n_terms);
/// Compositional inverse by Newton iteration; requires a[0] == 0, a[1] != 0.
std::vector<Complex> ps_revert(const std::vector<Complex>& a, int n_terms);

}  // namespace loewner

#endif  // LOEWNER_SERIES_HPP
