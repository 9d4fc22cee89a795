#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace fracsub {

/// Order alpha of the Caputo derivative, validated to lie in (0, 1).
class FractionalOrder {
public:
    /// @throws DomainError if alpha is not in the open interval (0, 1)
    explicit FractionalOrder(double alpha);

    double value() const noexcept { return alpha_; }
    operator double() const noexcept { return alpha_; }  // NOLINT(implicit)

private:
    double alpha_;
};

enum class CqScheme { GL, FBDF2 };

/// Weight sequence w_0..w_n of one convolution-quadrature rule together with
/// its generating symbol. Immutable after construction.
class CqKernel {
public:
    CqKernel(CqScheme scheme, double alpha, std::vector<double> weights);

    CqScheme scheme() const noexcept { return scheme_; }
    double alpha() const noexcept { return alpha_; }
    std::span<const double> weights() const noexcept { return weights_; }
    std::size_t size() const noexcept { return weights_.size(); }
    double operator[](std::size_t j) const { return weights_[j]; }

    /// delta(xi) = (1 - xi)^alpha for GL, (3/2 - 2 xi + xi^2/2)^alpha for FBDF2,
    /// principal branch; valid for |xi| <= 1.
    std::complex<double> symbol(std::complex<double> xi) const;

private:
    CqScheme scheme_;
    double alpha_;
    std::vector<double> weights_;
};

/// sigma_0..sigma_n of (1 - xi)^alpha via sigma_j = sigma_{j-1} (j - 1 - alpha) / j.
CqKernel gl_weights(FractionalOrder alpha, std::size_t n);

/// w_0..w_n of (3/2 - 2 xi + xi^2/2)^alpha, formed as (3/2)^alpha times the
/// Cauchy product of the coefficient sequences of (1 - xi)^alpha and
/// (1 - xi/3)^alpha with compensated summation.
CqKernel fbdf2_weights(FractionalOrder alpha, std::size_t n);

CqKernel make_kernel(CqScheme scheme, FractionalOrder alpha, std::size_t n);

/// tau^-alpha sum_{j=0}^{n} w_j V^{n-j} for history V^0..V^n.
/// @throws DimensionMismatch on ragged history or a kernel shorter than n+1
std::vector<double> apply_cq(const CqKernel& kernel, double tau,
                             std::span<const std::vector<double>> history);

/// Scalar form of apply_cq.
double apply_cq(const CqKernel& kernel, double tau, std::span<const double> history);

/// Append-only store of weight sequences keyed by (scheme, alpha). Requests
/// for a longer sequence extend the stored one in place; shorter requests
/// return a prefix. Not synchronized.
class WeightCache {
public:
    CqKernel get(CqScheme scheme, FractionalOrder alpha, std::size_t n);
    std::size_t stored_length(CqScheme scheme, double alpha) const;

private:
    struct Entry {
        std::vector<double> gl;        // sigma_j
        std::vector<double> third;     // coefficients of (1 - xi/3)^alpha
        std::vector<double> weights;   // requested sequence
    };
    void extend(Entry& e, CqScheme scheme, double alpha, std::size_t n);

    std::map<std::pair<int, double>, Entry> entries_;
};

/// Outcome of sampling the sector and small-|z| properties of both symbols
/// delta(e^-z). Angular quantities are in radians; a non-positive excess
/// means the sector inclusion held at every sample.
struct SectorLemmaReport {
    double gl_arg_excess_right = 0.0;    ///< max |arg delta_GL^alpha| - alpha pi/2, Re z > 0
    double bdf2_arg_excess_right = 0.0;  ///< same for the BDF2 symbol
    double gl_arg_excess_left = 0.0;     ///< max |arg delta_GL^alpha| - alpha |arg z|, Re z <= 0, |Im z| <= pi
    double gl_slope_min = 0.0;           ///< fitted exponent of |z^beta - delta_GL(e^-z)^beta|
    double gl_slope_max = 0.0;
    double bdf2_slope_min = 0.0;         ///< fitted exponent for the BDF2 symbol
    double bdf2_slope_max = 0.0;
    std::size_t samples = 0;
};

/// Regression check of the symbol evaluation code: random samples of z in the
/// right half-plane (Re z in (0, 3]) and in the left strip, plus least-squares
/// log-log slopes along random rays for |z| in [1e-4, 1e-2] with exponent beta.
/// @throws DomainError if sample_count == 0
SectorLemmaReport check_sector_lemmas(FractionalOrder alpha, std::size_t sample_count,
                                      double beta, std::uint64_t seed = 20240531);

inline SectorLemmaReport check_sector_lemmas(FractionalOrder alpha, std::size_t sample_count) {
    return check_sector_lemmas(alpha, sample_count, alpha.value());
}

/// 1 - e^{-z} without cancellation near z = 0.
std::complex<double> one_minus_exp_neg(std::complex<double> z);

}  // namespace fracsub
