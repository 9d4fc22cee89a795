#pragma once

namespace fracsub {

/// Arguments of E_{alpha,beta}(x). Accepted: alpha in (0,1], beta in (0,4].
struct MlQuery {
    double alpha;
    double beta;
    double x;
};

enum class MlRegime {
    Series,          ///< double-precision power series, |x| <= 1
    ExtendedSeries,  ///< power series summed in double-double arithmetic
    Asymptotic,      ///< algebraic expansion for large negative x
};

struct MlResult {
    double value;
    double error_estimate;  ///< absolute
    MlRegime regime;
};

/// Absolute accuracy every returned value is certified to.
inline constexpr double kMlTolerance = 1e-12;

/// E_{alpha,beta}(x) with regime selection and an absolute error estimate.
/// @throws DomainError for parameters outside the accepted ranges
/// @throws AccuracyNotAchieved if no regime certifies kMlTolerance
MlResult ml_evaluate(const MlQuery& q);

/// Value of ml_evaluate.
double ml_eval(const MlQuery& q);
inline double ml_eval(double alpha, double beta, double x) { return ml_eval({alpha, beta, x}); }

/// Individual regimes, no accuracy certification; exposed for the overlap
/// tests. The asymptotic form requires x < 0.
MlResult ml_series(const MlQuery& q);
MlResult ml_series_extended(const MlQuery& q);
MlResult ml_asymptotic(const MlQuery& q);

/// Gamma(mu+1) t^{beta+mu} E_{alpha,beta+mu+1}(-lambda t^alpha): the integral
/// of (t-s)^{beta-1} E_{alpha,beta}(-lambda (t-s)^alpha) s^mu over (0, t).
/// With beta = alpha this is the response of a mode with eigenvalue lambda
/// to the source s^mu.
/// @throws DomainError if t <= 0, mu <= -1 or lambda < 0
double ml_conv_weight(double alpha, double lambda, double t, double mu, double beta);
inline double ml_conv_weight(double alpha, double lambda, double t, double mu) {
    return ml_conv_weight(alpha, lambda, t, mu, alpha);
}

/// Response to the normalized source s^mu / Gamma(mu+1):
/// t^{alpha+mu} E_{alpha,alpha+mu+1}(-lambda t^alpha). Defined for mu >= -1;
/// mu = -1 is the limit of a Dirac mass at s = 0.
double ml_conv_weight_normalized(double alpha, double lambda, double t, double mu);

}  // namespace fracsub
