#pragma once

#include <array>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace fracsub {

/// Spatial shape g(x) or g(x, y) of a separable source term or of initial
/// data. Built-in shapes carry their parameters so that spatial_disc can
/// integrate them exactly against hat functions.
///
/// String forms (the only registry of shapes):
///   "zero", "const:C", "pow:P" (x^P), "indicator:A,B" (1 on [A,B]),
///   "indicator2d:A,B,C,D" (1 on [A,B]x[C,D]).
class SpatialProfile {
public:
    enum class Kind { Zero, Constant, Power, Indicator, Indicator2D, Custom };

    using Function = std::function<double(double, double)>;

    SpatialProfile() = default;

    static SpatialProfile zero();
    static SpatialProfile constant(double c);
    static SpatialProfile power(double p);
    static SpatialProfile indicator(double a, double b);
    static SpatialProfile indicator2d(double a, double b, double c, double d);
    static SpatialProfile custom(std::string name, Function f);

    /// @throws ConfigError for unknown or malformed strings
    static SpatialProfile parse(std::string_view text);

    /// g(x, y); y is ignored by one-dimensional shapes. Indicators use the
    /// closed box.
    double operator()(double x, double y = 0.0) const;

    Kind kind() const noexcept { return kind_; }
    const std::array<double, 4>& params() const noexcept { return params_; }
    const std::string& name() const noexcept { return name_; }
    bool is_zero() const noexcept { return kind_ == Kind::Zero; }

private:
    Kind kind_ = Kind::Zero;
    std::array<double, 4> params_{};
    std::string name_ = "zero";
    Function custom_;
};

}  // namespace fracsub
