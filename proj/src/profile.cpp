#include "fracsub/profile.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "fracsub/error.hpp"

namespace fracsub {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

std::vector<double> parse_numbers(std::string_view body, std::string_view whole) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
        const std::size_t comma = body.find(',', pos);
        std::string_view item = body.substr(pos, comma == std::string_view::npos ? body.size() - pos : comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
            throw ConfigError("malformed number in profile '" + std::string(whole) + "'");
        }
        out.push_back(v);
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace

SpatialProfile SpatialProfile::zero() { return {}; }

SpatialProfile SpatialProfile::constant(double c) {
    SpatialProfile p;
    p.kind_ = Kind::Constant;
    p.params_[0] = c;
    p.name_ = "const:" + fmt(c);
    return p;
}

SpatialProfile SpatialProfile::power(double exponent) {
    if (!(exponent > -1.0)) throw DomainError("power profile x^p needs p > -1 to be integrable");
    SpatialProfile p;
    p.kind_ = Kind::Power;
    p.params_[0] = exponent;
    p.name_ = "pow:" + fmt(exponent);
    return p;
}

SpatialProfile SpatialProfile::indicator(double a, double b) {
    if (!(a < b)) throw ConfigError("indicator needs a < b");
    SpatialProfile p;
    p.kind_ = Kind::Indicator;
    p.params_ = {a, b, 0.0, 0.0};
    p.name_ = "indicator:" + fmt(a) + "," + fmt(b);
    return p;
}

SpatialProfile SpatialProfile::indicator2d(double a, double b, double c, double d) {
    if (!(a < b) || !(c < d)) throw ConfigError("indicator2d needs a < b and c < d");
    SpatialProfile p;
    p.kind_ = Kind::Indicator2D;
    p.params_ = {a, b, c, d};
    p.name_ = "indicator2d:" + fmt(a) + "," + fmt(b) + "," + fmt(c) + "," + fmt(d);
    return p;
}

SpatialProfile SpatialProfile::custom(std::string name, Function f) {
    SpatialProfile p;
    p.kind_ = Kind::Custom;
    p.name_ = std::move(name);
    p.custom_ = std::move(f);
    return p;
}

SpatialProfile SpatialProfile::parse(std::string_view text) {
    if (text == "zero") return zero();
    const std::size_t colon = text.find(':');
    if (colon == std::string_view::npos) throw ConfigError("unknown profile '" + std::string(text) + "'");
    const std::string_view head = text.substr(0, colon);
    const std::vector<double> v = parse_numbers(text.substr(colon + 1), text);
    auto expect = [&](std::size_t n) {
        if (v.size() != n) {
            throw ConfigError("profile '" + std::string(text) + "' expects " + std::to_string(n) + " numbers");
        }
    };
    if (head == "const") {
        expect(1);
        return constant(v[0]);
    }
    if (head == "pow") {
        expect(1);
        if (!(v[0] > -1.0)) throw ConfigError("pow profile needs exponent > -1");
        return power(v[0]);
    }
    if (head == "indicator") {
        expect(2);
        return indicator(v[0], v[1]);
    }
    if (head == "indicator2d") {
        expect(4);
        return indicator2d(v[0], v[1], v[2], v[3]);
    }
    throw ConfigError("unknown profile '" + std::string(text) + "'");
}

double SpatialProfile::operator()(double x, double y) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Constant: return params_[0];
        case Kind::Power: return std::pow(x, params_[0]);
        case Kind::Indicator: return (x >= params_[0] && x <= params_[1]) ? 1.0 : 0.0;
        case Kind::Indicator2D:
            return (x >= params_[0] && x <= params_[1] && y >= params_[2] && y <= params_[3]) ? 1.0 : 0.0;
        case Kind::Custom: return custom_(x, y);
    }
    return 0.0;
}

}  // namespace fracsub
