#include "matings/angle.hpp"

#include <charconv>
#include <map>

namespace matings {

namespace {
bigint floor_div(const bigint& a, const bigint& b) {
    // b > 0; rounds toward -inf.
    bigint q = a / b, r = a % b;
    if (r != 0 && a < 0) --q;
    return q;
}
} // namespace

void Angle::normalize() {
    if (den_ == 0) throw InvalidInput("angle denominator must be nonzero");
    if (den_ < 0) {
        den_ = -den_;
        num_ = -num_;
    }
    num_ -= floor_div(num_, den_) * den_;
    bigint g = boost::multiprecision::gcd(num_, den_);
    if (g > 1) {
        num_ /= g;
        den_ /= g;
    }
}

Angle::Angle(bigint num, bigint den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

Angle Angle::parse(std::string_view text) {
    auto bad = [&] { throw InvalidInput("cannot parse angle '" + std::string(text) + "'"); };
    if (text.empty()) bad();
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Angle(bigint(s), bigint(1));
        bigint n(s.substr(0, slash));
        bigint d(s.substr(slash + 1));
        if (d == 0) throw InvalidInput("angle denominator must be nonzero");
        return Angle(n, d);
    } catch (const std::exception&) {
        bad();
    }
    return Angle();
}

Angle Angle::mapped_pow(int degree, long k) const {
    bigint m = boost::multiprecision::pow(bigint(degree), static_cast<unsigned>(k));
    return Angle(num_ * m, den_);
}

double Angle::value() const {
    return num_.convert_to<double>() / den_.convert_to<double>();
}

std::string Angle::str() const {
    return num_.str() + "/" + den_.str();
}

Angle arc_length(const Angle& a, const Angle& b) {
    return b.plus(a.negated());
}

bool in_open_arc(const Angle& x, const Angle& a, const Angle& b) {
    if (x == a || x == b) return false;
    if (a == b) return true;
    if (a < b) return a < x && x < b;
    return a < x || x < b;
}

Angle arc_midpoint(const Angle& a, const Angle& b) {
    return a.plus(arc_length(a, b).half());
}

bool sided_less(const SidedAngle& x, const SidedAngle& y) {
    if (x.base != y.base) return x.base < y.base;
    return x.side < y.side;
}

bool sided_in_open_arc(const SidedAngle& x, const Angle& a, const Angle& b) {
    if (x.side == 0) return in_open_arc(x.base, a, b);
    if (x.side > 0) return x.base == a || in_open_arc(x.base, a, b);
    // just cw of base
    return x.base == b || in_open_arc(x.base, a, b);
}

AngleOrbit angle_orbit(const Angle& angle, int degree) {
    if (degree < 2) throw InvalidInput("degree must be >= 2");
    AngleOrbit out;
    out.angle = angle;
    out.degree = degree;
    std::map<Angle, long> seen;
    Angle t = angle;
    long idx = 0;
    while (!seen.count(t)) {
        seen[t] = idx++;
        out.orbit.push_back(t);
        t = t.mapped(degree);
    }
    out.preperiod = seen[t];
    out.period = idx - out.preperiod;
    return out;
}

long exact_period(const Angle& angle, int degree) {
    AngleOrbit o = angle_orbit(angle, degree);
    if (o.preperiod != 0) throw InvalidInput("angle " + angle.str() + " is not periodic under x" + std::to_string(degree));
    return o.period;
}

bool is_periodic(const Angle& angle, int degree) {
    // t is periodic under x d iff gcd(denominator, d) is invertible along the
    // orbit; cheapest exact check is one orbit walk.
    return angle_orbit(angle, degree).preperiod == 0;
}

} // namespace matings
