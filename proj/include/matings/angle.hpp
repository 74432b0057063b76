#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "matings/errors.hpp"

namespace matings {

using bigint = boost::multiprecision::cpp_int;

/// Exact rational angle mod 1. Always stored in canonical form:
/// 0 <= numerator < denominator, gcd(numerator, denominator) = 1.
/// All arithmetic is exact; there is no floating point anywhere in the
/// symbolic-dynamics path.
class Angle {
public:
    Angle() : num_(0), den_(1) {}
    Angle(bigint num, bigint den);
    Angle(long num, long den) : Angle(bigint(num), bigint(den)) {}

    /// Parses "p/q" (or a bare integer "p"). q = 0 is rejected; non-reduced
    /// input is normalized.
    static Angle parse(std::string_view text);

    const bigint& numerator() const { return num_; }
    const bigint& denominator() const { return den_; }

    /// d * angle mod 1.
    Angle mapped(int degree) const { return Angle(num_ * degree, den_); }
    /// d^k * angle mod 1.
    Angle mapped_pow(int degree, long k) const;

    Angle negated() const { return Angle(-num_, den_); }
    Angle plus(const Angle& o) const { return Angle(num_ * o.den_ + o.num_ * den_, den_ * o.den_); }
    /// Length of this angle scaled by 1/2 (used for arc midpoints).
    Angle half() const { return Angle(num_, den_ * 2); }

    bool is_zero() const { return num_ == 0; }

    double value() const;
    std::string str() const;

    bool operator==(const Angle& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Angle& o) const { return !(*this == o); }
    /// Linear order on the fundamental domain [0, 1).
    bool operator<(const Angle& o) const { return num_ * o.den_ < o.num_ * den_; }
    bool operator<=(const Angle& o) const { return num_ * o.den_ <= o.num_ * den_; }

private:
    bigint num_, den_;
    void normalize();
};

/// Counterclockwise arc length from a to b, in [0, 1).
Angle arc_length(const Angle& a, const Angle& b);

/// True iff x lies strictly inside the open ccw arc (a, b). When a == b the
/// arc is the full circle minus the point a.
bool in_open_arc(const Angle& x, const Angle& a, const Angle& b);

/// Midpoint of the ccw arc from a to b.
Angle arc_midpoint(const Angle& a, const Angle& b);

/// An angle displaced by an infinitesimal: side = +1 means "just ccw of a",
/// side = -1 "just cw of a", side = 0 the angle itself. Used to place
/// component representatives and arm directions without leaving exact
/// arithmetic.
struct SidedAngle {
    Angle base;
    int side = 0;
};

/// Ordering of sided angles around the circle: at equal base, -eps < exact < +eps.
bool sided_less(const SidedAngle& x, const SidedAngle& y);

/// True iff the sided point x lies inside the ccw arc (a, b) (arc endpoints
/// are exact angles).
bool sided_in_open_arc(const SidedAngle& x, const Angle& a, const Angle& b);

/// Orbit of an angle under t -> d*t mod 1, with minimal preperiod and period.
struct AngleOrbit {
    Angle angle;
    int degree = 2;
    long preperiod = 0;
    long period = 1;
    std::vector<Angle> orbit; ///< angle, d*angle, ..., up to preperiod+period entries
};

/// Every rational angle is eventually periodic under multiplication by d.
AngleOrbit angle_orbit(const Angle& angle, int degree);

/// Period of a purely periodic angle; throws InvalidInput if preperiodic.
long exact_period(const Angle& angle, int degree);

bool is_periodic(const Angle& angle, int degree);

} // namespace matings
