#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "matings/angle.hpp"

namespace matings {

/// The two external angles landing at the root of the characteristic Fatou
/// component of a unicritical polynomial. Input order is free; the partition
/// normalizes the orientation so the ccw arc (lo, hi) is the characteristic
/// arc (contains no other angle of the pair's orbits).
struct CharPair {
    Angle lo, hi;
};

struct ItinerarySymbol {
    int arc = -1;        ///< arc index 0..2d-1, or -1 on a boundary hit
    bool boundary = false;
    int resolvedArc = -1; ///< arc just ccw of the angle (one-sided limit); equals arc when not on a cut
};

struct Itinerary {
    int degree = 2;
    long period = 1;
    std::vector<ItinerarySymbol> symbols;             ///< one per orbit position
    std::vector<std::pair<Angle, Angle>> partition;   ///< the d cut chords
};

/// Circle partition cut by the d co-landing preimage pairs of the
/// characteristic pair. The 2d preimages of {lo, hi} divide the circle into
/// 2d arcs: d "small" arcs (preimages of the characteristic arc, bounding the
/// critical gap) and d "outer" arcs, each spanned by one cut chord
/// { (hi+k)/d, (lo+k+1)/d }. Complementary regions: one per cut chord
/// (ids 0..d-1) plus the critical gap (id d).
///
/// Everything here is exact rational arithmetic; validation of the pair is
/// eager and rejects inconsistent input with InvalidCharPair.
class CutPartition {
public:
    CutPartition(const CharPair& pair, int degree);

    int degree() const { return degree_; }
    long period() const { return period_; }          ///< component count n
    const CharPair& pair() const { return pair_; }   ///< orientation-normalized

    const std::vector<Angle>& cut_angles() const { return cutAngles_; }
    const std::vector<std::pair<Angle, Angle>>& cuts() const { return cuts_; }

    /// Arc containing t; returns -1 and sets cutHit if t is a partition cut angle.
    int arc_index(const Angle& t, int* cutHit = nullptr) const;
    int arc_index(const SidedAngle& t) const;
    bool arc_is_small(int arc) const { return arcSmall_[static_cast<size_t>(arc)]; }
    int region_of_arc(int arc) const { return arcRegion_[static_cast<size_t>(arc)]; }
    int region_of_angle(const Angle& t) const; ///< throws if t is a cut angle
    int critical_region() const { return degree_; }

    /// Footprint of critical-orbit component j (1-based, j = n is the
    /// critical component): the ccw arc from d^(j-1)*lo to d^(j-1)*hi. The
    /// set of angles landing on the component boundary is contained in it.
    std::pair<Angle, Angle> footprint(int comp) const;
    /// A one-sided angle pointing into component j from its root.
    SidedAngle component_rep(int comp) const;
    int region_of_component(int comp) const { return compRegion_[static_cast<size_t>(comp - 1)]; }

    /// Union of the two characteristic orbits (the only periodic angles whose
    /// orbits meet the partition boundary).
    bool theta_contains(const Angle& t) const;
    int theta_class_of(const Angle& t) const; ///< -1 if not in theta
    const std::vector<std::vector<Angle>>& theta_classes() const { return thetaClasses_; }
    /// Components whose root is the landing point of the given theta class.
    std::vector<int> components_at_class(int thetaClass) const;

    /// True iff the ray at periodic angle t lands on the boundary of
    /// critical-orbit component comp. Decides the "non-principal root point"
    /// cases: t need not belong to the root cycle.
    bool on_component_boundary(const Angle& t, int comp) const;

private:
    CharPair pair_;
    int degree_;
    long period_;
    std::vector<Angle> theta_;                    // sorted
    std::vector<std::vector<Angle>> thetaClasses_;
    std::vector<int> thetaClassIndex_;            // parallel to theta_
    std::vector<Angle> cutAngles_;                // sorted, size 2d
    std::vector<bool> arcSmall_;
    std::vector<int> arcRegion_;
    std::vector<std::pair<Angle, Angle>> cuts_;
    std::vector<int> compRegion_;

    void validate_and_orient();
    void build_cuts();
    void build_theta_classes();
    void build_component_regions();
};

/// Symbol sequence of a periodic angle relative to the partition. Boundary
/// hits (orbit angles equal to a cut angle) are marked and also resolved by
/// the counterclockwise one-sided limit.
Itinerary itinerary(const Angle& angle, const CharPair& pair, int degree);

/// True iff the external rays at periodic angles a and b land at the same
/// point of the Julia set of the polynomial specified by the pair.
///
/// Root-cycle angles (those on the characteristic orbits) are decided by the
/// forward closure of the characteristic identification, which is how the
/// boundary-marked itineraries resolve consistently; all other periodic
/// angles are decided by exact equality of arc itineraries.
bool co_lands(const Angle& a, const Angle& b, const CharPair& pair, int degree);
bool co_lands(const Angle& a, const Angle& b, const CutPartition& part);

/// Eager validation used by CutPartition; exposed for spec construction.
/// Returns the orientation-normalized pair.
CharPair validate_char_pair(const CharPair& pair, int degree);

} // namespace matings
