#include "matings/itinerary.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace matings {

namespace {

// Strict crossing of chords {a,b} and {c,d}: exactly one of c,d inside the
// open arc (a,b), with no shared endpoints.
bool chords_cross(const Angle& a, const Angle& b, const Angle& c, const Angle& d) {
    if (a == c || a == d || b == c || b == d) return false;
    bool cin = in_open_arc(c, a, b);
    bool din = in_open_arc(d, a, b);
    return cin != din;
}

// Chord {x,y} strictly separated by cut {p,q}.
bool cut_separates(const Angle& x, const Angle& y, const Angle& p, const Angle& q) {
    if (x == p || x == q || y == p || y == q) return false;
    return in_open_arc(x, p, q) != in_open_arc(y, p, q);
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

} // namespace

CutPartition::CutPartition(const CharPair& pair, int degree) : pair_(pair), degree_(degree) {
    if (degree_ < 2) throw InvalidInput("degree must be >= 2");
    validate_and_orient();
    build_cuts();
    build_theta_classes();
    build_component_regions();
}

void CutPartition::validate_and_orient() {
    if (pair_.lo == pair_.hi)
        throw DegeneratePartition("characteristic pair angles coincide: " + pair_.lo.str());

    AngleOrbit olo = angle_orbit(pair_.lo, degree_);
    AngleOrbit ohi = angle_orbit(pair_.hi, degree_);
    if (olo.preperiod != 0 || ohi.preperiod != 0)
        throw InvalidCharPair("characteristic angles must be periodic under x" + std::to_string(degree_));
    if (olo.period != ohi.period)
        throw InvalidCharPair("characteristic angles must have equal period (got " +
                              std::to_string(olo.period) + " and " + std::to_string(ohi.period) + ")");
    period_ = olo.period;
    if (period_ < 2)
        throw InvalidCharPair("characteristic pair period must be >= 2");

    std::set<Angle> theta(olo.orbit.begin(), olo.orbit.end());
    theta.insert(ohi.orbit.begin(), ohi.orbit.end());
    theta_.assign(theta.begin(), theta.end());

    auto admissible = [&](const Angle& a, const Angle& b) {
        for (const Angle& t : theta_)
            if (in_open_arc(t, a, b)) return false;
        return true;
    };
    bool fwd = admissible(pair_.lo, pair_.hi);
    bool bwd = admissible(pair_.hi, pair_.lo);
    if (!fwd && !bwd)
        throw InvalidCharPair("no admissible characteristic arc for pair (" + pair_.lo.str() + ", " +
                              pair_.hi.str() + ")");
    if (fwd && bwd) {
        // Two-angle orbit set; take the shorter arc as characteristic.
        if (arc_length(pair_.hi, pair_.lo) < arc_length(pair_.lo, pair_.hi)) std::swap(pair_.lo, pair_.hi);
    } else if (!fwd) {
        std::swap(pair_.lo, pair_.hi);
    }

    // Leaf orbit must be an unlinked family.
    std::vector<std::pair<Angle, Angle>> chords;
    Angle a = pair_.lo, b = pair_.hi;
    for (long j = 0; j < period_; ++j) {
        chords.emplace_back(a, b);
        a = a.mapped(degree_);
        b = b.mapped(degree_);
    }
    for (size_t i = 0; i < chords.size(); ++i)
        for (size_t j = i + 1; j < chords.size(); ++j)
            if (chords_cross(chords[i].first, chords[i].second, chords[j].first, chords[j].second))
                throw InvalidCharPair("characteristic orbit chords cross for pair (" + pair_.lo.str() +
                                      ", " + pair_.hi.str() + ")");
}

void CutPartition::build_cuts() {
    const int d = degree_;
    std::set<Angle> cutSet;
    for (int k = 0; k < d; ++k) {
        Angle plo((pair_.lo.numerator() + k * pair_.lo.denominator()), pair_.lo.denominator() * d);
        Angle phi((pair_.hi.numerator() + k * pair_.hi.denominator()), pair_.hi.denominator() * d);
        cutSet.insert(plo);
        cutSet.insert(phi);
    }
    cutAngles_.assign(cutSet.begin(), cutSet.end());
    if (cutAngles_.size() != static_cast<size_t>(2 * d))
        throw InvalidCharPair("degenerate preimage partition for pair (" + pair_.lo.str() + ", " +
                              pair_.hi.str() + ")");

    // Cut chord k spans outer arc k: from (hi+k)/d ccw to (lo+k+1)/d.
    for (int k = 0; k < d; ++k) {
        Angle from((pair_.hi.numerator() + k * pair_.hi.denominator()), pair_.hi.denominator() * d);
        Angle to((pair_.lo.numerator() + (k + 1) * pair_.lo.denominator()), pair_.lo.denominator() * d);
        cuts_.emplace_back(from, to);
    }

    const size_t m = cutAngles_.size();
    arcSmall_.assign(m, false);
    arcRegion_.assign(m, -1);
    for (size_t i = 0; i < m; ++i) {
        const Angle& a = cutAngles_[i];
        const Angle& b = cutAngles_[(i + 1) % m];
        Angle mid = arc_midpoint(a, b).mapped(d);
        bool small = in_open_arc(mid, pair_.lo, pair_.hi);
        arcSmall_[i] = small;
        if (small) {
            arcRegion_[i] = d;
        } else {
            for (int k = 0; k < d; ++k)
                if (cuts_[static_cast<size_t>(k)].first == a) arcRegion_[i] = k;
            if (arcRegion_[i] < 0)
                throw InvalidCharPair("inconsistent outer-arc structure for pair (" + pair_.lo.str() +
                                      ", " + pair_.hi.str() + ")");
        }
    }

    // The characteristic orbit must never be strictly separated by a cut.
    Angle a = pair_.lo, b = pair_.hi;
    for (long j = 0; j < period_; ++j) {
        for (const auto& c : cuts_)
            if (cut_separates(a, b, c.first, c.second))
                throw InvalidCharPair("characteristic orbit crosses the preimage partition for pair (" +
                                      pair_.lo.str() + ", " + pair_.hi.str() + ")");
        a = a.mapped(degree_);
        b = b.mapped(degree_);
    }
}

void CutPartition::build_theta_classes() {
    UnionFind uf(theta_.size());
    auto index_of = [&](const Angle& t) {
        auto it = std::lower_bound(theta_.begin(), theta_.end(), t);
        return static_cast<int>(it - theta_.begin());
    };
    Angle a = pair_.lo, b = pair_.hi;
    for (long j = 0; j < period_; ++j) {
        uf.unite(index_of(a), index_of(b));
        a = a.mapped(degree_);
        b = b.mapped(degree_);
    }
    std::map<int, int> rootToClass;
    thetaClassIndex_.assign(theta_.size(), -1);
    for (size_t i = 0; i < theta_.size(); ++i) {
        int r = uf.find(static_cast<int>(i));
        auto [it, inserted] = rootToClass.try_emplace(r, static_cast<int>(thetaClasses_.size()));
        if (inserted) thetaClasses_.emplace_back();
        thetaClassIndex_[i] = it->second;
        thetaClasses_[static_cast<size_t>(it->second)].push_back(theta_[i]);
    }
}

void CutPartition::build_component_regions() {
    compRegion_.assign(static_cast<size_t>(period_), -1);
    for (long j = 1; j <= period_; ++j) {
        if (j == period_) {
            compRegion_[static_cast<size_t>(j - 1)] = critical_region();
            continue;
        }
        int arc = arc_index(component_rep(static_cast<int>(j)));
        if (arcSmall_[static_cast<size_t>(arc)])
            throw InvalidCharPair("component representative fell in the critical gap; pair (" +
                                  pair_.lo.str() + ", " + pair_.hi.str() + ") is not consistent");
        compRegion_[static_cast<size_t>(j - 1)] = arcRegion_[static_cast<size_t>(arc)];
    }
}

int CutPartition::arc_index(const Angle& t, int* cutHit) const {
    const size_t m = cutAngles_.size();
    auto it = std::lower_bound(cutAngles_.begin(), cutAngles_.end(), t);
    if (it != cutAngles_.end() && *it == t) {
        if (cutHit) *cutHit = static_cast<int>(it - cutAngles_.begin());
        return -1;
    }
    if (cutHit) *cutHit = -1;
    // Arc i runs ccw from cutAngles_[i] to cutAngles_[i+1 mod m]; lower_bound
    // gives the first cut angle above t.
    size_t i = static_cast<size_t>(it - cutAngles_.begin());
    return static_cast<int>((i + m - 1) % m);
}

int CutPartition::arc_index(const SidedAngle& t) const {
    int cutHit = -1;
    int arc = arc_index(t.base, &cutHit);
    if (arc >= 0) return arc;
    const int m = static_cast<int>(cutAngles_.size());
    if (t.side > 0) return cutHit;                 // arc starting at this cut angle
    if (t.side < 0) return (cutHit + m - 1) % m;   // arc ending here
    throw InvalidInput("angle " + t.base.str() + " lies on the partition boundary");
}

int CutPartition::region_of_angle(const Angle& t) const {
    int cutHit = -1;
    int arc = arc_index(t, &cutHit);
    if (arc < 0)
        throw InvalidInput("angle " + t.str() + " lies on the partition boundary");
    return arcRegion_[static_cast<size_t>(arc)];
}

std::pair<Angle, Angle> CutPartition::footprint(int comp) const {
    if (comp < 1 || comp > period_) throw InvalidInput("component index out of range");
    Angle a = pair_.lo.mapped_pow(degree_, comp - 1);
    Angle b = pair_.hi.mapped_pow(degree_, comp - 1);
    return {a, b};
}

SidedAngle CutPartition::component_rep(int comp) const {
    if (comp < 1 || comp > period_) throw InvalidInput("component index out of range");
    return SidedAngle{pair_.lo.mapped_pow(degree_, comp - 1), +1};
}

bool CutPartition::theta_contains(const Angle& t) const {
    return std::binary_search(theta_.begin(), theta_.end(), t);
}

int CutPartition::theta_class_of(const Angle& t) const {
    auto it = std::lower_bound(theta_.begin(), theta_.end(), t);
    if (it == theta_.end() || *it != t) return -1;
    return thetaClassIndex_[static_cast<size_t>(it - theta_.begin())];
}

std::vector<int> CutPartition::components_at_class(int thetaClass) const {
    std::vector<int> comps;
    const auto& cls = thetaClasses_[static_cast<size_t>(thetaClass)];
    auto contains = [&](const Angle& t) { return std::binary_search(cls.begin(), cls.end(), t); };
    for (long j = 1; j <= period_; ++j) {
        auto fp = footprint(static_cast<int>(j));
        if (contains(fp.first) && contains(fp.second)) comps.push_back(static_cast<int>(j));
    }
    return comps;
}

bool CutPartition::on_component_boundary(const Angle& t, int comp) const {
    if (comp < 1 || comp > period_) throw InvalidInput("component index out of range");
    if (theta_contains(t)) {
        int cls = theta_class_of(t);
        auto comps = components_at_class(cls);
        return std::find(comps.begin(), comps.end(), comp) != comps.end();
    }
    long per = exact_period(t, degree_);
    long L = std::lcm(per, period_);
    Angle x = t;
    for (long k = 0; k < L; ++k) {
        long compAt = ((comp - 1 + k) % period_) + 1;
        if (region_of_angle(x) != region_of_component(static_cast<int>(compAt))) return false;
        x = x.mapped(degree_);
    }
    return true;
}

Itinerary itinerary(const Angle& angle, const CharPair& pair, int degree) {
    CutPartition part(pair, degree);
    if (!is_periodic(angle, degree))
        throw InvalidInput("itinerary requires a periodic angle, got " + angle.str());
    Itinerary out;
    out.degree = degree;
    out.period = exact_period(angle, degree);
    out.partition = part.cuts();
    Angle x = angle;
    for (long k = 0; k < out.period; ++k) {
        ItinerarySymbol sym;
        int cutHit = -1;
        sym.arc = part.arc_index(x, &cutHit);
        if (sym.arc < 0) {
            sym.boundary = true;
            sym.resolvedArc = part.arc_index(SidedAngle{x, +1});
        } else {
            sym.resolvedArc = sym.arc;
        }
        out.symbols.push_back(sym);
        x = x.mapped(degree);
    }
    return out;
}

bool co_lands(const Angle& a, const Angle& b, const CutPartition& part) {
    if (!is_periodic(a, part.degree()) || !is_periodic(b, part.degree()))
        throw InvalidInput("co_lands requires periodic angles");
    if (a == b) return true;
    bool ta = part.theta_contains(a), tb = part.theta_contains(b);
    if (ta || tb) {
        if (!(ta && tb)) return false;
        return part.theta_class_of(a) == part.theta_class_of(b);
    }
    long pa = exact_period(a, part.degree());
    long pb = exact_period(b, part.degree());
    long L = std::lcm(pa, pb);
    Angle x = a, y = b;
    for (long k = 0; k < L; ++k) {
        if (part.arc_index(x) != part.arc_index(y)) return false;
        x = x.mapped(part.degree());
        y = y.mapped(part.degree());
    }
    return true;
}

bool co_lands(const Angle& a, const Angle& b, const CharPair& pair, int degree) {
    CutPartition part(pair, degree);
    return co_lands(a, b, part);
}

CharPair validate_char_pair(const CharPair& pair, int degree) {
    return CutPartition(pair, degree).pair();
}

} // namespace matings
