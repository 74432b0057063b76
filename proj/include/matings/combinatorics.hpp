#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matings/itinerary.hpp"

namespace matings {

enum class Plane { White, Black };

Plane other_plane(Plane p);
std::string plane_name(Plane p);

struct TaggedAngle {
    Plane plane;
    Angle angle;
    bool operator==(const TaggedAngle& o) const { return plane == o.plane && angle == o.angle; }
    bool operator<(const TaggedAngle& o) const {
        if (plane != o.plane) return plane == Plane::White;
        return angle < o.angle;
    }
};

/// Degree plus the two characteristic angle pairs of the polynomials to be
/// mated. Both critical orbits must have the same period.
struct MatingSpec {
    int degree = 2;
    CharPair white, black;
    Plane firstCritical = Plane::White;
};

/// A connected component of the relation generated by within-plane
/// co-landing plus the gluing t_white ~ (-t)_black.
struct RayClass {
    std::vector<TaggedAngle> members;
    bool closesCluster = false;
    /// Landing points, grouped: each vertex is one point of one plane's Julia set.
    struct Vertex {
        Plane plane;
        std::vector<Angle> angles;
    };
    std::vector<Vertex> vertices;
};

struct ArmRecord {
    Plane plane;  ///< which critical orbit provides the component
    int comp;     ///< component index 1..n (n = critical component)
};

/// Star of one cluster: the cyclically ordered arms (0-internal rays of the
/// critical-orbit Fatou components meeting the cluster point).
struct StarModel {
    long clusterPeriod = 1;
    std::vector<ArmRecord> arms; ///< anticlockwise circular order
    int firstCriticalArm = -1;   ///< index of the first critical point's component arm, or -1
};

struct ClusterData {
    long period = 1;
    long rhoP = 0, rhoN = 1; ///< rotation number p/n, reduced, 0 <= p < n
    long delta = 1;          ///< critical displacement, odd
};

struct LevyReport {
    bool obstructed = false;
    std::string witness;
};

/// Explicit cluster configuration for the obstruction decision table, used
/// where no mating spec exists (the obstructed configurations have none).
struct ClusterConfiguration {
    int degree = 2;
    long period = 1;
    int armsPerOrbit = 1;    ///< arms of one critical orbit in one star
    long clusterOfCrit1 = 0; ///< 0-based cluster index containing each critical point's component
    long clusterOfCrit2 = 0;
};

/// Full combinatorial analysis of a mating. Built once, queried by the ops.
class MatingAnalysis {
public:
    explicit MatingAnalysis(const MatingSpec& spec);

    const MatingSpec& spec() const { return spec_; }
    const CutPartition& partition(Plane p) const { return p == Plane::White ? white_ : black_; }
    long orbit_period() const { return white_.period(); }

    const std::vector<RayClass>& classes() const { return classes_; }
    /// Image class index under angle multiplication by the degree.
    int image_class(int cls) const { return imageClass_[static_cast<size_t>(cls)]; }

    /// Arms of class cls in anticlockwise circular order (empty for classes
    /// with no arms). Throws on annular (loop) classes if arms are requested.
    const std::vector<ArmRecord>& arms(int cls) const;
    bool is_tree(int cls) const { return isTree_[static_cast<size_t>(cls)]; }

    /// Cluster cycle: indices of the cluster classes, ordered by dynamics,
    /// starting at the star containing the first critical point's component.
    /// Empty when the mating has no cluster.
    const std::vector<int>& cluster_cycle() const { return clusterCycle_; }

    ClusterData cluster_data() const; ///< throws NoCluster
    StarModel star_model() const;     ///< star of the first critical point's cluster

private:
    MatingSpec spec_;
    CutPartition white_, black_;
    std::vector<RayClass> classes_;
    std::vector<int> imageClass_;
    std::vector<bool> isTree_;
    std::vector<std::vector<ArmRecord>> arms_;
    std::vector<int> clusterCycle_;

    void build_classes();
    void analyze_class(RayClass& rc, int clsIndex);
    void build_cluster_cycle();
    int class_of(const TaggedAngle& t) const;
    std::vector<TaggedAngle> universe_;
    std::vector<int> universeClass_;
};

/// All ray classes containing angles of either critical-orbit component-root
/// cycle (plus their co-landing partners picked up by the closure).
std::vector<RayClass> ray_classes(const MatingSpec& spec);

/// Cluster period, rotation number, critical displacement, and the star model.
std::pair<ClusterData, StarModel> cluster_data(const MatingSpec& spec);

/// Obstruction decision for a mating spec (derives the cluster configuration).
LevyReport levy_check(const MatingSpec& spec);
/// Obstruction decision table for an explicit configuration.
LevyReport levy_check(const ClusterConfiguration& config);

/// Twist-count arithmetic: reconciling one Dehn twist in the domain with d
/// twists in the range leaves discrepancy (d-1)k; solvable iff the given
/// discrepancy is a multiple of d-1.
struct TwistSolution {
    bool solvable = false;
    std::optional<long> k;
};
TwistSolution twist_solvable(int degree, long discrepancy);

} // namespace matings
