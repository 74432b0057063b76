#include "matings/combinatorics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace matings {

Plane other_plane(Plane p) { return p == Plane::White ? Plane::Black : Plane::White; }

std::string plane_name(Plane p) { return p == Plane::White ? "white" : "black"; }

namespace {

constexpr long kUniverseDenominatorCap = 2000000;

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

// All angles of exact period m under x d, grouped by landing point.
struct LandingTable {
    std::vector<std::vector<Angle>> classes;
    std::map<Angle, int> classOf;
};

LandingTable build_landing_table(const CutPartition& part) {
    const int d = part.degree();
    const long m = part.period();
    bigint denB = boost::multiprecision::pow(bigint(d), static_cast<unsigned>(m)) - 1;
    if (denB > kUniverseDenominatorCap)
        throw InvalidInput("angle universe too large (degree " + std::to_string(d) + ", period " +
                           std::to_string(m) + "); co-landing closure truncated");
    long den = denB.convert_to<long>();

    LandingTable table;
    std::map<std::vector<long>, int> keyed;
    for (long k = 0; k < den; ++k) {
        Angle t(k, den);
        // exact period check: minimal j with d^j t = t
        long per = 0;
        Angle x = t;
        for (long j = 1; j <= m; ++j) {
            x = x.mapped(d);
            if (x == t) {
                per = j;
                break;
            }
        }
        if (per != m) continue;

        std::vector<long> key;
        if (part.theta_contains(t)) {
            key = {-1, part.theta_class_of(t)};
        } else {
            key.reserve(static_cast<size_t>(m));
            Angle y = t;
            for (long j = 0; j < m; ++j) {
                key.push_back(part.arc_index(y));
                y = y.mapped(d);
            }
        }
        auto [it, inserted] = keyed.try_emplace(key, static_cast<int>(table.classes.size()));
        if (inserted) table.classes.emplace_back();
        table.classes[static_cast<size_t>(it->second)].push_back(t);
        table.classOf[t] = it->second;
    }
    return table;
}

struct SlotOrder {
    bool operator()(const std::pair<SidedAngle, int>& a, const std::pair<SidedAngle, int>& b) const {
        if (a.first.base != b.first.base || a.first.side != b.first.side)
            return sided_less(a.first, b.first);
        return a.second < b.second;
    }
};

} // namespace

MatingAnalysis::MatingAnalysis(const MatingSpec& spec)
    : spec_(spec), white_(spec.white, spec.degree), black_(spec.black, spec.degree) {
    if (white_.period() != black_.period())
        throw InvalidCharPair("mating requires equal critical orbit periods (got " +
                              std::to_string(white_.period()) + " and " + std::to_string(black_.period()) + ")");
    build_classes();
    for (int i = 0; i < static_cast<int>(classes_.size()); ++i) analyze_class(classes_[static_cast<size_t>(i)], i);
    build_cluster_cycle();
}

int MatingAnalysis::class_of(const TaggedAngle& t) const {
    auto it = std::lower_bound(universe_.begin(), universe_.end(), t);
    if (it == universe_.end() || !(*it == t))
        throw Error("internal: angle " + t.angle.str() + " missing from ray-class universe");
    return universeClass_[static_cast<size_t>(it - universe_.begin())];
}

void MatingAnalysis::build_classes() {
    LandingTable tableW = build_landing_table(white_);
    LandingTable tableB = build_landing_table(black_);
    auto table = [&](Plane p) -> LandingTable& { return p == Plane::White ? tableW : tableB; };

    std::set<TaggedAngle> universe;
    std::vector<TaggedAngle> work;
    auto push = [&](const TaggedAngle& t) {
        if (universe.insert(t).second) work.push_back(t);
    };
    for (const auto& cls : white_.theta_classes())
        for (const Angle& a : cls) push({Plane::White, a});
    for (const auto& cls : black_.theta_classes())
        for (const Angle& a : cls) push({Plane::Black, a});

    while (!work.empty()) {
        TaggedAngle t = work.back();
        work.pop_back();
        push({other_plane(t.plane), t.angle.negated()});
        push({t.plane, t.angle.mapped(spec_.degree)});
        auto it = table(t.plane).classOf.find(t.angle);
        if (it == table(t.plane).classOf.end())
            throw Error("internal: universe angle " + t.angle.str() + " missing from landing table");
        for (const Angle& mate : table(t.plane).classes[static_cast<size_t>(it->second)])
            push({t.plane, mate});
    }

    universe_.assign(universe.begin(), universe.end());
    UnionFind uf(universe_.size());
    auto idx = [&](const TaggedAngle& t) {
        return static_cast<int>(std::lower_bound(universe_.begin(), universe_.end(), t) - universe_.begin());
    };
    for (size_t i = 0; i < universe_.size(); ++i) {
        const TaggedAngle& t = universe_[i];
        uf.unite(static_cast<int>(i), idx({other_plane(t.plane), t.angle.negated()}));
        int lc = table(t.plane).classOf.at(t.angle);
        const Angle& rep = table(t.plane).classes[static_cast<size_t>(lc)].front();
        uf.unite(static_cast<int>(i), idx({t.plane, rep}));
    }

    std::map<int, int> rootToClass;
    universeClass_.assign(universe_.size(), -1);
    for (size_t i = 0; i < universe_.size(); ++i) {
        int r = uf.find(static_cast<int>(i));
        auto [it, inserted] = rootToClass.try_emplace(r, static_cast<int>(classes_.size()));
        if (inserted) classes_.emplace_back();
        universeClass_[i] = it->second;
        classes_[static_cast<size_t>(it->second)].members.push_back(universe_[i]);
    }

    imageClass_.assign(classes_.size(), -1);
    for (size_t c = 0; c < classes_.size(); ++c) {
        const TaggedAngle& m0 = classes_[c].members.front();
        imageClass_[c] = class_of({m0.plane, m0.angle.mapped(spec_.degree)});
    }

    isTree_.assign(classes_.size(), true);
    arms_.assign(classes_.size(), {});
}

void MatingAnalysis::analyze_class(RayClass& rc, int clsIndex) {
    // Group members into landing points (vertices), one plane at a time.
    for (Plane p : {Plane::White, Plane::Black}) {
        const CutPartition& part = partition(p);
        std::vector<Angle> angles;
        for (const auto& m : rc.members)
            if (m.plane == p) angles.push_back(m.angle);
        std::vector<bool> used(angles.size(), false);
        for (size_t i = 0; i < angles.size(); ++i) {
            if (used[i]) continue;
            RayClass::Vertex v;
            v.plane = p;
            v.angles.push_back(angles[i]);
            used[i] = true;
            for (size_t j = i + 1; j < angles.size(); ++j) {
                if (!used[j] && co_lands(angles[i], angles[j], part)) {
                    v.angles.push_back(angles[j]);
                    used[j] = true;
                }
            }
            std::sort(v.angles.begin(), v.angles.end());
            rc.vertices.push_back(std::move(v));
        }
    }

    auto vertex_of = [&](Plane p, const Angle& a) {
        for (size_t v = 0; v < rc.vertices.size(); ++v) {
            if (rc.vertices[v].plane != p) continue;
            if (std::binary_search(rc.vertices[v].angles.begin(), rc.vertices[v].angles.end(), a))
                return static_cast<int>(v);
        }
        throw Error("internal: vertex lookup failed for " + a.str());
    };

    // Edges: one glued ray-arc per white member angle t (paired with -t black).
    struct Edge {
        Angle t; // white angle; the edge position at both endpoints
        int vw, vb;
    };
    std::vector<Edge> edges;
    for (const auto& m : rc.members) {
        if (m.plane != Plane::White) continue;
        Edge e;
        e.t = m.angle;
        e.vw = vertex_of(Plane::White, m.angle);
        e.vb = vertex_of(Plane::Black, m.angle.negated());
        edges.push_back(e);
    }

    isTree_[static_cast<size_t>(clsIndex)] = (rc.vertices.size() == edges.size() + 1);

    // Arm detection per vertex: which critical-orbit components touch it.
    // Slot angles are plane-local: the rotation at a landing point follows
    // the circular order of the angles in that point's own plane (the 1/z
    // chart from the outer plane to the sphere is holomorphic, so both
    // planes' anticlockwise orders agree with the sphere's).
    struct ArmSlot {
        Plane plane;
        int comp;
        int vertex;
        SidedAngle pos; // in the vertex's own plane coordinates
    };
    std::vector<ArmSlot> armSlots;
    for (size_t v = 0; v < rc.vertices.size(); ++v) {
        const auto& vert = rc.vertices[v];
        const CutPartition& part = partition(vert.plane);
        std::vector<int> comps;
        if (part.theta_contains(vert.angles.front())) {
            comps = part.components_at_class(part.theta_class_of(vert.angles.front()));
        } else {
            for (int j = 1; j <= part.period(); ++j)
                if (part.on_component_boundary(vert.angles.front(), j)) comps.push_back(j);
        }
        for (int j : comps)
            armSlots.push_back({vert.plane, j, static_cast<int>(v), part.component_rep(j)});
    }

    int whiteArms = 0, blackArms = 0;
    for (const auto& a : armSlots) (a.plane == Plane::White ? whiteArms : blackArms)++;
    rc.closesCluster = whiteArms > 0 && blackArms > 0;

    std::sort(rc.members.begin(), rc.members.end());

    if (!isTree_[static_cast<size_t>(clsIndex)] || edges.empty()) return;

    // Planar rotation system: per vertex, slots (edge ends and arms) sorted
    // anticlockwise by their plane-local sided angle.
    struct Slot {
        SidedAngle pos;
        bool isArm;
        int id; // edge or armSlot index
    };
    std::vector<std::vector<Slot>> slots(rc.vertices.size());
    for (size_t e = 0; e < edges.size(); ++e) {
        slots[static_cast<size_t>(edges[e].vw)].push_back({SidedAngle{edges[e].t, 0}, false, static_cast<int>(e)});
        slots[static_cast<size_t>(edges[e].vb)].push_back(
            {SidedAngle{edges[e].t.negated(), 0}, false, static_cast<int>(e)});
    }
    for (size_t a = 0; a < armSlots.size(); ++a)
        slots[static_cast<size_t>(armSlots[a].vertex)].push_back({armSlots[a].pos, true, static_cast<int>(a)});
    for (auto& s : slots)
        std::sort(s.begin(), s.end(), [](const Slot& x, const Slot& y) {
            if (x.pos.base != y.pos.base || x.pos.side != y.pos.side) return sided_less(x.pos, y.pos);
            return x.isArm < y.isArm;
        });

    // Boundary walk of the (tree) class: arrive at a vertex along an edge,
    // emit the arms until the next edge slot anticlockwise, traverse it.
    auto slot_of_edge = [&](int v, int e) {
        const auto& s = slots[static_cast<size_t>(v)];
        for (size_t i = 0; i < s.size(); ++i)
            if (!s[i].isArm && s[i].id == e) return i;
        throw Error("internal: edge slot missing");
    };

    std::vector<ArmRecord> order;
    int e = 0, v = edges[0].vw;
    const size_t steps = 2 * edges.size();
    for (size_t step = 0; step < steps; ++step) {
        const auto& s = slots[static_cast<size_t>(v)];
        size_t i = slot_of_edge(v, e);
        for (size_t k = 1; k <= s.size(); ++k) {
            const Slot& next = s[(i + k) % s.size()];
            if (next.isArm) {
                const ArmSlot& a = armSlots[static_cast<size_t>(next.id)];
                order.push_back({a.plane, a.comp});
                continue;
            }
            e = next.id;
            v = (edges[static_cast<size_t>(e)].vw == v) ? edges[static_cast<size_t>(e)].vb
                                                        : edges[static_cast<size_t>(e)].vw;
            break;
        }
    }
    if (order.size() != armSlots.size())
        throw Error("internal: boundary walk emitted " + std::to_string(order.size()) + " arms, expected " +
                    std::to_string(armSlots.size()));
    arms_[static_cast<size_t>(clsIndex)] = std::move(order);
}

const std::vector<ArmRecord>& MatingAnalysis::arms(int cls) const {
    if (!isTree_[static_cast<size_t>(cls)])
        throw NoCluster("ray class is annular (contains a loop); star model undefined");
    return arms_[static_cast<size_t>(cls)];
}

void MatingAnalysis::build_cluster_cycle() {
    const long n = orbit_period();
    // Star containing the first critical point's component arm.
    int start = -1;
    for (size_t c = 0; c < classes_.size(); ++c) {
        if (!classes_[c].closesCluster || !isTree_[c]) continue;
        for (const auto& a : arms_[c])
            if (a.plane == spec_.firstCritical && a.comp == n) start = static_cast<int>(c);
    }
    if (start < 0) return;
    int c = start;
    do {
        clusterCycle_.push_back(c);
        c = imageClass_[static_cast<size_t>(c)];
        if (clusterCycle_.size() > classes_.size())
            throw Error("internal: cluster cycle does not close");
    } while (c != start);
    for (int cls : clusterCycle_)
        if (!classes_[static_cast<size_t>(cls)].closesCluster)
            throw Error("internal: cluster cycle leaves the cluster classes");
}

ClusterData MatingAnalysis::cluster_data() const {
    if (clusterCycle_.empty())
        throw NoCluster("no ray class meets critical-orbit components of both polynomials");
    const long n = orbit_period();
    const long period = static_cast<long>(clusterCycle_.size());
    const int home = clusterCycle_.front();
    const auto& arm = arms(home);

    ClusterData out;
    out.period = period;

    // Rotation number from the first-return permutation of one orbit's arms;
    // computed for both orbits and required to agree.
    std::optional<std::pair<long, long>> rho;
    for (Plane p : {Plane::White, Plane::Black}) {
        std::vector<int> mine; // indices into arm[], this plane only
        for (size_t i = 0; i < arm.size(); ++i)
            if (arm[i].plane == p) mine.push_back(static_cast<int>(i));
        const long m = static_cast<long>(mine.size());
        if (m == 0) throw Error("internal: cluster star missing arms of one orbit");
        auto pos_of = [&](int comp) {
            for (long i = 0; i < m; ++i)
                if (arm[static_cast<size_t>(mine[static_cast<size_t>(i)])].comp == comp) return i;
            return -1L;
        };
        std::optional<long> shift;
        for (long i = 0; i < m; ++i) {
            int comp = arm[static_cast<size_t>(mine[static_cast<size_t>(i)])].comp;
            int image = static_cast<int>(((comp - 1 + period) % n) + 1);
            long j = pos_of(image);
            if (j < 0) throw Error("internal: first-return image arm missing from star");
            long s = ((j - i) % m + m) % m;
            if (shift && *shift != s) throw Error("internal: first-return map on arms is not a rotation");
            shift = s;
        }
        long g = std::gcd(*shift, m);
        std::pair<long, long> r{*shift / g, m / g};
        if (rho && *rho != r) throw Error("internal: the two orbits disagree on the rotation number");
        rho = r;
    }
    out.rhoP = rho->first;
    out.rhoN = rho->second;

    // Critical displacement: anticlockwise arm count from the first critical
    // point's arm to the earliest forward image of the second critical point
    // whose component has an arm in this star (the critical point itself in
    // the fixed case, its image in the period-two case).
    Plane p1 = spec_.firstCritical, p2 = other_plane(p1);
    long ell0 = -1;
    for (size_t i = 0; i < arm.size(); ++i)
        if (arm[i].plane == p1 && arm[i].comp == n) ell0 = static_cast<long>(i);
    if (ell0 < 0) throw Error("internal: first critical arm missing from its own star");
    long target = -1;
    for (long j = 0; j < n && target < 0; ++j) {
        int comp = static_cast<int>(((n + j - 1) % n) + 1);
        for (size_t i = 0; i < arm.size(); ++i)
            if (arm[i].plane == p2 && arm[i].comp == comp) target = static_cast<long>(i);
    }
    if (target < 0) throw Error("internal: second critical orbit absent from the star");
    out.delta = ((target - ell0) % static_cast<long>(arm.size()) + static_cast<long>(arm.size())) %
                static_cast<long>(arm.size());
    if (out.delta % 2 == 0)
        throw Error("internal: critical displacement came out even; arm alternation violated");
    return out;
}

StarModel MatingAnalysis::star_model() const {
    ClusterData data = cluster_data(); // validates
    StarModel star;
    star.clusterPeriod = data.period;
    star.arms = arms(clusterCycle_.front());
    const long n = orbit_period();
    for (size_t i = 0; i < star.arms.size(); ++i)
        if (star.arms[i].plane == spec_.firstCritical && star.arms[i].comp == n)
            star.firstCriticalArm = static_cast<int>(i);
    // Arm alternation around a cluster is forced; fail loudly if it breaks.
    for (size_t i = 0; i < star.arms.size(); ++i)
        if (star.arms[i].plane == star.arms[(i + 1) % star.arms.size()].plane)
            throw Error("internal: cluster arms do not alternate between the orbits");
    return star;
}

std::vector<RayClass> ray_classes(const MatingSpec& spec) {
    return MatingAnalysis(spec).classes();
}

std::pair<ClusterData, StarModel> cluster_data(const MatingSpec& spec) {
    MatingAnalysis analysis(spec);
    return {analysis.cluster_data(), analysis.star_model()};
}

LevyReport levy_check(const MatingSpec& spec) {
    MatingAnalysis analysis(spec);
    if (analysis.cluster_cycle().empty()) return {false, ""};
    ClusterData data = analysis.cluster_data();
    if (data.period != 2) return {false, ""};
    // Where does the second critical component's arm live?
    const long n = analysis.orbit_period();
    Plane p2 = other_plane(spec.firstCritical);
    const auto& home = analysis.arms(analysis.cluster_cycle().front());
    for (const auto& a : home) {
        if (a.plane == p2 && a.comp == n) {
            return {true,
                    "period-two cluster cycle with both critical components in one star: the boundary "
                    "curve of a tubular neighbourhood of that star separates the two clusters and pulls "
                    "back homeomorphically to an isotopic curve"};
        }
    }
    return {false, ""};
}

LevyReport levy_check(const ClusterConfiguration& config) {
    if (config.degree < 2) throw MalformedConfiguration("degree must be >= 2");
    if (config.period < 1) throw MalformedConfiguration("cluster period must be >= 1");
    if (config.armsPerOrbit < 1) throw MalformedConfiguration("each star needs at least one arm per orbit");
    if (config.clusterOfCrit1 < 0 || config.clusterOfCrit1 >= config.period ||
        config.clusterOfCrit2 < 0 || config.clusterOfCrit2 >= config.period)
        throw MalformedConfiguration("critical point cluster indices must lie in [0, period)");
    if (config.period == 2 && config.clusterOfCrit1 == config.clusterOfCrit2) {
        return {true,
                "period-two cluster cycle with both critical points in cluster " +
                    std::to_string(config.clusterOfCrit1) +
                    ": the boundary curve of a tubular neighbourhood of its star separates the clusters "
                    "and maps homeomorphically to an isotopic preimage component"};
    }
    return {false, ""};
}

TwistSolution twist_solvable(int degree, long discrepancy) {
    if (degree < 2) throw InvalidInput("degree must be >= 2");
    const long m = degree - 1;
    if (m == 1) return {true, discrepancy};
    if (discrepancy % m != 0) return {false, std::nullopt};
    return {true, discrepancy / m};
}

} // namespace matings
