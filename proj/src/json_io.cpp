#include "matings/json_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace matings {

cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InvalidInput("empty complex literal");
    try {
        // forms: a, bi, a+bi, a-bi (also leading sign on a)
        if (s.back() == 'i' || s.back() == 'I') {
            s.pop_back();
            if (s.empty() || s == "+") return {0.0, 1.0};
            if (s == "-") return {0.0, -1.0};
            // split at the last +/- that is not an exponent sign or leading
            for (size_t i = s.size(); i-- > 1;) {
                if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
                    double re = std::stod(s.substr(0, i));
                    std::string imag = s.substr(i);
                    if (imag == "+") return {re, 1.0};
                    if (imag == "-") return {re, -1.0};
                    return {re, std::stod(imag)};
                }
            }
            return {0.0, std::stod(s)};
        }
        return {std::stod(s), 0.0};
    } catch (const std::exception&) {
        throw InvalidInput("cannot parse complex literal '" + text + "'");
    }
}

std::string format_complex(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

json to_json(const Angle& a) { return a.str(); }

json to_json(const MatingSpec& spec) {
    return json{{"degree", spec.degree},
                {"white", {spec.white.lo.str(), spec.white.hi.str()}},
                {"black", {spec.black.lo.str(), spec.black.hi.str()}},
                {"first_critical", plane_name(spec.firstCritical)}};
}

MatingSpec mating_spec_from_json(const json& j) {
    MatingSpec spec;
    try {
        spec.degree = j.at("degree").get<int>();
        spec.white = CharPair{Angle::parse(j.at("white").at(0).get<std::string>()),
                              Angle::parse(j.at("white").at(1).get<std::string>())};
        spec.black = CharPair{Angle::parse(j.at("black").at(0).get<std::string>()),
                              Angle::parse(j.at("black").at(1).get<std::string>())};
        std::string first = j.value("first_critical", "white");
        if (first == "white")
            spec.firstCritical = Plane::White;
        else if (first == "black")
            spec.firstCritical = Plane::Black;
        else
            throw InvalidInput("first_critical must be 'white' or 'black'");
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed mating spec JSON: ") + e.what());
    }
    return spec;
}

json to_json(const ClusterData& data) {
    return json{{"period", data.period},
                {"rho", std::to_string(data.rhoP) + "/" + std::to_string(data.rhoN)},
                {"delta", data.delta}};
}

json to_json(const StarModel& star) {
    json arms = json::array();
    for (const auto& a : star.arms)
        arms.push_back(json{{"orbit", plane_name(a.plane)}, {"component", a.comp}});
    return json{{"cluster_period", star.clusterPeriod},
                {"arms", arms},
                {"first_critical_arm", star.firstCriticalArm}};
}

json to_json(const LevyReport& report) {
    return json{{"obstructed", report.obstructed}, {"witness", report.witness}};
}

json to_json(const std::vector<RayClass>& classes) {
    json out = json::array();
    for (const auto& rc : classes) {
        json members = json::array();
        for (const auto& m : rc.members)
            members.push_back(json{{"plane", plane_name(m.plane)}, {"angle", m.angle.str()}});
        out.push_back(json{{"members", members}, {"closes_cluster", rc.closesCluster}});
    }
    return out;
}

json to_json(const BicriticalCoefficients& coeffs) {
    return json{{"A", {coeffs.A.real(), coeffs.A.imag()}},
                {"B", {coeffs.B.real(), coeffs.B.imag()}},
                {"degree", coeffs.degree}};
}

BicriticalCoefficients coefficients_from_json(const json& j) {
    BicriticalCoefficients out;
    try {
        out.A = cplx(j.at("A").at(0).get<double>(), j.at("A").at(1).get<double>());
        out.B = cplx(j.at("B").at(0).get<double>(), j.at("B").at(1).get<double>());
        out.degree = j.at("degree").get<int>();
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("malformed coefficients JSON: ") + e.what());
    }
    return out;
}

json to_json(const PullbackTrace& trace) {
    json out{{"iterations", trace.iterations},
             {"converged", trace.converged},
             {"max_move", trace.maxMove}};
    if (trace.collision) out["collision"] = {trace.collision->first, trace.collision->second};
    return out;
}

json to_json(const MultiplierSpectrum& spectrum) {
    auto pack = [](const std::vector<cplx>& v) {
        json arr = json::array();
        for (const cplx& z : v) arr.push_back({z.real(), z.imag()});
        return arr;
    };
    return json{{"fixed", pack(spectrum.fixedPointMultipliers)},
                {"period2", pack(spectrum.periodTwoMultipliers)}};
}

json to_json(const PolySpec& spec) {
    json out{{"degree", spec.degree},
             {"period", spec.period},
             {"c", {spec.parameter.real(), spec.parameter.imag()}}};
    if (spec.sourcePair) out["pair"] = {spec.sourcePair->lo.str(), spec.sourcePair->hi.str()};
    return out;
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidInput("cannot parse JSON in '" + path + "': " + e.what());
    }
    return j;
}

MatingSpec load_mating_spec(const std::string& path) {
    return mating_spec_from_json(load_json(path));
}

} // namespace matings
