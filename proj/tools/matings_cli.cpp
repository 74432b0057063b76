#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "matings/json_io.hpp"
#include "matings/render.hpp"

using namespace matings;

namespace {

struct OutputOpts {
    std::string path;
    bool rawJson = false;
};

void emit(const json& j, const OutputOpts& out) {
    if (!out.path.empty()) {
        std::ofstream os(out.path);
        if (!os) throw InvalidInput("cannot open '" + out.path + "' for writing");
        os << j.dump(2) << "\n";
    }
    if (out.rawJson || out.path.empty()) std::cout << j.dump(2) << "\n";
}

MatingSpec spec_from_options(const std::string& specPath) {
    if (specPath.empty()) throw InvalidInput("--spec FILE is required");
    return load_mating_spec(specPath);
}

json realize_report(const MatingSpec& spec, double tol, long maxIter) {
    MarkedConfiguration config = initial_configuration(spec);
    PullbackTrace trace;
    BicriticalCoefficients coeffs = run_pullback(config, tol, maxIter, &trace);

    json cz = json::array(), ci = json::array();
    for (size_t i = 0; i < config.labels.size(); ++i) {
        const auto& l = config.labels[i];
        json p;
        if (config.pos[i].inf)
            p = nullptr;
        else
            p = {config.pos[i].z.real(), config.pos[i].z.imag()};
        if (l.size() > 1 && l[0] == 'p') cz.push_back(p);
        if (l.size() > 1 && l[0] == 'q') ci.push_back(p);
    }
    json out = to_json(coeffs);
    out.update(to_json(trace));
    out["cycle_zero"] = cz;
    out["cycle_inf"] = ci;
    return out;
}

std::vector<ExtComplex> cycle_from_json(const json& arr) {
    std::vector<ExtComplex> out;
    for (const auto& p : arr) {
        if (p.is_null())
            out.push_back(ExtComplex::infinity());
        else
            out.push_back(ExtComplex::finite(cplx(p.at(0).get<double>(), p.at(1).get<double>())));
    }
    return out;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"cluster combinatorics and numerical realization of polynomial matings"};
    app.require_subcommand(1);

    // solve-center
    auto* sc = app.add_subcommand("solve-center", "Newton solve for a superattracting parameter of z^d + c");
    int scDegree = 3;
    long scPeriod = 4;
    std::string scSeed = "0";
    double scTol = 1e-12;
    OutputOpts scOut;
    sc->add_option("--degree", scDegree);
    sc->add_option("--period", scPeriod);
    sc->add_option("--seed", scSeed, "complex seed, e.g. \"0.21+1.09i\"");
    sc->add_option("--tol", scTol);
    sc->add_option("--output", scOut.path);
    sc->add_flag("--json", scOut.rawJson);

    // cluster-data
    auto* cd = app.add_subcommand("cluster-data", "cluster period, rotation number and critical displacement");
    std::string cdSpec;
    OutputOpts cdOut;
    cd->add_option("--spec", cdSpec, "mating spec JSON file");
    cd->add_option("--output", cdOut.path);
    cd->add_flag("--json", cdOut.rawJson);

    // levy-check
    auto* lv = app.add_subcommand("levy-check", "Levy-cycle obstruction test for a mating spec");
    std::string lvSpec;
    OutputOpts lvOut;
    lv->add_option("--spec", lvSpec);
    lv->add_option("--output", lvOut.path);
    lv->add_flag("--json", lvOut.rawJson);

    // realize
    auto* rz = app.add_subcommand("realize", "Thurston pullback realization of a mating");
    std::string rzSpec;
    double rzTol = 1e-12;
    long rzMaxIter = 500;
    OutputOpts rzOut;
    rz->add_option("--spec", rzSpec);
    rz->add_option("--tol", rzTol);
    rz->add_option("--max-iter", rzMaxIter);
    rz->add_option("--output", rzOut.path);
    rz->add_flag("--json", rzOut.rawJson);

    // compare
    auto* cp = app.add_subcommand("compare", "Moebius-conjugacy equivalence of two realized maps");
    std::string cpLeft, cpRight;
    double cpTol = 1e-6;
    OutputOpts cpOut;
    cp->add_option("--left", cpLeft)->required();
    cp->add_option("--right", cpRight)->required();
    cp->add_option("--tol", cpTol);
    cp->add_option("--output", cpOut.path);
    cp->add_flag("--json", cpOut.rawJson);

    // render-dyn
    auto* rd = app.add_subcommand("render-dyn", "basin image of a realized mating or a polynomial");
    std::string rdSpec, rdCoeffs, rdParam, rdCenter = "0", rdOutput = "dynamical.ppm";
    int rdDegree = 2, rdRes = 256, rdMaxIter = 200;
    double rdWidth = 4.0;
    rd->add_option("--spec", rdSpec, "mating spec JSON (realized internally)");
    rd->add_option("--coeffs", rdCoeffs, "realize output JSON with cycle positions");
    rd->add_option("--param", rdParam, "polynomial parameter c for z^d + c");
    rd->add_option("--degree", rdDegree);
    rd->add_option("--center", rdCenter);
    rd->add_option("--width", rdWidth);
    rd->add_option("--res", rdRes);
    rd->add_option("--max-iter", rdMaxIter);
    rd->add_option("--output", rdOutput);

    // render-param
    auto* rp = app.add_subcommand("render-param", "escape-time image of the degree-d multibrot set");
    int rpDegree = 2, rpRes = 256, rpMaxIter = 200;
    double rpWidth = 4.0;
    std::string rpCenter = "0", rpOutput = "parameter.ppm";
    std::vector<std::string> rpMarks;
    rp->add_option("--degree", rpDegree);
    rp->add_option("--center", rpCenter);
    rp->add_option("--width", rpWidth);
    rp->add_option("--res", rpRes);
    rp->add_option("--max-iter", rpMaxIter);
    rp->add_option("--mark", rpMarks, "complex marker, repeatable");
    rp->add_option("--output", rpOutput);

    // pipeline
    auto* pl = app.add_subcommand("pipeline", "levy-check, cluster-data, realize and spectrum in one report");
    std::string plSpec;
    double plTol = 1e-12;
    long plMaxIter = 500;
    OutputOpts plOut;
    pl->add_option("--spec", plSpec);
    pl->add_option("--tol", plTol);
    pl->add_option("--max-iter", plMaxIter);
    pl->add_option("--output", plOut.path);
    pl->add_flag("--json", plOut.rawJson);

    CLI11_PARSE(app, argc, argv);

    if (sc->parsed()) {
        CenterSolveResult r = center_solve(scDegree, scPeriod, parse_complex(scSeed), scTol);
        json j{{"c", {r.spec.parameter.real(), r.spec.parameter.imag()}},
               {"residual", r.residual},
               {"iterations", r.iterations}};
        emit(j, scOut);
        return 0;
    }
    if (cd->parsed()) {
        auto [data, star] = cluster_data(spec_from_options(cdSpec));
        json j = to_json(data);
        j["star"] = to_json(star);
        emit(j, cdOut);
        return 0;
    }
    if (lv->parsed()) {
        LevyReport report = levy_check(spec_from_options(lvSpec));
        emit(to_json(report), lvOut);
        return report.obstructed ? 2 : 0;
    }
    if (rz->parsed()) {
        emit(realize_report(spec_from_options(rzSpec), rzTol, rzMaxIter), rzOut);
        return 0;
    }
    if (cp->parsed()) {
        BicriticalCoefficients left = coefficients_from_json(load_json(cpLeft));
        BicriticalCoefficients right = coefficients_from_json(load_json(cpRight));
        double dist = spectrum_distance(spectrum(left), spectrum(right));
        bool eq = equivalent(left, right, cpTol);
        json j{{"equivalent", eq}, {"spectrum_distance", dist}};
        if (eq) j["note"] = "consistent with equivalence";
        emit(j, cpOut);
        return 0;
    }
    if (rd->parsed()) {
        RenderJob job;
        job.center = parse_complex(rdCenter);
        job.width = rdWidth;
        job.px = job.py = rdRes;
        job.maxIterations = rdMaxIter;
        Image img;
        if (!rdParam.empty()) {
            cplx c = parse_complex(rdParam);
            std::vector<cplx> cycle;
            cplx z{0.0, 0.0};
            for (int k = 0; k < 64; ++k) {
                cycle.push_back(z);
                cplx zn{1.0, 0.0};
                for (int i = 0; i < rdDegree; ++i) zn *= z;
                z = zn + c;
                if (std::abs(z) < 1e-9) break;
            }
            img = render_dynamical_poly(rdDegree, c, job, cycle);
        } else {
            json r;
            if (!rdCoeffs.empty()) {
                r = load_json(rdCoeffs);
            } else {
                MatingSpec spec = spec_from_options(rdSpec);
                r = realize_report(spec, 1e-12, 500);
            }
            BicriticalCoefficients coeffs = coefficients_from_json(r);
            img = render_dynamical(coeffs, job, cycle_from_json(r.at("cycle_zero")),
                                   cycle_from_json(r.at("cycle_inf")));
        }
        img.write_ppm(rdOutput);
        std::cout << "wrote " << rdOutput << "\n";
        return 0;
    }
    if (rp->parsed()) {
        RenderJob job;
        job.center = parse_complex(rpCenter);
        job.width = rpWidth;
        job.px = job.py = rpRes;
        job.maxIterations = rpMaxIter;
        job.coloring = Coloring::EscapeTime;
        std::vector<cplx> marks;
        for (const auto& m : rpMarks) marks.push_back(parse_complex(m));
        render_parameter(rpDegree, job, marks).write_ppm(rpOutput);
        std::cout << "wrote " << rpOutput << "\n";
        return 0;
    }
    if (pl->parsed()) {
        MatingSpec spec = spec_from_options(plSpec);
        json report{{"spec", to_json(spec)}};
        std::string stage = "levy_check";
        try {
            LevyReport levy = levy_check(spec);
            report["levy"] = to_json(levy);
            if (levy.obstructed) {
                emit(report, plOut);
                return 2;
            }
            stage = "cluster_data";
            auto [data, star] = cluster_data(spec);
            report["cluster"] = to_json(data);
            report["cluster"]["star"] = to_json(star);
            stage = "realize_mating";
            json r = realize_report(spec, plTol, plMaxIter);
            report["coefficients"] = r;
            stage = "spectrum";
            report["spectrum"] = to_json(spectrum(coefficients_from_json(r)));
            emit(report, plOut);
            return 0;
        } catch (const Error& e) {
            report["error"] = {{"stage", stage}, {"message", e.what()}};
            emit(report, plOut);
            throw;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const Obstructed& e) {
        std::cerr << "obstructed: " << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        std::cerr << "no convergence: " << e.what() << "\n";
        return 3;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
