#include "matings/render.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace matings {

namespace {

constexpr double kProximity = 1e-6;
constexpr double kInfinityRadius = 1e6;
constexpr double kBudget = 5e9;

void check_budget(const RenderJob& job) {
    if (job.px <= 0 || job.py <= 0 || job.width <= 0.0 || job.maxIterations < 1)
        throw InvalidInput("render job needs positive resolution, width and iteration count");
    if (static_cast<double>(job.px) * job.py * job.maxIterations > kBudget)
        throw UnboundedJob("render job exceeds the configured pixel*iteration budget");
}

cplx ipow(cplx z, int k) {
    cplx out{1.0, 0.0};
    while (k > 0) {
        if (k & 1) out *= z;
        z *= z;
        k >>= 1;
    }
    return out;
}

} // namespace

void Image::set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    if (x < 0 || x >= w || y < 0 || y >= h) return;
    size_t i = 3 * (static_cast<size_t>(y) * static_cast<size_t>(w) + static_cast<size_t>(x));
    rgb[i] = r;
    rgb[i + 1] = g;
    rgb[i + 2] = b;
}

std::string Image::ppm_bytes() const {
    std::ostringstream os;
    os << "P6\n" << w << " " << h << "\n255\n";
    os.write(reinterpret_cast<const char*>(rgb.data()), static_cast<std::streamsize>(rgb.size()));
    return os.str();
}

void Image::write_ppm(const std::string& path) const {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw InvalidInput("cannot open '" + path + "' for writing");
    std::string bytes = ppm_bytes();
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

cplx pixel_point(const RenderJob& job, int x, int y) {
    const double aspect = static_cast<double>(job.py) / job.px;
    const cplx topLeft = job.center - job.width / 2.0 * cplx{1.0, aspect};
    const double sx = job.width / job.px;
    const double sy = job.width * aspect / job.py;
    return topLeft + cplx{(x + 0.5) * sx, (y + 0.5) * sy};
}

Image render_dynamical(const BicriticalCoefficients& coeffs, const RenderJob& job,
                       const std::vector<ExtComplex>& cycleZero,
                       const std::vector<ExtComplex>& cycleInf) {
    check_budget(job);
    validate_coefficients(coeffs);

    std::vector<cplx> zeroPts, infPts;
    bool infInZero = false, infInInf = false;
    for (const auto& p : cycleZero) {
        if (p.inf)
            infInZero = true;
        else
            zeroPts.push_back(p.z);
    }
    for (const auto& p : cycleInf) {
        if (p.inf)
            infInInf = true;
        else
            infPts.push_back(p.z);
    }

    Image img{job.px, job.py, std::vector<std::uint8_t>(static_cast<size_t>(job.px) * job.py * 3, 128)};
    for (int y = 0; y < job.py; ++y) {
        for (int x = 0; x < job.px; ++x) {
            cplx z = pixel_point(job, x, y);
            int cls = -1;
            for (int it = 0; it < job.maxIterations && cls < 0; ++it) {
                double az = std::abs(z);
                if (az > kInfinityRadius) {
                    if (infInInf) cls = 1;
                    if (infInZero) cls = 0;
                    break;
                }
                for (const cplx& p : zeroPts)
                    if (std::abs(z - p) < kProximity) cls = 0;
                for (const cplx& p : infPts)
                    if (std::abs(z - p) < kProximity) cls = 1;
                if (cls >= 0) break;
                cplx zd = ipow(z, coeffs.degree);
                cplx den = coeffs.B * zd + 1.0;
                if (std::abs(den) < 1e-300) {
                    if (infInInf) cls = 1;
                    if (infInZero) cls = 0;
                    break;
                }
                z = (coeffs.A * zd + 1.0) / den;
            }
            if (cls == 0)
                img.set(x, y, 255, 255, 255);
            else if (cls == 1)
                img.set(x, y, 0, 0, 0);
        }
    }
    return img;
}

Image render_dynamical_poly(int degree, cplx c, const RenderJob& job, const std::vector<cplx>& finiteCycle) {
    check_budget(job);
    Image img{job.px, job.py, std::vector<std::uint8_t>(static_cast<size_t>(job.px) * job.py * 3, 128)};
    const double escape = std::max(2.0, std::abs(c) + 1.0);
    for (int y = 0; y < job.py; ++y) {
        for (int x = 0; x < job.px; ++x) {
            cplx z = pixel_point(job, x, y);
            int cls = -1;
            for (int it = 0; it < job.maxIterations && cls < 0; ++it) {
                if (std::abs(z) > escape) cls = 1;
                for (const cplx& p : finiteCycle)
                    if (std::abs(z - p) < kProximity) cls = 0;
                if (cls >= 0) break;
                z = ipow(z, degree) + c;
            }
            if (cls == 0)
                img.set(x, y, 255, 255, 255);
            else if (cls == 1)
                img.set(x, y, 0, 0, 0);
        }
    }
    return img;
}

Image render_parameter(int degree, const RenderJob& job, const std::vector<cplx>& markers) {
    if (degree < 2) throw InvalidInput("degree must be >= 2");
    check_budget(job);
    Image img{job.px, job.py, std::vector<std::uint8_t>(static_cast<size_t>(job.px) * job.py * 3, 0)};
    for (int y = 0; y < job.py; ++y) {
        for (int x = 0; x < job.px; ++x) {
            cplx c = pixel_point(job, x, y);
            cplx z{0.0, 0.0};
            const double escape = std::max(2.0, std::abs(c));
            int escaped = -1;
            for (int it = 0; it < job.maxIterations; ++it) {
                z = ipow(z, degree) + c;
                if (std::abs(z) > escape) {
                    escaped = it;
                    break;
                }
            }
            if (escaped >= 0) {
                auto v = static_cast<std::uint8_t>(64 + (191 * (escaped % 64)) / 63);
                img.set(x, y, v, v, v);
            }
        }
    }
    const int arm = std::max(2, job.px / 100);
    for (const cplx& m : markers) {
        int mx = static_cast<int>(std::lround((m.real() - (job.center.real() - job.width / 2)) / job.width * job.px - 0.5));
        double aspect = static_cast<double>(job.py) / job.px;
        double height = job.width * aspect;
        int my = static_cast<int>(std::lround((m.imag() - (job.center.imag() - height / 2)) / height * job.py - 0.5));
        for (int t = -arm; t <= arm; ++t) {
            img.set(mx + t, my, 255, 40, 40);
            img.set(mx, my + t, 255, 40, 40);
        }
    }
    return img;
}

} // namespace matings
