#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "matings/bicritical.hpp"

namespace matings {

enum class Coloring { Basin, EscapeTime };

struct RenderJob {
    cplx center{0.0, 0.0};
    double width = 4.0;
    int px = 256, py = 256;
    int maxIterations = 100;
    Coloring coloring = Coloring::Basin;
};

struct Image {
    int w = 0, h = 0;
    std::vector<std::uint8_t> rgb; ///< row-major, 3 bytes per pixel

    void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b);
    /// Binary PPM (P6); the bit-exact baseline format.
    void write_ppm(const std::string& path) const;
    std::string ppm_bytes() const;
};

/// Pixel-center parameterization: row-major, pixel (0,0) anchored at
/// center - width/2 * (1 + i*aspect).
cplx pixel_point(const RenderJob& job, int x, int y);

/// Basin image of a realized bicritical map: white where the orbit reaches
/// the superattracting cycle of 0, black for the cycle of infinity, gray if
/// undecided within the iteration budget. Cycle positions come from the
/// converged marked configuration, not re-derived.
Image render_dynamical(const BicriticalCoefficients& coeffs, const RenderJob& job,
                       const std::vector<ExtComplex>& cycleZero,
                       const std::vector<ExtComplex>& cycleInf);

/// Basin/escape image of the unicritical polynomial z^d + c.
Image render_dynamical_poly(int degree, cplx c, const RenderJob& job,
                            const std::vector<cplx>& finiteCycle);

/// Escape-time image of the degree-d multibrot set with optional markers.
Image render_parameter(int degree, const RenderJob& job, const std::vector<cplx>& markers);

} // namespace matings
