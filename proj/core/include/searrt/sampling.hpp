#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>

#include "searrt/geom.hpp"

namespace searrt::sampling {

using geom::Angle;
using geom::ArcInterval;
using geom::Point;

/// Deterministic seedable generator; identical seed gives an identical
/// sample stream.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    std::uint64_t next_u64();
    /// Uniform in [0, 1).
    double uniform01();
    double uniform(double lo, double hi);
    /// Uniform integer in [0, n).
    std::uint32_t uniform_index(std::uint32_t n);

    /// Stateless mixer for deriving independent sub-stream seeds.
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b);
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
        return mix(mix(a, b), c);
    }

private:
    std::uint64_t state_;
};

/// Radial sampling law. PaperFaithful uses the linear density
/// f(x) = c_i + 2 c_o x on the normalized radius; ExactAreaUniform draws
/// the radius area-uniformly. The two coincide when r_min = 0.
enum class SamplingMode { PaperFaithful, ExactAreaUniform };

struct AnnulusSpec {
    Point center;
    double r_min = 0.0;
    double r_max = 1.0;
    ArcInterval allowed_arc;

    void validate() const;
    bool contains(const Point& p, double tol = 1e-9) const;
};

/// Which side of the minor axis is admissible.
enum class HalfSelect { Positive, Negative, Both };

/// Concentric elliptical annulus: ellipse with semi-axes a >= b minus the
/// inner circle of radius r_min, optionally restricted to one half along
/// the minor axis. `orientation` is the bearing of the major axis; the
/// positive minor direction lies 90 degrees clockwise of it.
struct EllipticalAnnulusSpec {
    Point center;
    double a = 1.0;      // semi-major, m
    double b = 1.0;      // semi-minor, m
    double r_min = 0.0;  // inner circle radius, m
    Angle orientation;
    HalfSelect allowed_half = HalfSelect::Both;

    void validate() const;
    bool contains(const Point& p, double tol = 1e-9) const;
    /// Local frame coordinates (along major, along minor).
    Point to_local(const Point& p) const;
    Point from_local(const Point& local) const;
};

/// Normalized inverse radial CDF: maps u in [0,1] to x in [0,1] with the
/// physical radius r = r_min + x (r_max - r_min).
double inverse_cdf_radial(double u, double r_min, double r_max, SamplingMode mode);

/// Forward radial CDF matching inverse_cdf_radial (round-trip identity).
double radial_cdf(double x, double r_min, double r_max, SamplingMode mode);

Point sample_half_annulus(const AnnulusSpec& spec, SamplingMode mode, RandomSource& rng);

/// Quadrant CDF of the polar angle inside the elliptical annulus; theta in
/// [0, pi/2) measured from the major axis, range [0, 1/4].
double elliptical_theta_cdf(double theta, double a, double b, double r_min);

/// Density of the polar angle (derivative of elliptical_theta_cdf).
double elliptical_theta_pdf(double theta, double a, double b, double r_min);

enum class InversionMethod { Newton, Bisection };

struct ThetaInversion {
    double theta = 0.0;
    InversionMethod method = InversionMethod::Newton;
    int iterations = 0;
};

/// Invert the quadrant angle CDF for u in [0, 0.25) with safeguarded
/// Newton iteration, falling back to bisection.
ThetaInversion invert_theta_cdf(double u, double a, double b, double r_min,
                                double tol = 1e-10, int max_iter = 50);

Point sample_elliptical_half_annulus(const EllipticalAnnulusSpec& spec, SamplingMode mode,
                                     RandomSource& rng);

struct Rect {
    double n_min = 0.0, n_max = 1.0;
    double e_min = 0.0, e_max = 1.0;
};

struct RegionTooSmallError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RejectionSample {
    Point point;
    long rejected = 0;
};

/// Uniform sample of `membership` by rejection from `bounds`; throws
/// RegionTooSmallError after `max_rejections` consecutive misses.
RejectionSample rejection_sample_rect(const Rect& bounds,
                                      const std::function<bool(const Point&)>& membership,
                                      RandomSource& rng, long max_rejections = 1'000'000);

/// Area ratio of the bounding square (side 2 r_max) to the annulus.
double area_gain_annulus(double r_min, double r_max);
/// Same ratio for the half-annulus (doubles the annulus value).
double area_gain_half_annulus(double r_min, double r_max);

/// Ellipse-to-elliptical-annulus gain in the closed form
/// c sqrt(c^2 - 4 r_max^2) / (c sqrt(c^2 - 4 r_max^2) - 4 r_min^2);
/// requires c_best > 2 r_max.
double area_gain_elliptical(double c_best, double r_min, double r_max);

/// Same gain computed as an area ratio a b / (a b - r_min^2) with
/// a = c_best/2, b = sqrt(c_best^2 - c_min^2)/2.
double area_gain_elliptical_area_ratio(double c_best, double c_min, double r_min);

/// Cost threshold below which the elliptical half-annulus is the smaller
/// search space: gamma = sqrt(c_min^2/2 + sqrt((c_min^2/2)^2 + r_max^4)).
double switch_threshold(double c_min, double r_max);

enum class SampleSpace { HalfAnnulus, EllipticalHalfAnnulus };

const char* to_string(SampleSpace s);

/// Space selection rule: half-annulus until a solution exists, then the
/// elliptical half-annulus whenever c_best < switch_threshold.
SampleSpace select_space(std::optional<double> c_best, double c_min, double r_max);

}  // namespace searrt::sampling
