#include "searrt/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace searrt::sampling {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : state_(seed) {
    // Decorrelate nearby seeds.
    (void)next_u64();
}

std::uint64_t RandomSource::next_u64() {
    return splitmix64(state_);
}

double RandomSource::uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
}

std::uint32_t RandomSource::uniform_index(std::uint32_t n) {
    return static_cast<std::uint32_t>(uniform01() * n) % n;
}

std::uint64_t RandomSource::mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    return splitmix64(x);
}

void AnnulusSpec::validate() const {
    if (!(r_min >= 0.0) || !(r_min < r_max)) {
        throw std::invalid_argument("AnnulusSpec: requires 0 <= r_min < r_max");
    }
    if (!(allowed_arc.span > 0.0) || allowed_arc.span > kTwoPi + 1e-12) {
        throw std::invalid_argument("AnnulusSpec: arc span must be in (0, 2pi]");
    }
}

bool AnnulusSpec::contains(const Point& p, double tol) const {
    const double r = p.distance_to(center);
    const double rtol = tol * std::max(1.0, r_max);
    if (r < r_min - rtol || r > r_max + rtol) return false;
    if (r <= rtol) return true;
    return allowed_arc.contains(geom::bearing(center, p), tol);
}

void EllipticalAnnulusSpec::validate() const {
    if (!(a >= b) || !(b > r_min) || !(r_min >= 0.0)) {
        throw std::invalid_argument("EllipticalAnnulusSpec: requires a >= b > r_min >= 0");
    }
}

Point EllipticalAnnulusSpec::to_local(const Point& p) const {
    const double o = orientation.value();
    const Point major{std::cos(o), std::sin(o)};
    const Point minor{-std::sin(o), std::cos(o)};
    const Point d = p - center;
    return {d.north * major.north + d.east * major.east,
            d.north * minor.north + d.east * minor.east};
}

Point EllipticalAnnulusSpec::from_local(const Point& local) const {
    const double o = orientation.value();
    const Point major{std::cos(o), std::sin(o)};
    const Point minor{-std::sin(o), std::cos(o)};
    return center + major * local.north + minor * local.east;
}

bool EllipticalAnnulusSpec::contains(const Point& p, double tol) const {
    const Point l = to_local(p);
    const double x = l.north, y = l.east;
    const double rtol = tol * std::max(1.0, a);
    const double r = std::hypot(x, y);
    if (r < r_min - rtol) return false;
    const double q = (x * x) / (a * a) + (y * y) / (b * b);
    if (q > 1.0 + tol) return false;
    if (allowed_half == HalfSelect::Positive && y < -rtol) return false;
    if (allowed_half == HalfSelect::Negative && y > rtol) return false;
    return true;
}

double inverse_cdf_radial(double u, double r_min, double r_max, SamplingMode mode) {
    if (!(u >= 0.0) || !(u <= 1.0)) {
        throw std::invalid_argument("inverse_cdf_radial: u must lie in [0, 1]");
    }
    if (!(r_min >= 0.0) || !(r_min < r_max)) {
        throw std::invalid_argument("inverse_cdf_radial: requires 0 <= r_min < r_max");
    }
    const double delta = r_max * r_max - r_min * r_min;
    if (mode == SamplingMode::PaperFaithful) {
        const double k = r_min * r_min / (2.0 * delta);
        return -k + std::sqrt(k * k + (r_max * r_max / delta) * u);
    }
    const double r = std::sqrt(r_min * r_min + u * delta);
    return std::min(1.0, (r - r_min) / (r_max - r_min));
}

double radial_cdf(double x, double r_min, double r_max, SamplingMode mode) {
    if (!(x >= 0.0) || !(x <= 1.0)) {
        throw std::invalid_argument("radial_cdf: x must lie in [0, 1]");
    }
    const double delta = r_max * r_max - r_min * r_min;
    if (mode == SamplingMode::PaperFaithful) {
        const double ci = (r_min * r_min) / (r_max * r_max);
        const double co = delta / (r_max * r_max);
        return ci * x + co * x * x;
    }
    const double r = r_min + x * (r_max - r_min);
    return (r * r - r_min * r_min) / delta;
}

Point sample_half_annulus(const AnnulusSpec& spec, SamplingMode mode, RandomSource& rng) {
    spec.validate();
    const double theta = spec.allowed_arc.start.value() + spec.allowed_arc.span * rng.uniform01();
    const double x = inverse_cdf_radial(rng.uniform01(), spec.r_min, spec.r_max, mode);
    const double r = spec.r_min + x * (spec.r_max - spec.r_min);
    return spec.center + Point{r * std::cos(theta), r * std::sin(theta)};
}

double elliptical_theta_cdf(double theta, double a, double b, double r_min) {
    if (!(a >= b) || !(b > r_min) || !(r_min >= 0.0)) {
        throw std::invalid_argument("elliptical_theta_cdf: requires a >= b > r_min >= 0");
    }
    if (!(theta >= 0.0) || !(theta < kPi / 2.0)) {
        throw std::domain_error("elliptical_theta_cdf: theta must lie in [0, pi/2)");
    }
    const double area = kPi * (a * b - r_min * r_min);
    return (a * b * std::atan(a * std::tan(theta) / b) - theta * r_min * r_min) / (2.0 * area);
}

double elliptical_theta_pdf(double theta, double a, double b, double r_min) {
    const double area = kPi * (a * b - r_min * r_min);
    const double c = b * std::cos(theta);
    const double s = a * std::sin(theta);
    return ((a * a * b * b) / (c * c + s * s) - r_min * r_min) / (2.0 * area);
}

ThetaInversion invert_theta_cdf(double u, double a, double b, double r_min, double tol,
                                int max_iter) {
    if (!(u >= 0.0) || !(u < 0.25)) {
        throw std::invalid_argument("invert_theta_cdf: u must lie in [0, 0.25)");
    }
    if (!(tol > 0.0)) {
        throw std::invalid_argument("invert_theta_cdf: tol must be positive");
    }
    ThetaInversion out;
    double lo = 0.0;
    double hi = kPi / 2.0 * (1.0 - 1e-12);
    // Exact for r_min = 0; a good starting point otherwise.
    double theta = std::atan2(b * std::tan(std::min(kTwoPi * u, hi)), a);
    theta = std::clamp(theta, lo, hi);

    for (int k = 0; k < max_iter; ++k) {
        const double f = elliptical_theta_cdf(theta, a, b, r_min) - u;
        out.iterations = k + 1;
        if (std::abs(f) < tol) {
            out.theta = theta;
            out.method = InversionMethod::Newton;
            return out;
        }
        if (f > 0.0) hi = theta; else lo = theta;
        const double d = elliptical_theta_pdf(theta, a, b, r_min);
        double next = theta - f / d;
        if (!(next > lo) || !(next < hi) || !std::isfinite(next)) {
            next = 0.5 * (lo + hi);
        }
        theta = next;
    }
    // Monotone CDF: bisection always lands inside tolerance.
    for (int k = 0; k < 200; ++k) {
        theta = 0.5 * (lo + hi);
        const double f = elliptical_theta_cdf(theta, a, b, r_min) - u;
        ++out.iterations;
        if (std::abs(f) < tol) break;
        if (f > 0.0) hi = theta; else lo = theta;
    }
    out.theta = theta;
    out.method = InversionMethod::Bisection;
    return out;
}

Point sample_elliptical_half_annulus(const EllipticalAnnulusSpec& spec, SamplingMode mode,
                                     RandomSource& rng) {
    spec.validate();
    // With no inner hole both modes reduce to a uniform ellipse, which an
    // affine map of a uniform disc produces without any CDF inversion.
    if (spec.r_min == 0.0) {
        double phi;
        switch (spec.allowed_half) {
            case HalfSelect::Positive: phi = rng.uniform(0.0, kPi); break;
            case HalfSelect::Negative: phi = rng.uniform(-kPi, 0.0); break;
            default: phi = rng.uniform(-kPi, kPi); break;
        }
        const double r = std::sqrt(rng.uniform01());
        return spec.from_local({spec.a * r * std::cos(phi), spec.b * r * std::sin(phi)});
    }
    const double u = 0.25 * rng.uniform01();
    const double tq = invert_theta_cdf(u, spec.a, spec.b, spec.r_min).theta;

    // Reflect the quadrant angle into a quadrant intersecting the allowed half.
    int quadrant;
    switch (spec.allowed_half) {
        case HalfSelect::Positive: quadrant = static_cast<int>(rng.uniform_index(2)); break;
        case HalfSelect::Negative: quadrant = 2 + static_cast<int>(rng.uniform_index(2)); break;
        default: quadrant = static_cast<int>(rng.uniform_index(4)); break;
    }
    double phi;
    switch (quadrant) {
        case 0: phi = tq; break;
        case 1: phi = kPi - tq; break;
        case 2: phi = kPi + tq; break;
        default: phi = -tq; break;
    }

    const double r_outer = geom::polar_ellipse_radius(spec.a, spec.b, tq);
    const double x = inverse_cdf_radial(rng.uniform01(), spec.r_min, r_outer, mode);
    const double r = spec.r_min + x * (r_outer - spec.r_min);
    return spec.from_local({r * std::cos(phi), r * std::sin(phi)});
}

RejectionSample rejection_sample_rect(const Rect& bounds,
                                      const std::function<bool(const Point&)>& membership,
                                      RandomSource& rng, long max_rejections) {
    RejectionSample out;
    for (;;) {
        const Point p{rng.uniform(bounds.n_min, bounds.n_max),
                      rng.uniform(bounds.e_min, bounds.e_max)};
        if (membership(p)) {
            out.point = p;
            return out;
        }
        if (++out.rejected > max_rejections) {
            throw RegionTooSmallError("rejection_sample_rect: rejection cap exceeded");
        }
    }
}

double area_gain_annulus(double r_min, double r_max) {
    if (!(r_min >= 0.0) || !(r_min < r_max)) {
        throw std::invalid_argument("area_gain_annulus: requires 0 <= r_min < r_max");
    }
    const double rho = r_min / r_max;
    return 4.0 / (kPi * (1.0 - rho * rho));
}

double area_gain_half_annulus(double r_min, double r_max) {
    return 2.0 * area_gain_annulus(r_min, r_max);
}

double area_gain_elliptical(double c_best, double r_min, double r_max) {
    if (!(c_best > 2.0 * r_max)) {
        throw std::domain_error("area_gain_elliptical: requires c_best > 2 r_max");
    }
    const double w = c_best * std::sqrt(c_best * c_best - 4.0 * r_max * r_max);
    return w / (w - 4.0 * r_min * r_min);
}

double area_gain_elliptical_area_ratio(double c_best, double c_min, double r_min) {
    if (!(c_best > c_min)) {
        throw std::domain_error("area_gain_elliptical_area_ratio: requires c_best > c_min");
    }
    const double a = c_best / 2.0;
    const double b = std::sqrt(c_best * c_best - c_min * c_min) / 2.0;
    const double ab = a * b;
    if (!(ab > r_min * r_min)) {
        throw std::domain_error("area_gain_elliptical_area_ratio: inner circle exceeds ellipse");
    }
    return ab / (ab - r_min * r_min);
}

double switch_threshold(double c_min, double r_max) {
    if (!(c_min >= 0.0) || !(r_max > 0.0)) {
        throw std::invalid_argument("switch_threshold: requires c_min >= 0 and r_max > 0");
    }
    const double h = c_min * c_min / 2.0;
    return std::sqrt(h + std::sqrt(h * h + std::pow(r_max, 4)));
}

const char* to_string(SampleSpace s) {
    return s == SampleSpace::HalfAnnulus ? "half-annulus" : "elliptical-half-annulus";
}

SampleSpace select_space(std::optional<double> c_best, double c_min, double r_max) {
    if (!c_best) return SampleSpace::HalfAnnulus;
    return *c_best < switch_threshold(c_min, r_max) ? SampleSpace::EllipticalHalfAnnulus
                                                    : SampleSpace::HalfAnnulus;
}

}  // namespace searrt::sampling
