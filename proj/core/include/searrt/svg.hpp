#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "searrt/geom.hpp"

namespace searrt::svg {

/// Minimal SVG document builder mapping the North-East world frame onto
/// screen coordinates (East right, North up).
class Canvas {
public:
    /// World window [n_min, n_max] x [e_min, e_max] drawn into a pixel
    /// area `width` x `height` with a uniform margin.
    Canvas(double n_min, double n_max, double e_min, double e_max, int width = 800,
           int height = 800, int margin = 40);

    double x(double east) const { return margin_ + (east - e_min_) * scale_; }
    double y(double north) const { return margin_ + (n_max_ - north) * scale_; }

    void line(const geom::Point& a, const geom::Point& b, const std::string& stroke,
              double width = 1.0, const std::string& dash = "");
    void circle(const geom::Point& center, double radius_m, const std::string& stroke,
                const std::string& fill = "none", double width = 1.0);
    void dot(const geom::Point& p, double radius_px, const std::string& fill);
    void polyline(const std::vector<geom::Point>& pts, const std::string& stroke,
                  double width = 1.0);
    /// Ellipse with semi-axes in meters; `orientation` is the bearing of
    /// the a-axis.
    void ellipse(const geom::Point& center, double a, double b, geom::Angle orientation,
                 const std::string& stroke, const std::string& fill = "none",
                 double width = 1.0);
    void text(const geom::Point& at, const std::string& content, int size_px = 12,
              const std::string& fill = "#333");
    /// Raw element in pixel space, for callers drawing axes or legends.
    void raw(const std::string& element);

    std::string finish() const;
    void write_file(const std::string& path) const;

    int width() const { return width_; }
    int height() const { return height_; }
    double scale() const { return scale_; }

private:
    double n_min_, n_max_, e_min_, e_max_;
    int width_, height_, margin_;
    double scale_;
    std::ostringstream body_;
};

}  // namespace searrt::svg
