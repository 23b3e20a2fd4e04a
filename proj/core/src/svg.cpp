#include "searrt/svg.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace searrt::svg {

Canvas::Canvas(double n_min, double n_max, double e_min, double e_max, int width, int height,
               int margin)
    : n_min_(n_min), n_max_(n_max), e_min_(e_min), e_max_(e_max),
      width_(width), height_(height), margin_(margin) {
    const double sn = (height - 2.0 * margin) / std::max(1e-9, n_max - n_min);
    const double se = (width - 2.0 * margin) / std::max(1e-9, e_max - e_min);
    scale_ = std::min(sn, se);
}

void Canvas::line(const geom::Point& a, const geom::Point& b, const std::string& stroke,
                  double width, const std::string& dash) {
    body_ << "<line x1=\"" << x(a.east) << "\" y1=\"" << y(a.north) << "\" x2=\"" << x(b.east)
          << "\" y2=\"" << y(b.north) << "\" stroke=\"" << stroke << "\" stroke-width=\""
          << width << "\"";
    if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
    body_ << "/>\n";
}

void Canvas::circle(const geom::Point& center, double radius_m, const std::string& stroke,
                    const std::string& fill, double width) {
    body_ << "<circle cx=\"" << x(center.east) << "\" cy=\"" << y(center.north) << "\" r=\""
          << radius_m * scale_ << "\" stroke=\"" << stroke << "\" fill=\"" << fill
          << "\" stroke-width=\"" << width << "\"/>\n";
}

void Canvas::dot(const geom::Point& p, double radius_px, const std::string& fill) {
    body_ << "<circle cx=\"" << x(p.east) << "\" cy=\"" << y(p.north) << "\" r=\"" << radius_px
          << "\" fill=\"" << fill << "\"/>\n";
}

void Canvas::polyline(const std::vector<geom::Point>& pts, const std::string& stroke,
                      double width) {
    body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width
          << "\" points=\"";
    for (const auto& p : pts) body_ << x(p.east) << "," << y(p.north) << " ";
    body_ << "\"/>\n";
}

void Canvas::ellipse(const geom::Point& center, double a, double b, geom::Angle orientation,
                     const std::string& stroke, const std::string& fill, double width) {
    // Bearing of the a-axis maps to a screen rotation of (orientation - 90 deg).
    const double rot_deg = orientation.value() * 180.0 / std::numbers::pi - 90.0;
    body_ << "<ellipse cx=\"" << x(center.east) << "\" cy=\"" << y(center.north) << "\" rx=\""
          << a * scale_ << "\" ry=\"" << b * scale_ << "\" transform=\"rotate(" << rot_deg
          << " " << x(center.east) << " " << y(center.north) << ")\" stroke=\"" << stroke
          << "\" fill=\"" << fill << "\" stroke-width=\"" << width << "\"/>\n";
}

void Canvas::text(const geom::Point& at, const std::string& content, int size_px,
                  const std::string& fill) {
    body_ << "<text x=\"" << x(at.east) << "\" y=\"" << y(at.north) << "\" font-size=\""
          << size_px << "\" fill=\"" << fill << "\" font-family=\"sans-serif\">" << content
          << "</text>\n";
}

void Canvas::raw(const std::string& element) {
    body_ << element << "\n";
}

std::string Canvas::finish() const {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
        << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << body_.str() << "</svg>\n";
    return out.str();
}

void Canvas::write_file(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("svg: cannot open " + path);
    out << finish();
}

}  // namespace searrt::svg
