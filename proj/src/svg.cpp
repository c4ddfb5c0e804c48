#include "iristat/svg.hpp"

#include <cmath>

#include "iristat/text.hpp"

namespace iristat::reports {

std::string svg_coord(double v) {
    double q = std::round(v * 4.0) / 4.0;
    if (q == 0.0) q = 0.0;  // normalize -0
    return format_double(q);
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

SvgDocument::SvgDocument(double width, double height) {
    body_ = "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
            svg_coord(width) + "\" height=\"" + svg_coord(height) +
            "\" viewBox=\"0 0 " + svg_coord(width) + " " + svg_coord(height) +
            "\">\n";
}

void SvgDocument::style(const std::string& css) {
    body_ += "<style>" + css + "</style>\n";
}

void SvgDocument::rect(double x, double y, double w, double h,
                       const std::string& cls) {
    body_ += "<rect class=\"" + cls + "\" x=\"" + svg_coord(x) + "\" y=\"" +
             svg_coord(y) + "\" width=\"" + svg_coord(w) + "\" height=\"" +
             svg_coord(h) + "\"/>\n";
}

void SvgDocument::line(double x1, double y1, double x2, double y2,
                       const std::string& cls) {
    body_ += "<line class=\"" + cls + "\" x1=\"" + svg_coord(x1) + "\" y1=\"" +
             svg_coord(y1) + "\" x2=\"" + svg_coord(x2) + "\" y2=\"" +
             svg_coord(y2) + "\"/>\n";
}

void SvgDocument::polyline(std::span<const std::pair<double, double>> points,
                           const std::string& cls) {
    body_ += "<polyline class=\"" + cls + "\" points=\"";
    bool first = true;
    for (const auto& [x, y] : points) {
        if (!first) body_ += ' ';
        first = false;
        body_ += svg_coord(x) + "," + svg_coord(y);
    }
    body_ += "\"/>\n";
}

void SvgDocument::text(double x, double y, const std::string& content,
                       const std::string& cls) {
    body_ += "<text class=\"" + cls + "\" x=\"" + svg_coord(x) + "\" y=\"" +
             svg_coord(y) + "\">" + xml_escape(content) + "</text>\n";
}

std::string SvgDocument::str() const { return body_ + "</svg>\n"; }

}  // namespace iristat::reports
