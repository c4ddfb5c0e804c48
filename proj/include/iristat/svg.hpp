#pragma once

#include <span>
#include <string>
#include <utility>

namespace iristat::reports {

// Minimal SVG 1.1 writer. Output is fully deterministic: elements appear in
// call order and coordinates are quantized to quarter pixels so the decimal
// form is short and exact.
class SvgDocument {
public:
    SvgDocument(double width, double height);

    void style(const std::string& css);
    void rect(double x, double y, double w, double h, const std::string& cls);
    void line(double x1, double y1, double x2, double y2, const std::string& cls);
    void polyline(std::span<const std::pair<double, double>> points,
                  const std::string& cls);
    void text(double x, double y, const std::string& content,
              const std::string& cls);

    std::string str() const;

private:
    std::string body_;
};

// round(v * 4) / 4, rendered with the shortest exact decimal form.
std::string svg_coord(double v);
std::string xml_escape(const std::string& s);

}  // namespace iristat::reports
