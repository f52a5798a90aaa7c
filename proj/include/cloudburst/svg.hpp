#ifndef CLOUDBURST_SVG_HPP
#define CLOUDBURST_SVG_HPP

#include <string>
#include <vector>

namespace cloudburst {

/**
 * Minimal SVG painter: lines, rectangles, circles, polylines, text.
 * Enough to regenerate the study figures with no rendering dependency;
 * the CSV outputs stay canonical.
 */
class SvgCanvas {
 public:
  SvgCanvas(double width, double height);

  void line(double x1, double y1, double x2, double y2,
            const std::string& stroke, double width = 1.0);
  void rect(double x, double y, double w, double h, const std::string& fill,
            const std::string& stroke = "none");
  void circle(double cx, double cy, double r, const std::string& fill,
              double opacity = 1.0);
  void polyline(const std::vector<std::pair<double, double>>& points,
                const std::string& stroke, double width = 1.5);
  void text(double x, double y, const std::string& content, int size = 11,
            const std::string& anchor = "start", const std::string& fill = "#333");

  std::string finish() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

/// Stable colour per series index.
const std::string& series_color(std::size_t index);

}  // namespace cloudburst

#endif  // CLOUDBURST_SVG_HPP
