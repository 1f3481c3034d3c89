#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "thunt/harness.hpp"

namespace thunt::harness {

namespace {

// Beyond this many grid lines per axis only a window around the advised tile
// is drawn.
constexpr std::int64_t kMaxGridLines = 400;
constexpr std::int64_t kGridWindow = 16;

class Canvas {
 public:
  Canvas(const geom::Box& box, double width_px) {
    const double w = box.hi.x - box.lo.x;
    const double h = box.hi.y - box.lo.y;
    margin_ = 0.04 * std::max(w, h);
    lo_ = {box.lo.x - margin_, box.lo.y - margin_};
    top_ = box.hi.y + margin_;
    scale_ = width_px / (w + 2.0 * margin_);
    width_ = width_px;
    height_ = (h + 2.0 * margin_) * scale_;
  }

  double width() const { return width_; }
  double height() const { return height_; }
  double scale() const { return scale_; }

  std::string x(double v) const { return fmt((v - lo_.x) * scale_); }
  std::string y(double v) const { return fmt((top_ - v) * scale_); }
  std::string xy(Point p) const { return x(p.x) + "," + y(p.y); }
  std::string len(double v) const { return fmt(v * scale_); }

  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
  }

 private:
  Point lo_;
  double top_ = 0.0;
  double margin_ = 0.0;
  double scale_ = 1.0;
  double width_ = 0.0;
  double height_ = 0.0;
};

std::string ring_path(const Canvas& c, const geom::Polygon& ring) {
  std::string d = "M";
  for (std::size_t i = 0; i < ring.size(); ++i) {
    d += (i == 0 ? " " : " L ") + c.xy(ring.vertex(i));
  }
  return d + " Z";
}

void draw_tiling(std::ostringstream& os, const Canvas& c, const geom::Box& box,
                 const oracle::Tiling& tiling, oracle::TileIndex chosen) {
  const double side = tiling.side();
  const Point a = tiling.anchor();
  auto lo_col = static_cast<std::int64_t>(std::floor((box.lo.x - a.x) / side));
  auto hi_col = static_cast<std::int64_t>(std::ceil((box.hi.x - a.x) / side));
  auto lo_row = static_cast<std::int64_t>(std::floor((box.lo.y - a.y) / side));
  auto hi_row = static_cast<std::int64_t>(std::ceil((box.hi.y - a.y) / side));
  const std::int64_t cc = oracle::Tiling::offset_of(chosen.col);
  const std::int64_t cr = oracle::Tiling::offset_of(chosen.row);
  if (hi_col - lo_col > kMaxGridLines) {
    lo_col = cc - kGridWindow;
    hi_col = cc + kGridWindow + 1;
  }
  if (hi_row - lo_row > kMaxGridLines) {
    lo_row = cr - kGridWindow;
    hi_row = cr + kGridWindow + 1;
  }
  const double x0 = a.x + static_cast<double>(lo_col) * side;
  const double x1 = a.x + static_cast<double>(hi_col) * side;
  const double y0 = a.y + static_cast<double>(lo_row) * side;
  const double y1 = a.y + static_cast<double>(hi_row) * side;

  os << "<g class=\"tiling\" stroke=\"#c8c8e0\" stroke-width=\"0.5\">\n";
  for (std::int64_t k = lo_col; k <= hi_col; ++k) {
    const double xv = a.x + static_cast<double>(k) * side;
    os << "<line x1=\"" << c.x(xv) << "\" y1=\"" << c.y(y0) << "\" x2=\"" << c.x(xv)
       << "\" y2=\"" << c.y(y1) << "\"/>\n";
  }
  for (std::int64_t k = lo_row; k <= hi_row; ++k) {
    const double yv = a.y + static_cast<double>(k) * side;
    os << "<line x1=\"" << c.x(x0) << "\" y1=\"" << c.y(yv) << "\" x2=\"" << c.x(x1)
       << "\" y2=\"" << c.y(yv) << "\"/>\n";
  }
  os << "</g>\n";
  const Point m = tiling.tile_min(chosen);
  os << "<rect class=\"advised-tile\" x=\"" << c.x(m.x) << "\" y=\"" << c.y(m.y + side)
     << "\" width=\"" << c.len(side) << "\" height=\"" << c.len(side)
     << "\" fill=\"#9bd19b\" fill-opacity=\"0.5\"/>\n";
}

}  // namespace

std::string render_svg(const Scenario& s, const std::optional<agent::Trajectory>& trajectory,
                       const SvgOptions& options) {
  const geom::Box box = s.terrain.outer().bounds();
  const Canvas c(box, options.width_px);
  const oracle::AdvicePlan plan = oracle::plan_advice(s.terrain, s.start, s.treasure);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << Canvas::fmt(c.width()) << "\" height=\"" << Canvas::fmt(c.height())
     << "\" viewBox=\"0 0 " << Canvas::fmt(c.width()) << ' ' << Canvas::fmt(c.height())
     << "\">\n";
  os << "<path class=\"outer\" d=\"" << ring_path(c, s.terrain.outer())
     << "\" fill=\"#fbfaf2\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  os << "<g class=\"obstacles\" fill=\"#8c8c8c\" stroke=\"#333333\" stroke-width=\"1\">\n";
  for (const geom::Polygon& ob : s.terrain.obstacles()) {
    os << "<path class=\"obstacle\" d=\"" << ring_path(c, ob) << "\"/>\n";
  }
  os << "</g>\n";
  if (options.tiling) {
    draw_tiling(os, c, box, oracle::Tiling(s.start, plan.tile.a1), plan.tile.idx);
  }
  os << "<circle class=\"treasure-disc\" cx=\"" << c.x(s.treasure.x) << "\" cy=\""
     << c.y(s.treasure.y) << "\" r=\"" << c.len(plan.spec.lambda)
     << "\" fill=\"#f2d16b\" fill-opacity=\"0.35\" stroke=\"#c9a227\"/>\n";

  if (trajectory) {
    os << "<g class=\"trajectory\" fill=\"none\" stroke-width=\"1.5\">\n";
    for (const agent::TrajectoryPiece& piece : trajectory->pieces()) {
      const bool free = piece.provenance == agent::Provenance::FreeMove;
      os << "<polyline class=\"" << (free ? "free-move" : "perimeter-walk") << "\" stroke=\""
         << (free ? "#1f77b4" : "#d62728") << "\" points=\"";
      for (std::size_t i = 0; i < piece.points.size(); ++i) {
        os << (i ? " " : "") << c.xy(piece.points[i]);
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }

  const std::string dot = Canvas::fmt(4.0);
  os << "<circle class=\"start\" cx=\"" << c.x(s.start.x) << "\" cy=\"" << c.y(s.start.y)
     << "\" r=\"" << dot << "\" fill=\"#2ca02c\"/>\n";
  os << "<circle class=\"treasure\" cx=\"" << c.x(s.treasure.x) << "\" cy=\"" << c.y(s.treasure.y)
     << "\" r=\"" << dot << "\" fill=\"#c9a227\"/>\n";
  const Point qp = plan.tile.qprime;
  os << "<rect class=\"qprime\" x=\"" << Canvas::fmt(std::stod(c.x(qp.x)) - 3.0) << "\" y=\""
     << Canvas::fmt(std::stod(c.y(qp.y)) - 3.0)
     << "\" width=\"6\" height=\"6\" fill=\"#9467bd\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace thunt::harness
