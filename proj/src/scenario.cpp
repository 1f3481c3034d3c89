#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "thunt/harness.hpp"

namespace thunt::harness {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string point_line(Point p) { return num(p.x) + " " + num(p.y); }

void write_ring(std::ostringstream& os, std::string_view tag, const geom::Polygon& ring) {
  os << tag << ' ' << ring.size() << '\n';
  for (const Point& v : ring.vertices()) os << point_line(v) << '\n';
}

struct Line {
  std::size_t number = 0;
  std::vector<std::string> words;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    ++number;
    pos = eol + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream is{std::string(raw)};
    Line line{number, {}};
    for (std::string w; is >> w;) line.words.push_back(w);
    if (!line.words.empty()) lines.push_back(std::move(line));
    if (eol == text.size()) break;
  }
  return lines;
}

class Reader {
 public:
  explicit Reader(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return next_ >= lines_.size(); }
  const Line& peek() const {
    if (done()) throw ScenarioError("unexpected end of file");
    return lines_[next_];
  }
  const Line& take() {
    const Line& l = peek();
    ++next_;
    return l;
  }

  [[noreturn]] static void fail(const Line& l, const std::string& what) {
    throw ScenarioError("line " + std::to_string(l.number) + ": " + what);
  }

  static double real(const Line& l, std::size_t i, std::string_view field) {
    if (i >= l.words.size()) fail(l, "missing value for " + std::string(field));
    const std::string& w = l.words[i];
    char* end = nullptr;
    const double v = std::strtod(w.c_str(), &end);
    if (end != w.c_str() + w.size() || !std::isfinite(v)) {
      fail(l, "bad number '" + w + "' for " + std::string(field));
    }
    return v;
  }

  static std::size_t count(const Line& l, std::size_t i, std::string_view field) {
    const double v = real(l, i, field);
    if (v < 0 || v != std::floor(v)) fail(l, std::string(field) + " must be a count");
    return static_cast<std::size_t>(v);
  }

  static void arity(const Line& l, std::size_t n) {
    if (l.words.size() != n) fail(l, "expected " + std::to_string(n - 1) + " value(s)");
  }

  Point point(std::string_view field) {
    const Line& l = take();
    if (l.words.size() != 2) fail(l, "expected a coordinate pair for " + std::string(field));
    return {real(l, 0, field), real(l, 1, field)};
  }

 private:
  std::vector<Line> lines_;
  std::size_t next_ = 0;
};

}  // namespace

Scenario make_scenario(Terrain terrain, Point start, Point treasure, double fatness,
                       ScenarioOptions options) {
  if (!(fatness > 1.0)) throw ScenarioError("fatness must exceed 1");
  if (options.sample_step && !(*options.sample_step > 0.0)) {
    throw ScenarioError("sample_step must be positive");
  }
  if (!geom::point_in_terrain(start, terrain)) throw ScenarioError("start lies outside the terrain");
  if (!geom::point_in_terrain(treasure, terrain) ||
      geom::distance_to_boundary(treasure, terrain) <= geom::kEps) {
    throw ScenarioError("treasure must be an interior point of the terrain");
  }
  return {std::move(terrain), start, treasure, fatness, options};
}

std::string format_scenario(const Scenario& s) {
  std::ostringstream os;
  os << "thunt-scenario 1\n";
  os << "fatness " << num(s.fatness) << '\n';
  os << "strict " << (s.options.strict ? 1 : 0) << '\n';
  if (s.options.sample_step) os << "sample_step " << num(*s.options.sample_step) << '\n';
  os << "start " << point_line(s.start) << '\n';
  os << "treasure " << point_line(s.treasure) << '\n';
  write_ring(os, "outer", s.terrain.outer());
  for (const geom::Polygon& ob : s.terrain.obstacles()) write_ring(os, "obstacle", ob);
  os << "end\n";
  return os.str();
}

Scenario parse_scenario(std::string_view text) {
  Reader in(tokenize(text));
  if (in.done()) throw ScenarioError("empty scenario file");
  {
    const Line& head = in.take();
    if (head.words.size() != 2 || head.words[0] != "thunt-scenario" || head.words[1] != "1") {
      Reader::fail(head, "expected header 'thunt-scenario 1'");
    }
  }

  std::optional<double> fatness;
  std::optional<Point> start, treasure;
  ScenarioOptions options;
  std::optional<std::pair<std::size_t, std::vector<Point>>> outer;
  std::vector<std::pair<std::size_t, std::vector<Point>>> obstacles;
  bool ended = false;

  while (!in.done()) {
    const Line& l = in.take();
    const std::string& key = l.words[0];
    if (ended) Reader::fail(l, "content after 'end'");
    if (key == "fatness") {
      Reader::arity(l, 2);
      fatness = Reader::real(l, 1, "fatness");
    } else if (key == "strict") {
      Reader::arity(l, 2);
      if (l.words[1] != "0" && l.words[1] != "1") Reader::fail(l, "strict must be 0 or 1");
      options.strict = l.words[1] == "1";
    } else if (key == "sample_step") {
      Reader::arity(l, 2);
      options.sample_step = Reader::real(l, 1, "sample_step");
    } else if (key == "start" || key == "treasure") {
      Reader::arity(l, 3);
      const Point p{Reader::real(l, 1, key), Reader::real(l, 2, key)};
      (key == "start" ? start : treasure) = p;
    } else if (key == "outer" || key == "obstacle") {
      Reader::arity(l, 2);
      const std::size_t n = Reader::count(l, 1, key);
      std::vector<Point> ring;
      for (std::size_t i = 0; i < n; ++i) ring.push_back(in.point(key));
      if (key == "outer") {
        if (outer) Reader::fail(l, "duplicate outer ring");
        outer.emplace(l.number, std::move(ring));
      } else {
        obstacles.emplace_back(l.number, std::move(ring));
      }
    } else if (key == "end") {
      Reader::arity(l, 1);
      ended = true;
    } else {
      Reader::fail(l, "unknown field '" + key + "'");
    }
  }
  if (!ended) throw ScenarioError("missing 'end'");
  if (!fatness) throw ScenarioError("missing field: fatness");
  if (!start) throw ScenarioError("missing field: start");
  if (!treasure) throw ScenarioError("missing field: treasure");
  if (!outer) throw ScenarioError("missing field: outer");

  const auto build = [](std::size_t line, std::vector<Point> pts) {
    try {
      return geom::Polygon(std::move(pts));
    } catch (const geom::GeometryError& e) {
      throw ScenarioError("line " + std::to_string(line) + ": " + e.what());
    }
  };
  geom::Polygon outer_ring = build(outer->first, std::move(outer->second));
  std::vector<geom::Polygon> rings;
  for (auto& [line, pts] : obstacles) rings.push_back(build(line, std::move(pts)));
  std::optional<Terrain> terrain;
  try {
    terrain.emplace(std::move(outer_ring), std::move(rings));
  } catch (const geom::GeometryError& e) {
    throw ScenarioError(std::string("terrain invariant violated: ") + e.what());
  }
  return make_scenario(std::move(*terrain), *start, *treasure, *fatness, options);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ScenarioError& e) {
    throw ScenarioError(path.string() + ": " + e.what());
  }
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ScenarioError("cannot write " + path.string());
  out << format_scenario(s);
  if (!out) throw ScenarioError("write failed for " + path.string());
}

std::string format_trajectory(const agent::Trajectory& t) {
  std::ostringstream os;
  os << "thunt-trajectory 1\n";
  os << "start " << point_line(t.start()) << '\n';
  for (const agent::TrajectoryPiece& piece : t.pieces()) {
    os << "piece " << (piece.provenance == agent::Provenance::FreeMove ? "free" : "perimeter")
       << ' ' << piece.points.size() << '\n';
    for (const Point& p : piece.points) os << point_line(p) << '\n';
  }
  os << "end\n";
  return os.str();
}

agent::Trajectory parse_trajectory(std::string_view text) {
  Reader in(tokenize(text));
  if (in.done()) throw ScenarioError("empty trajectory file");
  const Line& head = in.take();
  if (head.words.size() != 2 || head.words[0] != "thunt-trajectory" || head.words[1] != "1") {
    Reader::fail(head, "expected header 'thunt-trajectory 1'");
  }
  const Line& sl = in.take();
  if (sl.words[0] != "start") Reader::fail(sl, "expected start");
  Reader::arity(sl, 3);
  agent::Trajectory traj({Reader::real(sl, 1, "start"), Reader::real(sl, 2, "start")});
  for (;;) {
    const Line& l = in.take();
    if (l.words[0] == "end") break;
    if (l.words[0] != "piece") Reader::fail(l, "expected piece or end");
    Reader::arity(l, 3);
    agent::Provenance prov{};
    if (l.words[1] == "free") {
      prov = agent::Provenance::FreeMove;
    } else if (l.words[1] == "perimeter") {
      prov = agent::Provenance::PerimeterWalk;
    } else {
      Reader::fail(l, "unknown piece kind '" + l.words[1] + "'");
    }
    const std::size_t n = Reader::count(l, 2, "piece");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(in.point("piece"));
    try {
      traj.append(std::move(pts), prov);
    } catch (const agent::NavigationError& e) {
      Reader::fail(l, e.what());
    }
  }
  return traj;
}

}  // namespace thunt::harness
