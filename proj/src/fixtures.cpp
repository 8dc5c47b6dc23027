#include "dset/fixtures.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <functional>
#include <numbers>

#include "dset/errors.hpp"

namespace dset {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCombKeep = 3.0 / 8.0;

struct KindName {
  FixtureKind kind;
  std::string_view name;
};

constexpr KindName kNames[] = {
    {FixtureKind::circle, "circle"},         {FixtureKind::circle_with_dots, "circle_with_dots"},
    {FixtureKind::posc, "posc"},             {FixtureKind::comb, "comb"},
    {FixtureKind::comb_arc, "comb_arc"},     {FixtureKind::figure_eight, "figure_eight"},
    {FixtureKind::segment, "segment"},
};

bool integer_family(FixtureKind k) {
  return k == FixtureKind::posc || k == FixtureKind::comb || k == FixtureKind::comb_arc;
}

// Samples a uniform circle arc from angle a0 to a1 with at most `step` per segment.
std::vector<Point> arc(Point c, double r, double a0, double a1, double step) {
  const double span = std::abs(a1 - a0);
  const auto segs = std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(span * r / step)));
  std::vector<Point> out;
  out.reserve(segs + 1);
  for (std::size_t i = 0; i <= segs; ++i) {
    const double a = a0 + (a1 - a0) * static_cast<double>(i) / static_cast<double>(segs);
    out.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return out;
}

Polyline circle_line(Point c, double r, double start, double step) {
  Polyline line{arc(c, r, start, start + 2.0 * kPi, step), true};
  line.vertices.back() = line.vertices.front();
  return line;
}

// Adaptive sampling of a parametric curve on [t0, t1]: split while the chord is
// longer than `step` or the curve strays more than `tol` from it.
void refine(const std::function<Point(double)>& f, double t0, double t1, Point p0, Point p1, double step,
            double tol, int depth, std::vector<Point>& out) {
  const double tm = 0.5 * (t0 + t1);
  const Point pm = f(tm);
  bool split = distance(p0, p1) > step;
  if (!split) {
    for (double q : {0.25, 0.5, 0.75}) {
      const Point pq = q == 0.5 ? pm : f(t0 + q * (t1 - t0));
      if (point_segment_distance(pq, p0, p1) > tol) {
        split = true;
        break;
      }
    }
  }
  if (split && depth < 48) {
    refine(f, t0, tm, p0, pm, step, tol, depth + 1, out);
    refine(f, tm, t1, pm, p1, step, tol, depth + 1, out);
  } else {
    out.push_back(p1);
  }
}

std::vector<Point> sample_curve(const std::function<Point(double)>& f, const std::vector<double>& breaks,
                                double step) {
  std::vector<Point> out{f(breaks.front())};
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    refine(f, breaks[i], breaks[i + 1], f(breaks[i]), f(breaks[i + 1]), step, step / 10.0, 0, out);
  return out;
}

CurveComplex make_posc(int n, double step) {
  if (n < 2) throw InvalidArgument("posc(n) needs n >= 2");
  if (step >= 2.0 * posc_strand_gap(n))
    throw UnresolvableScale("sampling step " + std::to_string(step) + " cannot separate posc(" + std::to_string(n) +
                            ") strands near x=1/" + std::to_string(n));
  // Break points at the zeros 1/k of sin(pi/x), each oscillation pre-split 16 ways.
  std::vector<double> breaks;
  for (int k = n; k >= 2; --k) {
    const double a = 1.0 / k, b = 1.0 / (k - 1);
    for (int j = 0; j < 16; ++j) breaks.push_back(a + (b - a) * j / 16.0);
  }
  breaks.push_back(1.0);
  auto lower = [](double x) { return Point{x, std::sin(kPi / x) - std::sin(kPi * x)}; };
  auto upper = [](double x) { return Point{x, std::sin(kPi / x) + std::sin(kPi * x)}; };
  std::vector<Point> k2 = sample_curve(lower, breaks, step);
  std::vector<Point> k3 = sample_curve(upper, breaks, step);
  k2.back() = Point{1.0, 0.0};
  k3.back() = Point{1.0, 0.0};

  Polyline line;
  line.vertices = k2;
  for (auto it = k3.rbegin() + 1; it != k3.rend(); ++it) line.vertices.push_back(*it);
  line.vertices.push_back(k2.front());  // closing segment {1/n} x [K2, K3]
  line.simple = true;
  std::vector<Polyline> pieces{std::move(line)};
  const double tol = default_glue_tol(pieces);
  return build_complex(std::move(pieces), tol);
}

CurveComplex make_comb(int n, bool with_arc, double step) {
  if (n < 1) throw InvalidArgument("comb depth must be >= 1");
  if (n > 14) throw InvalidArgument("comb depth above 14 is not supported");
  if (step >= comb_min_spacing(n) / 2.0)
    throw UnresolvableScale("sampling step " + std::to_string(step) + " cannot resolve comb(" + std::to_string(n) +
                            ") tooth spacing " + std::to_string(comb_min_spacing(n)));
  const auto teeth = comb_teeth(n);
  std::vector<Polyline> pieces;
  for (double c : teeth) pieces.push_back(Polyline{{{c, 0.0}, {c, 1.0}}, true});
  for (std::size_t i = 1; i < teeth.size(); ++i) {
    const double y = comb_gap_generation(n, i) % 2 == 1 ? 0.0 : 1.0;
    pieces.push_back(Polyline{{{teeth[i - 1], y}, {teeth[i], y}}, true});
  }
  if (with_arc) {
    Polyline a{arc({0.5, 1.0}, 0.5, kPi, 0.0, step), true};
    a.vertices.front() = {0.0, 1.0};
    a.vertices.back() = {1.0, 1.0};
    pieces.push_back(std::move(a));
  }
  const double tol = default_glue_tol(pieces);
  return build_complex(std::move(pieces), tol);
}

}  // namespace

std::string FixtureSpec::id() const {
  std::string name;
  for (const auto& kn : kNames)
    if (kn.kind == kind) name = kn.name;
  if (integer_family(kind)) return name + ":" + std::to_string(n);
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, size);
  return name + ":" + std::string(buf, end);
}

FixtureSpec parse_fixture(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view name = text.substr(0, colon);
  FixtureSpec spec;
  bool found = false;
  for (const auto& kn : kNames)
    if (kn.name == name) {
      spec.kind = kn.kind;
      found = true;
    }
  if (!found) throw ParseError("unknown fixture '" + std::string(name) + "'");
  const bool has_param = colon != std::string_view::npos;
  const std::string_view param = has_param ? text.substr(colon + 1) : std::string_view{};

  if (integer_family(spec.kind)) {
    if (!has_param) throw ParseError("fixture '" + std::string(name) + "' needs an integer depth, e.g. " +
                                     std::string(name) + ":4");
    int v = 0;
    auto [ptr, ec] = std::from_chars(param.data(), param.data() + param.size(), v);
    if (ec != std::errc{} || ptr != param.data() + param.size()) throw ParseError("bad depth '" + std::string(param) + "'");
    const int min_n = spec.kind == FixtureKind::posc ? 2 : 1;
    if (v < min_n) throw ParseError("depth must be >= " + std::to_string(min_n) + " for " + std::string(name));
    spec.n = v;
  } else {
    spec.size = spec.kind == FixtureKind::segment ? 2.0 : 1.0;
    if (has_param) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(param.data(), param.data() + param.size(), v);
      if (ec != std::errc{} || ptr != param.data() + param.size()) throw ParseError("bad size '" + std::string(param) + "'");
      if (!(v > 0.0)) throw ParseError("size must be positive");
      spec.size = v;
    }
  }
  return spec;
}

CurveComplex make_fixture(const FixtureSpec& spec, double step) {
  if (!(step > 0.0)) throw InvalidArgument("sampling step must be positive");
  switch (spec.kind) {
    case FixtureKind::circle:
    case FixtureKind::circle_with_dots: {
      const double r = spec.size;
      if (!(r > 0.0)) throw InvalidArgument("radius must be positive");
      if (step >= r / 2.0) throw UnresolvableScale("sampling step too coarse for radius");
      std::vector<Polyline> pieces{circle_line({0.0, 0.0}, r, 0.0, step)};
      if (spec.kind == FixtureKind::circle_with_dots) {
        // Each isolated point becomes a segment of length `step` so it survives rasterization.
        for (Point c : {Point{0.0, 0.0}, Point{1.5 * r, 0.0}})
          pieces.push_back(Polyline{{{c.x - step / 2.0, c.y}, {c.x + step / 2.0, c.y}}, true});
      }
      const double tol = default_glue_tol(pieces);
      return build_complex(std::move(pieces), tol);
    }
    case FixtureKind::figure_eight: {
      const double r = spec.size;
      if (step >= r / 2.0) throw UnresolvableScale("sampling step too coarse for radius");
      Polyline left = circle_line({-r, 0.0}, r, 0.0, step);
      Polyline right = circle_line({r, 0.0}, r, kPi, step);
      left.vertices.front() = left.vertices.back() = Point{0.0, 0.0};
      right.vertices.front() = right.vertices.back() = Point{0.0, 0.0};
      std::vector<Polyline> pieces{std::move(left), std::move(right)};
      const double tol = default_glue_tol(pieces);
      return build_complex(std::move(pieces), tol);
    }
    case FixtureKind::segment: {
      const double l = spec.size;
      std::vector<Polyline> pieces{Polyline{{{-l / 2.0, 0.0}, {l / 2.0, 0.0}}, true}};
      const double tol = default_glue_tol(pieces);
      return build_complex(std::move(pieces), tol);
    }
    case FixtureKind::posc:
      return make_posc(spec.n, step);
    case FixtureKind::comb:
      return make_comb(spec.n, false, step);
    case FixtureKind::comb_arc:
      return make_comb(spec.n, true, step);
  }
  throw InvalidArgument("unhandled fixture kind");
}

std::vector<double> comb_teeth(int n) {
  struct Interval {
    double a, b;
  };
  std::vector<Interval> cur{{0.0, 1.0}};
  for (int g = 1; g < n; ++g) {
    std::vector<Interval> next;
    next.reserve(cur.size() * 2);
    for (const auto& iv : cur) {
      const double keep = (iv.b - iv.a) * kCombKeep;
      next.push_back({iv.a, iv.a + keep});
      next.push_back({iv.b - keep, iv.b});
    }
    cur = std::move(next);
  }
  std::vector<double> teeth;
  teeth.reserve(cur.size() * 2);
  for (const auto& iv : cur) {
    teeth.push_back(iv.a);
    teeth.push_back(iv.b);
  }
  return teeth;
}

int comb_gap_generation(int n, std::size_t gap) {
  return n - std::countr_zero(static_cast<unsigned long long>(gap));
}

double comb_min_spacing(int n) {
  const auto t = comb_teeth(n);
  double m = 1.0;
  for (std::size_t i = 1; i < t.size(); ++i) m = std::min(m, t[i] - t[i - 1]);
  return m;
}

double posc_strand_gap(int n) {
  const double slope = kPi * n * n;
  return 2.0 * std::sin(kPi / n) / std::sqrt(1.0 + slope * slope);
}

}  // namespace dset
