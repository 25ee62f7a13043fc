// Realizing Gauss codes as planar diagrams.
//
// Genus-zero codes are drawn directly. Everything else goes through an arc
// diagram: crossings sit on the x-axis, every edge is a chain of half
// circles, and each intersection of two half circles becomes a virtual
// crossing.

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "vmeander/diagram.hpp"

namespace vmeander {

namespace {

std::vector<Visit> classical_visits(const GaussCode& code) {
  std::vector<Visit> visits;
  visits.reserve(code.size());
  for (const auto& r : code.records()) {
    Visit v;
    v.vertex = r.crossing;
    v.kind = r.passage == Passage::Over ? VisitKind::Over : VisitKind::Under;
    // the under strand runs right to left exactly at positive crossings
    v.right_to_left = (r.passage == Passage::Under) == (r.sign > 0);
    visits.push_back(v);
  }
  return visits;
}

// Largest face among those leaving a strong meander; the largest face overall
// when there is none.
PlanarDiagram choose_outer_face(const PlanarDiagram& d) {
  std::vector<int> order(d.faces().size());
  for (std::size_t f = 0; f < order.size(); ++f) order[f] = static_cast<int>(f);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return d.faces()[a].darts.size() > d.faces()[b].darts.size();
  });
  for (int f : order) {
    PlanarDiagram c = d.with_outer_face(f);
    if (is_strong_meander(c)) return c;
  }
  return d.with_outer_face(order.front());
}

// Small irrational offsets keep three half circles from meeting in a point.
double jitter(int k) {
  const double t = k * 0.6180339887498949;
  return 0.05 * (t - std::floor(t));
}

struct Port {
  double x = 0;
  int half = 0;  // +1 upper only, -1 lower only, 0 either
};

struct Semi {
  double a = 0, b = 0;  // traversal goes from a to b
  int half = 1;
  int edge = 0;
  double lo() const { return std::min(a, b); }
  double hi() const { return std::max(a, b); }
  double center() const { return (a + b) / 2; }
  double radius() const { return std::abs(b - a) / 2; }
};

bool interleave(const Semi& s, const Semi& t) {
  if (s.half != t.half) return false;
  return (s.lo() < t.lo() && t.lo() < s.hi() && s.hi() < t.hi()) ||
         (t.lo() < s.lo() && s.lo() < t.hi() && t.hi() < s.hi());
}

double meet_x(const Semi& s, const Semi& t) {
  const double m1 = s.center(), r1 = s.radius();
  const double m2 = t.center(), r2 = t.radius();
  return (r1 * r1 - r2 * r2 + m2 * m2 - m1 * m1) / (2 * (m2 - m1));
}

// Unit-free tangent of semicircle s at abscissa x, in traversal direction.
std::pair<double, double> tangent(const Semi& s, double x) {
  const double dx = x - s.center();
  const double y = std::sqrt(std::max(0.0, s.radius() * s.radius() - dx * dx)) * s.half;
  const bool clockwise = (s.half > 0) == (s.a < s.b);
  // position relative to the centre is (dx, y)
  return clockwise ? std::pair{y, -dx} : std::pair{-y, dx};
}

PlanarDiagram arc_realization(const GaussCode& code) {
  const std::size_t L = code.size();
  const auto chords = code.chords();
  std::unordered_map<int, int> column;  // crossing id -> order of first appearance
  for (std::size_t k = 0; k < chords.size(); ++k) column[chords[k].id] = static_cast<int>(k);
  const auto base_visits = classical_visits(code);

  // ports of each record
  std::vector<Port> in_port(L), out_port(L);
  for (std::size_t i = 0; i < L; ++i) {
    const auto& r = code.records()[i];
    const Chord& c = chords[column[r.crossing]];
    const int col = column[r.crossing];
    const double x = 4.0 * col + 2.0 + jitter(3 * col);
    if (i == c.first()) {
      in_port[i] = {x - 1 + jitter(3 * col + 1), 0};
      out_port[i] = {x + 1 - jitter(3 * col + 2), 0};
    } else {
      const bool up = base_visits[i].right_to_left;
      in_port[i] = {x, up ? -1 : 1};
      out_port[i] = {x, up ? 1 : -1};
    }
  }

  const int gaps = static_cast<int>(chords.size()) + 1;
  std::vector<int> gap_use(gaps, 0);
  std::vector<Semi> placed;
  std::vector<std::vector<int>> route(L);  // indices into placed, in order

  const auto cost = [&](const std::vector<Semi>& cand) {
    int c = 0;
    for (const Semi& s : cand) {
      for (const Semi& t : placed) c += interleave(s, t);
    }
    return c;
  };

  for (std::size_t e = 0; e < L; ++e) {
    const Port p = out_port[e];
    const Port q = in_port[(e + 1) % L];
    std::vector<std::vector<Semi>> options;
    if (p.half == 0 && q.half == 0) {
      options.push_back({{p.x, q.x, 1, static_cast<int>(e)}});
      options.push_back({{p.x, q.x, -1, static_cast<int>(e)}});
    } else if (p.half == 0 || q.half == 0 || p.half == q.half) {
      const int h = p.half != 0 ? p.half : q.half;
      options.push_back({{p.x, q.x, h, static_cast<int>(e)}});
    }
    if (p.half != 0 && q.half != 0 && p.half != q.half) {
      for (int g = 0; g < gaps; ++g) {
        const double gx = 4.0 * g - 0.5 + 0.01 * gap_use[g] + 0.1 * jitter(1000 + g + 7 * gap_use[g]);
        options.push_back({{p.x, gx, p.half, static_cast<int>(e)},
                           {gx, q.x, q.half, static_cast<int>(e)}});
      }
    }
    std::size_t best = 0;
    int best_cost = cost(options[0]);
    for (std::size_t o = 1; o < options.size(); ++o) {
      const int c = cost(options[o]);
      if (c < best_cost) {
        best = o;
        best_cost = c;
      }
    }
    if (options[best].size() == 2) {
      const double gx = options[best][0].b;
      ++gap_use[static_cast<int>(std::lround((gx + 0.5) / 4.0))];
    }
    for (const Semi& s : options[best]) {
      route[e].push_back(static_cast<int>(placed.size()));
      placed.push_back(s);
    }
  }

  // virtual crossings between interleaved half circles
  struct Event {
    double x;
    int vertex;
    bool rl;
  };
  std::vector<std::vector<Event>> events(placed.size());
  int next_id = 0;
  for (const auto& c : chords) next_id = std::max(next_id, c.id);
  ++next_id;
  for (std::size_t s = 0; s < placed.size(); ++s) {
    for (std::size_t t = s + 1; t < placed.size(); ++t) {
      if (!interleave(placed[s], placed[t])) continue;
      const double x = meet_x(placed[s], placed[t]);
      const auto ts = tangent(placed[s], x);
      const auto tt = tangent(placed[t], x);
      const double cr = tt.first * ts.second - tt.second * ts.first;  // cross(t_t, t_s)
      const int v = next_id++;
      events[s].push_back({x, v, cr > 0});
      events[t].push_back({x, v, !(cr > 0)});
    }
  }

  std::vector<Visit> visits;
  // Outer face: above the top of the widest upper half circle (or below the
  // widest lower one when there is no upper half circle).
  int widest = -1;
  for (std::size_t s = 0; s < placed.size(); ++s) {
    const auto better = [&](const Semi& a, const Semi& b) {
      if (a.half != b.half) return a.half > b.half;
      return a.radius() > b.radius();
    };
    if (widest < 0 || better(placed[s], placed[widest])) widest = static_cast<int>(s);
  }
  OuterAnchor anchor;
  bool anchored = false;
  for (std::size_t e = 0; e < L; ++e) {
    visits.push_back(base_visits[e]);
    for (int s : route[e]) {
      auto& ev = events[s];
      const Semi& semi = placed[s];
      const bool forward = semi.a < semi.b;
      std::sort(ev.begin(), ev.end(),
                [&](const Event& u, const Event& w) { return forward ? u.x < w.x : u.x > w.x; });
      const auto anchor_here = [&] {
        anchor.edge = visits.size() - 1;
        anchor.left = forward == (semi.half > 0);
        anchored = true;
      };
      for (const Event& x : ev) {
        if (s == widest && !anchored && (forward ? x.x > semi.center() : x.x < semi.center())) {
          anchor_here();
        }
        visits.push_back({x.vertex, VisitKind::Virtual, x.rl});
      }
      if (s == widest && !anchored) anchor_here();
    }
  }
  return PlanarDiagram::from_visits(std::move(visits), anchor);
}

}  // namespace

PlanarDiagram from_gauss(const GaussCode& code) {
  if (code.empty()) return PlanarDiagram();
  if (carter_genus(code) == 0) {
    return choose_outer_face(PlanarDiagram::from_visits(classical_visits(code)));
  }
  return arc_realization(code);
}

}  // namespace vmeander
