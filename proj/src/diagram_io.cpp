#include <algorithm>
#include <array>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "vmeander/diagram.hpp"

namespace vmeander {

std::string serialize_diagram(const PlanarDiagram& input) {
  const PlanarDiagram d = input.canonical();
  std::ostringstream os;
  const std::size_t n = d.visit_count();
  os << "diagram vertices=" << d.vertex_count()
     << " basepoint=" << (n == 0 ? -1 : PlanarDiagram::out_dart(n - 1))
     << " outer=" << d.outer_face() << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    if (d.partner(i) < i) continue;
    const auto rot = d.rotation_at(i);
    os << "v " << d.visits()[i].vertex;
    for (Dart x : rot) os << ' ' << x;
    const CrossingLabel l = d.label_at(i);
    if (l.classical) {
      os << (l.sign > 0 ? " C+ " : " C- ") << l.over_pair;
    } else {
      os << " V";
    }
    os << '\n';
  }
  os << "pairs";
  for (std::size_t i = 0; i < n; ++i) {
    os << ' ' << PlanarDiagram::out_dart(i) << ':' << PlanarDiagram::in_dart(d.next(i));
  }
  os << '\n';
  return os.str();
}

bool looks_like_diagram(std::string_view text) {
  const auto p = text.find_first_not_of(" \t\r\n");
  return p != std::string_view::npos && text.substr(p, 7) == "diagram";
}

namespace {

long parse_field(const std::string& tok, const std::string& key) {
  if (tok.rfind(key + "=", 0) != 0) throw DiagramError("expected '" + key + "=' in header");
  try {
    std::size_t used = 0;
    const std::string v = tok.substr(key.size() + 1);
    const long x = std::stol(v, &used);
    if (used != v.size()) throw DiagramError("bad number in '" + tok + "'");
    return x;
  } catch (const std::logic_error&) {
    throw DiagramError("bad number in '" + tok + "'");
  }
}

int parse_int(const std::string& tok) {
  try {
    std::size_t used = 0;
    const int x = std::stoi(tok, &used);
    if (used != tok.size()) throw DiagramError("bad integer '" + tok + "'");
    return x;
  } catch (const std::logic_error&) {
    throw DiagramError("bad integer '" + tok + "'");
  }
}

struct VertexRow {
  int id = 0;
  std::array<Dart, 4> rot{};
  bool classical = false;
  int sign = 0;
  int over_pair = 0;
};

}  // namespace

PlanarDiagram parse_diagram(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    lines.push_back(line);
  }
  if (lines.empty()) throw DiagramError("empty diagram text");

  std::istringstream head(lines[0]);
  std::string word, tv, tb, to;
  head >> word >> tv >> tb >> to;
  if (word != "diagram") throw DiagramError("missing 'diagram' header");
  const long nv = parse_field(tv, "vertices");
  const long base = parse_field(tb, "basepoint");
  const long outer = parse_field(to, "outer");
  if (nv < 0) throw DiagramError("negative vertex count");
  if (lines.size() != static_cast<std::size_t>(nv) + 2) {
    throw DiagramError("expected " + std::to_string(nv) + " vertex lines and a pairs line");
  }
  const int darts = static_cast<int>(4 * nv);

  std::vector<VertexRow> rows;
  std::vector<int> owner(darts, -1), slot(darts, -1);
  for (long r = 0; r < nv; ++r) {
    std::istringstream ls(lines[1 + r]);
    std::string tag, id, lab;
    VertexRow row;
    ls >> tag >> id;
    if (tag != "v") throw DiagramError("expected vertex line, got '" + lines[1 + r] + "'");
    row.id = parse_int(id);
    for (int k = 0; k < 4; ++k) {
      std::string t;
      if (!(ls >> t)) throw DiagramError("vertex line needs 4 darts");
      row.rot[k] = parse_int(t);
      if (row.rot[k] < 0 || row.rot[k] >= darts) throw DiagramError("dart out of range");
      if (owner[row.rot[k]] >= 0) throw DiagramError("dart listed twice");
      owner[row.rot[k]] = static_cast<int>(r);
      slot[row.rot[k]] = k;
    }
    if (!(ls >> lab)) throw DiagramError("missing crossing label");
    if (lab == "V") {
      row.classical = false;
    } else if (lab == "C+" || lab == "C-" || lab == "C−") {
      row.classical = true;
      row.sign = lab == "C+" ? 1 : -1;
      std::string p;
      if (!(ls >> p)) throw DiagramError("classical label needs an over-pair index");
      row.over_pair = parse_int(p);
      if (row.over_pair != 0 && row.over_pair != 1) throw DiagramError("over-pair must be 0 or 1");
    } else {
      throw DiagramError("bad crossing label '" + lab + "'");
    }
    std::string extra;
    if (ls >> extra) throw DiagramError("trailing text on vertex line");
    rows.push_back(row);
  }

  std::vector<Dart> pair(darts, -1);
  {
    std::istringstream ls(lines.back());
    std::string tag, t;
    ls >> tag;
    if (tag != "pairs") throw DiagramError("missing pairs line");
    while (ls >> t) {
      const auto c = t.find(':');
      if (c == std::string::npos) throw DiagramError("bad pair '" + t + "'");
      const int a = parse_int(t.substr(0, c));
      const int b = parse_int(t.substr(c + 1));
      if (a < 0 || b < 0 || a >= darts || b >= darts || a == b) throw DiagramError("bad pair '" + t + "'");
      if (pair[a] >= 0 || pair[b] >= 0) throw DiagramError("dart paired twice");
      pair[a] = b;
      pair[b] = a;
    }
  }
  if (nv == 0) {
    if (outer != 0 && outer != 1) throw DiagramError("outer face out of range");
    return PlanarDiagram();
  }
  for (Dart x = 0; x < darts; ++x) {
    if (owner[x] < 0) throw DiagramError("dart " + std::to_string(x) + " missing from rotations");
    if (pair[x] < 0) throw DiagramError("dart " + std::to_string(x) + " is unpaired");
  }
  if (base < 0 || base >= darts) throw DiagramError("basepoint out of range");

  const auto at = [&](int v, int k) { return rows[v].rot[((k % 4) + 4) % 4]; };
  std::vector<Visit> visits;
  std::vector<int> enter_slot;
  std::vector<Dart> my_dart(darts, -1);
  Dart leave = static_cast<Dart>(base);
  do {
    const Dart enter = pair[leave];
    const int v = owner[enter];
    const int s = slot[enter];
    const Dart out = at(v, s + 2);
    if (my_dart[enter] >= 0) throw DiagramError("traversal revisits a dart");
    const std::size_t i = visits.size();
    my_dart[enter] = PlanarDiagram::in_dart(i);
    my_dart[out] = PlanarDiagram::out_dart(i);
    Visit vis;
    vis.vertex = rows[v].id;
    if (rows[v].classical) {
      vis.kind = (s % 2 == rows[v].over_pair) ? VisitKind::Over : VisitKind::Under;
    }
    visits.push_back(vis);
    enter_slot.push_back(s);
    leave = out;
  } while (leave != base && visits.size() <= static_cast<std::size_t>(darts));
  if (visits.size() * 2 != static_cast<std::size_t>(darts)) {
    throw DiagramError("traversal is not a single component through every vertex");
  }
  // Direction bits: this strand goes right to left iff the other strand
  // enters one slot clockwise from it.
  std::map<int, std::vector<std::size_t>> by_vertex;
  for (std::size_t i = 0; i < visits.size(); ++i) by_vertex[visits[i].vertex].push_back(i);
  if (by_vertex.size() != static_cast<std::size_t>(nv)) throw DiagramError("duplicate vertex ids");
  for (const auto& [v, idx] : by_vertex) {
    const std::size_t a = idx[0], b = idx[1];
    visits[a].right_to_left = enter_slot[b] == (enter_slot[a] + 3) % 4;
    visits[b].right_to_left = !visits[a].right_to_left;
  }

  // Faces in the file's numbering.
  std::vector<int> face(darts, -1);
  int nf = 0;
  Dart outer_dart = -1;
  for (Dart x = 0; x < darts; ++x) {
    if (face[x] >= 0) continue;
    for (Dart e = x; face[e] < 0;) {
      face[e] = nf;
      const Dart p = pair[e];
      e = at(owner[p], slot[p] - 1);
    }
    if (nf == outer) outer_dart = x;
    ++nf;
  }
  if (outer_dart < 0) throw DiagramError("outer face out of range");

  const Dart m = my_dart[outer_dart];
  const std::size_t L = visits.size();
  OuterAnchor anchor = PlanarDiagram::is_out(m)
                           ? OuterAnchor{PlanarDiagram::visit_of(m), true}
                           : OuterAnchor{(PlanarDiagram::visit_of(m) + L - 1) % L, false};
  PlanarDiagram d = PlanarDiagram::from_visits(std::move(visits), anchor);
  for (const auto& row : rows) {
    if (!row.classical) continue;
    const auto [a, b] = d.visits_of(row.id);
    if (d.sign_at(a) != row.sign) {
      throw DiagramError("sign label of vertex " + std::to_string(row.id) +
                         " disagrees with its rotation");
    }
    (void)b;
  }
  return d;
}

}  // namespace vmeander
