#include "ghor/quiver.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "ghor/errors.hpp"

namespace ghor {

DimerQuiver::DimerQuiver(Polygon polygon, std::vector<std::string> vertices, std::vector<Arrow> arrows,
                         std::vector<std::vector<ArrowId>> faces, std::string name)
    : polygon_(polygon),
      name_(std::move(name)),
      vertices_(std::move(vertices)),
      arrows_(std::move(arrows)),
      faces_(std::move(faces)) {
  for (VertexId v = 0; v < vertex_count(); ++v) {
    if (!vertex_ids_.emplace(vertices_[v], v).second) throw ParseError("duplicate vertex '" + vertices_[v] + "'");
  }
  out_.resize(vertices_.size());
  in_.resize(vertices_.size());
  for (ArrowId a = 0; a < arrow_count(); ++a) {
    const Arrow& ar = arrows_[a];
    if (!arrow_ids_.emplace(ar.name, a).second) throw ParseError("duplicate arrow '" + ar.name + "'");
    if (ar.tail < 0 || ar.tail >= vertex_count() || ar.head < 0 || ar.head >= vertex_count()) {
      throw ParseError("arrow '" + ar.name + "' has an endpoint outside the vertex list");
    }
    try {
      polygon_.check(ar.crossings);
    } catch (const MalformedWord& e) {
      throw ParseError("arrow '" + ar.name + "': " + e.what());
    }
    out_[ar.tail].push_back(a);
    in_[ar.head].push_back(a);
  }
  incidences_.resize(arrows_.size());
  for (int f = 0; f < face_count(); ++f) {
    if (faces_[f].empty()) throw ParseError("face " + std::to_string(f) + " is empty");
    for (int i = 0; i < static_cast<int>(faces_[f].size()); ++i) {
      ArrowId a = faces_[f][i];
      if (a < 0 || a >= arrow_count()) throw ParseError("face " + std::to_string(f) + " names an unknown arrow");
      incidences_[a].emplace_back(f, i);
    }
  }
}

VertexId DimerQuiver::vertex_index(const std::string& name) const {
  auto it = vertex_ids_.find(name);
  if (it == vertex_ids_.end()) throw ParseError("unknown vertex '" + name + "'");
  return it->second;
}

ArrowId DimerQuiver::arrow_index(const std::string& name) const {
  auto it = arrow_ids_.find(name);
  if (it == arrow_ids_.end()) throw ParseError("unknown arrow '" + name + "'");
  return it->second;
}

std::vector<int> DimerQuiver::faces_of(ArrowId a) const {
  std::vector<int> out;
  for (auto [f, i] : incidences(a)) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

nlohmann::json DimerQuiver::to_json() const {
  nlohmann::json arrows = nlohmann::json::array();
  for (const Arrow& a : arrows_) {
    arrows.push_back({{"id", a.name}, {"tail", vertices_[a.tail]}, {"head", vertices_[a.head]}, {"crossings", a.crossings}});
  }
  nlohmann::json faces = nlohmann::json::array();
  for (const auto& f : faces_) {
    nlohmann::json names = nlohmann::json::array();
    for (ArrowId a : f) names.push_back(arrows_[a].name);
    faces.push_back(names);
  }
  nlohmann::json j{{"polygon_half_sides", polygon_.half_sides()}, {"vertices", vertices_}, {"arrows", arrows}, {"faces", faces}};
  if (!name_.empty()) j["name"] = name_;
  return j;
}

namespace {

template <typename T>
T field(const nlohmann::json& j, const std::string& key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(where + "." + key + ": wrong type");
  }
}

}  // namespace

DimerQuiver DimerQuiver::from_json(const nlohmann::json& j) {
  int n = field<int>(j, "polygon_half_sides", "quiver");
  if (n < 2) throw ParseError("quiver.polygon_half_sides: must be at least 2");
  auto vertices = field<std::vector<std::string>>(j, "vertices", "quiver");
  std::unordered_map<std::string, VertexId> vid;
  for (std::size_t i = 0; i < vertices.size(); ++i) vid[vertices[i]] = static_cast<VertexId>(i);
  if (!j.contains("arrows") || !j["arrows"].is_array()) throw ParseError("quiver: missing array 'arrows'");
  std::vector<Arrow> arrows;
  std::unordered_map<std::string, ArrowId> aid;
  for (std::size_t i = 0; i < j["arrows"].size(); ++i) {
    const auto& ja = j["arrows"][i];
    std::string where = "arrows[" + std::to_string(i) + "]";
    Arrow a;
    a.name = field<std::string>(ja, "id", where);
    std::string tail = field<std::string>(ja, "tail", where), head = field<std::string>(ja, "head", where);
    if (!vid.count(tail)) throw ParseError(where + ".tail: unknown vertex '" + tail + "'");
    if (!vid.count(head)) throw ParseError(where + ".head: unknown vertex '" + head + "'");
    a.tail = vid[tail];
    a.head = vid[head];
    a.crossings = ja.contains("crossings") ? field<CrossingWord>(ja, "crossings", where) : CrossingWord{};
    aid[a.name] = static_cast<ArrowId>(i);
    arrows.push_back(std::move(a));
  }
  if (!j.contains("faces") || !j["faces"].is_array()) throw ParseError("quiver: missing array 'faces'");
  std::vector<std::vector<ArrowId>> faces;
  for (std::size_t f = 0; f < j["faces"].size(); ++f) {
    std::vector<ArrowId> face;
    std::string where = "faces[" + std::to_string(f) + "]";
    if (!j["faces"][f].is_array()) throw ParseError(where + ": expected an array of arrow ids");
    for (const auto& name : j["faces"][f]) {
      if (!name.is_string()) throw ParseError(where + ": expected arrow ids");
      auto it = aid.find(name.get<std::string>());
      if (it == aid.end()) throw ParseError(where + ": unknown arrow '" + name.get<std::string>() + "'");
      face.push_back(it->second);
    }
    faces.push_back(std::move(face));
  }
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  return DimerQuiver(Polygon(n), std::move(vertices), std::move(arrows), std::move(faces), std::move(name));
}

DimerQuiver DimerQuiver::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return from_json(j);
}

void DimerQuiver::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json().dump(2) << '\n';
}

std::string DimerQuiver::to_dot() const {
  std::ostringstream os;
  os << "digraph \"" << (name_.empty() ? "quiver" : name_) << "\" {\n";
  for (const auto& v : vertices_) os << "  \"" << v << "\";\n";
  for (const Arrow& a : arrows_) {
    os << "  \"" << vertices_[a.tail] << "\" -> \"" << vertices_[a.head] << "\" [label=\"" << a.name << ' '
       << ghor::to_string(a.crossings) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

bool operator==(const DimerQuiver& a, const DimerQuiver& b) {
  if (!(a.polygon_ == b.polygon_) || a.vertices_ != b.vertices_ || a.faces_ != b.faces_) return false;
  if (a.arrows_.size() != b.arrows_.size()) return false;
  for (std::size_t i = 0; i < a.arrows_.size(); ++i) {
    const Arrow &x = a.arrows_[i], &y = b.arrows_[i];
    if (x.name != y.name || x.tail != y.tail || x.head != y.head || x.crossings != y.crossings) return false;
  }
  return true;
}

Path make_path(const DimerQuiver& q, std::vector<ArrowId> arrows) {
  if (arrows.empty()) throw CompositionError("a path needs a start vertex; use trivial_path");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (arrows[i] < 0 || arrows[i] >= q.arrow_count()) throw CompositionError("unknown arrow index");
    if (i > 0 && q.arrow(arrows[i - 1]).head != q.arrow(arrows[i]).tail) {
      throw CompositionError("arrows '" + q.arrow(arrows[i - 1]).name + "' and '" + q.arrow(arrows[i]).name +
                             "' do not compose at position " + std::to_string(i));
    }
  }
  VertexId start = q.arrow(arrows.front()).tail;
  return Path{start, std::move(arrows)};
}

Path make_path(const DimerQuiver& q, const std::vector<std::string>& names) {
  std::vector<ArrowId> ids;
  for (const auto& n : names) {
    try {
      ids.push_back(q.arrow_index(n));
    } catch (const ParseError& e) {
      throw CompositionError(e.what());
    }
  }
  return make_path(q, std::move(ids));
}

Path trivial_path(VertexId v) { return Path{v, {}}; }

VertexId path_head(const DimerQuiver& q, const Path& p) {
  return p.arrows.empty() ? p.start : q.arrow(p.arrows.back()).head;
}

bool is_closed(const DimerQuiver& q, const Path& p) { return path_head(q, p) == p.start; }

Path compose(const DimerQuiver& q, const Path& a, const Path& b) {
  if (path_head(q, a) != b.start) {
    throw CompositionError("path ending at '" + q.vertex_name(path_head(q, a)) + "' cannot be followed by a path from '" +
                           q.vertex_name(b.start) + "'");
  }
  Path out = a;
  out.arrows.insert(out.arrows.end(), b.arrows.begin(), b.arrows.end());
  return out;
}

Path rotate_cycle(const DimerQuiver& q, const Path& c, std::size_t k) {
  if (c.arrows.empty()) return c;
  k %= c.arrows.size();
  std::vector<ArrowId> arrows(c.arrows.begin() + k, c.arrows.end());
  arrows.insert(arrows.end(), c.arrows.begin(), c.arrows.begin() + k);
  return Path{q.arrow(arrows.front()).tail, std::move(arrows)};
}

CrossingWord crossing_word(const DimerQuiver& q, const Path& p) {
  CrossingWord w;
  for (ArrowId a : p.arrows) {
    const auto& c = q.arrow(a).crossings;
    w.insert(w.end(), c.begin(), c.end());
  }
  return w;
}

std::string to_string(const DimerQuiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertex_name(p.start);
  std::string out;
  for (std::size_t i = 0; i < p.arrows.size(); ++i) {
    if (i) out += ' ';
    out += q.arrow(p.arrows[i]).name;
  }
  return out;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* ValidationReport::find(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const Check& c : checks) arr.push_back({{"check", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"ok", ok()}, {"checks", arr}};
}

std::vector<int> face_colouring(const DimerQuiver& q) {
  std::vector<std::vector<int>> adj(q.face_count());
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    const auto& inc = q.incidences(a);
    if (inc.size() != 2 || inc[0].first == inc[1].first) return {};
    adj[inc[0].first].push_back(inc[1].first);
    adj[inc[1].first].push_back(inc[0].first);
  }
  std::vector<int> colour(q.face_count(), -1);
  for (int s = 0; s < q.face_count(); ++s) {
    if (colour[s] >= 0) continue;
    colour[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int f = queue.front();
      queue.pop_front();
      for (int g : adj[f]) {
        if (colour[g] < 0) {
          colour[g] = 1 - colour[f];
          queue.push_back(g);
        } else if (colour[g] == colour[f]) {
          return {};
        }
      }
    }
  }
  return colour;
}

namespace {

bool connected(const DimerQuiver& q) {
  if (q.vertex_count() == 0) return false;
  std::vector<bool> seen(q.vertex_count(), false);
  std::deque<VertexId> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    for (const auto* list : {&q.out_arrows(v), &q.in_arrows(v)}) {
      for (ArrowId a : *list) {
        VertexId w = q.arrow(a).tail == v ? q.arrow(a).head : q.arrow(a).tail;
        if (!seen[w]) {
          seen[w] = true;
          queue.push_back(w);
        }
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

ValidationReport validate_impl(const DimerQuiver& q, Tessellation* tess) {
  ValidationReport r;
  const int n = q.polygon().half_sides();

  Check cyc{"faces are directed cycles", true, {}};
  for (int f = 0; f < q.face_count() && cyc.passed; ++f) {
    const auto& face = q.face(f);
    for (std::size_t i = 0; i < face.size(); ++i) {
      ArrowId a = face[i], b = face[(i + 1) % face.size()];
      if (q.arrow(a).head != q.arrow(b).tail) {
        cyc.passed = false;
        cyc.detail = "face " + std::to_string(f) + ": '" + q.arrow(a).name + "' does not end where '" + q.arrow(b).name + "' starts";
        break;
      }
    }
  }
  r.checks.push_back(cyc);

  Check twice{"every arrow lies in exactly two face incidences", true, {}};
  for (ArrowId a = 0; a < q.arrow_count(); ++a) {
    if (q.incidences(a).size() != 2) {
      twice.passed = false;
      twice.detail = "arrow '" + q.arrow(a).name + "' has " + std::to_string(q.incidences(a).size()) + " incidences";
      break;
    }
  }
  r.checks.push_back(twice);

  Check euler{"euler characteristic equals 2 - N", true, {}};
  int chi = q.vertex_count() - q.arrow_count() + q.face_count();
  euler.passed = chi == 2 - n;
  euler.detail = "V - E + F = " + std::to_string(chi) + ", expected " + std::to_string(2 - n);
  r.checks.push_back(euler);

  Check abel{"face crossing words abelianize to zero", true, {}};
  for (int f = 0; f < q.face_count(); ++f) {
    Path p{q.arrow(q.face(f).front()).tail, q.face(f)};
    ClassVector c = abelianize(crossing_word(q, p), q.polygon());
    if (std::any_of(c.begin(), c.end(), [](auto x) { return x != 0; })) {
      abel.passed = false;
      abel.detail = "face " + std::to_string(f) + " has nonzero class";
      break;
    }
  }
  r.checks.push_back(abel);

  if (tess) {
    Check triv{"face crossing words are trivial in the cover", true, {}};
    for (int f = 0; f < q.face_count(); ++f) {
      Path p{q.arrow(q.face(f).front()).tail, q.face(f)};
      CrossingWord w = crossing_word(q, p);
      if (!tess->words_equal(w, {})) {
        triv.passed = false;
        triv.detail = "face " + std::to_string(f) + " reads " + to_string(w) + ", not closed in the cover";
        break;
      }
    }
    r.checks.push_back(triv);
  }

  Check conn{"quiver is connected", true, {}};
  conn.passed = connected(q);
  r.checks.push_back(conn);

  Check col{"faces are two-colourable (orientable embedding)", true, {}};
  col.passed = !face_colouring(q).empty();
  if (!col.passed) col.detail = "some arrow borders one face twice or two faces of the same colour";
  r.checks.push_back(col);

  Check rot{"rotation system is consistent", true, {}};
  if (!twice.passed || !cyc.passed || !col.passed) {
    rot.passed = false;
    rot.detail = "not attempted: face structure is invalid";
  } else {
    try {
      RotationSystem rs = rotation_system(q);
      int pinches = rs.pinch_count();
      int expected = n % 2;
      rot.passed = pinches == expected;
      rot.detail = "pinched corners: " + std::to_string(pinches) + ", expected " + std::to_string(expected);
    } catch (const EmbeddingError& e) {
      rot.passed = false;
      rot.detail = e.what();
    }
  }
  r.checks.push_back(rot);
  return r;
}

}  // namespace

ValidationReport validate(const DimerQuiver& q, Tessellation& tess) {
  if (!(tess.polygon() == q.polygon())) throw PreconditionError("tessellation polygon differs from the quiver's");
  return validate_impl(q, &tess);
}

ValidationReport validate(const DimerQuiver& q) {
  Tessellation tess(q.polygon());
  return validate_impl(q, &tess);
}

const std::vector<Dart>& RotationSystem::sheet_of(Dart d) const {
  const Place& p = place(d);
  return sheets.at(p.vertex).at(p.sheet);
}

int RotationSystem::pinch_count() const {
  int total = 0;
  for (const auto& v : sheets) total += static_cast<int>(v.size()) - 1;
  return total;
}

namespace {

int dart_index(Dart d) { return 2 * d.arrow + (d.out ? 0 : 1); }

// Successor in the cyclic order: an outgoing dart is followed by the incoming
// dart of the colour-0 corner it closes, an incoming dart by the outgoing
// dart of its colour-1 corner.
std::vector<Dart> successor_table(const DimerQuiver& q, const std::vector<int>& colour) {
  std::vector<Dart> succ(2 * q.arrow_count());
  std::vector<bool> set(2 * q.arrow_count(), false);
  for (int f = 0; f < q.face_count(); ++f) {
    const auto& face = q.face(f);
    for (std::size_t i = 0; i < face.size(); ++i) {
      ArrowId a = face[i], b = face[(i + 1) % face.size()];
      Dart from = colour[f] == 0 ? Dart{b, true} : Dart{a, false};
      Dart to = colour[f] == 0 ? Dart{a, false} : Dart{b, true};
      if (set[dart_index(from)]) throw EmbeddingError("dart of arrow '" + q.arrow(from.arrow).name + "' has two successors");
      set[dart_index(from)] = true;
      succ[dart_index(from)] = to;
    }
  }
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!set[i]) throw EmbeddingError("dart of arrow '" + q.arrow(static_cast<int>(i / 2)).name + "' lies in no corner");
  }
  return succ;
}

}  // namespace

RotationSystem rotation_system(const DimerQuiver& q) {
  RotationSystem rs;
  rs.face_colour = face_colouring(q);
  if (rs.face_colour.empty()) throw EmbeddingError("faces cannot be two-coloured; the corner structure is inconsistent");
  std::vector<Dart> succ = successor_table(q, rs.face_colour);
  rs.sheets.resize(q.vertex_count());
  rs.places_.resize(2 * q.arrow_count());
  std::vector<bool> seen(2 * q.arrow_count(), false);
  for (int start = 0; start < 2 * q.arrow_count(); ++start) {
    if (seen[start]) continue;
    Dart d{start / 2, start % 2 == 0};
    VertexId v = d.out ? q.arrow(d.arrow).tail : q.arrow(d.arrow).head;
    std::vector<Dart> cycle;
    while (!seen[dart_index(d)]) {
      VertexId at = d.out ? q.arrow(d.arrow).tail : q.arrow(d.arrow).head;
      if (at != v) throw EmbeddingError("corner cycle through arrow '" + q.arrow(d.arrow).name + "' changes vertex");
      seen[dart_index(d)] = true;
      rs.places_[dart_index(d)] = {v, static_cast<int>(rs.sheets[v].size()), static_cast<int>(cycle.size())};
      cycle.push_back(d);
      d = succ[dart_index(d)];
    }
    rs.sheets[v].push_back(std::move(cycle));
  }
  for (VertexId v = 0; v < q.vertex_count(); ++v) {
    if (rs.sheets[v].empty()) throw EmbeddingError("vertex '" + q.vertex_name(v) + "' has no incident arrows");
  }
  return rs;
}

std::vector<std::vector<ArrowId>> faces_from_rotation(const DimerQuiver& q, const RotationSystem& rs) {
  auto next_in_sheet = [&](Dart d, int step) {
    const auto& sheet = rs.sheet_of(d);
    int i = rs.place(d).index;
    int m = static_cast<int>(sheet.size());
    return sheet[((i + step) % m + m) % m];
  };
  std::vector<std::vector<ArrowId>> faces;
  for (int colour : {0, 1}) {
    std::vector<bool> used(q.arrow_count(), false);
    for (ArrowId s = 0; s < q.arrow_count(); ++s) {
      if (used[s]) continue;
      std::vector<ArrowId> face;
      ArrowId a = s;
      while (!used[a]) {
        used[a] = true;
        face.push_back(a);
        Dart next = colour == 0 ? next_in_sheet(Dart{a, false}, -1) : next_in_sheet(Dart{a, false}, +1);
        a = next.arrow;
      }
      faces.push_back(face);
    }
  }
  return faces;
}

}  // namespace ghor
