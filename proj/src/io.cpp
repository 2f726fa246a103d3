#include "vpg/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace vpg {

using ordered_json = nlohmann::ordered_json;

std::string doc_to_json(const RepresentationDocument& doc) {
  ordered_json j;
  j["version"] = doc.version;
  ordered_json verts = ordered_json::array();
  for (const auto& [id, curve] : doc.rep.curves) {
    ordered_json v;
    v["id"] = id;
    ordered_json pts = ordered_json::array();
    for (const auto& p : curve.pts) {
      pts.push_back(ordered_json::array({rational_str(p.x), rational_str(p.y)}));
    }
    v["curve"] = pts;
    verts.push_back(v);
  }
  j["vertices"] = verts;
  if (!doc.roles.empty()) {
    ordered_json roles;
    for (const auto& [id, role] : doc.roles) roles[id] = role;
    j["roles"] = roles;
  }
  if (doc.expected_graph) {
    ordered_json edges = ordered_json::array();
    std::set<std::string> covered;
    for (const auto& [u, v] : doc.expected_graph->edges()) {
      edges.push_back(ordered_json::array({u, v}));
      covered.insert(u);
      covered.insert(v);
    }
    for (const auto& v : doc.expected_graph->vertices()) {
      if (!covered.count(v)) edges.push_back(ordered_json::array({v}));
    }
    j["expected_graph"] = edges;
  }
  return j.dump(2) + "\n";
}

RepresentationDocument doc_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw VpgError("GeometryFailure", std::string("bad JSON: ") + e.what());
  }
  RepresentationDocument doc;
  if (!j.contains("version") || !j["version"].is_string()) {
    throw VpgError("GeometryFailure", "document missing version tag");
  }
  doc.version = j["version"].get<std::string>();
  if (!j.contains("vertices") || !j["vertices"].is_array()) {
    throw VpgError("GeometryFailure", "document missing vertices");
  }
  for (const auto& v : j["vertices"]) {
    std::string id = v.at("id").get<std::string>();
    Curve c;
    for (const auto& pt : v.at("curve")) {
      if (!pt.is_array() || pt.size() != 2) {
        throw VpgError("GeometryFailure", "curve points must be [\"p/q\",\"r/s\"] pairs");
      }
      c.pts.push_back(Point(parse_rational(pt[0].get<std::string>()),
                            parse_rational(pt[1].get<std::string>())));
    }
    if (doc.rep.curves.count(id)) {
      throw VpgError("GeometryFailure", "duplicate vertex id: " + id);
    }
    doc.rep.curves[id] = c;
  }
  if (j.contains("roles")) {
    for (auto it = j["roles"].begin(); it != j["roles"].end(); ++it) {
      doc.roles[it.key()] = it.value().get<std::string>();
    }
  }
  if (j.contains("expected_graph")) {
    Graph g;
    for (const auto& e : j["expected_graph"]) {
      if (e.size() == 1) {
        g.add_vertex(e[0].get<std::string>());
      } else if (e.size() == 2) {
        g.add_edge(e[0].get<std::string>(), e[1].get<std::string>());
      } else {
        throw VpgError("GeometryFailure", "expected_graph entries are [u,v] or [v]");
      }
    }
    doc.expected_graph = g;
  }
  return doc;
}

namespace {

const char* violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::SelfIntersection: return "SelfIntersection";
    case ViolationKind::Overlap: return "Overlap";
    case ViolationKind::InfiniteIntersection: return "InfiniteIntersection";
    case ViolationKind::TriplePoint: return "TriplePoint";
    case ViolationKind::Touch: return "Touch";
    case ViolationKind::EndpointOnCurve: return "EndpointOnCurve";
  }
  return "Unknown";
}

}  // namespace

std::string report_to_json(const PropernessReport& rpt) {
  ordered_json j;
  j["proper"] = rpt.proper();
  ordered_json arr = ordered_json::array();
  for (const auto& v : rpt.violations) {
    ordered_json e;
    e["kind"] = violation_name(v.kind);
    e["vertices"] = v.vertices;
    if (v.kind == ViolationKind::Overlap) {
      e["overlap"] = ordered_json::array(
          {ordered_json::array({rational_str(v.overlap.a.x), rational_str(v.overlap.a.y)}),
           ordered_json::array({rational_str(v.overlap.b.x), rational_str(v.overlap.b.y)})});
    } else if (v.kind != ViolationKind::InfiniteIntersection) {
      e["point"] = ordered_json::array({rational_str(v.point.x), rational_str(v.point.y)});
    }
    arr.push_back(e);
  }
  j["violations"] = arr;
  return j.dump(2) + "\n";
}

std::string decimal_str(const Rational& q, int precision) {
  mpq_class c = q;
  c.canonicalize();
  bool neg = c < 0;
  if (neg) c = -c;
  mpz_class p10 = 1;
  for (int i = 0; i < precision; ++i) p10 *= 10;
  mpz_class scaled = c.get_num() * p10;
  mpz_class quot, rem;
  mpz_fdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), c.get_den().get_mpz_t());
  if (rem * 2 >= c.get_den()) quot += 1;
  std::string digits = quot.get_str();
  while (static_cast<int>(digits.size()) < precision + 1) digits.insert(digits.begin(), '0');
  std::string ip = digits.substr(0, digits.size() - precision);
  std::string fp = precision > 0 ? digits.substr(digits.size() - precision) : std::string();
  while (!fp.empty() && fp.back() == '0') fp.pop_back();
  std::string out = ip;
  if (!fp.empty()) out += "." + fp;
  if (neg && out != "0") out.insert(out.begin(), '-');
  return out;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(ch);
    }
  }
  return out;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

std::string render_svg(const Representation& rep, const RenderOptions& opts,
                       const std::map<std::string, std::string>& roles) {
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (rep.curves.empty()) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"100\" height=\"100\" "
           "viewBox=\"0 0 100 100\"/>\n";
    return svg.str();
  }
  bool first = true;
  Rational minx(0), maxx(0), miny(0), maxy(0);
  for (const auto& [id, c] : rep.curves) {
    for (const auto& p : c.pts) {
      if (first) {
        minx = maxx = p.x;
        miny = maxy = p.y;
        first = false;
      } else {
        if (p.x < minx) minx = p.x;
        if (p.x > maxx) maxx = p.x;
        if (p.y < miny) miny = p.y;
        if (p.y > maxy) maxy = p.y;
      }
    }
  }
  Rational w = maxx - minx, h = maxy - miny;
  Rational longer = w > h ? w : h;
  if (longer == 0) longer = 1;
  Rational scale = Rational(1000) / longer;
  Rational pad(opts.padding);
  auto tx = [&](const Rational& x) { return pad + (x - minx) * scale; };
  auto ty = [&](const Rational& y) { return pad + (maxy - y) * scale; };
  Rational W = 2 * pad + w * scale;
  Rational H = 2 * pad + h * scale;

  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << decimal_str(W, opts.precision)
      << "\" height=\"" << decimal_str(H, opts.precision) << "\" viewBox=\"0 0 "
      << decimal_str(W, opts.precision) << " " << decimal_str(H, opts.precision) << "\">\n";

  std::size_t idx = 0;
  for (const auto& [id, c] : rep.curves) {
    std::string color = kPalette[idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
    auto rit = roles.find(id);
    if (rit != roles.end()) {
      auto cit = opts.role_colors.find(rit->second);
      if (cit != opts.role_colors.end()) color = cit->second;
    }
    svg << "  <polyline id=\"curve-" << xml_escape(id) << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"" << opts.stroke_width << "\" points=\"";
    for (std::size_t i = 0; i < c.pts.size(); ++i) {
      if (i) svg << " ";
      svg << decimal_str(tx(c.pts[i].x), opts.precision) << ","
          << decimal_str(ty(c.pts[i].y), opts.precision);
    }
    svg << "\"/>\n";
    ++idx;
  }

  if (opts.crossing_markers) {
    std::set<Point> crossings;
    std::vector<const Curve*> cs;
    for (const auto& [id, c] : rep.curves) cs.push_back(&c);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        for (const auto& p : curve_intersection_points(*cs[i], *cs[j])) crossings.insert(p);
      }
    }
    for (const auto& p : crossings) {
      svg << "  <circle cx=\"" << decimal_str(tx(p.x), opts.precision) << "\" cy=\""
          << decimal_str(ty(p.y), opts.precision) << "\" r=\"4\" fill=\"#000000\"/>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw VpgError("GeometryFailure", "cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw VpgError("GeometryFailure", "cannot write file: " + path);
  out << content;
}

}  // namespace vpg
