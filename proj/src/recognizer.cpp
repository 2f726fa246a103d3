#include "vpg/recognizer.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vpg/geom.hpp"

namespace vpg {

namespace {

bool integer_coord(const Rational& r) { return r.get_den() == 1; }

struct Cand {
  Curve curve;
  long x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // integer bounding box
};

Cand make_cand(std::vector<Point> pts) {
  Cand c;
  c.curve.pts = std::move(pts);
  c.x0 = c.x1 = c.curve.pts[0].x.get_num().get_si();
  c.y0 = c.y1 = c.curve.pts[0].y.get_num().get_si();
  for (const Point& p : c.curve.pts) {
    long x = p.x.get_num().get_si(), y = p.y.get_num().get_si();
    c.x0 = std::min(c.x0, x);
    c.x1 = std::max(c.x1, x);
    c.y0 = std::min(c.y0, y);
    c.y1 = std::max(c.y1, y);
  }
  return c;
}

// every simple alternating-axis path with exactly `segs` segments inside the
// L x L grid, one orientation per geometric path, shorter paths first
void extend_paths(std::vector<Point>& pts, bool vertical, int left, int L, std::vector<Cand>& out) {
  if (left == 0) {
    if (pts.front() < pts.back()) out.push_back(make_cand(pts));
    return;
  }
  Point tip = pts.back();  // by value: push_back below may reallocate pts
  long cx = tip.x.get_num().get_si(), cy = tip.y.get_num().get_si();
  long base = vertical ? cy : cx;
  for (long c = 0; c < L; ++c) {
    if (c == base) continue;
    Point nxt = vertical ? Point{tip.x, Rational(c)} : Point{Rational(c), tip.y};
    Segment fresh(tip, nxt);
    bool simple = true;
    // the adjoining segment is perpendicular, so only earlier ones can collide
    for (std::size_t i = 0; i + 2 < pts.size() && simple; ++i)
      simple = seg_intersect(Segment(pts[i], pts[i + 1]), fresh).kind == IntersectionKind::Empty;
    if (!simple) continue;
    pts.push_back(nxt);
    extend_paths(pts, !vertical, left - 1, L, out);
    pts.pop_back();
  }
}

std::vector<Cand> enumerate_paths(int L, int maxSegs) {
  std::vector<Cand> out;
  for (int segs = 1; segs <= maxSegs; ++segs) {
    for (int firstVertical = 0; firstVertical < 2; ++firstVertical) {
      for (long y = 0; y < L; ++y) {
        for (long x = 0; x < L; ++x) {
          std::vector<Point> pts = {Point{Rational(x), Rational(y)}};
          extend_paths(pts, firstVertical != 0, segs, L, out);
        }
      }
    }
  }
  return out;
}

bool cands_share(const Cand& a, const Cand& b) {
  if (a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0) return false;
  for (std::size_t i = 0; i + 1 < a.curve.pts.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.curve.pts.size(); ++j)
      if (seg_intersect(a.curve.segment(i), b.curve.segment(j)).kind != IntersectionKind::Empty)
        return true;
  return false;
}

}  // namespace

WitnessCheck validate_witness(const Graph& g, const Representation& rep, int k) {
  WitnessCheck wc;
  auto flag = [&wc](std::string msg) {
    wc.ok = false;
    wc.violations.push_back(std::move(msg));
  };
  bool shaped = true;
  for (const auto& kv : rep.curves) {
    const Curve& c = kv.second;
    if (c.pts.size() < 2) {
      flag("curve " + kv.first + " is degenerate");
      shaped = false;
      continue;
    }
    bool axis = true;
    for (std::size_t i = 0; i + 1 < c.pts.size(); ++i) {
      Segment s = c.segment(i);
      if (s.degenerate() || !s.axis_parallel()) axis = false;
    }
    if (!axis) {
      flag("curve " + kv.first + " has a degenerate or oblique segment");
      shaped = false;
      continue;
    }
    for (const Point& p : c.pts) {
      if (!integer_coord(p.x) || !integer_coord(p.y)) {
        flag("curve " + kv.first + " leaves the integer grid");
        break;
      }
    }
    int b = bend_count(c);
    if (b > k)
      flag("curve " + kv.first + " has " + std::to_string(b) + " bends over a budget of " +
           std::to_string(k));
  }
  if (shaped) {
    Graph got = intersection_graph(rep);
    if (!(got == g)) flag("intersection graph differs from the target graph");
  }
  return wc;
}

RecognitionResult recognize_bk(const Graph& g, int k, const SearchLimits& limits) {
  RecognitionResult res;
  std::vector<std::string> verts(g.vertices().begin(), g.vertices().end());
  int n = static_cast<int>(verts.size());
  long Lmax = limits.gridOverride ? *limits.gridOverride : static_cast<long>(n) * (k + 2);
  res.searchBound = static_cast<int>(std::max<long>(Lmax, 0));
  if (n == 0) {
    res.kind = RecognitionResult::Member;
    return res;
  }

  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& e : g.edges()) {
    int i = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), e.first) - verts.begin());
    int j = static_cast<int>(std::lower_bound(verts.begin(), verts.end(), e.second) - verts.begin());
    adj[i][j] = adj[j][i] = 1;
  }

  std::uint64_t nodes = 0;
  auto t0 = std::chrono::steady_clock::now();
  bool cut = false;
  std::string why;

  // grids nest, so grow the side length: small grids find witnesses cheaply,
  // and impossibility is certified by exhausting the final (canonical) round
  for (long L = 2; L <= Lmax && !cut; ++L) {
    res.searchBound = static_cast<int>(L);
    std::vector<Cand> cands = enumerate_paths(static_cast<int>(L), k + 1);
    std::unordered_map<std::uint64_t, char> memo;
    auto shares = [&](int a, int b) {
      std::uint64_t key =
          static_cast<std::uint64_t>(std::min(a, b)) * cands.size() + std::max(a, b);
      auto it = memo.find(key);
      if (it != memo.end()) return it->second != 0;
      bool s = cands_share(cands[a], cands[b]);
      memo.emplace(key, s ? 1 : 0);
      return s;
    };
    std::vector<int> pick(n, -1);
    std::function<bool(int)> dfs = [&](int d) -> bool {
      if (d == n) return true;
      for (int c = 0; c < static_cast<int>(cands.size()); ++c) {
        if (++nodes > limits.maxNodes) {
          cut = true;
          why = "nodes";
          return false;
        }
        if ((nodes & 1023) == 0) {
          auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
          if (static_cast<std::uint64_t>(ms) > limits.maxMillis) {
            cut = true;
            why = "time";
            return false;
          }
        }
        bool ok = true;
        for (int p = 0; p < d && ok; ++p) ok = shares(pick[p], c) == (adj[p][d] != 0);
        if (!ok) continue;
        pick[d] = c;
        if (dfs(d + 1)) return true;
        if (cut) return false;
      }
      pick[d] = -1;
      return false;
    };
    if (dfs(0)) {
      res.nodesExplored = nodes;
      for (int d = 0; d < n; ++d) res.witness.curves[verts[d]] = cands[pick[d]].curve;
      WitnessCheck wc = validate_witness(g, res.witness, k);
      if (!wc.ok)
        throw VpgError("GeometryFailure",
                       "search produced an invalid witness: " + wc.violations.front());
      res.kind = RecognitionResult::Member;
      return res;
    }
  }

  res.nodesExplored = nodes;
  if (cut) {
    res.kind = RecognitionResult::Inconclusive;
    res.resourceLimit = why;
    return res;
  }
  res.kind = RecognitionResult::NonMember;
  return res;
}

}  // namespace vpg
