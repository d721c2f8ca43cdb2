#include "gridknot/pl_import.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gridknot/errors.hpp"

namespace gridknot {
namespace {

using i64 = long long;
using i128 = __int128;

i128 iabs128(i128 v) { return v < 0 ? -v : v; }

// floor division; the denominator is always positive here
i128 floordiv(i128 num, i128 den) {
  i128 q = num / den;
  if (num % den != 0 && num < 0) --q;
  return q;
}

// Exact rational with positive denominator. All input coordinates are scaled
// decimals, so every quantity the conversion compares is one of these.
struct Frac {
  i128 num = 0;
  i128 den = 1;
};

Frac make_frac(i128 num, i128 den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = iabs128(num), b = den;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return Frac{num, den};
}

Frac int_frac(i64 v) { return Frac{v, 1}; }

// Continued-fraction comparison: walks the Euclidean expansions in lockstep
// and never multiplies the operands, so it cannot overflow.
int cmp_frac(Frac lhs, Frac rhs) {
  i128 p1 = lhs.num, q1 = lhs.den, p2 = rhs.num, q2 = rhs.den;
  for (;;) {
    i128 a1 = floordiv(p1, q1), a2 = floordiv(p2, q2);
    if (a1 != a2) return a1 < a2 ? -1 : 1;
    i128 r1 = p1 - a1 * q1, r2 = p2 - a2 * q2;
    if (r1 == 0 && r2 == 0) return 0;
    if (r1 == 0) return -1;
    if (r2 == 0) return 1;
    // compare the fractional parts via their reciprocals; order flips
    i128 np1 = q2, nq1 = r2, np2 = q1, nq2 = r1;
    p1 = np1;
    q1 = nq1;
    p2 = np2;
    q2 = nq2;
  }
}

double frac_to_double(const Frac& f) {
  return static_cast<double>(f.num) / static_cast<double>(f.den);
}

std::string num_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string pos_str(double x, double y) {
  return "(" + num_str(x) + ", " + num_str(y) + ")";
}

// ---------------------------------------------------------------------------
// scaled integer geometry

struct IPoint {
  i64 x = 0;
  i64 y = 0;
  bool operator==(const IPoint&) const = default;
};

i128 cross3(IPoint a, IPoint b, IPoint c) {
  return static_cast<i128>(b.x - a.x) * (c.y - a.y) -
         static_cast<i128>(b.y - a.y) * (c.x - a.x);
}

i128 dot_from(IPoint v, IPoint a, IPoint b) {
  // (a - v) . (b - v)
  return static_cast<i128>(a.x - v.x) * (b.x - v.x) +
         static_cast<i128>(a.y - v.y) * (b.y - v.y);
}

struct ScaledInput {
  std::vector<std::vector<IPoint>> comps;
  int pow10 = 0;
  double scale = 1;
};

constexpr i64 kCoordCap = 20000;

ScaledInput scale_input(const PLDiagram& p) {
  ScaledInput out;
  double scale = 1;
  int pow10 = 0;
  for (; pow10 <= 6; ++pow10, scale *= 10) {
    bool ok = true;
    for (const auto& comp : p.components) {
      for (const auto& pt : comp) {
        double sx = pt.x * scale, sy = pt.y * scale;
        if (std::abs(sx - std::llround(sx)) > 1e-7 || std::abs(sy - std::llround(sy)) > 1e-7) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) break;
  }
  if (pow10 > 6)
    fail(Errc::ParseError, "coordinates must be decimals with at most six fractional digits");
  out.pow10 = pow10;
  out.scale = scale;
  for (const auto& comp : p.components) {
    auto& ic = out.comps.emplace_back();
    for (const auto& pt : comp) {
      i64 x = std::llround(pt.x * scale), y = std::llround(pt.y * scale);
      if (std::abs(x) > kCoordCap || std::abs(y) > kCoordCap)
        fail(Errc::ParseError, "coordinate " + pos_str(pt.x, pt.y) + " is out of the supported range");
      ic.push_back({x, y});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// genericity scan and double points

struct SegRef {
  int comp = 0;
  int seg = 0;
  auto operator<=>(const SegRef&) const = default;
};

struct CrossingRec {
  Frac x, y;
  SegRef a, b;      // a < b
  double ta = 0;    // position along each segment, for the box report
  double tb = 0;
  int over_leg = -1;  // 0 = a carries the overstrand, 1 = b
};

const IPoint& vertex(const std::vector<std::vector<IPoint>>& comps, SegRef s, int end) {
  const auto& c = comps[static_cast<size_t>(s.comp)];
  size_t i = (static_cast<size_t>(s.seg) + static_cast<size_t>(end)) % c.size();
  return c[i];
}

// All pairwise intersections of the scaled diagram, with every genericity
// violation reported as NonGenericInput. The scale converts locations back to
// input units for the messages.
std::vector<CrossingRec> collect_crossings(const std::vector<std::vector<IPoint>>& comps,
                                           double scale) {
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& c = comps[ci];
    if (c.size() < 3)
      fail(Errc::NonGenericInput, "component " + std::to_string(ci) + " has fewer than three vertices");
    for (size_t j = 0; j < c.size(); ++j) {
      if (c[j] == c[(j + 1) % c.size()])
        fail(Errc::NonGenericInput,
             "zero length segment at " + pos_str(c[j].x / scale, c[j].y / scale));
    }
  }

  std::vector<SegRef> segs;
  for (size_t ci = 0; ci < comps.size(); ++ci)
    for (size_t j = 0; j < comps[ci].size(); ++j)
      segs.push_back({static_cast<int>(ci), static_cast<int>(j)});

  std::vector<CrossingRec> found;
  for (size_t i = 0; i < segs.size(); ++i) {
    for (size_t j = i + 1; j < segs.size(); ++j) {
      SegRef s1 = segs[i], s2 = segs[j];
      IPoint p1 = vertex(comps, s1, 0), q1 = vertex(comps, s1, 1);
      IPoint p2 = vertex(comps, s2, 0), q2 = vertex(comps, s2, 1);

      bool adjacent = false;
      if (s1.comp == s2.comp) {
        int sz = static_cast<int>(comps[static_cast<size_t>(s1.comp)].size());
        int d = (s2.seg - s1.seg + sz) % sz;
        adjacent = (d == 1 || d == sz - 1);
      }
      if (adjacent) {
        // shared vertex; the only degeneracy left is folding straight back
        IPoint v = (q1 == p2) ? q1 : p1;  // q1==p2 when s2 follows s1
        IPoint a = (q1 == p2) ? p1 : q1;
        IPoint b = (q1 == p2) ? q2 : p2;
        if (cross3(v, a, b) == 0 && dot_from(v, a, b) > 0)
          fail(Errc::NonGenericInput,
               "segments fold back along a line at " + pos_str(v.x / scale, v.y / scale));
        continue;
      }

      i128 o1 = cross3(p1, q1, p2), o2 = cross3(p1, q1, q2);
      i128 o3 = cross3(p2, q2, p1), o4 = cross3(p2, q2, q1);

      if (o1 == 0 && o2 == 0) {
        // same line: positive-length overlap is a tangency, a lone shared
        // point is a vertex meeting another segment
        i128 lo = dot_from(p1, p2, q1), hi = dot_from(q1, p2, p1);
        i128 lo2 = dot_from(p1, q2, q1), hi2 = dot_from(q1, q2, p1);
        bool p2_in = lo >= 0 && hi >= 0, q2_in = lo2 >= 0 && hi2 >= 0;
        bool p1_in = dot_from(p2, p1, q2) >= 0 && dot_from(q2, p1, p2) >= 0;
        bool q1_in = dot_from(p2, q1, q2) >= 0 && dot_from(q2, q1, p2) >= 0;
        int touching = (p2_in ? 1 : 0) + (q2_in ? 1 : 0) + (p1_in ? 1 : 0) + (q1_in ? 1 : 0);
        if (touching >= 2)
          fail(Errc::NonGenericInput,
               "collinear segments overlap near " + pos_str(p1.x / scale, p1.y / scale));
        if (touching == 1)
          fail(Errc::NonGenericInput,
               "collinear segments touch near " + pos_str(p1.x / scale, p1.y / scale));
        continue;
      }

      auto endpoint_hit = [&](IPoint v, IPoint a, IPoint b, i128 o) {
        return o == 0 && dot_from(v, a, b) <= 0;  // v on the closed segment ab
      };
      if (endpoint_hit(p2, p1, q1, o1) || endpoint_hit(q2, p1, q1, o2) ||
          endpoint_hit(p1, p2, q2, o3) || endpoint_hit(q1, p2, q2, o4)) {
        IPoint v = endpoint_hit(p2, p1, q1, o1) ? p2
                   : endpoint_hit(q2, p1, q1, o2) ? q2
                   : endpoint_hit(p1, p2, q2, o3) ? p1
                                                  : q1;
        fail(Errc::NonGenericInput,
             "vertex " + pos_str(v.x / scale, v.y / scale) + " lies on another segment");
      }
      if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) continue;  // on a line but outside

      bool straddle1 = (o1 > 0) != (o2 > 0);
      bool straddle2 = (o3 > 0) != (o4 > 0);
      if (!(straddle1 && straddle2)) continue;

      // transversal interior crossing of segments p1q1 and p2q2
      i128 den = o2 - o1;  // cross(q1-p1, q2-p2)
      i128 tnum = o3;      // cross(p2-p1, q2-p2)
      if (den < 0) {
        den = -den;
        tnum = -tnum;
      }
      CrossingRec rec;
      rec.x = make_frac(static_cast<i128>(p1.x) * den + tnum * (q1.x - p1.x), den);
      rec.y = make_frac(static_cast<i128>(p1.y) * den + tnum * (q1.y - p1.y), den);
      rec.a = s1;
      rec.b = s2;
      rec.ta = static_cast<double>(tnum) / static_cast<double>(den);
      // parameter along the second segment, for the report only
      double px = frac_to_double(rec.x), py = frac_to_double(rec.y);
      double len2 = static_cast<double>(q2.x - p2.x) * (q2.x - p2.x) +
                    static_cast<double>(q2.y - p2.y) * (q2.y - p2.y);
      rec.tb = ((px - p2.x) * (q2.x - p2.x) + (py - p2.y) * (q2.y - p2.y)) / len2;
      found.push_back(std::move(rec));
    }
  }

  std::sort(found.begin(), found.end(), [](const CrossingRec& l, const CrossingRec& r) {
    if (int c = cmp_frac(l.x, r.x); c != 0) return c < 0;
    return cmp_frac(l.y, r.y) < 0;
  });
  for (size_t i = 1; i < found.size(); ++i) {
    if (cmp_frac(found[i - 1].x, found[i].x) == 0 && cmp_frac(found[i - 1].y, found[i].y) == 0)
      fail(Errc::NonGenericInput,
           "triple point near " +
               pos_str(frac_to_double(found[i].x) / scale, frac_to_double(found[i].y) / scale));
  }
  return found;
}

// Resolve the over_data entries against the computed double points: every
// double point needs exactly one entry, matched by proximity, naming one of
// its two segments.
void match_over_data(const PLDiagram& p, double scale, std::vector<CrossingRec>& crossings) {
  for (const auto& entry : p.over_data) {
    if (crossings.empty())
      fail(Errc::ParseError, "over entry at " + pos_str(entry.at.x, entry.at.y) +
                                 " matches no double point");
    double ax = entry.at.x * scale, ay = entry.at.y * scale;
    size_t best = 0;
    double best_d = -1, second_d = -1;
    for (size_t k = 0; k < crossings.size(); ++k) {
      double dx = frac_to_double(crossings[k].x) - ax, dy = frac_to_double(crossings[k].y) - ay;
      double d = dx * dx + dy * dy;
      if (best_d < 0 || d < best_d) {
        second_d = best_d;
        best_d = d;
        best = k;
      } else if (second_d < 0 || d < second_d) {
        second_d = d;
      }
    }
    if (second_d >= 0 && best_d * 4 > second_d)
      fail(Errc::ParseError, "over entry at " + pos_str(entry.at.x, entry.at.y) +
                                 " does not single out a double point");
    CrossingRec& rec = crossings[best];
    SegRef named{entry.over_component, entry.over_segment};
    int leg = named == rec.a ? 0 : named == rec.b ? 1 : -1;
    if (leg < 0)
      fail(Errc::ParseError, "over entry at " + pos_str(entry.at.x, entry.at.y) +
                                 " names a segment not incident to its double point");
    if (rec.over_leg >= 0)
      fail(Errc::ParseError, "two over entries resolve the double point near " +
                                 pos_str(entry.at.x, entry.at.y));
    rec.over_leg = leg;
  }
  for (const auto& rec : crossings) {
    if (rec.over_leg < 0)
      fail(Errc::ParseError,
           "double point at " +
               pos_str(frac_to_double(rec.x) / scale, frac_to_double(rec.y) / scale) +
               " has no over entry");
  }
}

// ---------------------------------------------------------------------------
// rotation candidates

struct Rotation {
  i64 a = 1, b = 0, c = 1;  // cos = a/c, sin = b/c
};

IPoint rotate_point(IPoint p, const Rotation& r) {
  // the uniform factor c is dropped; it changes no comparison
  return {r.a * p.x - r.b * p.y, r.b * p.x + r.a * p.y};
}

std::vector<Rotation> rotation_candidates(std::uint32_t seed, bool identity_first) {
  std::vector<Rotation> out;
  if (identity_first) out.push_back({1, 0, 1});
  std::vector<Rotation> pyth;
  for (i64 m = 8; m <= 100; ++m) pyth.push_back({m * m - 1, 2 * m, m * m + 1});
  size_t offset = seed % pyth.size();
  for (size_t i = 0; i < pyth.size(); ++i) out.push_back(pyth[(offset + i) % pyth.size()]);
  return out;
}

// ---------------------------------------------------------------------------
// the sweep: cups, caps and crossings read left to right become the grid

struct Event {
  int kind = 0;  // 0 cup, 1 cap, 2 crossing
  Frac x;
  int comp = -1, vert = -1;  // cup/cap
  int cross = -1;            // crossing index
  Frac orig_h;               // input height carried for the height variant
};

struct EngineOut {
  GridDiagram diagram;
  std::vector<std::pair<Frac, int>> extremum_cols;  // (input height, event column)
};

struct Wire {
  int comp = 0;
  int at = 0;   // current vertex
  int dir = 1;  // +1 follows the stored vertex order, -1 walks it backwards
  double level = 0;
  i64 seq = 0;
  int start_col = 0;
};

struct HRec {
  double level = 0;
  i64 seq = 0;
  int c0 = 0, c1 = 0;
};

struct VRec {
  int col = 0;
  i64 seq_a = 0, seq_b = 0;
};

[[noreturn]] void engine_reject(const std::string& why) { fail(Errc::BoxPlacementFailure, why); }

// Builds the grid of one rotated placement, or throws BoxPlacementFailure to
// ask for the next rotation. `height_order`, when present, pins the expected
// left-to-right sequence of event heights.
EngineOut run_sweep(const std::vector<std::vector<IPoint>>& comps,
                    const std::vector<CrossingRec>& crossings, const Rotation& rot,
                    const std::vector<std::vector<IPoint>>& unrotated,
                    const std::vector<Frac>* height_order) {
  std::vector<std::vector<IPoint>> pts;
  pts.reserve(comps.size());
  for (const auto& c : comps) {
    auto& rc = pts.emplace_back();
    for (IPoint p : c) rc.push_back(rotate_point(p, rot));
  }

  for (const auto& c : pts)
    for (size_t j = 0; j < c.size(); ++j)
      if (c[j].x == c[(j + 1) % c.size()].x) engine_reject("a rotated segment is vertical");

  // events: extremal vertices and crossings
  std::vector<Event> events;
  for (size_t ci = 0; ci < pts.size(); ++ci) {
    const auto& c = pts[ci];
    int sz = static_cast<int>(c.size());
    for (int v = 0; v < sz; ++v) {
      i64 xv = c[static_cast<size_t>(v)].x;
      i64 xp = c[static_cast<size_t>((v + sz - 1) % sz)].x;
      i64 xn = c[static_cast<size_t>((v + 1) % sz)].x;
      if (xp > xv && xn > xv) {
        events.push_back({0, int_frac(xv), static_cast<int>(ci), v, -1,
                          int_frac(unrotated[ci][static_cast<size_t>(v)].y)});
      } else if (xp < xv && xn < xv) {
        events.push_back({1, int_frac(xv), static_cast<int>(ci), v, -1,
                          int_frac(unrotated[ci][static_cast<size_t>(v)].y)});
      }
    }
  }
  for (size_t k = 0; k < crossings.size(); ++k) {
    const CrossingRec& rec = crossings[k];
    IPoint p1 = vertex(pts, rec.a, 0), q1 = vertex(pts, rec.a, 1);
    IPoint p2 = vertex(pts, rec.b, 0), q2 = vertex(pts, rec.b, 1);
    i128 den = cross3(p1, q1, q2) - cross3(p1, q1, p2);
    i128 tnum = cross3(p2, q2, p1);
    if (den < 0) {
      den = -den;
      tnum = -tnum;
    }
    if (den == 0) engine_reject("rotation degenerated a crossing");
    Event e;
    e.kind = 2;
    e.x = make_frac(static_cast<i128>(p1.x) * den + tnum * (q1.x - p1.x), den);
    e.cross = static_cast<int>(k);
    e.orig_h = rec.y;
    events.push_back(std::move(e));
  }

  std::sort(events.begin(), events.end(),
            [](const Event& l, const Event& r) { return cmp_frac(l.x, r.x) < 0; });
  for (size_t i = 1; i < events.size(); ++i)
    if (cmp_frac(events[i - 1].x, events[i].x) == 0)
      engine_reject("two events share a sweep position");

  if (height_order) {
    if (events.size() != height_order->size())
      engine_reject("rotation changed the extremum pattern");
    for (size_t i = 0; i < events.size(); ++i)
      if (cmp_frac(events[i].orig_h, (*height_order)[i]) != 0)
        engine_reject("rotation reordered the event heights");
  }

  // sweep state
  std::vector<Wire> wires;
  std::vector<int> active;  // indices into wires, bottom to top
  std::vector<HRec> hrecs;
  std::vector<VRec> vrecs;
  i64 next_seq = 0;
  std::map<int, std::pair<int, i64>> seeds;  // component -> (cup column, forward level seq)

  auto next_vertex = [&](const Wire& w) {
    int sz = static_cast<int>(pts[static_cast<size_t>(w.comp)].size());
    return (w.at + w.dir + sz) % sz;
  };
  auto cur_segment = [&](const Wire& w) {
    int sz = static_cast<int>(pts[static_cast<size_t>(w.comp)].size());
    return w.dir > 0 ? w.at : (w.at + sz - 1) % sz;
  };
  auto advance = [&](Wire& w, const Frac& x) {
    for (;;) {
      int nv = next_vertex(w);
      if (cmp_frac(int_frac(pts[static_cast<size_t>(w.comp)][static_cast<size_t>(nv)].x), x) < 0)
        w.at = nv;
      else
        break;
    }
  };
  auto y_at = [&](Wire& w, i64 x) {
    advance(w, int_frac(x));
    IPoint p = pts[static_cast<size_t>(w.comp)][static_cast<size_t>(w.at)];
    IPoint q = pts[static_cast<size_t>(w.comp)][static_cast<size_t>(next_vertex(w))];
    if (q.x <= p.x) engine_reject("a wire stopped moving forward");
    return make_frac(static_cast<i128>(p.y) * (q.x - p.x) +
                         static_cast<i128>(q.y - p.y) * (x - p.x),
                     q.x - p.x);
  };
  auto fresh_between = [&](double lo, double hi) {
    double mid = lo + (hi - lo) / 2;
    if (!(lo < mid && mid < hi)) engine_reject("level subdivision underflow");
    return mid;
  };
  auto retire = [&](const Wire& w, int col) {
    if (w.start_col >= col) engine_reject("an empty horizontal run appeared");
    hrecs.push_back({w.level, w.seq, w.start_col, col});
  };

  for (size_t ei = 0; ei < events.size(); ++ei) {
    const Event& e = events[ei];
    int col = static_cast<int>(ei);
    for (int wi : active) advance(wires[static_cast<size_t>(wi)], e.x);

    if (e.kind == 0) {
      // cup: two wires are born side by side
      const auto& c = pts[static_cast<size_t>(e.comp)];
      int sz = static_cast<int>(c.size());
      IPoint v = c[static_cast<size_t>(e.vert)];
      size_t pos = 0;
      while (pos < active.size()) {
        int cmp = cmp_frac(y_at(wires[static_cast<size_t>(active[pos])], v.x), int_frac(v.y));
        if (cmp == 0) engine_reject("a strand runs through a cup vertex");
        if (cmp > 0) break;
        ++pos;
      }
      IPoint nf = c[static_cast<size_t>((e.vert + 1) % sz)];
      IPoint nb = c[static_cast<size_t>((e.vert + sz - 1) % sz)];
      // which outgoing branch starts on top
      i128 s = static_cast<i128>(nf.y - v.y) * (nb.x - v.x) -
               static_cast<i128>(nb.y - v.y) * (nf.x - v.x);
      if (s == 0) engine_reject("a cup opens along a single line");

      double lo_ref = pos > 0 ? wires[static_cast<size_t>(active[pos - 1])].level : 0;
      double hi_ref = pos < active.size() ? wires[static_cast<size_t>(active[pos])].level : 0;
      double l1, l2;
      if (active.empty()) {
        l1 = 0;
        l2 = 1;
      } else if (pos == 0) {
        l1 = hi_ref - 2;
        l2 = hi_ref - 1;
      } else if (pos == active.size()) {
        l1 = lo_ref + 1;
        l2 = lo_ref + 2;
      } else {
        l1 = fresh_between(lo_ref, hi_ref);
        l2 = fresh_between(l1, hi_ref);
      }

      Wire wf{e.comp, e.vert, 1, 0, 0, col};
      Wire wb{e.comp, e.vert, -1, 0, 0, col};
      bool forward_on_top = s > 0;
      Wire& lower = forward_on_top ? wb : wf;
      Wire& upper = forward_on_top ? wf : wb;
      lower.level = l1;
      lower.seq = next_seq++;
      upper.level = l2;
      upper.seq = next_seq++;
      int lower_id = static_cast<int>(wires.size());
      wires.push_back(lower);
      wires.push_back(upper);
      active.insert(active.begin() + static_cast<std::ptrdiff_t>(pos), {lower_id, lower_id + 1});
      vrecs.push_back({col, lower.seq, upper.seq});
      if (!seeds.count(e.comp)) seeds[e.comp] = {col, forward_on_top ? upper.seq : lower.seq};
    } else if (e.kind == 1) {
      // cap: the two wires converging on this vertex are adjacent
      std::vector<size_t> hit;
      for (size_t k = 0; k < active.size(); ++k) {
        Wire& w = wires[static_cast<size_t>(active[k])];
        if (w.comp == e.comp && next_vertex(w) == e.vert) hit.push_back(k);
      }
      if (hit.size() != 2 || hit[1] != hit[0] + 1) engine_reject("a cap closed out of order");
      Wire& w1 = wires[static_cast<size_t>(active[hit[0]])];
      Wire& w2 = wires[static_cast<size_t>(active[hit[1]])];
      retire(w1, col);
      retire(w2, col);
      vrecs.push_back({col, w1.seq, w2.seq});
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(hit[1]));
      active.erase(active.begin() + static_cast<std::ptrdiff_t>(hit[0]));
    } else {
      // crossing: the overstrand hops across the understrand's level
      const CrossingRec& rec = crossings[static_cast<size_t>(e.cross)];
      SegRef over = rec.over_leg == 0 ? rec.a : rec.b;
      SegRef under = rec.over_leg == 0 ? rec.b : rec.a;
      int pos_over = -1, pos_under = -1;
      for (size_t k = 0; k < active.size(); ++k) {
        const Wire& w = wires[static_cast<size_t>(active[k])];
        SegRef here{w.comp, cur_segment(w)};
        if (here == over) pos_over = static_cast<int>(k);
        if (here == under) pos_under = static_cast<int>(k);
      }
      if (pos_over < 0 || pos_under < 0 || std::abs(pos_over - pos_under) != 1)
        engine_reject("a crossing's strands are not adjacent");
      Wire& wo = wires[static_cast<size_t>(active[static_cast<size_t>(pos_over)])];
      const Wire& wu = wires[static_cast<size_t>(active[static_cast<size_t>(pos_under)])];
      double fresh;
      if (pos_over < pos_under) {
        // hop upward past the understrand
        fresh = pos_under + 1 < static_cast<int>(active.size())
                    ? fresh_between(wu.level,
                                    wires[static_cast<size_t>(active[static_cast<size_t>(pos_under) + 1])].level)
                    : wu.level + 1;
      } else {
        fresh = pos_under > 0
                    ? fresh_between(
                          wires[static_cast<size_t>(active[static_cast<size_t>(pos_under) - 1])].level,
                          wu.level)
                    : wu.level - 1;
      }
      retire(wo, col);
      i64 old_seq = wo.seq;
      wo.level = fresh;
      wo.seq = next_seq++;
      wo.start_col = col;
      vrecs.push_back({col, old_seq, wo.seq});
      int over_id = active[static_cast<size_t>(pos_over)];
      active.erase(active.begin() + pos_over);
      int under_at = pos_over < pos_under ? pos_under - 1 : pos_under;
      int insert_at = pos_over < pos_under ? under_at + 1 : under_at;
      active.insert(active.begin() + insert_at, over_id);
    }
  }
  if (!active.empty()) engine_reject("open strands survived the sweep");

  // rank the levels into rows; runs that never coexist may tie in value, any
  // strict order is fine for them
  std::vector<const HRec*> byrow;
  byrow.reserve(hrecs.size());
  for (const auto& h : hrecs) byrow.push_back(&h);
  std::sort(byrow.begin(), byrow.end(), [](const HRec* l, const HRec* r) {
    if (l->level != r->level) return l->level < r->level;
    return l->seq < r->seq;
  });
  std::unordered_map<i64, int> row_of;
  for (size_t r = 0; r < byrow.size(); ++r) row_of[byrow[r]->seq] = static_cast<int>(r);

  int n = static_cast<int>(events.size());
  if (static_cast<int>(hrecs.size()) != n) engine_reject("row and column counts disagree");

  // assemble: walk each rectilinear circle in its input orientation; a corner
  // entered horizontally starts a vertical strand, so it carries the X
  struct Span {
    int a = -1, b = -1;
  };
  std::vector<Span> row_span(static_cast<size_t>(n)), col_span(static_cast<size_t>(n));
  for (const auto& h : hrecs) {
    int r = row_of[h.seq];
    row_span[static_cast<size_t>(r)] = {h.c0, h.c1};
  }
  for (const auto& v : vrecs) {
    int ra = row_of[v.seq_a], rb = row_of[v.seq_b];
    col_span[static_cast<size_t>(v.col)] = {std::min(ra, rb), std::max(ra, rb)};
  }

  std::vector<int> xs(static_cast<size_t>(n), -1), os(static_cast<size_t>(n), -1);
  int assigned = 0;
  for (const auto& [comp, seed] : seeds) {
    (void)comp;
    int c0 = seed.first;
    int r0 = row_of[seed.second];
    if (row_span[static_cast<size_t>(r0)].a != c0) engine_reject("a seed corner came loose");
    int c = c0, r = r0;
    bool horizontal = true;  // departing along the forward wire's run
    do {
      if (horizontal) {
        const Span& s = row_span[static_cast<size_t>(r)];
        c = (c == s.a) ? s.b : s.a;
        if (xs[static_cast<size_t>(c)] != -1) engine_reject("two X markers share a column");
        xs[static_cast<size_t>(c)] = r;
      } else {
        const Span& s = col_span[static_cast<size_t>(c)];
        r = (r == s.a) ? s.b : s.a;
        if (os[static_cast<size_t>(c)] != -1) engine_reject("two O markers share a column");
        os[static_cast<size_t>(c)] = r;
      }
      horizontal = !horizontal;
      ++assigned;
    } while (!(c == c0 && r == r0 && horizontal));
  }
  if (assigned != 2 * n) engine_reject("the walk missed part of the diagram");

  EngineOut out;
  out.diagram = GridDiagram::make(n, std::move(xs), std::move(os));
  for (size_t ei = 0; ei < events.size(); ++ei)
    if (events[ei].kind != 2)
      out.extremum_cols.emplace_back(events[ei].orig_h, static_cast<int>(ei));
  return out;
}

// quarter turn counterclockwise; X and O swap so verticals stay X to O
GridDiagram rotate_grid_ccw(const GridDiagram& d) {
  int n = d.index();
  std::vector<int> xs(static_cast<size_t>(n)), os(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    os[static_cast<size_t>(n - 1 - d.x_row(c))] = c;
    xs[static_cast<size_t>(n - 1 - d.o_row(c))] = c;
  }
  return GridDiagram::make(n, std::move(xs), std::move(os));
}

// ---------------------------------------------------------------------------
// vertical extrema (plateau runs collapse to one extremum at their height)

struct ExtRun {
  int comp = 0;
  int first = 0;  // first vertex of the run
  int len = 1;
  i64 height = 0;
  bool maximum = false;
};

std::vector<ExtRun> vertical_extrema(const std::vector<std::vector<IPoint>>& comps) {
  std::vector<ExtRun> out;
  for (size_t ci = 0; ci < comps.size(); ++ci) {
    const auto& c = comps[ci];
    int sz = static_cast<int>(c.size());
    int start = -1;
    for (int v = 0; v < sz; ++v) {
      if (c[static_cast<size_t>(v)].y != c[static_cast<size_t>((v + sz - 1) % sz)].y) {
        start = v;
        break;
      }
    }
    if (start < 0) continue;  // a level polygon never survives the overlap scan
    int v = start;
    do {
      int run = 1;
      while (run < sz && c[static_cast<size_t>((v + run) % sz)].y == c[static_cast<size_t>(v)].y)
        ++run;
      i64 prev = c[static_cast<size_t>((v + sz - 1) % sz)].y;
      i64 next = c[static_cast<size_t>((v + run) % sz)].y;
      i64 h = c[static_cast<size_t>(v)].y;
      if (prev < h && next < h)
        out.push_back({static_cast<int>(ci), v, run, h, true});
      else if (prev > h && next > h)
        out.push_back({static_cast<int>(ci), v, run, h, false});
      v = (v + run) % sz;
    } while (v != start);
  }
  return out;
}

// ---------------------------------------------------------------------------
// isolation boxes for the report

double dist2(double ax, double ay, double bx, double by) {
  return (ax - bx) * (ax - bx) + (ay - by) * (ay - by);
}

double point_segment_dist2(double px, double py, double ax, double ay, double bx, double by) {
  double vx = bx - ax, vy = by - ay;
  double len2 = vx * vx + vy * vy;
  double t = len2 > 0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0;
  t = std::clamp(t, 0.0, 1.0);
  return dist2(px, py, ax + t * vx, ay + t * vy);
}

Box square_box(double cx, double cy, double half) {
  return {cx - half, cy - half, cx + half, cy + half};
}

Box bbox3(double x0, double y0, double x1, double y1, double x2, double y2) {
  Box b{std::min({x0, x1, x2}), std::min({y0, y1, y2}), std::max({x0, x1, x2}),
        std::max({y0, y1, y2})};
  double pad = 0.05 * std::max(b.x1 - b.x0, b.y1 - b.y0) + 1e-3;
  return {b.x0 - pad, b.y0 - pad, b.x1 + pad, b.y1 + pad};
}

IsolationBoxes build_boxes(const PLDiagram& p, const std::vector<CrossingRec>& crossings,
                           double scale, const std::vector<ExtRun>* extrema) {
  IsolationBoxes out;
  std::vector<std::array<double, 2>> xpts;
  for (const auto& rec : crossings)
    xpts.push_back({frac_to_double(rec.x) / scale, frac_to_double(rec.y) / scale});

  // nearest distance from (cx, cy) to any feature outside the skip sets; the
  // box around a feature must clear everything it is not itself touching
  auto min_feature_dist = [&](double cx, double cy, const std::vector<SegRef>& skip_segs,
                              const std::vector<std::pair<int, int>>& skip_verts, int skip_xpt) {
    double best = -1;
    auto consider = [&](double d2v) {
      if (best < 0 || d2v < best) best = d2v;
    };
    for (size_t ci = 0; ci < p.components.size(); ++ci) {
      const auto& c = p.components[ci];
      size_t sz = c.size();
      for (size_t j = 0; j < sz; ++j) {
        SegRef here{static_cast<int>(ci), static_cast<int>(j)};
        if (std::find(skip_segs.begin(), skip_segs.end(), here) == skip_segs.end())
          consider(point_segment_dist2(cx, cy, c[j].x, c[j].y, c[(j + 1) % sz].x,
                                       c[(j + 1) % sz].y));
        std::pair<int, int> vhere{static_cast<int>(ci), static_cast<int>(j)};
        if (std::find(skip_verts.begin(), skip_verts.end(), vhere) == skip_verts.end())
          consider(dist2(cx, cy, c[j].x, c[j].y));
      }
    }
    for (size_t k = 0; k < xpts.size(); ++k) {
      if (static_cast<int>(k) == skip_xpt) continue;
      consider(dist2(cx, cy, xpts[k][0], xpts[k][1]));
    }
    return best < 0 ? 1.0 : std::sqrt(best);
  };

  for (size_t k = 0; k < crossings.size(); ++k) {
    double r = min_feature_dist(xpts[k][0], xpts[k][1], {crossings[k].a, crossings[k].b}, {},
                                static_cast<int>(k));
    out.intersection_squares.push_back(square_box(xpts[k][0], xpts[k][1], r / 2));
  }

  if (extrema) {
    for (const auto& run : *extrema) {
      const auto& c = p.components[static_cast<size_t>(run.comp)];
      int sz = static_cast<int>(c.size());
      double cx = 0, cy = 0;
      std::vector<SegRef> skip_segs;
      std::vector<std::pair<int, int>> skip_verts;
      skip_segs.push_back({run.comp, (run.first + sz - 1) % sz});
      for (int i = 0; i < run.len; ++i) {
        int v = (run.first + i) % sz;
        cx += c[static_cast<size_t>(v)].x;
        cy += c[static_cast<size_t>(v)].y;
        skip_segs.push_back({run.comp, v});
        skip_verts.push_back({run.comp, v});
      }
      cx /= run.len;
      cy /= run.len;
      double r = min_feature_dist(cx, cy, skip_segs, skip_verts, -1);
      out.critical_rectangles.push_back(square_box(cx, cy, r / 2));
    }
  }

  // connecting arcs: split each circle at its special points and cover the
  // pieces with a chain of boxes, one per interior corner
  for (size_t ci = 0; ci < p.components.size(); ++ci) {
    const auto& c = p.components[ci];
    size_t sz = c.size();
    // walk positions: (segment, parameter) pairs of special points
    std::vector<std::vector<double>> cuts(sz);
    for (const auto& rec : crossings) {
      if (rec.a.comp == static_cast<int>(ci)) cuts[static_cast<size_t>(rec.a.seg)].push_back(rec.ta);
      if (rec.b.comp == static_cast<int>(ci)) cuts[static_cast<size_t>(rec.b.seg)].push_back(rec.tb);
    }
    std::vector<bool> vertex_cut(sz, false);
    if (extrema)
      for (const auto& run : *extrema)
        if (run.comp == static_cast<int>(ci)) vertex_cut[static_cast<size_t>(run.first)] = true;

    // flatten the circle into a point list with special flags
    struct WalkPt {
      double x, y;
      bool special;
    };
    std::vector<WalkPt> walk;
    for (size_t j = 0; j < sz; ++j) {
      walk.push_back({c[j].x, c[j].y, vertex_cut[j]});
      auto ts = cuts[j];
      std::sort(ts.begin(), ts.end());
      for (double t : ts) {
        double x = c[j].x + t * (c[(j + 1) % sz].x - c[j].x);
        double y = c[j].y + t * (c[(j + 1) % sz].y - c[j].y);
        walk.push_back({x, y, true});
      }
    }
    size_t m = walk.size();
    size_t first_special = m;
    for (size_t i = 0; i < m; ++i)
      if (walk[i].special) {
        first_special = i;
        break;
      }
    auto mid = [&](size_t i) {
      const WalkPt& a = walk[i];
      const WalkPt& b = walk[(i + 1) % m];
      return std::array<double, 2>{(a.x + b.x) / 2, (a.y + b.y) / 2};
    };
    if (first_special == m) {
      // no special points: one closed chain around the whole circle
      auto& chain = out.arc_rectangles.emplace_back();
      for (size_t i = 0; i < m; ++i) {
        auto mp = mid((i + m - 1) % m);
        auto mn = mid(i);
        chain.push_back(bbox3(mp[0], mp[1], walk[i].x, walk[i].y, mn[0], mn[1]));
      }
      continue;
    }
    size_t i = first_special;
    do {
      auto& chain = out.arc_rectangles.emplace_back();
      size_t j = (i + 1) % m;
      double fx = walk[i].x, fy = walk[i].y;
      while (!walk[j].special) {
        auto mp = mid((j + m - 1) % m);
        auto mn = mid(j);
        chain.push_back(bbox3(mp[0], mp[1], walk[j].x, walk[j].y, mn[0], mn[1]));
        j = (j + 1) % m;
      }
      if (chain.empty()) {
        // a straight hop between special points still gets one covering box
        chain.push_back(bbox3(fx, fy, (fx + walk[j].x) / 2, (fy + walk[j].y) / 2, walk[j].x,
                              walk[j].y));
      }
      i = j;
    } while (i != first_special);
  }
  return out;
}

// ---------------------------------------------------------------------------
// shared driver

GridDiagram import_pl(const PLDiagram& p, const GridifyOptions& options, GridifyReport* report,
                      bool height_aware) {
  ScaledInput scaled = scale_input(p);
  if (scaled.comps.empty()) {
    if (report) *report = GridifyReport{};
    return GridDiagram::make(0, {}, {});
  }
  std::vector<CrossingRec> crossings = collect_crossings(scaled.comps, scaled.scale);
  match_over_data(p, scaled.scale, crossings);

  std::vector<std::vector<IPoint>> build_comps = scaled.comps;
  std::vector<CrossingRec> build_cross = crossings;
  std::vector<ExtRun> extrema;
  std::vector<Frac> height_order;

  if (height_aware) {
    extrema = vertical_extrema(scaled.comps);
    for (const auto& run : extrema) height_order.push_back(int_frac(run.height));
    for (const auto& rec : crossings) height_order.push_back(rec.y);
    std::sort(height_order.begin(), height_order.end(),
              [](const Frac& l, const Frac& r) { return cmp_frac(l, r) < 0; });
    for (size_t i = 1; i < height_order.size(); ++i)
      if (cmp_frac(height_order[i - 1], height_order[i]) == 0)
        fail(Errc::DegenerateHeights,
             "two extrema or double points share the height " +
                 num_str(frac_to_double(height_order[i]) / scaled.scale));

    // quarter turn clockwise so the sweep reads heights bottom to top; the
    // mirror this introduces is cancelled by flipping every over choice now
    // and turning the finished grid back counterclockwise
    for (auto& comp : build_comps)
      for (auto& pt : comp) pt = IPoint{pt.y, -pt.x};
    // the stored y of each record keeps serving as the input height
    for (auto& rec : build_cross) rec.over_leg = 1 - rec.over_leg;
  }

  // the turned frame reuses the original heights for its event bookkeeping
  std::vector<std::vector<IPoint>> unrotated_heights = build_comps;
  if (height_aware) {
    for (size_t ci = 0; ci < unrotated_heights.size(); ++ci)
      for (size_t v = 0; v < unrotated_heights[ci].size(); ++v)
        unrotated_heights[ci][v].y = scaled.comps[ci][v].y;
  }

  auto candidates = rotation_candidates(options.seed, height_aware);
  int attempts = 0;
  std::optional<EngineOut> built;
  Rotation used;
  for (const auto& rot : candidates) {
    ++attempts;
    try {
      built = run_sweep(build_comps, build_cross, rot, unrotated_heights,
                        height_aware ? &height_order : nullptr);
      used = rot;
      break;
    } catch (const GridError& err) {
      if (err.code() != Errc::BoxPlacementFailure) throw;
    }
  }
  if (!built) fail(Errc::BoxPlacementFailure, "no admissible rotation for this input");

  GridDiagram result = built->diagram;
  if (height_aware) result = rotate_grid_ccw(result);

  if (report) {
    *report = GridifyReport{};
    report->attempts = attempts;
    report->rot_a = static_cast<int>(used.a);
    report->rot_b = static_cast<int>(used.b);
    report->rot_c = static_cast<int>(used.c);
    report->scale_pow10 = scaled.pow10;
    report->boxes = build_boxes(p, crossings, scaled.scale, height_aware ? &extrema : nullptr);
    if (height_aware) {
      for (const auto& [h, col] : built->extremum_cols)
        report->extremum_rows.push_back({frac_to_double(h) / scaled.scale, col});
      std::sort(report->extremum_rows.begin(), report->extremum_rows.end(),
                [](const ExtremumRow& l, const ExtremumRow& r) { return l.row < r.row; });
    }
  }
  return result;
}

}  // namespace

std::vector<DoublePoint> find_crossings(const PLDiagram& p) {
  ScaledInput scaled = scale_input(p);
  if (scaled.comps.empty()) return {};
  std::vector<CrossingRec> recs = collect_crossings(scaled.comps, scaled.scale);
  std::vector<DoublePoint> out;
  out.reserve(recs.size());
  for (const auto& rec : recs) {
    DoublePoint dp;
    dp.at = {frac_to_double(rec.x) / scaled.scale, frac_to_double(rec.y) / scaled.scale};
    dp.component_a = rec.a.comp;
    dp.segment_a = rec.a.seg;
    dp.component_b = rec.b.comp;
    dp.segment_b = rec.b.seg;
    out.push_back(dp);
  }
  return out;
}

GridDiagram gridify(const PLDiagram& p, const GridifyOptions& options, GridifyReport* report) {
  return import_pl(p, options, report, false);
}

GridDiagram gridify_with_height(const PLDiagram& p, const GridifyOptions& options,
                                GridifyReport* report) {
  return import_pl(p, options, report, true);
}

}  // namespace gridknot
