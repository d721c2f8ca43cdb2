#include "gridknot/render.hpp"

#include <algorithm>
#include <sstream>

namespace gridknot {

namespace {

struct Span {
  int lo = 0;
  int hi = 0;
  bool inside(int v) const { return lo < v && v < hi; }
  bool bridges(int a, int b) const { return lo <= a && b <= hi; }
  bool flat() const { return lo == hi; }
};

Span col_span(const GridDiagram& d, int c) {
  return {std::min(d.x_row(c), d.o_row(c)), std::max(d.x_row(c), d.o_row(c))};
}

Span row_span(const GridDiagram& d, int r) {
  return {std::min(d.x_col(r), d.o_col(r)), std::max(d.x_col(r), d.o_col(r))};
}

}  // namespace

std::string render_ascii(const GridDiagram& d) {
  int n = d.index();
  std::string out;
  for (int r = n - 1; r >= 0; --r) {
    std::string line(static_cast<size_t>(2 * n - 1), ' ');
    Span rs = row_span(d, r);
    for (int c = 0; c < n; ++c) {
      char glyph = '.';
      if (d.x_row(c) == r && d.o_row(c) == r)
        glyph = '*';
      else if (d.x_row(c) == r)
        glyph = 'X';
      else if (d.o_row(c) == r)
        glyph = 'O';
      else {
        bool vert = col_span(d, c).inside(r);
        bool horiz = rs.inside(c);
        glyph = vert && horiz ? '+' : vert ? '|' : horiz ? '-' : '.';
      }
      line[static_cast<size_t>(2 * c)] = glyph;
      if (c + 1 < n && rs.bridges(c, c + 1)) line[static_cast<size_t>(2 * c + 1)] = '-';
    }
    out += line;
    out += '\n';
  }
  return out;
}

std::string render_svg(const GridDiagram& d) {
  int n = d.index();
  const int pitch = 40;
  const int gap = 8;  // half-gap of 4 on each side of a crossing
  int side = std::max(1, n) * pitch;
  auto cx = [&](int c) { return pitch / 2 + pitch * c; };
  auto cy = [&](int r) { return side - (pitch / 2 + pitch * r); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << side << " " << side
      << "\" width=\"" << side << "\" height=\"" << side << "\">\n";
  svg << "<rect width=\"" << side << "\" height=\"" << side << "\" fill=\"white\"/>\n";
  svg << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int i = 0; i <= n; ++i) {
    svg << "<line x1=\"" << i * pitch << "\" y1=\"0\" x2=\"" << i * pitch << "\" y2=\"" << side
        << "\"/>\n";
    svg << "<line x1=\"0\" y1=\"" << i * pitch << "\" x2=\"" << side << "\" y2=\"" << i * pitch
        << "\"/>\n";
  }
  svg << "</g>\n";

  std::vector<Crossing> cr = crossings(d);

  // Horizontal strands, broken around each crossing in the row.
  svg << "<g stroke=\"black\" stroke-width=\"2\">\n";
  for (int r = 0; r < n; ++r) {
    Span rs = row_span(d, r);
    if (rs.flat()) continue;
    std::vector<int> cuts;
    for (const Crossing& q : cr)
      if (q.row == r) cuts.push_back(q.col);
    std::sort(cuts.begin(), cuts.end());
    int x0 = cx(rs.lo);
    for (int cut : cuts) {
      svg << "<line class=\"h\" x1=\"" << x0 << "\" y1=\"" << cy(r) << "\" x2=\""
          << cx(cut) - gap / 2 << "\" y2=\"" << cy(r) << "\"/>\n";
      x0 = cx(cut) + gap / 2;
    }
    svg << "<line class=\"h\" x1=\"" << x0 << "\" y1=\"" << cy(r) << "\" x2=\"" << cx(rs.hi)
        << "\" y2=\"" << cy(r) << "\"/>\n";
  }
  // Vertical strands draw unbroken: they are the overstrands everywhere.
  for (int c = 0; c < n; ++c) {
    Span cs = col_span(d, c);
    if (cs.flat()) continue;
    svg << "<line class=\"v\" x1=\"" << cx(c) << "\" y1=\"" << cy(cs.lo) << "\" x2=\"" << cx(c)
        << "\" y2=\"" << cy(cs.hi) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g stroke=\"black\" stroke-width=\"2\" fill=\"white\">\n";
  for (int c = 0; c < n; ++c) {
    if (d.coincident(c)) {
      svg << "<circle class=\"point\" cx=\"" << cx(c) << "\" cy=\"" << cy(d.x_row(c))
          << "\" r=\"4\" fill=\"black\"/>\n";
      continue;
    }
    int xr = d.x_row(c), orr = d.o_row(c);
    svg << "<line class=\"x\" x1=\"" << cx(c) - 6 << "\" y1=\"" << cy(xr) - 6 << "\" x2=\""
        << cx(c) + 6 << "\" y2=\"" << cy(xr) + 6 << "\"/>\n";
    svg << "<line class=\"x\" x1=\"" << cx(c) - 6 << "\" y1=\"" << cy(xr) + 6 << "\" x2=\""
        << cx(c) + 6 << "\" y2=\"" << cy(xr) - 6 << "\"/>\n";
    svg << "<circle class=\"o\" cx=\"" << cx(c) << "\" cy=\"" << cy(orr) << "\" r=\"6\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace gridknot
