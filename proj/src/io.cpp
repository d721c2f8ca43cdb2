#include "gridknot/io.hpp"

#include <sstream>

namespace gridknot {

std::string serialize(const GridDiagram& d) {
  std::ostringstream out;
  out << d.index() << '\n';
  for (int c = 0; c < d.index(); ++c) out << (c ? " " : "") << d.x_row(c);
  out << '\n';
  for (int c = 0; c < d.index(); ++c) out << (c ? " " : "") << d.o_row(c);
  out << '\n';
  return out.str();
}

namespace {

std::vector<int> parse_int_line(const std::string& line, int lineno) {
  std::vector<int> out;
  std::istringstream in(line);
  std::string field;
  while (in >> field) {
    try {
      size_t used = 0;
      int v = std::stoi(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
      out.push_back(v);
    } catch (const std::exception&) {
      fail(Errc::ParseError,
           "line " + std::to_string(lineno) + ": field '" + field + "' is not an integer");
    }
  }
  return out;
}

}  // namespace

GridDiagram parse_grid(const std::string& text) {
  std::istringstream in(text);
  std::string line1, line2, line3;
  if (!std::getline(in, line1)) fail(Errc::ParseError, "line 1: missing grid index");
  std::vector<int> head = parse_int_line(line1, 1);
  if (head.size() != 1) fail(Errc::ParseError, "line 1: expected a single grid index");
  const int n = head[0];
  std::getline(in, line2);
  std::getline(in, line3);
  std::string rest;
  while (std::getline(in, rest)) {
    if (rest.find_first_not_of(" \t\r") != std::string::npos)
      fail(Errc::ParseError, "trailing content after line 3");
  }
  std::vector<int> xs = parse_int_line(line2, 2);
  std::vector<int> os = parse_int_line(line3, 3);
  if (static_cast<int>(xs.size()) != n)
    fail(Errc::ParseError, "line 2: expected " + std::to_string(n) + " fields, got " +
                               std::to_string(xs.size()));
  if (static_cast<int>(os.size()) != n)
    fail(Errc::ParseError, "line 3: expected " + std::to_string(n) + " fields, got " +
                               std::to_string(os.size()));
  return GridDiagram::make(n, std::move(xs), std::move(os));
}

}  // namespace gridknot
