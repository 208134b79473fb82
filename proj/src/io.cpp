#include "bopcrit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace bopcrit {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

Graph parse_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  int declared_n = -1;
  int max_index = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;  // blank / comment-only line

    if (first.rfind("n=", 0) == 0) {
      if (declared_n != -1 || !edges.empty())
        throw std::invalid_argument("edge list: header must be the first content line");
      try {
        declared_n = std::stoi(first.substr(2));
      } catch (const std::exception&) {
        throw std::invalid_argument("edge list: malformed header '" + first + "'");
      }
      if (declared_n < 0) throw std::invalid_argument("edge list: negative node count");
      std::string extra;
      if (ls >> extra) throw std::invalid_argument("edge list: trailing tokens after header");
      continue;
    }

    Edge e;
    std::istringstream es(line);
    double weight = 1.0;
    if (!(es >> e.i >> e.j))
      throw std::invalid_argument("edge list: malformed line " + std::to_string(line_no));
    if (!(es >> weight)) weight = 1.0;
    std::string extra;
    if (es >> extra)
      throw std::invalid_argument("edge list: trailing tokens on line " + std::to_string(line_no));
    e.weight = weight;
    edges.push_back(e);
    max_index = std::max({max_index, e.i, e.j});
  }
  const int n = declared_n != -1 ? declared_n : max_index + 1;
  return Graph::from_edge_list(edges, n);
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file '" + path + "'");
  try {
    return parse_edge_list(in);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void format_edge_list(const Graph& g, std::ostream& out) {
  for (int i = 0; i < g.size(); ++i)
    if (g.label(i) != i)
      throw std::invalid_argument("edge-list output requires identity labels");
  out << "n=" << g.size() << "\n";
  for (const Edge& e : g.edge_list())
    out << e.i << "\t" << e.j << "\t" << format_double(e.weight) << "\n";
}

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file '" + path + "'");
  format_edge_list(g, out);
  if (!out.good()) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace bopcrit
