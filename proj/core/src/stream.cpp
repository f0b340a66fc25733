#include "dynmis/stream.hpp"

#include <fstream>
#include <sstream>

namespace dynmis {

namespace {

// Strips a trailing comment and surrounding whitespace.
std::string payload_of(const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  std::size_t a = line.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = line.find_last_not_of(" \t\r");
  return line.substr(a, b - a + 1);
}

VertexId parse_vertex(const std::string& tok, std::size_t n, std::size_t lineno) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw StreamParseError(lineno, "expected a vertex id, got '" + tok + "'");
  unsigned long long v = 0;
  try {
    v = std::stoull(tok);
  } catch (const std::exception&) {
    throw StreamParseError(lineno, "vertex id out of range: '" + tok + "'");
  }
  if (v >= n)
    throw StreamParseError(lineno, "vertex id " + tok + " >= n");
  return static_cast<VertexId>(v);
}

}  // namespace

Stream parse_stream(std::istream& in) {
  Stream s;
  bool have_header = false;
  std::string raw;
  std::size_t lineno = 0;
  std::uint64_t idx = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = payload_of(raw);
    if (line.empty()) continue;

    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!have_header) {
      if (tag != "N") throw StreamParseError(lineno, "expected header 'N <n>'");
      long long n = -1;
      if (!(ls >> n) || n < 0)
        throw StreamParseError(lineno, "invalid vertex count");
      std::string extra;
      if (ls >> extra) throw StreamParseError(lineno, "trailing tokens after header");
      s.n = static_cast<std::size_t>(n);
      have_header = true;
      continue;
    }

    UpdateEvent ev;
    ev.index = idx;
    std::string a, b;
    if (tag == "+" || tag == "-") {
      if (!(ls >> a >> b)) throw StreamParseError(lineno, "edge event needs two vertex ids");
      ev.op = tag == "+" ? UpdateOp::EdgeInsert : UpdateOp::EdgeDelete;
      ev.u = parse_vertex(a, s.n, lineno);
      ev.v = parse_vertex(b, s.n, lineno);
      if (ev.u == ev.v) throw StreamParseError(lineno, "self loop");
    } else if (tag == "+V" || tag == "-V") {
      if (!(ls >> a)) throw StreamParseError(lineno, "vertex event needs one vertex id");
      ev.op = tag == "+V" ? UpdateOp::VertexInsert : UpdateOp::VertexDelete;
      ev.u = parse_vertex(a, s.n, lineno);
    } else {
      throw StreamParseError(lineno, "unknown event tag '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) throw StreamParseError(lineno, "trailing tokens");
    s.events.push_back(ev);
    ++idx;
  }
  if (!have_header) throw StreamParseError(lineno ? lineno : 1, "missing 'N <n>' header");
  return s;
}

Stream load_stream(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open stream file: " + path);
  return parse_stream(f);
}

void write_stream(std::ostream& out, const Stream& s) {
  out << "N " << s.n << "\n";
  for (const UpdateEvent& ev : s.events) {
    switch (ev.op) {
      case UpdateOp::EdgeInsert: out << "+ " << ev.u << " " << ev.v << "\n"; break;
      case UpdateOp::EdgeDelete: out << "- " << ev.u << " " << ev.v << "\n"; break;
      case UpdateOp::VertexInsert: out << "+V " << ev.u << "\n"; break;
      case UpdateOp::VertexDelete: out << "-V " << ev.u << "\n"; break;
    }
  }
}

void save_stream(const std::string& path, const Stream& s) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  write_stream(f, s);
}

}  // namespace dynmis
