#include "q2r/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace q2r {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

namespace {

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t' || line[k] == '\r')) ++k;
    std::size_t start = k;
    while (k < line.size() && line[k] != ' ' && line[k] != '\t' && line[k] != '\r') ++k;
    if (k > start) out.emplace_back(line.substr(start, k - start));
  }
  return out;
}

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::uint64_t parse_uint(std::string_view s, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(s) + "'");
  }
  return value;
}

NodeId parse_id(std::string_view s, std::size_t line, std::size_t n) {
  auto id = parse_uint(s, line, "node id");
  if (id < 1 || id > n) {
    throw ParseError(line, "node id " + std::string(s) + " outside 1.." + std::to_string(n));
  }
  return static_cast<NodeId>(id - 1);
}

bool is_bit_line(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

}  // namespace

NetworkDocument parse_document(std::string_view text) {
  NetworkDocument doc;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::set<Edge> seen_edges;
  std::optional<std::vector<Side>> sides;
  std::vector<char> assigned;
  bool saw_a = false;
  bool saw_b = false;
  std::size_t block_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = tokenize(strip_comment(raw));
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string& head = tokens[0];

    if (!n) {
      if (head != "q2r" || tokens.size() != 2) {
        throw ParseError(line_no, "expected header 'q2r <n>'");
      }
      n = parse_uint(tokens[1], line_no, "node count");
      assigned.assign(*n, 0);
      continue;
    }

    if (head == "q2r") {
      throw ParseError(line_no, "duplicate 'q2r' header");
    } else if (head == "block") {
      if (tokens.size() < 2 || (tokens[1] != "A" && tokens[1] != "B")) {
        throw ParseError(line_no, "expected 'block <A|B> <ids...>'");
      }
      bool is_a = tokens[1] == "A";
      if ((is_a && saw_a) || (!is_a && saw_b)) {
        throw ParseError(line_no, "block " + tokens[1] + " given twice");
      }
      (is_a ? saw_a : saw_b) = true;
      block_line = line_no;
      if (!sides) sides.emplace(*n, Side::A);
      for (std::size_t k = 2; k < tokens.size(); ++k) {
        NodeId v = parse_id(tokens[k], line_no, *n);
        if (assigned[v]) throw ParseError(line_no, "node " + tokens[k] + " assigned to a block twice");
        assigned[v] = 1;
        (*sides)[v] = is_a ? Side::A : Side::B;
      }
    } else if (head == "edge") {
      if (tokens.size() != 3) throw ParseError(line_no, "expected 'edge <i> <j>'");
      NodeId u = parse_id(tokens[1], line_no, *n);
      NodeId v = parse_id(tokens[2], line_no, *n);
      if (u == v) throw ParseError(line_no, "self-loop on node " + tokens[1]);
      Edge key{std::min(u, v), std::max(u, v)};
      if (!seen_edges.insert(key).second) {
        throw ParseError(line_no, "edge " + tokens[1] + " " + tokens[2] + " listed twice");
      }
      edges.push_back(key);
    } else if (head == "ports:") {
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        auto colon = tokens[k].find(':');
        if (colon == std::string::npos) throw ParseError(line_no, "expected '<id>:+1' or '<id>:-1'");
        NodeId v = parse_id(std::string_view(tokens[k]).substr(0, colon), line_no, *n);
        auto spin = tokens[k].substr(colon + 1);
        if (spin != "+1" && spin != "-1") throw ParseError(line_no, "port spin must be +1 or -1");
        doc.ports.push_back({v, spin == "+1" ? 1 : -1});
      }
    } else if (head == "pred") {
      if (doc.pred) throw ParseError(line_no, "duplicate 'pred' line");
      PredQuery q;
      bool have_t = false;
      bool have_v = false;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        std::string_view tok = tokens[k];
        if (tok.starts_with("t=")) {
          q.t = parse_uint(tok.substr(2), line_no, "time");
          have_t = true;
        } else if (tok.starts_with("v=")) {
          q.v = parse_id(tok.substr(2), line_no, *n);
          have_v = true;
        } else {
          throw ParseError(line_no, "unexpected token '" + tokens[k] + "' in pred line");
        }
      }
      if (!have_t || !have_v) throw ParseError(line_no, "expected 'pred t=<t> v=<id>'");
      doc.pred = q;
    } else if (head == "role") {
      doc.roles.push_back({line_no, {tokens.begin() + 1, tokens.end()}});
    } else if (tokens.size() == 1 && is_bit_line(head)) {
      if (doc.config) throw ParseError(line_no, "duplicate configuration line");
      if (head.size() != *n) {
        throw ParseError(line_no, "configuration has " + std::to_string(head.size()) +
                                      " characters, expected " + std::to_string(*n));
      }
      doc.config = Configuration::from_string(head);
    } else {
      throw ParseError(line_no, "unrecognized line starting with '" + head + "'");
    }
    if (end == text.size()) break;
  }

  if (!n) throw ParseError(0, "missing 'q2r <n>' header");
  if (saw_a != saw_b) throw ParseError(block_line, "block A and block B must be given together");
  if (sides && std::find(assigned.begin(), assigned.end(), 0) != assigned.end()) {
    auto missing = std::find(assigned.begin(), assigned.end(), 0) - assigned.begin();
    throw ParseError(block_line, "node " + std::to_string(missing + 1) + " is in neither block");
  }
  doc.network = Q2RNetwork::from_edges(*n, edges, std::move(sides));
  return doc;
}

NetworkDocument read_document(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_document(text);
}

NetworkDocument read_document_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_document(in);
}

Configuration parse_configuration(std::string_view text) {
  std::optional<Configuration> x;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto tokens = tokenize(strip_comment(text.substr(pos, end - pos)));
    pos = end + 1;
    ++line_no;
    if (!tokens.empty()) {
      if (x) throw ParseError(line_no, "more than one configuration line");
      if (tokens.size() != 1 || !is_bit_line(tokens[0])) {
        throw ParseError(line_no, "configuration must be a single line of 0/1 characters");
      }
      x = Configuration::from_string(tokens[0]);
    }
    if (end == text.size()) break;
  }
  if (!x) return Configuration(0);
  return *x;
}

Configuration read_configuration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_configuration(text);
}

void write_network(std::ostream& os, const Q2RNetwork& net) {
  os << "q2r " << net.size() << '\n';
  if (net.has_bipartition()) {
    for (Side s : {Side::A, Side::B}) {
      os << "block " << (s == Side::A ? 'A' : 'B');
      for (NodeId v : net.nodes_on(s)) os << ' ' << v + 1;
      os << '\n';
    }
  }
  for (auto [u, v] : net.edges()) os << "edge " << u + 1 << ' ' << v + 1 << '\n';
}

void write_configuration(std::ostream& os, const Configuration& x) { os << x.to_string() << '\n'; }

void write_ports(std::ostream& os, std::span<const PortSpin> ports) {
  os << "ports:";
  for (const auto& p : ports) os << ' ' << p.node + 1 << ':' << (p.spin > 0 ? "+1" : "-1");
  os << '\n';
}

void write_pred(std::ostream& os, const PredQuery& query) {
  os << "pred t=" << query.t << " v=" << query.v + 1 << '\n';
}

std::string network_to_text(const Q2RNetwork& net) {
  std::ostringstream os;
  write_network(os, net);
  return os.str();
}

}  // namespace q2r
