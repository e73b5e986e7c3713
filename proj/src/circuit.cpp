#include "q2r/circuit.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "q2r/io.hpp"

namespace q2r {

const char* to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Input: return "input";
    case GateKind::And: return "and";
    case GateKind::Or: return "or";
  }
  return "?";
}

Circuit::Circuit(std::vector<Gate> gates, std::vector<GateId> outputs) : outputs_(std::move(outputs)) {
  std::unordered_map<GateId, std::size_t> pos;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (!pos.emplace(gates[i].id, i).second) {
      throw std::invalid_argument("duplicate gate id " + std::to_string(gates[i].id));
    }
    if (gates[i].kind == GateKind::Input && !gates[i].inputs.empty()) {
      throw std::invalid_argument("input " + std::to_string(gates[i].id) + " cannot have operands");
    }
  }
  for (const auto& g : gates) {
    for (GateId in : g.inputs) {
      if (!pos.count(in)) {
        throw std::invalid_argument("gate " + std::to_string(g.id) + " references unknown gate " +
                                    std::to_string(in));
      }
    }
  }
  for (GateId o : outputs_) {
    if (!pos.count(o)) throw std::invalid_argument("unknown output gate " + std::to_string(o));
  }

  // Kahn's algorithm; ties keep the declaration order.
  std::vector<std::size_t> pending(gates.size(), 0);
  std::vector<std::vector<std::size_t>> users(gates.size());
  for (std::size_t i = 0; i < gates.size(); ++i) {
    for (GateId in : gates[i].inputs) {
      users[pos[in]].push_back(i);
      ++pending[i];
    }
  }
  std::set<std::size_t> ready;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    if (pending[i] == 0) ready.insert(i);
  }
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    std::size_t i = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(i);
    for (std::size_t u : users[i]) {
      if (--pending[u] == 0) ready.insert(u);
    }
  }
  if (order.size() != gates.size()) {
    for (std::size_t i = 0; i < gates.size(); ++i) {
      if (pending[i] > 0) {
        throw std::invalid_argument("cycle through gate " + std::to_string(gates[i].id));
      }
    }
  }

  for (std::size_t i : order) gates_.push_back(std::move(gates[i]));
  for (std::size_t i = 0; i < gates_.size(); ++i) index_[gates_[i].id] = i;
  layers_.assign(gates_.size(), 0);
  fanout_.assign(gates_.size(), 0);
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    for (GateId in : gates_[i].inputs) {
      std::size_t j = index_[in];
      layers_[i] = std::max(layers_[i], layers_[j] + 1);
      ++fanout_[j];
    }
  }
}

std::vector<GateId> Circuit::inputs() const {
  std::vector<GateId> out;
  for (const auto& g : gates_) {
    if (g.kind == GateKind::Input) out.push_back(g.id);
  }
  return out;
}

int Circuit::depth() const {
  int d = 0;
  for (int l : layers_) d = std::max(d, l);
  return d;
}

bool Circuit::is_output(GateId id) const {
  return std::find(outputs_.begin(), outputs_.end(), id) != outputs_.end();
}

std::vector<GateId> Circuit::consumers(GateId id) const {
  std::vector<GateId> out;
  for (const auto& g : gates_) {
    for (GateId in : g.inputs) {
      if (in == id) out.push_back(g.id);
    }
  }
  return out;
}

namespace {

std::vector<std::string> split_words(std::string_view line) {
  std::vector<std::string> words;
  std::istringstream in{std::string(line)};
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

GateId parse_id(const std::string& word, std::size_t line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(word, &used);
    if (used != word.size() || v < 0 || v > 0xffffffffLL) throw std::invalid_argument(word);
    return static_cast<GateId>(v);
  } catch (const std::exception&) {
    throw ParseError(line, "bad gate id '" + word + "'");
  }
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (!words.empty()) fn(line_no, words);
    start = end + 1;
  }
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
  std::vector<Gate> gates;
  std::vector<GateId> outputs;
  std::unordered_map<GateId, std::size_t> declared_at;
  std::vector<std::pair<GateId, std::size_t>> references;
  std::vector<std::pair<GateId, std::size_t>> output_lines;

  for_each_line(text, [&](std::size_t line, const std::vector<std::string>& w) {
    const std::string& key = w[0];
    if (key == "input") {
      if (w.size() != 2) throw ParseError(line, "expected 'input <id>'");
      Gate g{parse_id(w[1], line), GateKind::Input, {}};
      if (!declared_at.emplace(g.id, line).second) {
        throw ParseError(line, "duplicate gate id " + w[1]);
      }
      gates.push_back(g);
    } else if (key == "gate") {
      if (w.size() != 5) throw ParseError(line, "expected 'gate <id> and|or <in1> <in2>'");
      Gate g;
      g.id = parse_id(w[1], line);
      if (w[2] == "and") {
        g.kind = GateKind::And;
      } else if (w[2] == "or") {
        g.kind = GateKind::Or;
      } else {
        throw ParseError(line, "unknown gate kind '" + w[2] + "'");
      }
      g.inputs = {parse_id(w[3], line), parse_id(w[4], line)};
      if (!declared_at.emplace(g.id, line).second) {
        throw ParseError(line, "duplicate gate id " + w[1]);
      }
      for (GateId in : g.inputs) references.emplace_back(in, line);
      gates.push_back(std::move(g));
    } else if (key == "output") {
      if (w.size() != 2) throw ParseError(line, "expected 'output <id>'");
      GateId id = parse_id(w[1], line);
      if (std::find(outputs.begin(), outputs.end(), id) != outputs.end()) {
        throw ParseError(line, "duplicate output " + w[1]);
      }
      outputs.push_back(id);
      output_lines.emplace_back(id, line);
    } else {
      throw ParseError(line, "unknown keyword '" + key + "'");
    }
  });

  for (auto [id, line] : references) {
    if (!declared_at.count(id)) throw ParseError(line, "unknown gate reference " + std::to_string(id));
  }
  for (auto [id, line] : output_lines) {
    if (!declared_at.count(id)) throw ParseError(line, "unknown output gate " + std::to_string(id));
  }
  try {
    return Circuit(std::move(gates), std::move(outputs));
  } catch (const std::invalid_argument& e) {
    // Only cycles can remain at this point.
    std::string msg = e.what();
    std::size_t line = 0;
    if (auto p = msg.rfind(' '); p != std::string::npos) {
      GateId id = static_cast<GateId>(std::stoul(msg.substr(p + 1)));
      line = declared_at[id];
    }
    throw ParseError(line, msg);
  }
}

std::string circuit_to_text(const Circuit& c) {
  std::ostringstream out;
  for (const auto& g : c.gates()) {
    if (g.kind == GateKind::Input) {
      out << "input " << g.id << '\n';
    } else {
      out << "gate " << g.id << ' ' << to_string(g.kind) << ' ' << g.inputs[0] << ' ' << g.inputs[1]
          << '\n';
    }
  }
  for (GateId o : c.outputs()) out << "output " << o << '\n';
  return out.str();
}

Assignment parse_assignment(std::string_view text) {
  Assignment a;
  for_each_line(text, [&](std::size_t line, const std::vector<std::string>& w) {
    if (w[0] != "assign") throw ParseError(line, "expected 'assign <id>=<0|1> ...'");
    for (std::size_t i = 1; i < w.size(); ++i) {
      auto eq = w[i].find('=');
      if (eq == std::string::npos || eq + 2 != w[i].size() ||
          (w[i][eq + 1] != '0' && w[i][eq + 1] != '1')) {
        throw ParseError(line, "bad assignment '" + w[i] + "'");
      }
      GateId id = parse_id(w[i].substr(0, eq), line);
      if (!a.emplace(id, w[i][eq + 1] == '1').second) {
        throw ParseError(line, "input " + std::to_string(id) + " assigned twice");
      }
    }
  });
  return a;
}

std::string assignment_to_text(const Assignment& a) {
  std::ostringstream out;
  out << "assign";
  for (auto [id, v] : a) out << ' ' << id << '=' << (v ? 1 : 0);
  out << '\n';
  return out.str();
}

bool As2mReport::has(As2mRule rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [rule](const As2mViolation& v) { return v.rule == rule; });
}

std::string As2mReport::summary() const {
  if (ok()) return "ok";
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += '\n';
    s += v.message;
  }
  return s;
}

As2mReport validate_as2m(const Circuit& c, bool strict) {
  As2mReport r;
  auto add = [&](As2mRule rule, GateId g, std::string msg) {
    r.violations.push_back({rule, g, std::move(msg)});
  };
  const int top = c.depth();
  if (c.outputs().empty()) add(As2mRule::Outputs, 0, "circuit has no outputs");

  for (const auto& g : c.gates()) {
    const std::string name = "gate " + std::to_string(g.id);
    const int layer = c.layer(g.id);
    if (g.kind != GateKind::Input) {
      if (g.inputs.size() != 2) {
        add(As2mRule::Fanin, g.id, name + " has fanin " + std::to_string(g.inputs.size()));
      } else if (g.inputs[0] == g.inputs[1]) {
        add(As2mRule::Fanin, g.id, name + " uses gate " + std::to_string(g.inputs[0]) + " twice");
      }
      for (GateId in : g.inputs) {
        if (c.layer(in) != layer - 1) {
          add(As2mRule::Synchrony, g.id,
              name + " on layer " + std::to_string(layer) + " reads gate " + std::to_string(in) +
                  " on layer " + std::to_string(c.layer(in)));
        }
        if (c.gate(in).kind == GateKind::Input && g.kind != GateKind::Or) {
          add(As2mRule::InputToOr, g.id, name + " is not an OR gate but reads input " + std::to_string(in));
        }
      }
      GateKind expected = (layer % 2 == 1) ? GateKind::Or : GateKind::And;
      if (g.kind != expected) {
        add(As2mRule::Alternation, g.id,
            name + " on layer " + std::to_string(layer) + " should be " + to_string(expected));
      }
    }

    const std::size_t fo = c.fanout(g.id);
    if (c.is_output(g.id)) {
      if (g.kind != GateKind::Or || layer != top) {
        add(As2mRule::Outputs, g.id, name + " is an output but not an OR gate on the top layer");
      }
      if (fo != 0) add(As2mRule::Fanout, g.id, name + " is an output with fanout " + std::to_string(fo));
    } else if (strict ? fo != 2 : (fo == 0 || fo > 2)) {
      add(As2mRule::Fanout, g.id,
          name + " has fanout " + std::to_string(fo) + (strict ? " (expected 2)" : " (expected 1 or 2)"));
    }
  }
  return r;
}

std::map<GateId, bool> evaluate_circuit(const Circuit& c, const Assignment& assignment) {
  std::map<GateId, bool> value;
  for (const auto& g : c.gates()) {
    switch (g.kind) {
      case GateKind::Input: {
        auto it = assignment.find(g.id);
        if (it == assignment.end()) {
          throw std::invalid_argument("no value for input " + std::to_string(g.id));
        }
        value[g.id] = it->second;
        break;
      }
      case GateKind::And: value[g.id] = value.at(g.inputs[0]) && value.at(g.inputs[1]); break;
      case GateKind::Or: value[g.id] = value.at(g.inputs[0]) || value.at(g.inputs[1]); break;
    }
  }
  for (auto [id, v] : assignment) {
    if (!c.contains(id) || c.gate(id).kind != GateKind::Input) {
      throw std::invalid_argument("assignment names non-input " + std::to_string(id));
    }
  }
  return value;
}

Circuit random_as2m_circuit(std::size_t width, std::size_t depth, std::mt19937_64& rng) {
  if (width < 2) throw std::invalid_argument("width must be at least 2");
  if (depth % 2 == 0) throw std::invalid_argument("depth must be odd");
  std::vector<Gate> gates;
  std::vector<GateId> prev;
  GateId next = 1;
  for (std::size_t i = 0; i < width; ++i) {
    gates.push_back({next, GateKind::Input, {}});
    prev.push_back(next++);
  }
  for (std::size_t l = 1; l <= depth; ++l) {
    // Two permutations with no fixed coincidence give every previous node
    // fanout exactly two and every gate two distinct operands.
    std::vector<std::size_t> p1(width), p2(width);
    for (std::size_t i = 0; i < width; ++i) p1[i] = p2[i] = i;
    std::shuffle(p1.begin(), p1.end(), rng);
    do {
      std::shuffle(p2.begin(), p2.end(), rng);
    } while ([&] {
      for (std::size_t i = 0; i < width; ++i) {
        if (p1[i] == p2[i]) return true;
      }
      return false;
    }());
    GateKind kind = (l % 2 == 1) ? GateKind::Or : GateKind::And;
    std::vector<GateId> cur;
    for (std::size_t i = 0; i < width; ++i) {
      gates.push_back({next, kind, {prev[p1[i]], prev[p2[i]]}});
      cur.push_back(next++);
    }
    prev = std::move(cur);
  }
  return Circuit(std::move(gates), prev);
}

Assignment random_assignment(const Circuit& c, std::mt19937_64& rng) {
  Assignment a;
  for (GateId id : c.inputs()) a[id] = (rng() & 1U) != 0;
  return a;
}

}  // namespace q2r
