#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "q2r/core.hpp"

namespace q2r {

/// Malformed input. `line()` is 1-based; 0 means "whole document".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct PortSpin {
  NodeId node;
  int spin;
  bool operator==(const PortSpin&) const = default;
};

struct PredQuery {
  std::uint64_t t = 0;
  NodeId v = 0;
  bool operator==(const PredQuery&) const = default;
};

/// A `role ...` line kept verbatim for the parallel-simulator reader.
struct RoleLine {
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Everything one text document may carry:
///
///   q2r <n>
///   block A <ids...>        (optional, together with block B)
///   block B <ids...>
///   edge <i> <j>
///   ports: <id>:+1 <id>:-1  (generator sidecar)
///   0110...                 (configuration line)
///   pred t=<t> v=<id>
///   role <id> ...
///
/// Ids are 1-based; '#' starts a comment.
struct NetworkDocument {
  Q2RNetwork network;
  std::optional<Configuration> config;
  std::vector<PortSpin> ports;
  std::optional<PredQuery> pred;
  std::vector<RoleLine> roles;
};

NetworkDocument parse_document(std::string_view text);
NetworkDocument read_document(std::istream& in);
NetworkDocument read_document_file(const std::string& path);

/// A single 0/1 line (surrounding whitespace and comments ignored).
Configuration parse_configuration(std::string_view text);
Configuration read_configuration_file(const std::string& path);

void write_network(std::ostream& os, const Q2RNetwork& net);
void write_configuration(std::ostream& os, const Configuration& x);
void write_ports(std::ostream& os, std::span<const PortSpin> ports);
void write_pred(std::ostream& os, const PredQuery& query);

std::string network_to_text(const Q2RNetwork& net);

}  // namespace q2r
