#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dynmis/workload.hpp"

namespace dynmis {

/// Malformed stream file; carries the 1-based offending line.
class StreamParseError : public std::runtime_error {
 public:
  StreamParseError(std::size_t line, std::string msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + std::move(msg)),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Text stream format: UTF-8; '#' starts a comment; first payload line is
/// "N <n>"; then one event per line: "+ u v", "- u v", "+V u", "-V u".
Stream parse_stream(std::istream& in);
Stream load_stream(const std::string& path);

void write_stream(std::ostream& out, const Stream& s);
void save_stream(const std::string& path, const Stream& s);

}  // namespace dynmis
