#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "vpc/lp.hpp"

namespace vpc {

struct MpsOptions {
  // When true, integer columns with no explicit upper bound get [0,1]
  // (historic MPS convention) instead of [0, +inf).
  bool integer_default_unit_bounds = false;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class UnsupportedFeature : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

LinearProgram parse_mps(std::istream& in, const MpsOptions& opt = {});
LinearProgram parse_mps_file(const std::string& path, const MpsOptions& opt = {});

void write_mps(const LinearProgram& lp, std::ostream& out);
std::string write_mps_string(const LinearProgram& lp);

}  // namespace vpc
