#pragma once

#include <string>

#include "gspnorm/constants.hpp"

namespace gspnorm::cli {

// Input error with a 1-based source position (0 when unknown).
class InputError : public Error {
 public:
  InputError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? what + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")" : what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// "1.5", "-2", "0.3i", "i", "-0.2+0.3i", "1e-3-2i".
numkit::cplx parse_complex(const std::string& text);
// "3", "-7/2".
Rational parse_rational(const std::string& text);

constants::GlobalSpec load_spec_file(const std::string& path);
constants::GlobalSpec parse_spec_text(const std::string& text);

}  // namespace gspnorm::cli
