#ifndef OCP_DSL_HPP
#define OCP_DSL_HPP

#include <string>
#include <vector>

#include "ocp/statement.hpp"

namespace ocp {

// Parse failure with source coordinates; formats as file:line:column.
class ParseError : public std::exception {
 public:
  ParseError(std::string file, int line, int column, std::string message);

  const char* what() const noexcept override { return formatted_.c_str(); }
  const std::string& file() const { return file_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::string file_;
  int line_;
  int column_;
  std::string message_;
  std::string formatted_;
};

// Parses a whole model source: any number of statements, `#` line comments,
// newlines insignificant. Throws ParseError.
std::vector<Statement> parse_model(const std::string& source,
                                   const std::string& filename = "<input>");

// Parses exactly one statement (log replay path).
Statement parse_statement(const std::string& source, const std::string& filename = "<log>");

// Parses a standalone formula (test and tooling convenience).
Formula parse_formula(const std::string& source, const std::string& filename = "<formula>");

}  // namespace ocp

#endif
