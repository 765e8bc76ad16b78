#pragma once

#include <string>
#include <string_view>

#include "densitylab/numeric.hpp"
#include "densitylab/setalg/bound_expr.hpp"
#include "densitylab/setalg/index_set.hpp"

namespace densitylab::setalg {

/// Whitespace-insensitive character cursor shared by the text parsers.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws();
  bool at_end();
  char peek();
  /// Consumes c if it is next.
  bool accept(char c);
  bool accept(std::string_view word);
  void expect(char c);
  void expect_end();
  /// Identifier made of letters and underscores, without consuming it.
  std::string peek_word();
  std::string word();
  Natural natural();
  Integer integer();
  Rational rational();
  std::size_t position() const { return pos_; }
  [[noreturn]] void fail(const std::string& what) const;

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

IndexSet parse_index_set(std::string_view text);
IndexSet parse_index_set(Cursor& cur);
BoundExpr parse_bound(std::string_view text);
BoundExpr parse_bound(Cursor& cur);

}  // namespace densitylab::setalg
