#pragma once

#include <map>
#include <string>
#include <vector>

#include "ssg/family.hpp"

namespace ssg {

// Element expression AST for the grammar
//   expr := term ('*' term)*
//   term := ident ('^' int)? | '(' expr ')'
// Products are left-associative; undefined identifiers fail at resolution.
struct ElementExpr {
  enum class Kind { Ident, Product };
  Kind kind = Kind::Product;

  std::string name;  // Ident
  Int exponent{1};   // Ident

  std::vector<ElementExpr> factors;  // Product

  std::string str() const;
};

// Raises SyntaxError with the 1-based column of the offending token.
ElementExpr parse_element(const std::string& src);

// Resolution against a name -> element context; raises UnknownGenerator.
GroupElement resolve_element(const ElementExpr& expr,
                             const std::map<std::string, GroupElement>& context);

// Word resolution over a plain alphabet (used for automaton state words and
// relation words); exponent k expands to |k| letters.
FreeWord resolve_word(const ElementExpr& expr, const std::vector<std::string>& alphabet);

// Name -> element context of a family: declared generators plus the central
// element z for the Heisenberg kinds.
std::map<std::string, GroupElement> family_context(const FamilyPtr& fam);

// Canonical expression for a group element (always re-parseable; identity
// prints as <first generator>^0).
std::string element_expression(const GroupElement& g);

}  // namespace ssg
