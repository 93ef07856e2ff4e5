#include "ssg/expr.hpp"

#include <cctype>
#include <sstream>

namespace ssg {

namespace {

struct Token {
  enum class Kind { Ident, Star, Caret, Integer, LParen, RParen, End } kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t col = i + 1;
    if (c == '*') {
      out.push_back({Token::Kind::Star, "*", col});
      ++i;
    } else if (c == '^') {
      out.push_back({Token::Kind::Caret, "^", col});
      ++i;
    } else if (c == '(') {
      out.push_back({Token::Kind::LParen, "(", col});
      ++i;
    } else if (c == ')') {
      out.push_back({Token::Kind::RParen, ")", col});
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      out.push_back({Token::Kind::Ident, src.substr(i, j - i), col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+') {
      std::size_t j = i + 1;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j == i + 1 && !std::isdigit(static_cast<unsigned char>(c)))
        throw validation_error("SyntaxError",
                               "bare sign at column " + std::to_string(col));
      out.push_back({Token::Kind::Integer, src.substr(i, j - i), col});
      i = j;
    } else {
      throw validation_error("SyntaxError", "unexpected character '" + std::string(1, c) +
                                                "' at column " + std::to_string(col));
    }
  }
  out.push_back({Token::Kind::End, "", src.size() + 1});
  return out;
}

struct Parser {
  const std::vector<Token>& tokens;
  std::size_t pos = 0;

  const Token& peek() const { return tokens[pos]; }
  Token next() { return tokens[pos++]; }

  [[noreturn]] void fail(const Token& t, const std::string& expected) {
    throw validation_error("SyntaxError", "expected " + expected + " at column " +
                                              std::to_string(t.column));
  }

  ElementExpr parse_expr() {
    ElementExpr product;
    product.kind = ElementExpr::Kind::Product;
    product.factors.push_back(parse_term());
    while (peek().kind == Token::Kind::Star) {
      next();
      product.factors.push_back(parse_term());
    }
    if (product.factors.size() == 1) return product.factors[0];
    return product;
  }

  ElementExpr parse_term() {
    const Token& t = peek();
    if (t.kind == Token::Kind::Ident) {
      Token ident = next();
      ElementExpr e;
      e.kind = ElementExpr::Kind::Ident;
      e.name = ident.text;
      if (peek().kind == Token::Kind::Caret) {
        next();
        const Token& num = peek();
        if (num.kind != Token::Kind::Integer) fail(num, "an integer exponent");
        e.exponent = Int(next().text);
      }
      return e;
    }
    if (t.kind == Token::Kind::LParen) {
      next();
      ElementExpr inner = parse_expr();
      if (peek().kind != Token::Kind::RParen) fail(peek(), "')'");
      next();
      return inner;
    }
    fail(t, "an identifier or '('");
  }
};

}  // namespace

std::string ElementExpr::str() const {
  if (kind == Kind::Ident) {
    if (exponent == 1) return name;
    return name + "^" + exponent.get_str();
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) os << "*";
    os << factors[i].str();
  }
  return os.str();
}

ElementExpr parse_element(const std::string& src) {
  std::vector<Token> tokens = tokenize(src);
  Parser parser{tokens};
  ElementExpr e = parser.parse_expr();
  if (parser.peek().kind != Token::Kind::End)
    parser.fail(parser.peek(), "end of input");
  return e;
}

GroupElement resolve_element(const ElementExpr& expr,
                             const std::map<std::string, GroupElement>& context) {
  if (expr.kind == ElementExpr::Kind::Ident) {
    auto it = context.find(expr.name);
    if (it == context.end())
      throw validation_error("UnknownGenerator", "undefined identifier " + expr.name);
    return element_pow(it->second, expr.exponent);
  }
  if (expr.factors.empty())
    throw validation_error("SyntaxError", "empty product");
  GroupElement acc = resolve_element(expr.factors[0], context);
  for (std::size_t i = 1; i < expr.factors.size(); ++i)
    acc = element_mul(acc, resolve_element(expr.factors[i], context));
  return acc;
}

FreeWord resolve_word(const ElementExpr& expr, const std::vector<std::string>& alphabet) {
  auto letter_of = [&](const std::string& name) {
    for (std::size_t i = 0; i < alphabet.size(); ++i)
      if (alphabet[i] == name) return static_cast<int>(i) + 1;
    throw validation_error("UnknownGenerator", "undefined identifier " + name);
  };
  if (expr.kind == ElementExpr::Kind::Ident) {
    int l = letter_of(expr.name);
    return free_pow(FreeWord({l}), expr.exponent);
  }
  FreeWord acc;
  for (const auto& f : expr.factors) acc = free_mul(acc, resolve_word(f, alphabet));
  return acc;
}

std::map<std::string, GroupElement> family_context(const FamilyPtr& fam) {
  std::map<std::string, GroupElement> ctx;
  for (int i = 0; i < fam->num_generators(); ++i)
    ctx.emplace(fam->names[static_cast<std::size_t>(i)], GroupElement::generator(fam, i));
  if (fam->kind == FamilyKind::SemidirectHeis)
    ctx.emplace("z", GroupElement::semi_h(fam, HeisElem(0, 0, 1)));
  if (fam->kind == FamilyKind::HnnHeis)
    ctx.emplace("z", GroupElement::hnn_h(fam, HeisRat(Rat(0), Rat(0), Rat(1))));
  return ctx;
}

namespace {

void append_power(std::ostringstream& os, bool& first, const std::string& name, const Int& e) {
  if (e == 0) return;
  if (!first) os << "*";
  first = false;
  os << name;
  if (e != 1) os << "^" << e;
}

std::string word_expr(const FreeWord& w, const std::vector<std::string>& names,
                      std::ostringstream& os, bool& first) {
  std::size_t i = 0;
  while (i < w.letters.size()) {
    int l = w.letters[i];
    std::size_t run = i;
    while (run < w.letters.size() && w.letters[run] == l) ++run;
    Int exp = static_cast<long>(run - i) * (l > 0 ? 1 : -1);
    append_power(os, first, names[static_cast<std::size_t>(std::abs(l) - 1)], exp);
    i = run;
  }
  return os.str();
}

}  // namespace

std::string element_expression(const GroupElement& g) {
  const Family& fam = *g.family;
  std::ostringstream os;
  bool first = true;
  switch (fam.kind) {
    case FamilyKind::Free:
      word_expr(g.w, fam.names, os, first);
      break;
    case FamilyKind::SemidirectZ: {
      for (std::size_t i = 0; i < g.zv.size(); ++i) append_power(os, first, fam.names[i], g.zv[i]);
      std::vector<std::string> tnames(fam.names.begin() + fam.kernel_rank, fam.names.end());
      word_expr(g.w, tnames, os, first);
      break;
    }
    case FamilyKind::SemidirectHeis: {
      append_power(os, first, "x", g.hn.a);
      append_power(os, first, "y", g.hn.b);
      append_power(os, first, "z", g.hn.c);
      std::vector<std::string> tnames(fam.names.begin() + 2, fam.names.end());
      word_expr(g.w, tnames, os, first);
      break;
    }
    case FamilyKind::HnnHeis: {
      // (h, k) = t^-i x1^a y1^b z^c t^{i+k} once phi^i clears the denominators.
      HeisRat cur = g.hh;
      Int shift = 0;
      while (!cur.is_integral()) {
        cur = endo_apply(fam.phi, cur);
        if (++shift > 10000)
          throw budget_error("MembershipBudget", "coordinates never became integral");
      }
      HeisElem n = cur.to_elem();
      append_power(os, first, "t", -shift);
      append_power(os, first, "x1", n.a);
      append_power(os, first, "y1", n.b);
      append_power(os, first, "z", n.c);
      append_power(os, first, "t", shift + g.tk);
      break;
    }
    case FamilyKind::HnnAbelian: {
      RatVec cur = g.qv;
      Int shift = 0;
      auto integral = [](const RatVec& v) {
        for (const auto& x : v)
          if (!is_integral(x)) return false;
        return true;
      };
      while (!integral(cur)) {
        cur = hnn_shift(fam, cur, 1);
        if (++shift > 10000)
          throw budget_error("MembershipBudget", "coordinates never became integral");
      }
      append_power(os, first, "t", -shift);
      for (std::size_t i = 0; i < cur.size(); ++i)
        append_power(os, first, fam.names[i], cur[i].get_num());
      append_power(os, first, "t", shift + g.tk);
      break;
    }
  }
  if (first) return fam.names[0] + "^0";  // identity
  return os.str();
}

}  // namespace ssg
