#pragma once

#include <cctype>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "thinlie/field.hpp"
#include "thinlie/lyndon.hpp"

namespace thinlie {

/// A formal integer combination of Lie bracket trees over the generators
/// x and y. A flat bracket list [a1,...,an] with n >= 3 denotes the
/// left-normed product [[a1,a2],...,an].
struct BracketExpr {
  struct Node;
  using NodePtr = std::shared_ptr<const Node>;

  struct Node {
    int leaf = -1;  // kGenX / kGenY for leaves, -1 for brackets
    NodePtr left, right;
    int degree = 1;
  };

  std::vector<std::pair<long long, NodePtr>> terms;

  static NodePtr gen(int g) {
    auto n = std::make_shared<Node>();
    n->leaf = g;
    n->degree = 1;
    return n;
  }

  static NodePtr bracket(NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->left = std::move(a);
    n->right = std::move(b);
    n->degree = n->left->degree + n->right->degree;
    return n;
  }

  /// [[g1,g2],...,gn] from a list of generators.
  static NodePtr left_normed(std::span<const int> gens) {
    NodePtr acc = gen(gens[0]);
    for (std::size_t i = 1; i < gens.size(); ++i) acc = bracket(acc, gen(gens[i]));
    return acc;
  }

  static BracketExpr single(NodePtr n, long long coeff = 1) {
    BracketExpr e;
    e.terms.emplace_back(coeff, std::move(n));
    return e;
  }

  /// Common degree of all summands; inhomogeneous expressions are rejected.
  int degree() const {
    if (terms.empty()) throw input_error("empty expression");
    int d = terms.front().second->degree;
    for (const auto& [c, n] : terms)
      if (n->degree != d) throw input_error("inhomogeneous expression: degrees " + std::to_string(d) + " and " + std::to_string(n->degree));
    return d;
  }
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  BracketExpr parse() {
    BracketExpr e;
    skip_ws();
    e.terms.push_back(parse_term(+1));
    skip_ws();
    while (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      int sign = text_[pos_] == '+' ? +1 : -1;
      ++pos_;
      skip_ws();
      e.terms.push_back(parse_term(sign));
      skip_ws();
    }
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw input_error("syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::pair<long long, BracketExpr::NodePtr> parse_term(int sign) {
    skip_ws();
    long long coeff = 1;
    if (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '-' || text_[pos_] == '+')) {
      coeff = parse_int();
      skip_ws();
      if (pos_ >= text_.size() || text_[pos_] != '*') fail("expected '*' after coefficient");
      ++pos_;
      skip_ws();
    }
    return {sign * coeff, parse_bracket()};
  }

  long long parse_int() {
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected integer");
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    try {
      return std::stoll(std::string(text_.substr(start, pos_ - start)));
    } catch (const std::out_of_range&) {
      pos_ = start;
      fail("integer literal out of range");
    }
  }

  BracketExpr::NodePtr parse_bracket() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '[') fail("expected '['");
    ++pos_;
    std::vector<BracketExpr::NodePtr> items;
    items.push_back(parse_item());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == ',') {
      ++pos_;
      items.push_back(parse_item());
      skip_ws();
    }
    if (pos_ >= text_.size() || text_[pos_] != ']') fail("expected ',' or ']'");
    ++pos_;
    if (items.size() < 2) fail("bracket needs at least two items");
    BracketExpr::NodePtr acc = items[0];
    for (std::size_t i = 1; i < items.size(); ++i) acc = BracketExpr::bracket(acc, items[i]);
    return acc;
  }

  BracketExpr::NodePtr parse_item() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected 'x', 'y' or '['");
    char c = text_[pos_];
    if (c == '[') return parse_bracket();
    if (c == 'x' || c == 'y') {
      ++pos_;
      return BracketExpr::gen(c == 'x' ? kGenX : kGenY);
    }
    if (std::isalpha(static_cast<unsigned char>(c)))
      throw input_error("unknown generator '" + std::string(1, c) + "' at position " + std::to_string(pos_));
    fail("expected 'x', 'y' or '['");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline BracketExpr parse_bracket_expr(std::string_view text) {
  return detail::ExprParser(text).parse();
}

inline std::string node_to_string(const BracketExpr::NodePtr& n) {
  if (n->leaf >= 0) return std::string(1, gen_name(n->leaf));
  return "[" + node_to_string(n->left) + "," + node_to_string(n->right) + "]";
}

inline std::string to_string(const BracketExpr& e) {
  std::string out;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    auto [c, n] = e.terms[i];
    if (i == 0) {
      if (c != 1) out += std::to_string(c) + "*";
    } else {
      out += c < 0 ? " - " : " + ";
      long long a = c < 0 ? -c : c;
      if (a != 1) out += std::to_string(a) + "*";
    }
    out += node_to_string(n);
  }
  return out;
}

}  // namespace thinlie
