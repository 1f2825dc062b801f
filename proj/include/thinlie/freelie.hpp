#pragma once

#include <string>
#include <vector>

#include "thinlie/expr.hpp"
#include "thinlie/lyndon.hpp"
#include "thinlie/matrix.hpp"

namespace thinlie {

/// Coordinates of a homogeneous free-Lie element in LyndonBasis(degree).
template <field F>
struct LinComb {
  int degree = 0;
  Vec<F> coords;
};

/// [v, generator] for a dense degree-n coordinate vector; lands in degree n+1.
template <field F>
Vec<F> free_bracket_gen(const F& f, const FreeLie& ctx, int n, const Vec<F>& v, int g) {
  const auto& table = ctx.gen_table(n, g);
  Vec<F> out(ctx.dim(n + 1), f.zero());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (f.is_zero(v[i])) continue;
    for (const auto& [j, c] : table[i])
      out[j] = f.add(out[j], f.mul(v[i], f.from_int(c)));
  }
  return out;
}

/// [u, v] for dense coordinate vectors of degrees i and j.
template <field F>
Vec<F> free_bracket(const F& f, const FreeLie& ctx, int i, const Vec<F>& u, int j, const Vec<F>& v) {
  if (j == 1) {
    Vec<F> out(ctx.dim(i + 1), f.zero());
    for (int g : {kGenX, kGenY}) {
      if (f.is_zero(v[g])) continue;
      auto part = free_bracket_gen(f, ctx, i, u, g);
      for (std::size_t t = 0; t < part.size(); ++t)
        out[t] = f.add(out[t], f.mul(v[g], part[t]));
    }
    return out;
  }
  Vec<F> out(ctx.dim(i + j), f.zero());
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (f.is_zero(u[a])) continue;
    for (std::size_t b = 0; b < v.size(); ++b) {
      if (f.is_zero(v[b])) continue;
      auto scale = f.mul(u[a], v[b]);
      for (const auto& [t, c] : ctx.pair_product(i, static_cast<int>(a), j, static_cast<int>(b)))
        out[t] = f.add(out[t], f.mul(scale, f.from_int(c)));
    }
  }
  return out;
}

namespace detail {
template <field F>
Vec<F> expand_node(const F& f, const FreeLie& ctx, const BracketExpr::NodePtr& n) {
  if (n->leaf >= 0) {
    Vec<F> v(2, f.zero());
    v[n->leaf] = f.one();
    return v;
  }
  auto a = expand_node(f, ctx, n->left);
  auto b = expand_node(f, ctx, n->right);
  return free_bracket(f, ctx, n->left->degree, a, n->right->degree, b);
}
}  // namespace detail

/// Exact coordinates of a homogeneous expression in LyndonBasis(degree).
template <field F>
LinComb<F> expand(const F& f, const FreeLie& ctx, const BracketExpr& e) {
  int d = e.degree();
  if (d > ctx.cap()) throw input_error("expression degree " + std::to_string(d) + " exceeds the configured cap " + std::to_string(ctx.cap()));
  LinComb<F> out{d, Vec<F>(ctx.dim(d), f.zero())};
  for (const auto& [coeff, node] : e.terms) {
    auto v = detail::expand_node(f, ctx, node);
    auto c = f.from_int(coeff);
    for (std::size_t i = 0; i < v.size(); ++i)
      out.coords[i] = f.add(out.coords[i], f.mul(c, v[i]));
  }
  return out;
}

struct SpanCheck {
  bool spans = false;
  int rank = 0;
};

/// Sanity check: the 2^n left-normed words [g1,...,gn] span the degree-n
/// component.
template <field F>
SpanCheck left_normed_span_check(const F& f, const FreeLie& ctx, int n) {
  if (n < 1 || n > ctx.cap()) throw input_error("degree out of range");
  const int target = ctx.dim(n);
  RowSpace<F> space(f, target);
  for (std::uint32_t bits = 0; bits < (1u << n); ++bits) {
    Vec<F> v(2, f.zero());
    v[bits >> (n - 1) & 1u] = f.one();
    for (int i = 1; i < n; ++i)
      v = free_bracket_gen(f, ctx, i, v, static_cast<int>((bits >> (n - 1 - i)) & 1u));
    space.insert(std::move(v));
    if (space.dim() == target) break;
  }
  return {space.dim() == target, space.dim()};
}

/// Render a coordinate vector as a parseable expression over the standard
/// Lyndon bracketings, e.g. "2*[x,y] + [x,[x,y]]"; empty vector renders "0"
/// (which is not itself grammatical, callers guard).
template <field F>
std::string vec_to_expr_string(const F& f, const FreeLie& ctx, int degree, const Vec<F>& coords) {
  // clear denominators so coefficients are integer literals
  Vec<F> v = coords;
  if constexpr (std::is_same_v<F, Rationals>) {
    boost::multiprecision::cpp_int l = 1;
    for (const auto& e : v) l = boost::multiprecision::lcm(l, denominator(e));
    for (auto& e : v) e *= l;
  }
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (f.is_zero(v[i])) continue;
    std::string c = f.to_string(v[i]);
    if (!out.empty()) {
      if (!c.empty() && c[0] == '-') {
        out += " - ";
        c = c.substr(1);
      } else {
        out += " + ";
      }
    }
    if (c != "1") out += c + "*";
    out += ctx.bracket_string(degree, static_cast<int>(i));
  }
  return out.empty() ? "0" : out;
}

}  // namespace thinlie
