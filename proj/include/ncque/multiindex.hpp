#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncque/rational.hpp"

namespace ncque {

/// Fixed-length tuple of naturals: length 3 for central indices, 4 for Q/P
/// indices, 7 for full PBW exponents.
template <std::size_t N>
using MultiIndex = std::array<int, N>;

template <std::size_t N>
int norm(const MultiIndex<N>& idx)
{
  int s = 0;
  for (int v : idx) s += v;
  return s;
}

template <std::size_t N>
Integer factorial(const MultiIndex<N>& idx)
{
  Integer f = 1;
  for (int v : idx) f *= factorial(static_cast<unsigned>(v));
  return f;
}

/// (|I|, I!)
template <std::size_t N>
std::pair<int, Integer> norm_factorial(const MultiIndex<N>& idx)
{
  return {norm(idx), factorial(idx)};
}

/// Product of componentwise binomials; 0 as soon as some j_k > i_k.
template <std::size_t N>
Integer binomial(const MultiIndex<N>& i, const MultiIndex<N>& j)
{
  Integer b = 1;
  for (std::size_t k = 0; k < N; ++k) {
    if (j[k] < 0 || j[k] > i[k]) return 0;
    b *= binomial(static_cast<unsigned>(i[k]), static_cast<unsigned>(j[k]));
  }
  return b;
}

/// a*I + b*J, or nullopt when a component goes negative.
template <std::size_t N>
std::optional<MultiIndex<N>> combine(int a, const MultiIndex<N>& i, int b, const MultiIndex<N>& j)
{
  MultiIndex<N> out{};
  for (std::size_t k = 0; k < N; ++k) {
    out[k] = a * i[k] + b * j[k];
    if (out[k] < 0) return std::nullopt;
  }
  return out;
}

template <std::size_t N>
MultiIndex<N> unit_index(std::size_t k)
{
  MultiIndex<N> out{};
  out[k] = 1;
  return out;
}

/// Componentwise order.
template <std::size_t N>
bool leq(const MultiIndex<N>& a, const MultiIndex<N>& b)
{
  for (std::size_t k = 0; k < N; ++k)
    if (a[k] > b[k]) return false;
  return true;
}

/// Calls f(M) for every 0 <= M <= upper, in lexicographic order.
template <std::size_t N, typename F>
void for_each_below(const MultiIndex<N>& upper, F&& f)
{
  MultiIndex<N> m{};
  while (true) {
    f(static_cast<const MultiIndex<N>&>(m));
    std::size_t k = N;
    while (k > 0) {
      --k;
      if (m[k] < upper[k]) {
        ++m[k];
        break;
      }
      m[k] = 0;
      if (k == 0) return;
    }
    if constexpr (N == 0) return;
  }
}

/// Every index with |M| <= max_norm, lexicographically ordered.
template <std::size_t N>
std::vector<MultiIndex<N>> indices_up_to(int max_norm)
{
  std::vector<MultiIndex<N>> out;
  MultiIndex<N> upper;
  upper.fill(max_norm);
  for_each_below(upper, [&](const MultiIndex<N>& m) {
    if (norm(m) <= max_norm) out.push_back(m);
  });
  return out;
}

template <std::size_t N>
std::string to_string(const MultiIndex<N>& idx)
{
  std::string s = "(";
  for (std::size_t k = 0; k < N; ++k) {
    if (k) s += ",";
    s += std::to_string(idx[k]);
  }
  return s + ")";
}

}  // namespace ncque
