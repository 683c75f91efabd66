// Copyright 2026 The opaqnet authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace opaqnet {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Renders "num" when the denominator is 1, "num/den" otherwise.
inline std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

// Accepts "num", "num/den", or a plain decimal like "0.05".
Rational rational_from_string(const std::string& text);

// Largest integer s with s*s <= v (v >= 0).
Integer integer_sqrt_floor(const Integer& v);

// Exact value m*sqrt(r) with m, r rational, r >= 0. Used for leakage values on
// a one-qubit interface, where the trace distance is the square root of a
// rational.
struct ExactRadical {
  Rational multiplier;
  Rational radicand;  // squarefree after normalize()

  static ExactRadical sqrt_of(const Rational& q);
  bool is_rational() const { return radicand == 1 || multiplier == 0; }
  Rational rational_value() const;  // requires is_rational()
  double value() const;
  std::string str() const;
};

inline Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + text);
    return Rational(num, den);
  }
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(Integer(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  Integer num(digits);
  Integer den = 1;
  for (size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  return Rational(num, den);
}

inline Integer integer_sqrt_floor(const Integer& v) {
  if (v < 0) throw std::domain_error("negative sqrt");
  if (v < 2) return v;
  Integer lo = 1, hi = v;
  while (lo < hi) {
    Integer mid = (lo + hi + 1) / 2;
    if (mid * mid <= v)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

inline ExactRadical ExactRadical::sqrt_of(const Rational& q) {
  if (q < 0) throw std::domain_error("sqrt of negative rational");
  if (q == 0) return {0, 1};
  // sqrt(a/b) = sqrt(a*b)/b; split a*b into square * squarefree.
  Integer a = numerator(q), b = denominator(q);
  Integer prod = a * b;
  Integer root = integer_sqrt_floor(prod);
  if (root * root == prod) return {Rational(root, b), 1};
  // Pull out the largest square divisor by trial division; values here come
  // from sums of a handful of small-denominator squares, so factors are tiny.
  Integer square = 1, rest = prod;
  for (Integer f = 2; f * f <= rest; ++f) {
    while (rest % (f * f) == 0) {
      rest /= f * f;
      square *= f;
    }
  }
  return {Rational(square, b), Rational(rest)};
}

inline Rational ExactRadical::rational_value() const {
  if (multiplier == 0) return 0;
  if (radicand != 1) throw std::logic_error("radical is irrational");
  return multiplier;
}

inline double ExactRadical::value() const {
  return to_double(multiplier) * std::sqrt(to_double(radicand));
}

inline std::string ExactRadical::str() const {
  if (is_rational()) return rational_to_string(rational_value());
  std::string m = rational_to_string(multiplier);
  std::string r = rational_to_string(radicand);
  if (multiplier == 1) return "sqrt(" + r + ")";
  return "(" + m + ")*sqrt(" + r + ")";
}

}  // namespace opaqnet
