#pragma once

#include <map>
#include <string>
#include <vector>

#include "sps/linalg.hpp"
#include "sps/report.hpp"
#include "sps/system.hpp"

namespace sps {

// Monomial in the noncommuting generators x0..xn, stored as the sequence of
// letter indices. The empty word is the unit.
using Word = std::vector<int>;

// Finite linear combination of words with complex coefficients.
struct NcPolynomial {
  int n = 0;
  std::map<Word, Scalar> terms;

  bool is_zero(double tol = 1e-14) const;
  bool is_homogeneous(double tol = 1e-14) const;
  // Degree of the highest nonzero term, -1 for the zero polynomial.
  int degree(double tol = 1e-14) const;
};

// Parses the textual form: a signed sum of terms, each an optional
// coefficient followed by generators. Coefficients are integers, fractions
// like 3/4, decimals, the literal i, or a parenthesised complex (a+bi).
// Generators are x followed by a decimal index, juxtaposed with optional *
// separators. Throws std::runtime_error with a position on malformed input
// and on generator indices above n.
NcPolynomial parse_polynomial(const std::string& text, int n);

// Canonical rendering; parse_polynomial inverts it.
std::string format_polynomial(const NcPolynomial& p);

double max_coefficient_distance(const NcPolynomial& a, const NcPolynomial& b);

// The quadratic polynomial whose coefficient vector is sqrt(n+1) times the
// determinant vector: alternating sum of x_i x_{n-i}.
NcPolynomial determinant_polynomial(int n);

// Coefficient vector of the degree component, indexed big-endian by word.
Vec coefficient_vector(const NcPolynomial& p, int degree);

NcPolynomial polynomial_from_vector(const Vec& coeffs, int degree, int n);

// Orthonormal basis of the degree m component of the two sided ideal
// generated by the given homogeneous polynomials, for each m up to
// max_degree. Component m is spanned by all words-times-generator-times-words
// insertions of total degree m.
std::vector<Mat> ideal_components(const std::vector<NcPolynomial>& generators, int max_degree);

// Subproduct system whose fibers are the orthocomplements of the ideal
// components. Generators must be homogeneous of degree at least 2.
SubproductSystem system_from_ideal(const std::vector<NcPolynomial>& generators, int max_degree);

// Polynomials spanning the degree component of the ideal that cuts out the
// fibers of the system, read off the orthocomplement of the ambient basis.
std::vector<NcPolynomial> ideal_from_system(SubproductSystem& sys, int degree);

// Compares the fibers of the determinant system built by the intersection
// recursion against the orthocomplements of the ideal components, and checks
// the ideal recovered from the system in degree 2 spans the generator again.
std::vector<IdentityReport> verify_ideal_correspondence(int n, int max_degree);

}  // namespace sps
