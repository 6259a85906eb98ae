#include "sps/ncpoly.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace sps {

namespace {

constexpr double kCoeffTol = 1e-14;

// Recursive descent parser for the textual polynomial form. Reports errors
// with the zero based offset of the offending character.
class Parser {
 public:
  Parser(const std::string& text, int n) : text_(text), n_(n) {}

  NcPolynomial run() {
    NcPolynomial p;
    p.n = n_;
    skip_ws();
    if (eof()) fail("empty polynomial");
    double sign = 1.0;
    if (peek() == '+' || peek() == '-') {
      sign = (get() == '-') ? -1.0 : 1.0;
      skip_ws();
    }
    parse_term(p, sign);
    skip_ws();
    while (!eof()) {
      char c = get();
      if (c != '+' && c != '-') fail("expected + or - between terms");
      skip_ws();
      parse_term(p, c == '-' ? -1.0 : 1.0);
      skip_ws();
    }
    return p;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() { return text_[pos_++]; }
  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n')) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream msg;
    msg << "parse error at offset " << pos_ << ": " << what;
    throw std::runtime_error(msg.str());
  }

  bool at_digit() const { return !eof() && peek() >= '0' && peek() <= '9'; }

  long parse_integer() {
    if (!at_digit()) fail("expected a digit");
    long value = 0;
    while (at_digit()) {
      value = value * 10 + (get() - '0');
      if (value > 1'000'000'000L) fail("integer literal too large");
    }
    return value;
  }

  // Unsigned number: digits, optional fraction or decimal point, optional
  // exponent. Fractions like 3/4 are evaluated on the spot.
  double parse_number() {
    std::size_t start = pos_;
    if (!at_digit()) fail("expected a number");
    while (at_digit()) ++pos_;
    if (!eof() && peek() == '/') {
      ++pos_;
      std::size_t den_start = pos_;
      if (!at_digit()) fail("expected a denominator");
      while (at_digit()) ++pos_;
      double num = std::strtod(text_.substr(start, den_start - 1 - start).c_str(), nullptr);
      double den = std::strtod(text_.substr(den_start, pos_ - den_start).c_str(), nullptr);
      if (den == 0.0) fail("zero denominator");
      return num / den;
    }
    if (!eof() && peek() == '.') {
      ++pos_;
      while (at_digit()) ++pos_;
    }
    if (!eof() && (peek() == 'e' || peek() == 'E')) {
      ++pos_;
      if (!eof() && (peek() == '+' || peek() == '-')) ++pos_;
      if (!at_digit()) fail("expected an exponent");
      while (at_digit()) ++pos_;
    }
    return std::strtod(text_.substr(start, pos_ - start).c_str(), nullptr);
  }

  // Parenthesised complex literal (a+bi), (a-bi), (bi) or (a).
  Scalar parse_complex() {
    if (eof() || get() != '(') fail("expected (");
    skip_ws();
    double first_sign = 1.0;
    if (!eof() && (peek() == '+' || peek() == '-')) first_sign = (get() == '-') ? -1.0 : 1.0;
    skip_ws();
    double re = 0.0;
    double im = 0.0;
    if (!eof() && peek() == 'i') {
      ++pos_;
      im = first_sign;
    } else {
      double first = parse_number();
      skip_ws();
      if (!eof() && peek() == 'i') {
        ++pos_;
        im = first_sign * first;
      } else {
        re = first_sign * first;
        skip_ws();
        if (!eof() && (peek() == '+' || peek() == '-')) {
          double second_sign = (get() == '-') ? -1.0 : 1.0;
          skip_ws();
          double second = 1.0;
          if (peek() != 'i') second = parse_number();
          skip_ws();
          if (eof() || get() != 'i') fail("expected i in complex literal");
          im = second_sign * second;
        }
      }
    }
    skip_ws();
    if (eof() || get() != ')') fail("expected )");
    return Scalar(re, im);
  }

  void parse_term(NcPolynomial& p, double sign) {
    Scalar coeff(1.0, 0.0);
    bool have_coeff = false;
    if (!eof()) {
      if (at_digit()) {
        coeff = Scalar(parse_number(), 0.0);
        have_coeff = true;
      } else if (peek() == 'i') {
        ++pos_;
        coeff = Scalar(0.0, 1.0);
        have_coeff = true;
      } else if (peek() == '(') {
        coeff = parse_complex();
        have_coeff = true;
      }
    }
    if (have_coeff) {
      skip_ws();
      if (!eof() && peek() == '*') {
        ++pos_;
        skip_ws();
      }
    }
    Word word;
    while (!eof() && peek() == 'x') {
      ++pos_;
      long index = parse_integer();
      if (index > n_) fail("generator index exceeds n");
      word.push_back(static_cast<int>(index));
      skip_ws();
      if (!eof() && peek() == '*') {
        ++pos_;
        skip_ws();
        if (eof() || peek() != 'x') fail("expected a generator after *");
      }
    }
    if (!have_coeff && word.empty()) fail("expected a term");
    p.terms[word] += sign * coeff;
  }

  const std::string& text_;
  int n_;
  std::size_t pos_ = 0;
};

std::string format_real(double v) {
  double rounded = std::round(v);
  if (std::abs(v - rounded) < 1e-12 && std::abs(v) < 1e15) {
    std::ostringstream out;
    out << static_cast<long long>(rounded);
    return out.str();
  }
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

bool NcPolynomial::is_zero(double tol) const {
  for (const auto& [word, coeff] : terms) {
    if (std::abs(coeff) > tol) return false;
  }
  return true;
}

bool NcPolynomial::is_homogeneous(double tol) const {
  int seen = -1;
  for (const auto& [word, coeff] : terms) {
    if (std::abs(coeff) <= tol) continue;
    int deg = static_cast<int>(word.size());
    if (seen >= 0 && deg != seen) return false;
    seen = deg;
  }
  return true;
}

int NcPolynomial::degree(double tol) const {
  int deg = -1;
  for (const auto& [word, coeff] : terms) {
    if (std::abs(coeff) > tol) deg = std::max(deg, static_cast<int>(word.size()));
  }
  return deg;
}

NcPolynomial parse_polynomial(const std::string& text, int n) {
  if (n < 0) throw std::invalid_argument("alphabet bound must be nonnegative");
  return Parser(text, n).run();
}

std::string format_polynomial(const NcPolynomial& p) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [word, coeff] : p.terms) {
    if (std::abs(coeff) <= kCoeffTol) continue;
    double re = coeff.real();
    double im = coeff.imag();
    bool pure_real = std::abs(im) <= kCoeffTol;
    bool pure_imag = std::abs(re) <= kCoeffTol && !pure_real;

    std::string lead;
    std::string body;
    if (pure_real) {
      lead = (re < 0.0) ? "-" : "+";
      double mag = std::abs(re);
      if (std::abs(mag - 1.0) > kCoeffTol || word.empty()) body = format_real(mag);
    } else if (pure_imag) {
      lead = (im < 0.0) ? "-" : "+";
      double mag = std::abs(im);
      if (std::abs(mag - 1.0) <= kCoeffTol) {
        body = "i";
      } else {
        body = "(" + format_real(mag) + "i)";
      }
    } else {
      lead = "+";
      body = "(" + format_real(re) + (im < 0.0 ? "-" : "+") + format_real(std::abs(im)) + "i)";
    }

    if (first) {
      if (lead == "-") out << "-";
    } else {
      out << " " << lead << " ";
    }
    first = false;

    bool need_star = !body.empty();
    out << body;
    for (int letter : word) {
      if (need_star) out << "*";
      out << "x" << letter;
      need_star = true;
    }
  }
  if (first) out << "0";
  return out.str();
}

double max_coefficient_distance(const NcPolynomial& a, const NcPolynomial& b) {
  double worst = 0.0;
  for (const auto& [word, coeff] : a.terms) {
    auto it = b.terms.find(word);
    Scalar other = (it == b.terms.end()) ? Scalar(0.0) : it->second;
    worst = std::max(worst, std::abs(coeff - other));
  }
  for (const auto& [word, coeff] : b.terms) {
    if (a.terms.find(word) == a.terms.end()) worst = std::max(worst, std::abs(coeff));
  }
  return worst;
}

NcPolynomial determinant_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("fiber parameter must be at least 1");
  NcPolynomial p;
  p.n = n;
  for (int i = 0; i <= n; ++i) {
    p.terms[{i, n - i}] = Scalar((i % 2 == 0) ? 1.0 : -1.0, 0.0);
  }
  return p;
}

Vec coefficient_vector(const NcPolynomial& p, int degree) {
  if (degree < 0) throw std::invalid_argument("degree must be nonnegative");
  TensorIndexer indexer(p.n + 1, degree);
  Vec v = Vec::Zero(indexer.size());
  for (const auto& [word, coeff] : p.terms) {
    if (static_cast<int>(word.size()) != degree) continue;
    if (std::abs(coeff) <= kCoeffTol) continue;
    v(indexer.flat(word)) = coeff;
  }
  return v;
}

NcPolynomial polynomial_from_vector(const Vec& coeffs, int degree, int n) {
  TensorIndexer indexer(n + 1, degree);
  if (coeffs.size() != indexer.size()) {
    throw std::invalid_argument("coefficient vector has wrong length for the degree");
  }
  NcPolynomial p;
  p.n = n;
  for (std::int64_t i = 0; i < indexer.size(); ++i) {
    if (std::abs(coeffs(i)) <= 1e-13) continue;
    std::vector<int> word = indexer.word(i);
    p.terms[Word(word.begin(), word.end())] = coeffs(i);
  }
  return p;
}

std::vector<Mat> ideal_components(const std::vector<NcPolynomial>& generators, int max_degree) {
  if (generators.empty()) throw std::invalid_argument("need at least one generator");
  int n = generators.front().n;
  for (const NcPolynomial& g : generators) {
    if (g.n != n) throw std::invalid_argument("generators must share one alphabet");
    if (g.is_zero() || !g.is_homogeneous() || g.degree() < 2) {
      throw std::invalid_argument("generators must be homogeneous of degree at least 2");
    }
  }
  const Index h = n + 1;
  std::vector<Mat> components(max_degree + 1);
  for (int m = 0; m <= max_degree; ++m) {
    Index rows = 1;
    for (int j = 0; j < m; ++j) rows *= h;
    std::vector<Mat> spans;
    Index total_cols = 0;
    for (const NcPolynomial& g : generators) {
      int deg = g.degree();
      if (deg > m) continue;
      Mat gcol = coefficient_vector(g, deg);
      for (int a = 0; a + deg <= m; ++a) {
        Index left = 1, right = 1;
        for (int j = 0; j < a; ++j) left *= h;
        for (int j = 0; j < m - deg - a; ++j) right *= h;
        spans.push_back(kron(identity(left), kron(gcol, identity(right))));
        total_cols += spans.back().cols();
      }
    }
    if (spans.empty()) {
      components[m] = Mat::Zero(rows, 0);
      continue;
    }
    Mat stacked(rows, total_cols);
    Index at = 0;
    for (const Mat& s : spans) {
      stacked.middleCols(at, s.cols()) = s;
      at += s.cols();
    }
    components[m] = onb_of_span(stacked);
  }
  return components;
}

SubproductSystem system_from_ideal(const std::vector<NcPolynomial>& generators, int max_degree) {
  if (max_degree < 1) throw std::invalid_argument("maximum degree must be at least 1");
  int n = generators.empty() ? -1 : generators.front().n;
  if (n < 1) throw std::invalid_argument("need generators in at least two variables");
  std::vector<Mat> components = ideal_components(generators, max_degree);
  const Index h = n + 1;
  std::vector<Mat> bases;
  bases.push_back(Mat::Constant(1, 1, Scalar(1.0)));
  bases.push_back(identity(h));
  for (int m = 2; m <= max_degree; ++m) {
    Index rows = 1;
    for (int j = 0; j < m; ++j) rows *= h;
    if (components[m].cols() == 0) {
      bases.push_back(identity(rows));
    } else {
      Mat fiber = onb_of_complement(components[m]);
      if (fiber.cols() == 0) {
        throw std::runtime_error("ideal fills a whole degree; the system would collapse");
      }
      bases.push_back(std::move(fiber));
    }
  }
  return SubproductSystem(n, std::move(bases), Vec());
}

std::vector<NcPolynomial> ideal_from_system(SubproductSystem& sys, int degree) {
  if (degree < 2 || degree > sys.ambient_max()) {
    throw std::invalid_argument("degree must lie in the ambient window and be at least 2");
  }
  Mat complement = onb_of_complement(sys.basis(degree));
  std::vector<NcPolynomial> result;
  for (Index c = 0; c < complement.cols(); ++c) {
    result.push_back(polynomial_from_vector(complement.col(c), degree, sys.n()));
  }
  return result;
}

std::vector<IdentityReport> verify_ideal_correspondence(int n, int max_degree) {
  const double tol = 1e-9;
  std::vector<IdentityReport> reports;
  SubproductSystem recursive = build_system(n, max_degree);
  const int top = std::min(max_degree, recursive.ambient_max());
  std::vector<NcPolynomial> gens = {determinant_polynomial(n)};
  SubproductSystem from_ideal = system_from_ideal(gens, top);

  for (int m = 2; m <= top; ++m) {
    const Mat& a = recursive.basis(m);
    const Mat& b = from_ideal.basis(m);
    double defect = std::abs(static_cast<double>(a.cols() - b.cols()));
    reports.push_back(
        make_report("ideal_fiber_dimension", {{"m", static_cast<double>(m)}}, defect, 0.0));
    reports.push_back(make_report("ideal_fiber_projector", {{"m", static_cast<double>(m)}},
                                  residual_norm(a * a.adjoint(), b * b.adjoint()), tol));
  }

  // Round trip: the degree 2 ideal component recovered from the system spans
  // the original generator.
  std::vector<NcPolynomial> recovered = ideal_from_system(recursive, 2);
  double span_defect = 1.0;
  if (recovered.size() == 1) {
    Vec v = coefficient_vector(recovered.front(), 2);
    Vec g = coefficient_vector(determinant_polynomial(n), 2);
    g /= g.norm();
    Scalar overlap = g.adjoint() * v;
    span_defect = std::abs(std::abs(overlap) - 1.0);
  }
  reports.push_back(make_report("ideal_round_trip", {{"degree", 2.0}}, span_defect, tol));

  sort_reports(reports);
  return reports;
}

}  // namespace sps
