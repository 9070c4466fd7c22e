#pragma once

// Exact exterior calculus with polynomial coefficients in Darboux charts.
//
// A chart lists (base, fiber) coordinate pairs, M pairs first, then S pairs.
// Coordinate 2k is the base of pair k and 2k+1 its fiber. The symplectic
// form is sum dp ^ dq over all pairs.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sskit {

using Rational = boost::multiprecision::cpp_rational;

class Chart {
 public:
  using Pair = std::pair<std::string, std::string>;

  Chart(std::vector<Pair> m_pairs, std::vector<Pair> s_pairs);
  /// (q, p) and (s, sigma).
  static Chart movie_default();

  std::size_t size() const { return names_.size(); }
  std::size_t m_pairs() const { return m_pairs_; }
  std::size_t s_pairs() const { return names_.size() / 2 - m_pairs_; }
  const std::string& name(int i) const { return names_.at(i); }
  int find(const std::string& name) const;      // -1 if absent
  int index_of(const std::string& name) const;  // throws on unknown names
  bool is_base(int i) const { return i % 2 == 0; }
  bool in_m(int i) const { return static_cast<std::size_t>(i / 2) < m_pairs_; }
  int partner(int i) const { return i ^ 1; }
  bool operator==(const Chart&) const = default;

 private:
  std::vector<std::string> names_;
  std::size_t m_pairs_ = 0;
};

/// Polynomial over the coordinates of a chart with n variables.
class Poly {
 public:
  using Monomial = std::vector<int>;  // exponents

  Poly() = default;
  explicit Poly(std::size_t n) : n_(n) {}
  static Poly constant(std::size_t n, const Rational& c);
  static Poly variable(std::size_t n, int i);
  static Poly monomial(const Monomial& m, const Rational& c);

  std::size_t vars() const { return n_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for zero
  bool uses(int i) const;
  void add_term(const Monomial& m, const Rational& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  bool operator==(const Poly&) const = default;

  Poly pow(int e) const;
  Poly partial(int i) const;
  /// Substitutes sub[i] for variable i.
  Poly substitute(const std::vector<Poly>& sub) const;

 private:
  std::size_t n_ = 0;
  std::map<Monomial, Rational> terms_;
};

/// A differential form of degree 0, 1 or 2. Keys are increasing index lists.
class Form {
 public:
  using Basis = std::vector<int>;

  Form() = default;
  Form(std::size_t n, int degree) : n_(n), degree_(degree) {}
  static Form function(const Poly& f);

  std::size_t vars() const { return n_; }
  int degree() const { return degree_; }
  const std::map<Basis, Poly>& coeffs() const { return coeffs_; }
  Poly coefficient(const Basis& b) const;
  bool is_zero() const { return coeffs_.empty(); }
  /// Adds c * dx_{b[0]} ^ ... with any index order; sorts with sign.
  void add(Basis b, const Poly& c);

  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  bool operator==(const Form&) const = default;

 private:
  std::size_t n_ = 0;
  int degree_ = 0;
  std::map<Basis, Poly> coeffs_;
};

struct VectorField {
  std::vector<Poly> components;
  bool operator==(const VectorField&) const = default;
};

/// Exterior derivative of a form of degree <= 1.
Form d(const Form& w);
Form d(const Poly& f);
/// Differential of f along one coordinate group (M or S).
Form d_m(const Chart& c, const Poly& f);
Form d_s(const Chart& c, const Poly& f);
Poly partial_derivative(const Chart& c, const Poly& f, const std::string& coordinate);

Form standard_symplectic(const Chart& c);
/// The standard primitive sum p dq over the given pair range.
Form standard_liouville(const Chart& c, bool m_part, bool s_part);

/// lambda_M + sum sigma_j ds_j + dh.
Form movie_form(const Chart& c, const Form& lambda_m, const Poly& h);

/// Solves d(lambda)(v, -) = lambda; requires d(lambda) to be standard.
VectorField liouville_field(const Chart& c, const Form& lambda);

bool verify_movie_field_formula(const Chart& c, const Poly& h, const Form& lambda_m);

/// A polynomial map: image[b] is the b-th target coordinate in source coordinates.
using CoordinateMap = std::vector<Poly>;

CoordinateMap identity_coordinate_map(std::size_t n);
/// (f o g)_b = f_b(g).
CoordinateMap compose_maps(const CoordinateMap& f, const CoordinateMap& g);
Form pullback(const CoordinateMap& f, const Form& w);

bool check_strict_pullback(const CoordinateMap& f, const Form& lambda_src, const Form& lambda_dst);

struct ExactPullback {
  std::optional<Poly> h;  // f* lambda_dst - lambda_src = dh
  bool closed = false;
  std::string report;
};

/// Compact support of h is not checked.
ExactPullback check_exact_pullback(const CoordinateMap& f, const Form& lambda_src, const Form& lambda_dst);

/// Primitive of a closed polynomial 1-form by the radial homotopy.
std::optional<Poly> polynomial_primitive(const Form& w);

// Text.
Poly parse_poly(const Chart& c, const std::string& text);
/// Infix `p dq + (s+1) ds` or s-expression `(form1 ((p) dq) ...)`.
Form parse_form(const Chart& c, const std::string& text);
CoordinateMap parse_map(const Chart& c, const std::string& text);  // `q+1, p`
std::string format_poly(const Chart& c, const Poly& f);
std::string format_form(const Chart& c, const Form& w);       // s-expression, one entry per monomial
std::string format_form_infix(const Chart& c, const Form& w);
std::string format_field(const Chart& c, const VectorField& v);
/// Parses `q,p;q2,p2`.
std::vector<Chart::Pair> parse_pairs(const std::string& text);

struct MovieFixture {
  std::string name;
  Chart chart;
  std::string lambda_m;
  std::string h;
};

const std::vector<MovieFixture>& movie_fixtures();

}  // namespace sskit
