#include "sskit/cartan.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "sskit/error.hpp"

namespace sskit {

namespace {

bool ident_char(char ch) {
  const auto u = static_cast<unsigned char>(ch);
  return std::isalnum(u) || ch == '_' || u >= 0x80;
}

bool valid_name(const std::string& s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), ident_char);
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

void same_vars(std::size_t a, std::size_t b) {
  if (a != b) throw Error("polynomials over different coordinate sets");
}

}  // namespace


Chart::Chart(std::vector<Pair> m_pairs, std::vector<Pair> s_pairs) : m_pairs_(m_pairs.size()) {
  for (const auto* group : {&m_pairs, &s_pairs})
    for (const auto& [base, fiber] : *group) {
      names_.push_back(base);
      names_.push_back(fiber);
    }
  if (names_.empty()) throw Error("chart needs at least one coordinate pair");
  for (const auto& n : names_)
    if (!valid_name(n)) throw Error("invalid coordinate name '" + n + "'");
  for (std::size_t a = 0; a < names_.size(); ++a)
    for (std::size_t b = 0; b < names_.size(); ++b) {
      if (a != b && names_[a] == names_[b]) throw Error("repeated coordinate name '" + names_[a] + "'");
      if (names_[a] == "d" + names_[b]) throw Error("coordinate name '" + names_[a] + "' clashes with a differential");
    }
}

Chart Chart::movie_default() { return Chart({{"q", "p"}}, {{"s", "sigma"}}); }

int Chart::find(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

int Chart::index_of(const std::string& name) const {
  const int i = find(name);
  if (i < 0) throw Error("unknown coordinate '" + name + "'");
  return i;
}


Poly Poly::constant(std::size_t n, const Rational& c) {
  Poly p(n);
  p.add_term(Monomial(n, 0), c);
  return p;
}

Poly Poly::variable(std::size_t n, int i) {
  Monomial m(n, 0);
  m.at(i) = 1;
  return monomial(m, 1);
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p(m.size());
  p.add_term(m, c);
  return p;
}

int Poly::degree() const {
  int deg = -1;
  for (const auto& [m, c] : terms_) {
    int s = 0;
    for (int e : m) s += e;
    deg = std::max(deg, s);
  }
  return deg;
}

bool Poly::uses(int i) const {
  for (const auto& [m, c] : terms_)
    if (m[i] > 0) return true;
  return false;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != n_) throw Error("monomial has the wrong number of variables");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Poly Poly::operator-() const {
  Poly out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  same_vars(n_, o.n_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  same_vars(n_, o.n_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  same_vars(a.n_, b.n_);
  Poly out(a.n_);
  Poly::Monomial m(a.n_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.n_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

Poly Poly::pow(int e) const {
  if (e < 0) throw Error("negative exponent");
  Poly out = constant(n_, 1), base(*this);
  while (e > 0) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return out;
}

Poly Poly::partial(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= n_) throw Error("derivative index out of range");
  Poly out(n_);
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial k(m);
    --k[i];
    out.add_term(k, c * m[i]);
  }
  return out;
}

Poly Poly::substitute(const std::vector<Poly>& sub) const {
  if (sub.size() != n_) throw Error("substitution has the wrong number of entries");
  if (sub.empty()) return *this;
  const std::size_t target = sub.front().vars();
  for (const auto& s : sub) same_vars(target, s.vars());
  std::vector<std::vector<Poly>> powers(n_);
  Poly out(target);
  for (const auto& [m, c] : terms_) {
    Poly term = constant(target, c);
    for (std::size_t i = 0; i < n_; ++i) {
      if (m[i] == 0) continue;
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(constant(target, 1));
      while (static_cast<int>(pw.size()) <= m[i]) pw.push_back(pw.back() * sub[i]);
      term = term * pw[m[i]];
    }
    out += term;
  }
  return out;
}


Form Form::function(const Poly& f) {
  Form w(f.vars(), 0);
  w.add({}, f);
  return w;
}

Poly Form::coefficient(const Basis& b) const {
  auto it = coeffs_.find(b);
  return it == coeffs_.end() ? Poly(n_) : it->second;
}

void Form::add(Basis b, const Poly& c) {
  if (static_cast<int>(b.size()) != degree_) throw Error("basis element has the wrong degree");
  same_vars(n_, c.vars());
  for (int i : b)
    if (i < 0 || static_cast<std::size_t>(i) >= n_) throw Error("basis index out of range");
  bool negate = false;
  for (std::size_t a = 0; a < b.size(); ++a)
    for (std::size_t k = 0; k + 1 < b.size() - a; ++k)
      if (b[k] > b[k + 1]) {
        std::swap(b[k], b[k + 1]);
        negate = !negate;
      }
  if (std::adjacent_find(b.begin(), b.end()) != b.end() || c.is_zero()) return;
  auto it = coeffs_.find(b);
  if (it == coeffs_.end()) {
    coeffs_.emplace(b, negate ? -c : c);
    return;
  }
  if (negate) it->second -= c;
  else it->second += c;
  if (it->second.is_zero()) coeffs_.erase(it);
}

Form& Form::operator+=(const Form& o) {
  if (degree_ != o.degree_) throw Error("adding forms of different degrees");
  same_vars(n_, o.n_);
  for (const auto& [b, c] : o.coeffs_) add(b, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  if (degree_ != o.degree_) throw Error("subtracting forms of different degrees");
  same_vars(n_, o.n_);
  for (const auto& [b, c] : o.coeffs_) add(b, -c);
  return *this;
}


Form d(const Poly& f) {
  Form out(f.vars(), 1);
  for (std::size_t a = 0; a < f.vars(); ++a) out.add({static_cast<int>(a)}, f.partial(static_cast<int>(a)));
  return out;
}

Form d(const Form& w) {
  if (w.degree() == 0) return d(w.coefficient({}));
  if (w.degree() != 1) throw Error("exterior derivative is only implemented up to degree 1");
  Form out(w.vars(), 2);
  for (const auto& [basis, coeff] : w.coeffs())
    for (std::size_t b = 0; b < w.vars(); ++b)
      out.add({static_cast<int>(b), basis[0]}, coeff.partial(static_cast<int>(b)));
  return out;
}

namespace {

Form d_group(const Chart& c, const Poly& f, bool m_group) {
  same_vars(c.size(), f.vars());
  Form out(f.vars(), 1);
  for (std::size_t a = 0; a < f.vars(); ++a)
    if (c.in_m(static_cast<int>(a)) == m_group) out.add({static_cast<int>(a)}, f.partial(static_cast<int>(a)));
  return out;
}

}  // namespace

Form d_m(const Chart& c, const Poly& f) { return d_group(c, f, true); }
Form d_s(const Chart& c, const Poly& f) { return d_group(c, f, false); }

Poly partial_derivative(const Chart& c, const Poly& f, const std::string& coordinate) {
  same_vars(c.size(), f.vars());
  return f.partial(c.index_of(coordinate));
}

Form standard_symplectic(const Chart& c) {
  Form out(c.size(), 2);
  for (std::size_t k = 0; 2 * k < c.size(); ++k)
    out.add({static_cast<int>(2 * k + 1), static_cast<int>(2 * k)}, Poly::constant(c.size(), 1));
  return out;
}

Form standard_liouville(const Chart& c, bool m_part, bool s_part) {
  Form out(c.size(), 1);
  for (std::size_t k = 0; 2 * k < c.size(); ++k) {
    const int base = static_cast<int>(2 * k);
    if (c.in_m(base) ? m_part : s_part) out.add({base}, Poly::variable(c.size(), base + 1));
  }
  return out;
}

Form movie_form(const Chart& c, const Form& lambda_m, const Poly& h) {
  if (lambda_m.degree() != 1) throw Error("lambda_M must be a 1-form");
  same_vars(c.size(), lambda_m.vars());
  same_vars(c.size(), h.vars());
  for (const auto& [basis, coeff] : lambda_m.coeffs()) {
    bool ok = c.in_m(basis[0]);
    for (std::size_t i = 0; ok && i < c.size(); ++i) ok = c.in_m(static_cast<int>(i)) || !coeff.uses(static_cast<int>(i));
    if (!ok) throw Error("lambda_M must use only M coordinates");
  }
  return lambda_m + standard_liouville(c, false, true) + d(h);
}

VectorField liouville_field(const Chart& c, const Form& lambda) {
  if (lambda.degree() != 1) throw Error("Liouville field needs a 1-form");
  same_vars(c.size(), lambda.vars());
  if (!(d(lambda) == standard_symplectic(c))) throw Error("non-Darboux primitive");
  VectorField v;
  v.components.assign(c.size(), Poly(c.size()));
  for (std::size_t k = 0; 2 * k < c.size(); ++k) {
    const int base = static_cast<int>(2 * k), fiber = base + 1;
    v.components[fiber] = lambda.coefficient({base});
    v.components[base] = -lambda.coefficient({fiber});
  }
  return v;
}

bool verify_movie_field_formula(const Chart& c, const Poly& h, const Form& lambda_m) {
  const auto v = liouville_field(c, movie_form(c, lambda_m, h));
  for (std::size_t k = c.m_pairs(); 2 * k < c.size(); ++k) {
    const int base = static_cast<int>(2 * k), fiber = base + 1;
    const Poly expected = Poly::variable(c.size(), fiber) + h.partial(base);
    if (!(v.components[fiber] == expected)) return false;
  }
  return true;
}


CoordinateMap identity_coordinate_map(std::size_t n) {
  CoordinateMap out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Poly::variable(n, static_cast<int>(i)));
  return out;
}

CoordinateMap compose_maps(const CoordinateMap& f, const CoordinateMap& g) {
  CoordinateMap out;
  for (const auto& fb : f) out.push_back(fb.substitute(g));
  return out;
}

Form pullback(const CoordinateMap& f, const Form& w) {
  if (f.size() != w.vars()) throw Error("map target does not match the form");
  if (f.empty()) throw Error("empty coordinate map");
  const std::size_t n = f.front().vars();
  std::vector<Form> df;
  for (const auto& fb : f) df.push_back(d(fb));
  Form out(n, w.degree());
  for (const auto& [basis, coeff] : w.coeffs()) {
    const Poly a = coeff.substitute(f);
    if (w.degree() == 0) {
      out.add({}, a);
    } else if (w.degree() == 1) {
      for (const auto& [bi, ci] : df[basis[0]].coeffs()) out.add(bi, a * ci);
    } else {
      for (const auto& [bi, ci] : df[basis[0]].coeffs())
        for (const auto& [bj, cj] : df[basis[1]].coeffs()) out.add({bi[0], bj[0]}, a * ci * cj);
    }
  }
  return out;
}

bool check_strict_pullback(const CoordinateMap& f, const Form& lambda_src, const Form& lambda_dst) {
  return pullback(f, lambda_dst) == lambda_src;
}

std::optional<Poly> polynomial_primitive(const Form& w) {
  if (w.degree() != 1) throw Error("primitive needs a 1-form");
  Poly h(w.vars());
  for (const auto& [basis, coeff] : w.coeffs()) {
    const int a = basis[0];
    for (const auto& [m, c] : coeff.terms()) {
      Poly::Monomial k(m);
      int deg = 0;
      for (int e : m) deg += e;
      ++k[a];
      h.add_term(k, c / (deg + 1));
    }
  }
  if (!(d(h) == w)) return std::nullopt;
  return h;
}

ExactPullback check_exact_pullback(const CoordinateMap& f, const Form& lambda_src, const Form& lambda_dst) {
  ExactPullback r;
  const Form diff = pullback(f, lambda_dst) - lambda_src;
  const Form dd = d(diff);
  r.closed = dd.is_zero();
  if (!r.closed) {
    r.report = "difference is not closed: its differential has " + std::to_string(dd.coeffs().size()) +
               " nonzero components";
    return r;
  }
  r.h = polynomial_primitive(diff);
  r.report = r.h ? "difference is exact" : "no polynomial primitive found";
  return r;
}


namespace {

class PolyParser {
 public:
  PolyParser(const Chart& c, const std::string& text) : c_(c), s_(text) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char ch) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly p = term();
    for (;;) {
      if (eat('+')) p += term();
      else if (eat('-')) p -= term();
      else return p;
    }
  }

  Poly term() {
    Poly p = unary();
    for (;;) {
      if (eat('*')) {
        p = p * unary();
      } else if (eat('/')) {
        const Poly q = unary();
        if (q.degree() > 0 || q.is_zero()) fail("division only by nonzero constants");
        p *= 1 / q.terms().begin()->second;
      } else {
        return p;
      }
    }
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("exponent must be a nonnegative integer");
    return base.pow(std::stoi(s_.substr(start, pos_ - start)));
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      Poly p = expr();
      if (!eat(')')) fail("missing ')'");
      return p;
    }
    const std::size_t start = pos_;
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly::constant(c_.size(), Rational(boost::multiprecision::cpp_int(s_.substr(start, pos_ - start))));
    }
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    const std::string name = s_.substr(start, pos_ - start);
    const int i = c_.find(name);
    if (i < 0) fail("unknown coordinate '" + name + "'");
    return Poly::variable(c_.size(), i);
  }

  const Chart& c_;
  std::string s_;
  std::size_t pos_ = 0;
};

Form::Basis parse_basis(const Chart& c, const std::vector<std::string>& tokens) {
  Form::Basis b;
  for (const auto& t : tokens) {
    if (t.size() < 2 || t[0] != 'd') throw Error("expected a differential, got '" + t + "'");
    const int i = c.find(t.substr(1));
    if (i < 0) throw Error("unknown coordinate in differential '" + t + "'");
    b.push_back(i);
  }
  return b;
}

std::vector<std::string> split_top(const std::string& text, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

Form parse_sexpr_form(const Chart& c, const std::string& text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char ch) {
    skip();
    if (pos >= text.size() || text[pos] != ch) throw Error(std::string("form parse error: expected '") + ch + "'");
    ++pos;
  };
  expect('(');
  skip();
  if (text.compare(pos, 4, "form") != 0 || pos + 4 >= text.size() || text[pos + 4] < '0' || text[pos + 4] > '2')
    throw Error("form parse error: expected form0, form1 or form2");
  const int degree = text[pos + 4] - '0';
  pos += 5;
  Form out(c.size(), degree);
  for (;;) {
    skip();
    if (pos < text.size() && text[pos] == ')') {
      ++pos;
      break;
    }
    expect('(');
    expect('(');
    int depth = 1;
    const std::size_t start = pos;
    while (pos < text.size() && depth > 0) {
      if (text[pos] == '(') ++depth;
      if (text[pos] == ')') --depth;
      ++pos;
    }
    if (depth != 0) throw Error("form parse error: unbalanced parentheses");
    const Poly coeff = parse_poly(c, text.substr(start, pos - 1 - start));
    std::vector<std::string> tokens;
    for (;;) {
      skip();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      const std::size_t t0 = pos;
      while (pos < text.size() && ident_char(text[pos])) ++pos;
      if (t0 == pos) throw Error("form parse error: expected a differential");
      tokens.push_back(text.substr(t0, pos - t0));
    }
    if (static_cast<int>(tokens.size()) != degree) throw Error("form parse error: entry has the wrong degree");
    out.add(parse_basis(c, tokens), coeff);
  }
  skip();
  if (pos != text.size()) throw Error("form parse error: trailing text");
  return out;
}

Form parse_infix_form(const Chart& c, const std::string& text) {
  std::vector<std::pair<bool, std::string>> terms;  // (negated, text)
  int depth = 0;
  std::string cur;
  bool negated = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == '+' || ch == '-') && depth == 0) {
      const std::string t = trim(cur);
      const bool starts_term = t.empty() || t.back() == '*' || t.back() == '/' || t.back() == '^';
      if (!starts_term) {
        terms.emplace_back(negated, t);
        cur.clear();
        negated = ch == '-';
        continue;
      }
      if (t.empty()) {
        if (ch == '-') negated = !negated;
        continue;
      }
    }
    cur += ch;
  }
  terms.emplace_back(negated, trim(cur));

  std::optional<Form> out;
  for (const auto& [neg, t] : terms) {
    if (t.empty()) throw Error("form parse error: empty term");
    std::size_t cut = t.size();
    while (cut > 0 && (ident_char(t[cut - 1]) || t[cut - 1] == '^')) --cut;
    std::string coeff_text = trim(t.substr(0, cut));
    const std::string diff = t.substr(cut);
    if (!coeff_text.empty() && coeff_text.back() == '*') coeff_text = trim(coeff_text.substr(0, coeff_text.size() - 1));
    const auto tokens = split_top(diff, '^');
    const Form::Basis b = parse_basis(c, tokens);
    Poly coeff = coeff_text.empty() ? Poly::constant(c.size(), 1) : parse_poly(c, coeff_text);
    if (neg) coeff = -coeff;
    if (!out) out = Form(c.size(), static_cast<int>(b.size()));
    if (out->degree() != static_cast<int>(b.size())) throw Error("form parse error: mixed degrees");
    out->add(b, coeff);
  }
  return *out;
}

std::string format_rational(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

std::vector<std::pair<Poly::Monomial, Rational>> display_order(const Poly& f) {
  std::vector<std::pair<Poly::Monomial, Rational>> terms(f.terms().begin(), f.terms().end());
  auto deg = [](const Poly::Monomial& m) {
    int s = 0;
    for (int e : m) s += e;
    return s;
  };
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    if (deg(a.first) != deg(b.first)) return deg(a.first) > deg(b.first);
    return a.first > b.first;
  });
  return terms;
}

std::string format_monomial(const Chart& c, const Poly::Monomial& m, const Rational& coeff) {
  std::string out;
  bool constant = true;
  for (int e : m) constant = constant && e == 0;
  if (constant || coeff != 1) out = format_rational(coeff);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += c.name(static_cast<int>(i));
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

std::string basis_name(const Chart& c, const Form::Basis& b, const char* prefix, const char* sep) {
  std::string out;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k) out += sep;
    out += prefix + c.name(b[k]);
  }
  return out;
}

std::string format_linear(const Chart& c, const std::vector<std::pair<std::string, Poly>>& entries) {
  std::string out;
  for (const auto& [name, coeff] : entries) {
    std::string body;
    bool negative = false;
    if (coeff.terms().size() == 1) {
      const auto& [m, v] = *coeff.terms().begin();
      negative = v < 0;
      bool constant = true;
      for (int e : m) constant = constant && e == 0;
      const Rational a = negative ? Rational(-v) : v;
      body = constant && a == 1 ? name : format_monomial(c, m, a) + " " + name;
    } else {
      body = "(" + format_poly(c, coeff) + ") " + name;
    }
    if (out.empty()) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Poly parse_poly(const Chart& c, const std::string& text) { return PolyParser(c, text).parse(); }

Form parse_form(const Chart& c, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw Error("empty form");
  if (t == "0") return Form(c.size(), 1);
  if (t.rfind("(form", 0) == 0 || (t[0] == '(' && trim(t.substr(1)).rfind("form", 0) == 0))
    return parse_sexpr_form(c, t);
  return parse_infix_form(c, t);
}

CoordinateMap parse_map(const Chart& c, const std::string& text) {
  CoordinateMap out;
  for (const auto& part : split_top(text, ',')) out.push_back(parse_poly(c, part));
  if (out.size() != c.size()) throw Error("map needs one polynomial per coordinate");
  return out;
}

std::string format_poly(const Chart& c, const Poly& f) {
  same_vars(c.size(), f.vars());
  std::string out;
  for (const auto& [m, v] : display_order(f)) {
    const bool negative = v < 0;
    const std::string body = format_monomial(c, m, negative ? Rational(-v) : v);
    if (out.empty()) out = negative ? "-" + body : body;
    else out += (negative ? " - " : " + ") + body;
  }
  return out.empty() ? "0" : out;
}

std::string format_form(const Chart& c, const Form& w) {
  std::string out = "(form" + std::to_string(w.degree());
  for (const auto& [basis, coeff] : w.coeffs())
    for (const auto& [m, v] : display_order(coeff)) {
      out += " ((" + format_poly(c, Poly::monomial(m, v)) + ")";
      if (!basis.empty()) out += " " + basis_name(c, basis, "d", " ");
      out += ")";
    }
  return out + ")";
}

std::string format_form_infix(const Chart& c, const Form& w) {
  if (w.degree() == 0) return format_poly(c, w.coefficient({}));
  std::vector<std::pair<std::string, Poly>> entries;
  for (const auto& [basis, coeff] : w.coeffs()) entries.emplace_back(basis_name(c, basis, "d", "^"), coeff);
  return format_linear(c, entries);
}

std::string format_field(const Chart& c, const VectorField& v) {
  std::vector<std::pair<std::string, Poly>> entries;
  for (std::size_t i = 0; i < v.components.size(); ++i)
    if (!v.components[i].is_zero()) entries.emplace_back("d/d" + c.name(static_cast<int>(i)), v.components[i]);
  return format_linear(c, entries);
}

std::vector<Chart::Pair> parse_pairs(const std::string& text) {
  std::vector<Chart::Pair> out;
  if (trim(text).empty()) return out;
  for (const auto& part : split_top(text, ';')) {
    const auto names = split_top(part, ',');
    if (names.size() != 2) throw Error("coordinate pairs are written base,fiber");
    out.emplace_back(trim(names[0]), trim(names[1]));
  }
  return out;
}

const std::vector<MovieFixture>& movie_fixtures() {
  static const std::vector<MovieFixture> fixtures = [] {
    const Chart std_chart = Chart::movie_default();
    const Chart two_s({{"q", "p"}}, {{"s1", "sigma1"}, {"s2", "sigma2"}});
    const Chart two_m({{"q1", "p1"}, {"q2", "p2"}}, {{"s", "sigma"}});
    return std::vector<MovieFixture>{
        {"zero", std_chart, "p dq", "0"},
        {"qs", std_chart, "p dq", "q*s"},
        {"q2s3", std_chart, "p dq", "q^2*s^3"},
        {"ps", std_chart, "p dq", "p*s"},
        {"s2", std_chart, "p dq", "s^2"},
        {"mixed", std_chart, "p dq", "q*p*s + 1/2*s^2"},
        {"constant", std_chart, "p dq", "7"},
        {"cube", std_chart, "p dq", "(q + s)^3"},
        {"rational", std_chart, "p dq", "3/4*q^2*s - 2/5*p*s^4"},
        {"symmetric", std_chart, "1/2*p dq - 1/2*q dp", "q*s"},
        {"shifted", std_chart, "(p + q^2) dq", "q^3*s"},
        {"fiber", std_chart, "p dq", "s*sigma"},
        {"high", std_chart, "p dq", "q^4*s^4 - p^2*s"},
        {"base_only", std_chart, "p dq", "q^5"},
        {"two_s", two_s, "p dq", "q*s1*s2"},
        {"two_s_mixed", two_s, "p dq", "s1^2 - s2^3*q"},
        {"two_m", two_m, "p1 dq1 + p2 dq2", "q1*q2*s"},
        {"two_m_twisted", two_m, "p1 dq1 - q2 dp2", "p1*s^2 + q2*s"},
        {"exact_shift", std_chart, "p dq + 2*q dq", "(1 - s)^2*q"},
        {"quartic", std_chart, "p dq", "(q + p + s)^4"},
    };
  }();
  return fixtures;
}

}  // namespace sskit
