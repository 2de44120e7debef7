#include "cliffell/operators.hpp"

#include <algorithm>
#include <numeric>

namespace cliffell {

namespace {

void trim(TranslationWord::Shift& s) {
  while (!s.empty() && s.back() == 0) s.pop_back();
}

int total(const TranslationWord::Shift& s) { return std::accumulate(s.begin(), s.end(), 0); }

const char* kSuperscripts[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string superscript(int v) {
  std::string digits = std::to_string(v), out;
  for (char c : digits) out += kSuperscripts[c - '0'];
  return out;
}

}  // namespace

bool TranslationWord::ShiftOrder::operator()(const Shift& a, const Shift& b) const {
  const int ta = total(a), tb = total(b);
  if (ta != tb) return ta < tb;
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    const int va = i < a.size() ? a[i] : 0;
    const int vb = i < b.size() ? b[i] : 0;
    if (va != vb) return va > vb;
  }
  return false;
}

TranslationWord TranslationWord::identity() {
  TranslationWord w;
  w.add({}, 1);
  return w;
}

TranslationWord TranslationWord::shift(int index, int power) {
  if (index < 0 || power < 0) throw std::invalid_argument("shift index and power must be non-negative");
  Shift s(index + 1, 0);
  s[index] = power;
  TranslationWord w;
  w.add(std::move(s), 1);
  return w;
}

void TranslationWord::add(Shift shift, long long coefficient) {
  trim(shift);
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(std::move(shift), coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

std::vector<TranslationWord::Term> TranslationWord::terms() const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [s, c] : terms_) out.push_back({c, s});
  return out;
}

int TranslationWord::generator_count() const noexcept {
  std::size_t n = 0;
  for (const auto& kv : terms_) n = std::max(n, kv.first.size());
  return static_cast<int>(n);
}

TranslationWord& TranslationWord::operator+=(const TranslationWord& o) {
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

TranslationWord& TranslationWord::operator-=(const TranslationWord& o) {
  for (const auto& [s, c] : o.terms_) add(s, -c);
  return *this;
}

TranslationWord operator*(const TranslationWord& a, const TranslationWord& b) {
  TranslationWord r;
  for (const auto& [sa, ca] : a.terms_) {
    for (const auto& [sb, cb] : b.terms_) {
      TranslationWord::Shift s(std::max(sa.size(), sb.size()), 0);
      for (std::size_t i = 0; i < sa.size(); ++i) s[i] += sa[i];
      for (std::size_t i = 0; i < sb.size(); ++i) s[i] += sb[i];
      r.add(std::move(s), ca * cb);
    }
  }
  return r;
}

TranslationWord operator*(long long c, const TranslationWord& a) {
  TranslationWord r;
  for (const auto& [s, v] : a.terms_) r.add(s, c * v);
  return r;
}

std::string describe_shift(const TranslationWord::Shift& shift) {
  std::string out;
  for (std::size_t i = 0; i < shift.size(); ++i) {
    if (shift[i] == 0) continue;
    out += "E" + std::to_string(i + 1);
    if (shift[i] > 1) out += superscript(shift[i]);
  }
  return out.empty() ? "I" : out;
}

std::string TranslationWord::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : terms_) {
    if (!out.empty()) out += " ";
    out += c < 0 ? "−" : "+";
    out += std::to_string(c < 0 ? -c : c) + "·" + describe_shift(s);
  }
  return out;
}

TranslationWord factor_word(const OperatorFactor& f) {
  const TranslationWord id = TranslationWord::identity();
  switch (f.kind) {
    case FactorKind::i_minus_e:
      return id - TranslationWord::shift(f.index);
    case FactorKind::i_plus_e:
      return id + TranslationWord::shift(f.index);
    case FactorKind::i_minus_e_sq:
      return id - TranslationWord::shift(f.index, 2);
    case FactorKind::e:
      return TranslationWord::shift(f.index);
  }
  throw std::logic_error("unknown operator factor");
}

TranslationWord expand(const OperatorExpr& e) {
  TranslationWord w = TranslationWord::identity();
  for (const auto& f : e.factors) w = w * factor_word(f);
  return w;
}

TranslationWord expand(const OperatorSum& s) {
  TranslationWord w;
  for (const auto& [sign, e] : s.terms) w += static_cast<long long>(sign) * expand(e);
  return w;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view t) {
    // Normalise: drop whitespace, map the Unicode minus to '-'.
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.compare(i, 3, "−") == 0) {
        s_ += '-';
        i += 2;
      } else if (t.compare(i, 2, "²") == 0) {
        s_ += "^2";
        i += 1;
      } else if (!std::isspace(static_cast<unsigned char>(t[i]))) {
        s_ += t[i];
      }
    }
  }

  OperatorSum sum() {
    OperatorSum out;
    if (s_.empty()) fail("empty operator expression");
    int sign = 1;
    if (peek() == '+' || peek() == '-') sign = get() == '-' ? -1 : 1;
    out.terms.emplace_back(sign, product());
    while (pos_ < s_.size()) {
      const char c = get();
      if (c != '+' && c != '-') fail("expected '+' or '-' between products");
      out.terms.emplace_back(c == '-' ? -1 : 1, product());
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in '" + s_ + "'");
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() {
    if (pos_ >= s_.size()) fail("unexpected end of input");
    return s_[pos_++];
  }
  void expect(char c) {
    if (get() != c) {
      --pos_;
      fail(std::string("expected '") + c + "'");
    }
  }

  int index() {
    expect('E');
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected a period index after 'E'");
    const int j = std::stoi(s_.substr(start, pos_ - start));
    if (j < 1) fail("period indices start at 1");
    return j - 1;
  }

  bool unit() {
    if (peek() == '1' || peek() == 'I') {
      ++pos_;
      return true;
    }
    return false;
  }

  OperatorFactor factor() {
    expect('(');
    OperatorFactor f{};
    if (unit()) {
      const char op = get();
      if (op != '+' && op != '-') fail("expected '+' or '-' after the identity");
      f.index = index();
      if (peek() == '^') {
        ++pos_;
        if (get() != '2' || op != '-') fail("only (1-Ej^2) is supported");
        f.kind = FactorKind::i_minus_e_sq;
      } else {
        f.kind = op == '-' ? FactorKind::i_minus_e : FactorKind::i_plus_e;
      }
    } else {
      f.kind = FactorKind::e;
      f.index = index();
    }
    expect(')');
    return f;
  }

  // A bare identity, or factors in parentheses mixed with bare shifts Ej.
  OperatorExpr product() {
    OperatorExpr e;
    if (unit()) return e;
    if (peek() != '(' && peek() != 'E') fail("expected '(' or a shift");
    while (peek() == '(' || peek() == 'E') {
      if (peek() == '(') {
        e.factors.push_back(factor());
      } else {
        e.factors.push_back({FactorKind::e, index()});
      }
    }
    return e;
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

OperatorSum parse_operator_sum(std::string_view text) { return Parser(text).sum(); }

OperatorExpr parse_operator_expr(std::string_view text) {
  OperatorSum s = parse_operator_sum(text);
  if (s.terms.size() != 1 || s.terms[0].first != 1) throw ParseError("expected a single product of factors");
  return s.terms[0].second;
}

Paravector<double> shifted_point(const Paravector<double>& x, const TranslationWord::Shift& shift,
                                 std::span<const Paravector<double>> generators) {
  Paravector<double> p = x;
  for (std::size_t g = 0; g < shift.size(); ++g)
    if (shift[g] != 0) p += static_cast<double>(shift[g]) * generators[g];
  return p;
}

// Exact polynomials ------------------------------------------------------

CliffordPolynomial CliffordPolynomial::constant(const Multivector<Rational>& c) {
  CliffordPolynomial p(c.m());
  p.add_term(Exponent{}, c);
  return p;
}

CliffordPolynomial CliffordPolynomial::lambda_monomial(const Paravector<Rational>& lambda, int n) {
  if (n < 0) throw std::invalid_argument("monomial degree must be non-negative");
  const int m = lambda.m();
  const Multivector<Rational> lm = lambda.to_multivector();
  CliffordPolynomial q = constant(lm);
  for (int k = 0; k < n; ++k) {
    CliffordPolynomial next(m);
    for (const auto& [e, c] : q.terms_) {
      for (int a = 0; a < lambda.dim(); ++a) {
        Exponent f = e;
        ++f[a];
        next.add_term(f, lm * (Multivector<Rational>::generator(m, a) * c));
      }
    }
    q = std::move(next);
  }
  return q;
}

void CliffordPolynomial::add_term(const Exponent& e, const Multivector<Rational>& c) {
  if (c.m() != m_) throw SignatureMismatch("polynomial coefficient from a different algebra");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int CliffordPolynomial::degree() const {
  int d = -1;
  for (const auto& kv : terms_) {
    int s = 0;
    for (auto v : kv.first) s += v;
    d = std::max(d, s);
  }
  return d;
}

CliffordPolynomial CliffordPolynomial::shifted(const Paravector<Rational>& h) const {
  if (h.m() != m_) throw SignatureMismatch("shift from a different algebra");
  const int dim = 2 * m_ + 2;
  CliffordPolynomial out(m_);
  for (const auto& [e, c] : terms_) {
    // prod_a (x_a + h_a)^{e_a} = sum_{b <= e} prod_a C(e_a, b_a) h_a^{e_a - b_a} x_a^{b_a}
    std::vector<std::vector<std::pair<int, Rational>>> per_axis(dim);
    for (int a = 0; a < dim; ++a) {
      Rational binom = 1;
      for (int b = 0; b <= e[a]; ++b) {
        if (b > 0) binom = binom * (e[a] - b + 1) / b;
        Rational hp = 1;
        for (int i = 0; i < e[a] - b; ++i) hp *= h[a];
        if (hp != 0) per_axis[a].emplace_back(b, binom * hp);
      }
    }
    std::vector<std::size_t> pick(dim, 0);
    bool done = std::any_of(per_axis.begin(), per_axis.end(), [](const auto& v) { return v.empty(); });
    while (!done) {
      Exponent f{};
      Rational w = 1;
      for (int a = 0; a < dim; ++a) {
        f[a] = static_cast<std::uint8_t>(per_axis[a][pick[a]].first);
        w *= per_axis[a][pick[a]].second;
      }
      out.add_term(f, c * w);
      int a = dim - 1;
      while (a >= 0) {
        if (++pick[a] < per_axis[a].size()) break;
        pick[a] = 0;
        --a;
      }
      done = a < 0;
    }
  }
  return out;
}

Multivector<Rational> CliffordPolynomial::evaluate(const Paravector<Rational>& x) const {
  Multivector<Rational> out(m_);
  for (const auto& [e, c] : terms_) {
    Rational w = 1;
    for (int a = 0; a < x.dim(); ++a)
      for (int i = 0; i < e[a]; ++i) w *= x[a];
    out += c * w;
  }
  return out;
}

CliffordPolynomial& CliffordPolynomial::operator+=(const CliffordPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

CliffordPolynomial& CliffordPolynomial::operator-=(const CliffordPolynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

CliffordPolynomial& CliffordPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

CliffordPolynomial build_polynomial(int m, std::span<const LambdaMonomial> monomials) {
  CliffordPolynomial p(m);
  for (const auto& mono : monomials) {
    CliffordPolynomial q = CliffordPolynomial::lambda_monomial(mono.lambda, mono.n);
    q *= Rational(mono.sign);
    p += q;
  }
  return p;
}

CliffordPolynomial apply(const TranslationWord& word, const CliffordPolynomial& p,
                         std::span<const Paravector<Rational>> generators) {
  if (word.generator_count() > static_cast<int>(generators.size()))
    throw std::invalid_argument("translation word uses more generators than supplied");
  CliffordPolynomial out(p.m());
  for (const auto& term : word.terms()) {
    Paravector<Rational> h(p.m());
    for (std::size_t g = 0; g < term.shift.size(); ++g)
      if (term.shift[g] != 0) h += Rational(term.shift[g]) * generators[g];
    CliffordPolynomial q = p.shifted(h);
    q *= Rational(term.coefficient);
    out += q;
  }
  return out;
}

DegreeReduction degree_reduction_check(int j, const CliffordPolynomial& p,
                                       std::span<const Paravector<Rational>> generators) {
  const TranslationWord w = TranslationWord::identity() - TranslationWord::shift(j);
  DegreeReduction r;
  r.degree_before = p.degree();
  r.degree_after = apply(w, p, generators).degree();
  r.reduced = r.degree_after <= std::max(r.degree_before - 1, -1);
  return r;
}

TranslationWord difference_word(std::span<const int> indices) {
  TranslationWord w = TranslationWord::identity();
  for (int j : indices) w = w * (TranslationWord::identity() - TranslationWord::shift(j));
  return w;
}

std::vector<std::vector<int>> multisets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int j = start; j < n; ++j) {
      cur.push_back(j);
      rec(j);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::optional<Paravector<Rational>> sharpness_witness(int m, std::span<const int> indices, int n,
                                                      std::span<const Paravector<Rational>> generators,
                                                      int coefficient_bound) {
  const TranslationWord w = difference_word(indices);
  const int dim = 2 * m + 2;
  std::vector<int> c(dim, -coefficient_bound);
  while (true) {
    Paravector<Rational> lambda(m);
    for (int a = 0; a < dim; ++a) lambda[a] = c[a];
    if (!lambda.is_zero()) {
      const CliffordPolynomial p = CliffordPolynomial::lambda_monomial(lambda, n);
      if (!apply(w, p, generators).is_zero()) return lambda;
    }
    int a = dim - 1;
    while (a >= 0 && ++c[a] > coefficient_bound) c[a--] = -coefficient_bound;
    if (a < 0) return std::nullopt;
  }
}

}  // namespace cliffell
