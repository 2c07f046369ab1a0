#include "bbkit/ideal_engine.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

namespace bbkit {

int total_degree(const Expo& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool GrevlexDesc::operator()(const Expo& a, const Expo& b) const {
  int da = total_degree(a), db = total_degree(b);
  if (da != db) return da > db;
  // On equal degree the rightmost differing exponent decides, smaller first.
  for (std::size_t k = a.size(); k-- > 0;)
    if (a[k] != b[k]) return a[k] < b[k];
  return false;
}

Poly Poly::constant(int nvars, ExactScalar c) {
  Poly f(nvars);
  f.add_term(Expo(static_cast<std::size_t>(nvars), 0), c);
  return f;
}

Poly Poly::variable(int nvars, int k) {
  if (k < 1 || k > nvars)
    throw DomainError("Poly::variable: index " + std::to_string(k) + " out of range");
  Expo e(static_cast<std::size_t>(nvars), 0);
  e[k - 1] = 1;
  return monomial(nvars, std::move(e), ExactScalar(1));
}

Poly Poly::monomial(int nvars, Expo e, ExactScalar c) {
  if (static_cast<int>(e.size()) != nvars)
    throw ShapeError("Poly::monomial: exponent length differs from nvars");
  Poly f(nvars);
  f.add_term(e, c);
  return f;
}

int Poly::degree() const {
  return terms_.empty() ? -1 : total_degree(terms_.begin()->first);
}

void Poly::add_term(const Expo& e, const ExactScalar& c) {
  if (c.is_zero()) return;
  if (static_cast<int>(e.size()) != nvars_)
    throw ShapeError("Poly::add_term: exponent length differs from nvars");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::vector<int> Poly::support() const {
  std::vector<int> out;
  for (int k = 1; k <= nvars_; ++k)
    for (const auto& [e, c] : terms_)
      if (e[k - 1] > 0) {
        out.push_back(k);
        break;
      }
  return out;
}

Poly operator+(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw ShapeError("Poly addition: nvars mismatch");
  Poly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

Poly operator-(const Poly& a) {
  Poly out(a.nvars_);
  for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
  return out;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.nvars_ != b.nvars_) throw ShapeError("Poly multiplication: nvars mismatch");
  Poly out(a.nvars_);
  Expo e(static_cast<std::size_t>(a.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out.add_term(e, ca * cb);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, int nvars) : text_(text), nvars_(nvars) {}

  Poly parse() {
    skip_ws();
    if (eof()) throw ParseError("empty polynomial", pos_);
    Poly out(nvars_);
    int sign = consume_sign();
    out += parse_term(sign);
    skip_ws();
    while (!eof()) {
      char c = peek();
      if (c != '+' && c != '-')
        throw ParseError(std::string("expected '+', '-', or end of input, got '") + c + "'",
                         pos_);
      ++pos_;
      out += parse_term(c == '-' ? -1 : 1);
      skip_ws();
    }
    return out;
  }

 private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }

  int consume_sign() {
    skip_ws();
    if (!eof() && (peek() == '+' || peek() == '-')) {
      int s = peek() == '-' ? -1 : 1;
      ++pos_;
      return s;
    }
    return 1;
  }

  BigInt parse_digits(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) throw ParseError(std::string("expected ") + what, start);
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  // digits [/ digits] [i]  or bare i
  ExactScalar parse_simple_coeff() {
    skip_ws();
    if (!eof() && peek() == 'i') {
      ++pos_;
      return ExactScalar(Rational(0), Rational(1));
    }
    std::size_t start = pos_;
    BigInt num = parse_digits("a number");
    Rational r(num);
    skip_ws();
    if (!eof() && peek() == '/') {
      ++pos_;
      std::size_t dstart = pos_;
      BigInt den = parse_digits("a denominator");
      if (den == 0) throw ParseError("zero denominator", dstart);
      r = Rational(num, den);
    }
    skip_ws();
    if (!eof() && peek() == 'i') {
      ++pos_;
      return ExactScalar(Rational(0), r);
    }
    (void)start;
    return ExactScalar(r);
  }

  // ( [sign] part [(+|-) part] ) with at most one real and one imaginary part
  ExactScalar parse_paren_coeff() {
    ++pos_;  // consumes '('
    int s = consume_sign();
    ExactScalar value = parse_simple_coeff();
    if (s < 0) value = -value;
    skip_ws();
    if (!eof() && (peek() == '+' || peek() == '-')) {
      int s2 = peek() == '-' ? -1 : 1;
      ++pos_;
      std::size_t pstart = pos_;
      ExactScalar second = parse_simple_coeff();
      if (s2 < 0) second = -second;
      if (value.is_real() == second.is_real())
        throw ParseError("complex coefficient needs one real and one imaginary part", pstart);
      value += second;
    }
    skip_ws();
    if (eof() || peek() != ')') throw ParseError("expected ')'", pos_);
    ++pos_;
    return value;
  }

  // z<k> or w<k>, optional ^<e>
  std::pair<int, int> parse_varpow() {
    std::size_t start = pos_;
    ++pos_;  // consumes the letter
    std::size_t istart = pos_;
    BigInt idx = parse_digits("a variable index");
    if (idx < 1 || idx > nvars_)
      throw ParseError("variable index out of range 1.." + std::to_string(nvars_), istart);
    int k = static_cast<int>(idx);
    int e = 1;
    skip_ws();
    if (!eof() && peek() == '^') {
      ++pos_;
      std::size_t estart = pos_;
      BigInt ee = parse_digits("an exponent");
      if (ee < 1 || ee > 1000000) throw ParseError("exponent out of range", estart);
      e = static_cast<int>(ee);
    }
    (void)start;
    return {k, e};
  }

  Poly parse_term(int sign) {
    ExactScalar coeff(sign);
    Expo expo(static_cast<std::size_t>(nvars_), 0);
    bool first = true;
    for (;;) {
      skip_ws();
      if (eof()) {
        if (first) throw ParseError("expected a term", pos_);
        break;
      }
      char c = peek();
      if (c == '(') {
        coeff *= parse_paren_coeff();
      } else if (c == 'z' || c == 'w') {
        auto [k, e] = parse_varpow();
        expo[k - 1] += e;
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == 'i') {
        coeff *= parse_simple_coeff();
      } else {
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      }
      first = false;
      skip_ws();
      if (!eof() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    return Poly::monomial(nvars_, std::move(expo), coeff);
  }

  std::string_view text_;
  int nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, int nvars) {
  if (nvars < 0) throw ShapeError("parse_poly: negative nvars");
  return PolyParser(text, nvars).parse();
}

std::string to_string(const Poly& f, char letter) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    std::string mono;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += letter + std::to_string(k + 1);
      if (e[k] > 1) mono += '^' + std::to_string(e[k]);
    }
    // Display sign is pulled out of purely real or purely imaginary
    // coefficients; mixed ones stay parenthesized and join with '+'.
    bool neg = false;
    ExactScalar disp = c;
    if (c.im == 0 ? c.re < 0 : (c.re == 0 && c.im < 0)) {
      neg = true;
      disp = -c;
    }
    std::string cs;
    if (disp.im == 0)
      cs = disp.re.str();
    else if (disp.re == 0)
      cs = disp.im == 1 ? "i" : disp.im.str() + "i";
    else
      cs = "(" + to_string(disp) + ")";
    std::string piece;
    if (mono.empty())
      piece = cs;
    else if (disp == ExactScalar(1))
      piece = mono;
    else
      piece = cs + "*" + mono;
    if (first) {
      out += (neg ? "-" : "") + piece;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weights

namespace {

long long weighted_degree(const Expo& e, const WeightVector& l) {
  long long m = 0;
  for (int k = 1; k <= l.n(); ++k) m += static_cast<long long>(e[k - 1]) * l.at(k);
  return m;
}

}  // namespace

std::optional<long long> weight_of(const Poly& f, const WeightVector& l) {
  if (f.is_zero()) throw DomainError("weight_of: zero polynomial has no weight");
  if (f.nvars() != l.n()) throw ShapeError("weight_of: nvars differs from weight length");
  std::optional<long long> m;
  for (const auto& [e, c] : f.terms()) {
    long long w = weighted_degree(e, l);
    if (!m)
      m = w;
    else if (*m != w)
      return std::nullopt;
  }
  return m;
}

std::vector<std::pair<long long, Poly>> weight_decompose(const Poly& f, const WeightVector& l) {
  if (f.nvars() != l.n() && !f.is_zero())
    throw ShapeError("weight_decompose: nvars differs from weight length");
  std::map<long long, Poly> buckets;
  for (const auto& [e, c] : f.terms()) {
    long long w = weighted_degree(e, l);
    auto it = buckets.find(w);
    if (it == buckets.end()) it = buckets.emplace(w, Poly(f.nvars())).first;
    it->second.add_term(e, c);
  }
  std::vector<std::pair<long long, Poly>> out;
  out.reserve(buckets.size());
  for (auto& [w, p] : buckets) out.emplace_back(w, std::move(p));
  return out;
}

ModelSpace make_model_space(int nvars, std::vector<Poly> generators,
                            std::optional<WeightVector> weights) {
  if (generators.empty()) throw ShapeError("ModelSpace needs at least one generator");
  for (const Poly& g : generators)
    if (g.nvars() != nvars) throw ShapeError("ModelSpace: generator nvars mismatch");
  if (weights && weights->n() != nvars)
    throw ShapeError("ModelSpace: weight length differs from nvars");
  ModelSpace ms{nvars, std::move(generators), std::move(weights)};
  if (ms.weights) validate_equivariance(ms);
  return ms;
}

EquivarianceReport validate_equivariance(const ModelSpace& ms) {
  if (!ms.weights) throw DomainError("validate_equivariance: model has no weights");
  WeightVector obstruction;
  for (std::size_t i = 0; i < ms.generators.size(); ++i) {
    const Poly& g = ms.generators[i];
    std::optional<long long> m = weight_of(g, *ms.weights);
    if (!m) {
      std::string msg = "generator " + std::to_string(i + 1) + " (" + to_string(g) +
                        ") is not semi-invariant; weight components:";
      for (const auto& [w, comp] : weight_decompose(g, *ms.weights))
        msg += " [" + std::to_string(w) + "] " + to_string(comp) + ";";
      throw EquivarianceError(msg, static_cast<int>(i + 1));
    }
    obstruction.l.push_back(*m);
  }
  return EquivarianceReport{std::move(obstruction)};
}

VirtualIndices virtual_indices(const WeightVector& tangent, const WeightVector& obstruction) {
  auto count = [](const WeightVector& w, int sign) {
    long long c = 0;
    for (long long v : w.l)
      if ((sign == 0 && v == 0) || (sign > 0 && v > 0) || (sign < 0 && v < 0)) ++c;
    return c;
  };
  VirtualIndices vi;
  vi.expdim0 = count(tangent, 0) - count(obstruction, 0);
  vi.expdimPlus = count(tangent, 1) - count(obstruction, 1);
  vi.expdimMinus = count(tangent, -1) - count(obstruction, -1);
  vi.mbNullity = 2 * vi.expdim0;
  vi.mbCoindex = 2 * vi.expdimPlus;
  vi.mbIndex = 2 * vi.expdimMinus;
  return vi;
}

// ---------------------------------------------------------------------------
// Transforms

Poly pullback_chart(const Poly& f, const BlowupSpace& b, int j) {
  if (f.nvars() != b.n) throw ShapeError("pullback_chart: nvars differs from n");
  if (!b.in_chart_range(j)) throw DomainError("pullback_chart: chart index out of range");
  Poly out(b.n);
  for (const auto& [e, c] : f.terms()) {
    Expo w = e;
    int extra = 0;  // exceptional exponents fold into the w_j slot
    for (int k = b.m + 1; k <= b.n; ++k)
      if (k != j) extra += e[k - 1];
    w[j - 1] += extra;
    out.add_term(w, c);
  }
  return out;
}

ChartTransform strict_transform_chart(const ModelSpace& ms, const BlowupSpace& b, int j) {
  if (!b.in_chart_range(j)) throw DomainError("strict_transform_chart: chart index out of range");
  ChartTransform ct;
  ct.j = j;
  ct.exceptional_divisor = Poly::variable(b.n, j);
  for (const Poly& f : ms.generators) {
    if (f.is_zero())
      throw DomainError("strict_transform_chart: zero generator");
    Poly total = pullback_chart(f, b, j);
    int k = -1;
    for (const auto& [e, c] : total.terms())
      k = k < 0 ? e[j - 1] : std::min(k, e[j - 1]);
    Poly strict(b.n);
    for (const auto& [e, c] : total.terms()) {
      Expo r = e;
      r[j - 1] -= k;
      strict.add_term(r, c);
    }
    ct.exceptional_exponents.push_back(k);
    ct.strict_generators.push_back(std::move(strict));
  }
  return ct;
}

// ---------------------------------------------------------------------------
// Combinatorics

int krull_dim_monomial(const std::vector<Poly>& generators, int n) {
  if (n < 0 || n > 16)
    throw DomainError("krull_dim_monomial: brute force supports 0 <= n <= 16");
  std::vector<unsigned> supports;
  for (const Poly& g : generators) {
    if (g.is_zero() || !g.is_monomial())
      throw DomainError("krull_dim_monomial: generators must be single monomials");
    if (g.nvars() != n) throw ShapeError("krull_dim_monomial: nvars differs from n");
    unsigned mask = 0;
    for (int k : g.support()) mask |= 1u << (k - 1);
    if (mask == 0) return -1;  // unit generator, empty zero set
    supports.push_back(mask);
  }
  // Minimum vertex cover of the supports; the zero set is the union of the
  // coordinate subspaces avoiding a cover.
  int best = n + 1;
  for (unsigned cover = 0; cover < (1u << n); ++cover) {
    bool hits_all = true;
    for (unsigned s : supports)
      if ((s & cover) == 0) {
        hits_all = false;
        break;
      }
    if (hits_all) best = std::min(best, __builtin_popcount(cover));
  }
  return n - best;
}

ArrangementReport arrangement_check(const std::vector<std::vector<int>>& index_sets, int n) {
  std::set<int> covered;
  for (const auto& s : index_sets) {
    if (s.empty()) throw DomainError("arrangement_check: empty index set");
    for (int k : s) {
      if (k < 1 || k > n)
        throw DomainError("arrangement_check: index " + std::to_string(k) + " out of range");
      covered.insert(k);
    }
  }
  ArrangementReport r;
  r.transversal = static_cast<int>(covered.size()) == n;
  r.clean = true;             // coordinate subspaces intersect in subspaces
  r.normal_crossings = true;  // one coordinate system cuts out every member
  return r;
}

}  // namespace bbkit
