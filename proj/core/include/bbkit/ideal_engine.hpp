#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bbkit/blowup.hpp"
#include "bbkit/weights_core.hpp"

namespace bbkit {

// Exponent vector of a monomial; entry k-1 is the exponent of variable k.
using Expo = std::vector<int>;

int total_degree(const Expo& e);

// Graded reverse-lexicographic order, descending (leading term first):
// higher total degree wins; on ties the exponent vector whose rightmost
// differing entry is smaller wins.
struct GrevlexDesc {
  bool operator()(const Expo& a, const Expo& b) const;
};

// Exact multivariate polynomial over Gaussian rationals. Terms are unique,
// nonzero, and kept in canonical grevlex order, so equal polynomials have
// identical term sequences.
class Poly {
 public:
  using TermMap = std::map<Expo, ExactScalar, GrevlexDesc>;

  explicit Poly(int nvars = 0) : nvars_(nvars) {}

  static Poly constant(int nvars, ExactScalar c);
  static Poly variable(int nvars, int k);  // 1-based
  static Poly monomial(int nvars, Expo e, ExactScalar c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  int degree() const;  // total degree; -1 for the zero polynomial

  // Merges a term in, dropping it if the coefficient cancels to zero.
  void add_term(const Expo& e, const ExactScalar& c);

  bool is_monomial() const { return terms_.size() == 1; }
  // Variables with positive exponent in some term, 1-based ascending.
  std::vector<int> support() const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

 private:
  int nvars_;
  TermMap terms_;
};

// Text grammar: variables z1..zn or w1..wn (the letters are interchangeable),
// integer or p/q rational coefficients with an optional trailing i, complex
// coefficients parenthesized, '*' products, '^' positive integer powers,
// '+'/'-' sums. Example: (3/2+1/4i)*z1^2*z3 - z2. Whitespace is ignored.
// Throws ParseError carrying the byte offset of the offending token.
Poly parse_poly(std::string_view text, int nvars);

// Canonical form: grevlex-descending terms, letter picked by the caller.
std::string to_string(const Poly& f, char letter = 'z');

// The weighted degree m with every monomial z^a of f satisfying
// sum a_k l_k = m, when f is semi-invariant; nullopt otherwise.
// Throws DomainError on the zero polynomial.
std::optional<long long> weight_of(const Poly& f, const WeightVector& l);

// Splits f into semi-invariant components, weights strictly increasing.
std::vector<std::pair<long long, Poly>> weight_decompose(const Poly& f, const WeightVector& l);

// Local model: generators of an ideal, with optional action weights. When
// weights are present every generator must be semi-invariant; construction
// validates this.
struct ModelSpace {
  int nvars = 0;
  std::vector<Poly> generators;
  std::optional<WeightVector> weights;
};

ModelSpace make_model_space(int nvars, std::vector<Poly> generators,
                            std::optional<WeightVector> weights = std::nullopt);

// Weights (m_1,...,m_r) induced on the obstruction space by semi-invariant
// generators. Throws EquivarianceError naming the first failing generator
// and its weight decomposition.
struct EquivarianceReport {
  WeightVector obstruction;
};
EquivarianceReport validate_equivariance(const ModelSpace& ms);

// Expected dimensions from tangent and obstruction weight counts, and their
// doubled Morse-Bott counterparts. expdim0 + expdimPlus + expdimMinus = n - r.
struct VirtualIndices {
  long long expdim0 = 0, expdimPlus = 0, expdimMinus = 0;
  long long mbNullity = 0, mbCoindex = 0, mbIndex = 0;
};
VirtualIndices virtual_indices(const WeightVector& tangent, const WeightVector& obstruction);

// Substitution of the chart-j blowdown into f: z_k -> w_k for k <= m and
// k = j, z_k -> w_j * w_k otherwise. Monomials map to monomials.
Poly pullback_chart(const Poly& f, const BlowupSpace& b, int j);

// Per-generator strict transform data in chart j. The transform of the ideal
// is reported generator-wise: these g's cut out the strict transform's
// support but may not generate its full ideal (no standard bases here), which
// generator_wise flags for downstream consumers.
struct ChartTransform {
  int j = 0;
  std::vector<int> exceptional_exponents;  // k per generator
  std::vector<Poly> strict_generators;     // g per generator, w_j-free
  Poly exceptional_divisor;                // w_j, so E = V(w_j) in this chart
  bool generator_wise = true;
};

ChartTransform strict_transform_chart(const ModelSpace& ms, const BlowupSpace& b, int j);

// Krull dimension of the zero set of a monomial ideal: n minus a minimum
// vertex cover of the generator supports, by brute force (n <= 16). Returns
// -1 for an empty zero set (a unit generator). Throws DomainError when a
// generator is zero or has several terms.
int krull_dim_monomial(const std::vector<Poly>& generators, int n);

// Intersection behavior of coordinate subspaces S_i = span{e_k : k in set_i}
// at the origin. Transversality is the tangent-sum condition (union of the
// sets covers {1..n}); coordinate subspaces always meet cleanly and with
// normal crossings.
struct ArrangementReport {
  bool transversal = false;
  bool clean = true;
  bool normal_crossings = true;
};
ArrangementReport arrangement_check(const std::vector<std::vector<int>>& index_sets, int n);

}  // namespace bbkit
