#pragma once

// Jacobi elliptic Cliffordian functions
//   C   = prod_j (I - E_j) zeta
//   S_i = (I + E_i) prod_{j != i} (I - E_j) zeta
// with their pole/residue catalog, certified zeros, the m = 1 hidden
// periodicities, the periodic constructions built from shifted zetas, and the
// Laurent data around the origin.

#include <array>
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "cliffell/operators.hpp"
#include "cliffell/zeta.hpp"

namespace cliffell {

class ImparityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class JacobiKind { c, s };

struct JacobiId {
  JacobiKind kind = JacobiKind::c;
  int index = 0;  // zero-based i of S_{i+1}; unused for C

  static JacobiId C() { return {JacobiKind::c, 0}; }
  static JacobiId S(int one_based) { return {JacobiKind::s, one_based - 1}; }
  // "C", "S1", "S2", ...
  static JacobiId parse(std::string_view name);
  std::string name() const;
  friend bool operator==(const JacobiId&, const JacobiId&) = default;
};

// All kinds for a lattice of rank n: C, S1..Sn.
std::vector<JacobiId> all_jacobi_kinds(int n);

// Residue at the vertex sum_{j in subset} w_j (bitmask of zero-based indices).
int residue_sign(JacobiId id, unsigned subset);

// Word built directly from the sign rule, without operator expansion.
TranslationWord closed_form_word(JacobiId id, int n);
// Product of factors per the definitions.
OperatorExpr definition_expr(JacobiId id, int n);

// {0, w_2, ..., w_n} for C and {0, w_1, .., w_n without w_i} for S_i.
std::vector<unsigned> determining_subsets(JacobiId id, int n);

Paravector<double> vertex(const PeriodLattice& l, unsigned subset);
std::string vertex_name(unsigned subset);

struct PoleRecord {
  Paravector<double> location;
  unsigned subset = 0;
  int residue_sign = 1;
  bool determining = false;
};

class JacobiFunction {
 public:
  // Requires N = 2m+2; checks the expanded word against the sign rule.
  static JacobiFunction build(JacobiId id, ZetaFunction zeta);

  JacobiId id() const noexcept { return id_; }
  const TranslationWord& word() const noexcept { return word_; }
  const ZetaFunction& zeta() const noexcept { return zeta_; }
  const PeriodLattice& lattice() const noexcept { return zeta_.lattice(); }

  SeriesValue<double> operator()(const Paravector<double>& x, const EvalConfig& cfg = {}) const;
  Evaluatable<double> as_evaluatable() const;

  // The function obtained by applying `outer` first, e.g. (E_2 E_3 + E_4) F,
  // evaluated with one combined word so that shared shifts hit the zeta cache.
  SeriesValue<double> apply_outer(const TranslationWord& outer, const Paravector<double>& x,
                                  const EvalConfig& cfg = {}) const;

  std::vector<PoleRecord> poles() const;

 private:
  JacobiFunction(JacobiId id, ZetaFunction zeta, TranslationWord word);
  JacobiId id_;
  ZetaFunction zeta_;
  TranslationWord word_;
};

// Evaluates word(zeta) at x with lattice half-periods as generators.
SeriesValue<double> apply_to_zeta(const TranslationWord& word, const ZetaFunction& zeta, const Paravector<double>& x,
                                  const EvalConfig& cfg);

struct ResidueOptions {
  std::array<double, 3> eps{1e-2, 5e-3, 2.5e-3};
  double spread_tolerance = 1e-3;
};

template <class T>
struct ResidueEstimate {
  Multivector<T> limit;  // extrapolated eps * f(a + eps)
  T scalar{};            // its scalar part, the residue
  double spread = 0.0;   // distance between the three-point and two-point limits
  bool converged = false;
};

ResidueEstimate<double> estimate_residue(const Evaluatable<double>& f, const Paravector<double>& a,
                                         const EvalConfig& cfg, const ResidueOptions& opts = {});
ResidueEstimate<std::complex<double>> estimate_residue(const Evaluatable<std::complex<double>>& f,
                                                       const Paravector<double>& a, const EvalConfig& cfg,
                                                       const ResidueOptions& opts = {});

double residue_sum_determining(const JacobiFunction& f, const EvalConfig& cfg, const ResidueOptions& opts = {});

// Certified zeros (not exhaustive).
std::vector<Paravector<double>> zero_catalog(JacobiId id, const PeriodLattice& l);

struct HiddenRelation {
  std::string name;       // e.g. "S1(x+w2+w3) + S1(x+w4)"
  JacobiId function;      // S1 or S2
  TranslationWord outer;  // applied on top of the function's word
  bool asserted = true;   // false where the relation is off by a nonzero constant
};

// The m = 1 relations as stated, both S2 families over 1 <= j < k <= 4.
// Pairs touching index 2 miss by a constant, and asserted = false marks them.
// The rest hold when the lattice is symmetric under each half-period
// reflection. Skewed lattices add a lattice constant there too.
std::vector<HiddenRelation> hidden_relations();

struct HiddenDefect {
  HiddenRelation relation;
  SeriesValue<double> defect;
};

std::vector<HiddenDefect> hidden_periodicity_defects(const ZetaFunction& zeta, const Paravector<double>& x,
                                                     const EvalConfig& cfg);

// Periodic constructions built from shifted zetas.
Evaluatable<double> construct_two_pole_m0(const ZetaFunction& zeta, const Paravector<double>& alpha, double k);
Evaluatable<std::complex<double>> construct_complexified_two_pole(const ZetaFunction& zeta,
                                                                  const Paravector<double>& alpha, double k);
Evaluatable<double> construct_third_difference(const ZetaFunction& zeta, const Paravector<double>& beta);
Evaluatable<double> half_period_reduce(const Evaluatable<double>& f, std::span<const int> plus_indices,
                                       const PeriodLattice& l);

// Coefficient (d|grad)^n phi(0) / n! of phi = F - zeta. n = 0 returns phi(0)
// as computed; even n >= 2 raises ImparityError.
SeriesValue<double> phi_taylor_coefficient(const JacobiFunction& f, const Paravector<double>& d, int n,
                                           const EvalConfig& cfg = {});

// sum_{k=1}^{N} (-1)^{k-1} sum_{|J| = k} zeta(w_J).
SeriesValue<double> half_period_relation_defect(const ZetaFunction& zeta, const EvalConfig& cfg = {});

struct LemmaReport {
  bool subset_sums_ok = true;   // every k: sum over k-subsets = C(n-1, k-1) p
  bool alternating_ok = true;   // the alternating sum vanishes
};
LemmaReport alternating_subset_sum_report(int n);
bool alternating_subset_sum_identity(int n);

}  // namespace cliffell
