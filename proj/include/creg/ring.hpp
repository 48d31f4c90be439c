#pragma once

// Weighted polynomial rings S = K[x_1..x_n] and their quotients R = S/I by a
// homogeneous ideal. Every question about R is answered one degree at a time:
// I_d is the row space of the multiples of the generators, and the canonical
// basis of R_d is the set of monomials that are not pivots of I_d (graded-lex).

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "creg/matrix.hpp"
#include "creg/polynomial.hpp"

namespace creg {

/// Element of a single graded piece R_d, as coordinates over the standard
/// monomials of that degree.
template <class F>
struct RingElement {
  int degree = 0;
  Vec<F> coords;
};

template <class F>
class GradedRing;

template <class F>
using RingPtr = std::shared_ptr<const GradedRing<F>>;

template <class F>
class GradedRing : public std::enable_shared_from_this<GradedRing<F>> {
 public:
  using Elem = typename F::Elem;

  /// Rejects nonpositive weights and generators of degree <= 0. Zero
  /// generators are dropped.
  static RingPtr<F> create(F field, std::vector<std::string> names, std::vector<int> weights,
                           std::vector<Polynomial<F>> ideal = {});

  /// Generators given in the textual polynomial syntax.
  static RingPtr<F> create(F field, std::vector<std::string> names, std::vector<int> weights,
                           const std::vector<std::string>& ideal);

  /// Standard graded K[names...] with no relations.
  static RingPtr<F> polynomial_ring(F field, std::vector<std::string> names);

  const F& field() const { return field_; }
  std::size_t num_vars() const { return weights_.size(); }
  std::span<const int> weights() const { return weights_; }
  int weight(std::size_t v) const { return weights_[v]; }
  int max_weight() const;
  /// Sum of the variable weights: S(-sigma) is the canonical module of S.
  int sigma() const;
  const std::vector<std::string>& var_names() const { return names_; }
  bool is_standard_graded() const;
  bool is_polynomial_ring() const { return ideal_.empty(); }
  const std::vector<Polynomial<F>>& ideal_generators() const { return ideal_; }
  int max_ideal_degree() const;

  /// The polynomial ring S this ring is a quotient of (itself when I = 0).
  RingPtr<F> ambient() const;

  /// Monomials of S_d in graded-lex order.
  const std::vector<Monomial>& monomial_basis(int d) const;
  std::optional<std::size_t> monomial_index(const Monomial& m) const;
  std::size_t ambient_dim(int d) const { return monomial_basis(d).size(); }
  std::size_t ideal_dim(int d) const;

  /// Hilbert function of R.
  std::size_t dim(int d) const;
  std::size_t hilbert_function(int d) const { return dim(d); }
  /// Canonical basis of R_d: the monomials that are not pivots of I_d.
  const std::vector<Monomial>& standard_monomials(int d) const;
  std::optional<std::size_t> standard_index(const Monomial& m) const;

  RingElement<F> zero(int d) const { return {d, Vec<F>(dim(d), field_.zero())}; }
  RingElement<F> one() const;
  RingElement<F> variable(std::size_t v) const;
  RingElement<F> normal_form(const Monomial& m) const;
  RingElement<F> normal_form(const Polynomial<F>& f) const;
  RingElement<F> parse(const std::string& text) const;
  Polynomial<F> to_polynomial(const RingElement<F>& a) const;
  std::string format(const RingElement<F>& a) const;
  bool is_zero(const RingElement<F>& a) const;

  RingElement<F> multiply(const RingElement<F>& a, const RingElement<F>& b) const;
  /// Matrix of R_d -> R_{d + w_v}, v-th variable times.
  const DenseMatrix<F>& variable_action(std::size_t v, int d) const;
  /// Matrix of R_d -> R_{d + deg f} in the canonical bases.
  DenseMatrix<F> multiplication_map(const RingElement<F>& f, int d) const;

  std::string describe() const;

 private:
  struct Piece {
    std::vector<Monomial> monomials;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
    Subspace<F> ideal;
    std::vector<Monomial> standard;
    std::vector<int> to_standard;
    // Normal form of each S-monomial as sparse coordinates over `standard`.
    std::vector<std::vector<std::pair<std::size_t, Elem>>> nf;
  };

  GradedRing(F field, std::vector<std::string> names, std::vector<int> weights, std::vector<Polynomial<F>> ideal);

  const Piece& piece(int d) const;
  std::unique_ptr<Piece> build_piece(int d) const;
  void add_normal_form(const Piece& p, std::size_t monomial, const Elem& coeff, Vec<F>& out) const;

  F field_;
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<Polynomial<F>> ideal_;

  mutable std::recursive_mutex mutex_;
  mutable std::map<int, std::unique_ptr<Piece>> pieces_;
  mutable std::map<std::pair<std::size_t, int>, DenseMatrix<F>> var_actions_;
  mutable RingPtr<F> ambient_;
};

/// Presentation T/J of the d-th Veronese subring of a standard graded
/// polynomial ring: one degree-1 variable per degree-d monomial, J the minimal
/// relations of degree <= relation_degree_cap found as kernels of the
/// substitution map. Hilbert functions of T/J and i -> dim S_{id} are compared
/// for i <= check_range; a mismatch raises CertificateError.
template <class F>
struct VeronesePresentation {
  RingPtr<F> ring;
  std::vector<Monomial> variable_monomials;
  int relation_degree_cap = 2;
  int certified_through = 0;
};

template <class F>
VeronesePresentation<F> veronese_presentation(const GradedRing<F>& base, int d, int relation_degree_cap = 2,
                                              int check_range = 6);

}  // namespace creg
