#pragma once

// Finitely generated graded modules over a GradedRing, seen one graded piece
// at a time. GradedModule is the interface every algorithm consumes: the
// dimension of M_d and the action of each variable M_d -> M_{d+w}. Free
// modules and cokernel presentations are the two concrete carriers; other
// constructions (truncations, Matlis duals, Ext modules) are views that get
// presented on demand.

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "creg/matrix.hpp"
#include "creg/ring.hpp"

namespace creg {

template <class F>
class GradedModule {
 public:
  using Elem = typename F::Elem;

  virtual ~GradedModule() = default;

  virtual const RingPtr<F>& ring() const = 0;
  virtual std::size_t dim(int d) const = 0;
  /// Image of v in M_d under multiplication by the variable `var`.
  virtual Vec<F> act(std::size_t var, int d, std::span<const Elem> v) const = 0;
  /// M_d = 0 for every d below this.
  virtual int lowest_degree() const = 0;
  /// M is generated by its pieces of degree <= this.
  virtual int generator_bound() const = 0;

  /// Matrix of M_d -> M_{d + w_var}.
  virtual DenseMatrix<F> variable_action(std::size_t var, int d) const;

  const F& field() const { return ring()->field(); }
};

/// Matrix of M_d -> M_{d + deg s} for a monomial s.
template <class F>
DenseMatrix<F> monomial_action(const GradedModule<F>& m, const Monomial& s, int d);

/// Matrix of M_d -> M_{d + deg f} for a ring element f.
template <class F>
DenseMatrix<F> ring_element_action(const GradedModule<F>& m, const RingElement<F>& f, int d);

/// The free module R(-a_1) + ... + R(-a_k). In degree d its coordinates are
/// the concatenation, in generator order, of the standard-monomial
/// coordinates of R_{d - a_i}.
template <class F>
class FreeModule : public GradedModule<F> {
 public:
  using Elem = typename F::Elem;

  FreeModule(RingPtr<F> ring, std::vector<int> twists = {});

  const RingPtr<F>& ring() const override { return ring_; }
  const std::vector<int>& twists() const { return twists_; }
  std::size_t rank() const { return twists_.size(); }
  void add_generator(int twist) { twists_.push_back(twist); }

  std::size_t dim(int d) const override;
  Vec<F> act(std::size_t var, int d, std::span<const Elem> v) const override;
  int lowest_degree() const override;
  int generator_bound() const override;

  /// Start of generator gen's block in degree d.
  std::size_t offset(std::size_t gen, int d) const;
  /// Basis element e_gen, living in degree a_gen.
  Vec<F> basis_vector(std::size_t gen) const;
  /// The gen-th coordinate of v in F_d, an element of R_{d - a_gen}.
  RingElement<F> component(std::span<const Elem> v, int d, std::size_t gen) const;
  /// Assembles sum_i entries[i] e_i in degree d; entries[i] must have degree
  /// d - a_i (a zero element of any degree is accepted).
  Vec<F> element(int d, const std::vector<RingElement<F>>& entries) const;

 private:
  RingPtr<F> ring_;
  std::vector<int> twists_;
};

/// Homogeneous element of a free module: a degree and coordinates in that
/// degree.
template <class F>
struct FreeElement {
  int degree = 0;
  Vec<F> coords;
};

/// A degree-0 map from a free module to any graded module, determined by the
/// images of the source generators. Matrices are produced degree by degree
/// and cached; generators may be appended while the map is in use as long as
/// their twists do not go below a degree whose matrix was already requested.
template <class F>
class FreeMap {
 public:
  FreeMap(const FreeModule<F>* source, const GradedModule<F>* target) : source_(source), target_(target) {}

  const FreeModule<F>& source() const { return *source_; }
  const GradedModule<F>& target() const { return *target_; }
  /// Records the image of the next generator of source (in degree a_gen).
  void add_image(Vec<F> image) { images_.push_back(std::move(image)); }
  const Vec<F>& image(std::size_t gen) const { return images_[gen]; }
  std::size_t num_images() const { return images_.size(); }

  const DenseMatrix<F>& matrix(int d) const;

 private:
  const FreeModule<F>* source_;
  const GradedModule<F>* target_;
  std::vector<Vec<F>> images_;
  mutable std::map<int, DenseMatrix<F>> matrices_;
};

/// Canonical basis of a graded piece of a presented module, as the positions
/// of the cover's coordinates that survive the relations.
struct ModulePiece {
  int degree = 0;
  std::size_t dim = 0;
  std::vector<std::size_t> basis_positions;
};

/// M = coker(R(-b_1) + ... + R(-b_m) -> R(-a_1) + ... + R(-a_k)), the
/// relations given as homogeneous elements of the target. M_d is the cover's
/// degree-d piece modulo the span of all multiples of relations, and its
/// canonical basis is the set of non-pivot coordinates of that span.
template <class F>
class PresentedModule : public GradedModule<F> {
 public:
  using Elem = typename F::Elem;

  PresentedModule(RingPtr<F> ring, std::vector<int> twists, std::vector<FreeElement<F>> relations);

  /// Relation columns given as polynomial strings, one entry per generator.
  /// Every nonzero entry of a column must give the same column degree.
  static std::shared_ptr<const PresentedModule> parse(RingPtr<F> ring, std::vector<int> twists,
                                                      const std::vector<std::vector<std::string>>& columns);

  const RingPtr<F>& ring() const override { return cover_.ring(); }
  const FreeModule<F>& cover() const { return cover_; }
  const std::vector<int>& twists() const { return cover_.twists(); }
  const std::vector<FreeElement<F>>& relations() const { return relations_; }
  bool is_free() const { return relations_.empty(); }
  int max_relation_degree() const;

  std::size_t dim(int d) const override;
  Vec<F> act(std::size_t var, int d, std::span<const Elem> v) const override;
  DenseMatrix<F> variable_action(std::size_t var, int d) const override;
  int lowest_degree() const override;
  int generator_bound() const override;

  ModulePiece piece(int d) const;
  /// Span of all multiples of the relations inside the cover's degree-d piece.
  const Subspace<F>& relation_space(int d) const;
  /// Cover coordinates -> canonical coordinates of M_d.
  Vec<F> project(int d, Vec<F> v) const;
  Vec<F> lift(int d, std::span<const Elem> coords) const;
  bool is_zero() const;

  /// Entry (gen, relation) as a ring element.
  RingElement<F> relation_entry(std::size_t gen, std::size_t rel) const;
  std::string format_relations() const;

 private:
  struct Piece {
    Subspace<F> relations;
    std::vector<std::size_t> basis;
  };
  const Piece& cached_piece(int d) const;

  FreeModule<F> cover_;
  std::vector<FreeElement<F>> relations_;
  int min_relation_degree_ = 0;

  mutable std::recursive_mutex mutex_;
  mutable std::map<int, Piece> pieces_;
  mutable std::map<std::pair<std::size_t, int>, DenseMatrix<F>> actions_;
};

template <class F>
using ModulePtr = std::shared_ptr<const GradedModule<F>>;

template <class F>
using PresentedPtr = std::shared_ptr<const PresentedModule<F>>;

}  // namespace creg
