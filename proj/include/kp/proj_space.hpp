#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "kp/field.hpp"
#include "kp/linalg.hpp"

namespace kp {

/// Subspace of PG(n, K), stored as the reduced row echelon basis of the
/// underlying vector subspace of K^(n+1). The canonical form is unique, so
/// two subspaces are equal iff their bases are entrywise equal.
class ProjSubspace {
 public:
  /// Canonicalizes `rows`; every row must have n+1 entries.
  static ProjSubspace from_rows(const FieldSpec& field, int n, Mat rows);
  /// Point spanned by a nonzero vector; n = v.size() - 1.
  static ProjSubspace point(const Vec& v);
  static ProjSubspace empty(const FieldSpec& field, int n);
  static ProjSubspace whole(const FieldSpec& field, int n);

  const FieldSpec& field() const { return field_; }
  int ambient() const { return n_; }
  /// Projective dimension: rows - 1, so the empty subspace has -1.
  int dim() const { return static_cast<int>(rows_.size()) - 1; }
  const Mat& rows() const { return rows_; }
  const Vec& row(std::size_t i) const { return rows_.at(i); }
  bool is_empty() const { return rows_.empty(); }

  bool contains(const Vec& v) const;
  bool contains(const ProjSubspace& other) const;

  friend bool operator==(const ProjSubspace& a, const ProjSubspace& b);

 private:
  ProjSubspace(FieldSpec field, int n) : field_(field), n_(n) {}

  FieldSpec field_;
  int n_ = 0;
  Mat rows_;
  std::vector<std::size_t> pivots_;
};

ProjSubspace span(const std::vector<ProjSubspace>& parts);
ProjSubspace join(const ProjSubspace& a, const ProjSubspace& b);
ProjSubspace meet(const ProjSubspace& a, const ProjSubspace& b);
/// a is contained in b.
bool incident(const ProjSubspace& a, const ProjSubspace& b);
/// Linear forms vanishing on s, as the rows of a matrix.
Mat annihilator(const ProjSubspace& s);
/// Subspace cut out by the given linear forms.
ProjSubspace zero_set(const FieldSpec& field, int n, const Mat& forms);

/// Point t0*b0 + t1*b1 of a line with canonical basis (b0, b1).
struct LineParam {
  Scalar t0;
  Scalar t1;
};

Vec point_vector_at(const ProjSubspace& line, const LineParam& param);
ProjSubspace point_at(const ProjSubspace& line, const LineParam& param);
/// Parameter of a point on a line with respect to its canonical basis.
LineParam param_of(const ProjSubspace& line, const Vec& point);
bool same_param(const LineParam& a, const LineParam& b);

/// Every subspace of PG(n, p) of projective dimension d, exactly once.
/// Restartable: `reset()` rewinds the stream.
class SubspaceStream {
 public:
  SubspaceStream(const FieldSpec& field, int n, int d);
  std::optional<ProjSubspace> next();
  void reset();

 private:
  bool advance_pivots();
  void init_free();

  FieldSpec field_;
  int n_;
  int d_;
  std::vector<std::size_t> pivots_;
  std::vector<std::pair<std::size_t, std::size_t>> free_slots_;
  std::vector<std::uint32_t> counter_;
  bool done_ = false;
};

/// Gaussian binomial [n choose k]_q.
std::uint64_t gaussian_binomial(unsigned n, unsigned k, unsigned q);

}  // namespace kp
