#include "kp/proj_space.hpp"

#include "kp/error.hpp"

namespace kp {

namespace {

void check_same(const ProjSubspace& a, const ProjSubspace& b) {
  if (a.ambient() != b.ambient())
    throw Error(ErrorCode::AmbientMismatch,
                "PG(" + std::to_string(a.ambient()) + ") vs PG(" + std::to_string(b.ambient()) + ")");
  if (!(a.field() == b.field())) throw Error(ErrorCode::FieldMismatch, a.field().name() + " vs " + b.field().name());
}

}  // namespace

ProjSubspace ProjSubspace::from_rows(const FieldSpec& field, int n, Mat rows) {
  for (const auto& r : rows) {
    if (r.size() != static_cast<std::size_t>(n + 1))
      throw Error(ErrorCode::AmbientMismatch, "row of length " + std::to_string(r.size()) + " in PG(" +
                                                  std::to_string(n) + ")");
  }
  ProjSubspace s(field, n);
  s.pivots_ = rref(rows);
  s.rows_ = std::move(rows);
  return s;
}

ProjSubspace ProjSubspace::point(const Vec& v) {
  if (v.empty()) throw Error(ErrorCode::DimensionMismatch, "empty coordinate vector");
  if (is_zero(v)) throw Error(ErrorCode::ZeroParameter, "zero vector is not a point");
  return from_rows(v[0].field(), static_cast<int>(v.size()) - 1, Mat{v});
}

ProjSubspace ProjSubspace::empty(const FieldSpec& field, int n) { return ProjSubspace(field, n); }

ProjSubspace ProjSubspace::whole(const FieldSpec& field, int n) {
  Mat rows;
  for (int i = 0; i <= n; ++i) rows.push_back(unit_vec(field, n + 1, i));
  return from_rows(field, n, std::move(rows));
}

bool ProjSubspace::contains(const Vec& v) const {
  if (v.size() != static_cast<std::size_t>(n_ + 1)) throw Error(ErrorCode::AmbientMismatch, "vector length");
  Vec r = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (r[pivots_[i]].is_zero()) continue;
    const Scalar c = -r[pivots_[i]];
    axpy(r, c, rows_[i]);
  }
  return is_zero(r);
}

bool ProjSubspace::contains(const ProjSubspace& other) const {
  check_same(*this, other);
  if (other.dim() > dim()) return false;
  for (const auto& r : other.rows_)
    if (!contains(r)) return false;
  return true;
}

bool operator==(const ProjSubspace& a, const ProjSubspace& b) {
  if (a.n_ != b.n_ || !(a.field_ == b.field_) || a.rows_.size() != b.rows_.size() || a.pivots_ != b.pivots_)
    return false;
  for (std::size_t i = 0; i < a.rows_.size(); ++i)
    for (std::size_t j = 0; j < a.rows_[i].size(); ++j)
      if (!(a.rows_[i][j] == b.rows_[i][j])) return false;
  return true;
}

ProjSubspace span(const std::vector<ProjSubspace>& parts) {
  if (parts.empty()) throw Error(ErrorCode::DimensionMismatch, "span of nothing");
  Mat rows;
  for (const auto& p : parts) {
    check_same(parts[0], p);
    rows.insert(rows.end(), p.rows().begin(), p.rows().end());
  }
  return ProjSubspace::from_rows(parts[0].field(), parts[0].ambient(), std::move(rows));
}

ProjSubspace join(const ProjSubspace& a, const ProjSubspace& b) { return span({a, b}); }

Mat annihilator(const ProjSubspace& s) {
  const auto cols = static_cast<std::size_t>(s.ambient() + 1);
  if (s.is_empty()) return ProjSubspace::whole(s.field(), s.ambient()).rows();
  return kernel(s.rows(), cols, s.field());
}

ProjSubspace zero_set(const FieldSpec& field, int n, const Mat& forms) {
  if (forms.empty()) return ProjSubspace::whole(field, n);
  return ProjSubspace::from_rows(field, n, kernel(forms, static_cast<std::size_t>(n + 1), field));
}

ProjSubspace meet(const ProjSubspace& a, const ProjSubspace& b) {
  check_same(a, b);
  if (a.is_empty() || b.is_empty()) return ProjSubspace::empty(a.field(), a.ambient());
  if (a.contains(b)) return b;
  if (b.contains(a)) return a;
  Mat forms = annihilator(a);
  Mat fb = annihilator(b);
  forms.insert(forms.end(), fb.begin(), fb.end());
  return zero_set(a.field(), a.ambient(), forms);
}

bool incident(const ProjSubspace& a, const ProjSubspace& b) { return b.contains(a); }

Vec point_vector_at(const ProjSubspace& line, const LineParam& param) {
  if (line.dim() != 1) throw Error(ErrorCode::NotALine, "point_at expects a line");
  if (param.t0.is_zero() && param.t1.is_zero()) throw Error(ErrorCode::ZeroParameter, "parameter [0:0]");
  return param.t0 * line.row(0) + param.t1 * line.row(1);
}

ProjSubspace point_at(const ProjSubspace& line, const LineParam& param) {
  return ProjSubspace::point(point_vector_at(line, param));
}

LineParam param_of(const ProjSubspace& line, const Vec& point) {
  if (line.dim() != 1) throw Error(ErrorCode::NotALine, "param_of expects a line");
  if (is_zero(point) || !line.contains(point)) throw Error(ErrorCode::PointNotOnD, "point not on the line");
  // The canonical basis has pivots c0 < c1 with b0[c1] = 0 and b1[c0] = 0.
  std::size_t c0 = 0, c1 = 0;
  while (line.row(0)[c0].is_zero()) ++c0;
  while (line.row(1)[c1].is_zero()) ++c1;
  return {point[c0], point[c1]};
}

bool same_param(const LineParam& a, const LineParam& b) { return a.t0 * b.t1 == a.t1 * b.t0; }

SubspaceStream::SubspaceStream(const FieldSpec& field, int n, int d) : field_(field), n_(n), d_(d) {
  if (!field.is_finite()) throw Error(ErrorCode::InfiniteField, "enumeration needs a finite field");
  if (n < 0 || d < -1 || d > n) throw Error(ErrorCode::DimensionMismatch, "bad enumeration dimensions");
  reset();
}

void SubspaceStream::reset() {
  done_ = false;
  pivots_.clear();
  for (int i = 0; i <= d_; ++i) pivots_.push_back(static_cast<std::size_t>(i));
  init_free();
}

void SubspaceStream::init_free() {
  free_slots_.clear();
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    for (std::size_t c = pivots_[r] + 1; c <= static_cast<std::size_t>(n_); ++c) {
      bool pivot = false;
      for (auto pc : pivots_) pivot |= pc == c;
      if (!pivot) free_slots_.emplace_back(r, c);
    }
  }
  counter_.assign(free_slots_.size(), 0);
}

bool SubspaceStream::advance_pivots() {
  // Next k-combination of {0..n} in lexicographic order.
  const std::size_t k = pivots_.size();
  const std::size_t top = static_cast<std::size_t>(n_) + 1;
  for (std::size_t i = k; i-- > 0;) {
    if (pivots_[i] < top - (k - i)) {
      ++pivots_[i];
      for (std::size_t j = i + 1; j < k; ++j) pivots_[j] = pivots_[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<ProjSubspace> SubspaceStream::next() {
  if (done_) return std::nullopt;
  const std::size_t width = static_cast<std::size_t>(n_) + 1;
  Mat rows(pivots_.size(), zero_vec(field_, width));
  for (std::size_t r = 0; r < pivots_.size(); ++r) rows[r][pivots_[r]] = field_.one();
  for (std::size_t i = 0; i < free_slots_.size(); ++i)
    rows[free_slots_[i].first][free_slots_[i].second] = field_.from_int(counter_[i]);
  auto out = ProjSubspace::from_rows(field_, n_, std::move(rows));

  std::size_t i = 0;
  for (; i < counter_.size(); ++i) {
    if (++counter_[i] < field_.p) break;
    counter_[i] = 0;
  }
  if (i == counter_.size()) {
    if (pivots_.empty() || !advance_pivots()) done_ = true;
    else init_free();
  }
  return out;
}

std::uint64_t gaussian_binomial(unsigned n, unsigned k, unsigned q) {
  if (k > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (unsigned i = 0; i < k; ++i) {
    std::uint64_t qn = 1, qd = 1;
    for (unsigned e = 0; e < n - i; ++e) qn *= q;
    for (unsigned e = 0; e < i + 1; ++e) qd *= q;
    num *= qn - 1;
    den *= qd - 1;
  }
  return num / den;
}

}  // namespace kp
