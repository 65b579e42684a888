#include "kp/linalg.hpp"

#include <utility>

#include "kp/error.hpp"

namespace kp {

Vec zero_vec(const FieldSpec& field, std::size_t n) { return Vec(n, field.zero()); }

Vec unit_vec(const FieldSpec& field, std::size_t n, std::size_t i) {
  Vec v = zero_vec(field, n);
  v.at(i) = field.one();
  return v;
}

Vec make_vec(const FieldSpec& field, std::initializer_list<long> entries) {
  Vec v;
  v.reserve(entries.size());
  for (long e : entries) v.push_back(field.from_int(e));
  return v;
}

bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

Vec operator+(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sizes differ");
  Vec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += b[i];
  return out;
}

Vec operator-(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "vector sizes differ");
  Vec out(a);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] -= b[i];
  return out;
}

Vec operator*(const Scalar& c, const Vec& v) {
  Vec out(v);
  for (auto& x : out) x *= c;
  return out;
}

Scalar dot(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || a.empty()) throw Error(ErrorCode::DimensionMismatch, "dot of mismatched vectors");
  Scalar acc = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) acc += a[i] * b[i];
  return acc;
}

void axpy(Vec& a, const Scalar& c, const Vec& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "axpy of mismatched vectors");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += c * b[i];
}

std::vector<std::size_t> rref(Mat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const Scalar inv = m[row][col].inv();
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Scalar factor = -m[r][col];
      axpy(m[r], factor, m[row]);
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);
  return pivots;
}

std::size_t rank(Mat m) { return rref(m).size(); }

Mat kernel(Mat m, std::size_t cols, const FieldSpec& field) {
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Mat basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v = unit_vec(field, cols, free);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Vec mat_vec(const Mat& m, const Vec& v) {
  Vec out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(dot(row, v));
  return out;
}

bool proportional(const Vec& a, const Vec& b) {
  if (a.size() != b.size() || is_zero(a) || is_zero(b)) return false;
  // a_i b_j = a_j b_i for all i, j; checking against one nonzero index suffices.
  std::size_t k = 0;
  while (a[k].is_zero()) ++k;
  if (b[k].is_zero()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] * b[k] == b[i] * a[k])) return false;
  return true;
}

}  // namespace kp
