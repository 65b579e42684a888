#pragma once

#include <cstddef>
#include <vector>

#include "kp/field.hpp"

namespace kp {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;

Vec zero_vec(const FieldSpec& field, std::size_t n);
Vec unit_vec(const FieldSpec& field, std::size_t n, std::size_t i);
Vec make_vec(const FieldSpec& field, std::initializer_list<long> entries);

bool is_zero(const Vec& v);
Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(const Scalar& c, const Vec& v);
Scalar dot(const Vec& a, const Vec& b);
/// a = a + c * b, in place.
void axpy(Vec& a, const Scalar& c, const Vec& b);

/// Reduced row echelon form with leading coefficient 1; zero rows dropped.
/// Returns the pivot column of each remaining row.
std::vector<std::size_t> rref(Mat& m);
std::size_t rank(Mat m);
/// Basis of {x : m x = 0}, where m has `cols` columns.
Mat kernel(Mat m, std::size_t cols, const FieldSpec& field);
Vec mat_vec(const Mat& m, const Vec& v);

/// True iff a and b are nonzero multiples of each other.
bool proportional(const Vec& a, const Vec& b);

}  // namespace kp
