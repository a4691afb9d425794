#pragma once

#include <vector>

#include "kroncalc/rational.hpp"

namespace kroncalc {

using IntMat = std::vector<IntVec>;  // row-major, rows are vectors
using RatMat = std::vector<RatVec>;

long dot(const IntVec& a, const IntVec& b);
Rational dot(const IntVec& a, const RatVec& b);
RatVec to_rat(const IntVec& v);

// exact determinant of a small square integer matrix (fraction-free elimination)
Integer det(const IntMat& m);
long det_long(const IntMat& m);  // throws CapExceeded on overflow
long rank(const IntMat& rows);
long rank(const RatMat& rows);

// solve sum_i x_i rows[i] = v for square invertible rows; throws SingularCoordinateChange
RatVec solve_rows(const IntMat& rows, const RatVec& v);

// adjugate of a square integer matrix: adj * m = det * I
IntMat adjugate(const IntMat& m);

// elementary divisors (nonzero diagonal of the Smith form)
std::vector<Integer> smith_diagonal(const IntMat& m);

// Row Hermite-style reduction: a basis (rows) of the Z-span of the given rows.
IntMat lattice_basis_of(const IntMat& gens);

// Unimodular U (n x n, columns) such that rows * U has zeros outside the first rank(rows) columns.
IntMat column_compression(const IntMat& rows, long& rk);

// generalized cross product of n-1 vectors in Z^n, made primitive with first nonzero entry positive
IntVec primitive_normal(const IntMat& rows, long n);
IntVec make_primitive(IntVec v);

}  // namespace kroncalc
