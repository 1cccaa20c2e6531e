#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "lieform/exactla.hpp"

namespace lieform {

// [b_i, b_j] = sum_k c[i][j][k] b_k
struct Algebra {
    std::string name;
    RingPtr ring;
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<Elem> c;

    const Elem& C(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * dim + j) * dim + k]; }
    Vec basis_bracket(std::size_t i, std::size_t j) const;
    std::size_t index_of(std::string_view label) const;
};
using AlgebraPtr = std::shared_ptr<const Algebra>;

// (i, j, k, coefficient) with i < j, 0-based.
using IntTriple = std::tuple<int, int, int, long>;

AlgebraPtr algebra_from_integers(std::string name, const RingPtr& r, std::vector<std::string> labels,
                                 const std::vector<IntTriple>& triples);
AlgebraPtr algebra_from_constants(std::string name, const RingPtr& r, std::vector<std::string> labels,
                                  std::vector<Elem> c);
// Throws VerificationFailed unless the table is alternating and satisfies Jacobi.
void validate_algebra(const Algebra& L);

// lorentz, o (with n), o2..o6, sl2, sl2_pair, poincare
AlgebraPtr make_algebra(std::string_view name, const RingPtr& r, int n = 0);
std::vector<IntTriple> catalog_triples(std::string_view name, int n, std::vector<std::string>& labels);

// o(n) basis matrices a_ij = e_ij - e_ji in lexicographic order of (i, j).
std::vector<std::vector<std::vector<long>>> o_basis_matrices(int n);

Vec bracket(const Algebra& L, const Vec& x, const Vec& y);
Matrix ad(const Algebra& L, const Vec& x);

struct LinearMap {
    AlgebraPtr source, target;
    Matrix m;  // row i is the image of source basis element i

    Vec apply(const Vec& v) const { return vec_mat(v, m); }
};

LinearMap identity_map(const AlgebraPtr& L);
bool is_homomorphism(const LinearMap& f);
bool is_automorphism(const LinearMap& f);
bool is_derivation(const Algebra& L, const Matrix& D);

Vec flatten(const Matrix& m);
Matrix unflatten(const RingPtr& r, const Vec& v, std::size_t rows, std::size_t cols);

struct DerivationSpace {
    std::size_t dim = 0;
    std::vector<Matrix> basis;
    Submodule span;  // flattened
};
DerivationSpace derivation_space(const Algebra& L);
Submodule inner_derivation_span(const Algebra& L);

Submodule center(const Algebra& L);
Submodule derived_subalgebra(const Algebra& L);

// Over R from an algebra over Dup(R); basis b_i then (0,1) b_i.
AlgebraPtr restrict_scalars(const Algebra& L);

std::string export_json(const Algebra& L);
AlgebraPtr import_json(const std::string& text);

}  // namespace lieform
