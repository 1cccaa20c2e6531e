#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "lieform/scalars.hpp"

namespace lieform {

using Vec = std::vector<Elem>;

struct Matrix {
    RingPtr ring;
    std::size_t rows = 0, cols = 0;
    std::vector<Elem> a;  // row-major

    Matrix() = default;
    Matrix(RingPtr r, std::size_t m, std::size_t n);

    Elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Elem& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    Vec row(std::size_t i) const;
    void set_row(std::size_t i, const Vec& v);

    static Matrix identity(const RingPtr& r, std::size_t n);
    static Matrix from_rows(const RingPtr& r, const std::vector<Vec>& rows, std::size_t cols);
    static Matrix from_ints(const RingPtr& r, const std::vector<std::vector<long>>& rows);
};

bool operator==(const Matrix& x, const Matrix& y);
inline bool operator!=(const Matrix& x, const Matrix& y) { return !(x == y); }
Matrix operator*(const Matrix& x, const Matrix& y);
Matrix operator+(const Matrix& x, const Matrix& y);
Matrix operator-(const Matrix& x, const Matrix& y);
Matrix scale(const Elem& c, const Matrix& x);
Matrix transpose(const Matrix& x);

Vec zero_vec(const Ring& r, std::size_t n);
Vec unit_vec(const Ring& r, std::size_t n, std::size_t i);
Vec vec_add(const Ring& r, const Vec& x, const Vec& y);
Vec vec_sub(const Ring& r, const Vec& x, const Vec& y);
Vec vec_scale(const Ring& r, const Elem& c, const Vec& x);
Vec vec_mat(const Vec& v, const Matrix& m);  // row vector times matrix
bool vec_is_zero(const Ring& r, const Vec& v);
std::vector<std::string> vec_str(const Ring& r, const Vec& v);

// Canonical submodule of R^n: reduced row echelon basis over a field, Howell
// basis over Z/n.
struct Submodule {
    RingPtr ring;
    std::size_t n = 0;
    std::vector<Vec> basis;

    std::size_t rank() const { return basis.size(); }
    bool is_zero() const { return basis.empty(); }
};

bool operator==(const Submodule& x, const Submodule& y);
inline bool operator!=(const Submodule& x, const Submodule& y) { return !(x == y); }

Submodule canonicalize(const RingPtr& r, const std::vector<Vec>& rows, std::size_t n);
Submodule full_module(const RingPtr& r, std::size_t n);
bool member(const Submodule& s, const Vec& v);
bool contains(const Submodule& big, const Submodule& small);
Submodule module_sum(const Submodule& x, const Submodule& y);
Submodule intersection(const Submodule& x, const Submodule& y);
// Number of elements of a submodule of a finite module.
std::uint64_t module_size(const Submodule& s);

// {x : xA = 0} over a field or Z/n.
Submodule nullspace(const Matrix& A);
std::size_t rank(const Matrix& A);
std::optional<Matrix> invert(const Matrix& A);
Elem determinant(const Matrix& A);

// Raw Howell form over Z/N on residue rows.
using IVec = std::vector<std::uint64_t>;
std::vector<IVec> howell_form(std::vector<IVec> rows, std::size_t n, std::uint64_t N);
bool howell_member(const std::vector<IVec>& basis, IVec v, std::uint64_t N);

}  // namespace lieform
