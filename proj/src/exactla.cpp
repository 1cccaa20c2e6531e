#include "lieform/exactla.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace lieform {

namespace {

using u64 = std::uint64_t;
using i128 = __int128;

bool is_zn(const Ring& r) { return r.kind() == RingKind::Zn && !r.is_field(); }

void require_canonical_ring(const Ring& r) {
    if (!r.is_field() && !is_zn(r))
        throw Error(ErrorCode::UnsupportedRing, "canonical forms need a field or Z/n, got " + r.spec());
}

IVec to_ivec(const Vec& v) {
    IVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].code();
    return out;
}

Vec from_ivec(const IVec& v) {
    Vec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = Elem(v[i]);
    return out;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m); }

// Extended gcd over Z: s*a + t*b = g.
void xgcd(i128 a, i128 b, i128& g, i128& s, i128& t) {
    i128 r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        i128 q = r0 / r1;
        i128 x = r0 - q * r1;
        r0 = r1;
        r1 = x;
        x = s0 - q * s1;
        s0 = s1;
        s1 = x;
        x = t0 - q * t1;
        t0 = t1;
        t1 = x;
    }
    g = r0;
    s = s0;
    t = t0;
}

u64 modn(i128 x, u64 N) {
    i128 r = x % static_cast<i128>(N);
    if (r < 0) r += N;
    return static_cast<u64>(r);
}

// A unit w mod N with w*a = gcd(a, N) mod N.
u64 normalizing_unit(u64 a, u64 N) {
    u64 d = std::gcd(a, N);
    u64 M = N / d;
    u64 ap = (a / d) % M;
    i128 g, s, t;
    xgcd(ap, M, g, s, t);
    u64 w0 = M == 1 ? 0 : modn(s, M);
    for (u64 k = 0;; ++k) {
        u64 w = (w0 + k * M) % N;
        if (std::gcd(w, N) == 1) return w;
    }
}

void row_axpy(IVec& dst, const IVec& src, u64 c, u64 N) {
    // dst -= c * src
    if (c == 0) return;
    for (std::size_t j = 0; j < dst.size(); ++j) {
        u64 t = mulmod(c, src[j], N);
        dst[j] = dst[j] >= t ? dst[j] - t : dst[j] + N - t;
    }
}

// Generic reduced row echelon form over a field; returns pivot columns.
std::vector<std::size_t> rref_inplace(const Ring& R, std::vector<Vec>& rows, std::size_t n) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    bool infinite = !R.finite();
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t best = rows.size();
        std::size_t best_size = 0;
        for (std::size_t i = r; i < rows.size(); ++i) {
            if (R.is_zero(rows[i][c])) continue;
            if (!infinite) {
                best = i;
                break;
            }
            std::size_t bs = R.bitsize(rows[i][c]);
            if (best == rows.size() || bs < best_size) {
                best = i;
                best_size = bs;
            }
        }
        if (best == rows.size()) continue;
        std::swap(rows[r], rows[best]);
        Elem piv_inv = R.inv(rows[r][c]).value();
        for (auto& x : rows[r]) x = R.mul(x, piv_inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || R.is_zero(rows[i][c])) continue;
            Elem f = rows[i][c];
            for (std::size_t j = 0; j < n; ++j)
                if (!R.is_zero(rows[r][j])) rows[i][j] = R.sub(rows[i][j], R.mul(f, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

std::size_t pivot_col(const Ring& R, const Vec& row) {
    for (std::size_t j = 0; j < row.size(); ++j)
        if (!R.is_zero(row[j])) return j;
    return row.size();
}

}  // namespace

// ---------------------------------------------------------------- Howell

std::vector<IVec> howell_form(std::vector<IVec> A, std::size_t n, std::uint64_t N) {
    for (auto& row : A)
        for (auto& x : row) x %= N;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n; ++c) {
        if (r >= A.size()) break;
        for (std::size_t i = r + 1; i < A.size(); ++i) {
            if (A[i][c] == 0) continue;
            if (A[r][c] == 0) {
                std::swap(A[r], A[i]);
                continue;
            }
            i128 g, s, t;
            xgcd(A[r][c], A[i][c], g, s, t);
            u64 ss = modn(s, N), tt = modn(t, N);
            u64 uu = modn(-static_cast<i128>(A[i][c] / static_cast<u64>(g)), N);
            u64 vv = modn(A[r][c] / static_cast<u64>(g), N);
            for (std::size_t j = c; j < n; ++j) {
                u64 x = A[r][j], y = A[i][j];
                A[r][j] = (mulmod(ss, x, N) + mulmod(tt, y, N)) % N;
                A[i][j] = (mulmod(uu, x, N) + mulmod(vv, y, N)) % N;
            }
        }
        if (A[r][c] == 0) continue;
        u64 w = normalizing_unit(A[r][c], N);
        if (w != 1)
            for (std::size_t j = c; j < n; ++j) A[r][j] = mulmod(A[r][j], w, N);
        u64 d = A[r][c];
        for (std::size_t k = 0; k < r; ++k) {
            u64 q = A[k][c] / d;
            row_axpy(A[k], A[r], q, N);
        }
        if (d != 1) {
            IVec ann(n);
            u64 f = N / d;
            bool nz = false;
            for (std::size_t j = 0; j < n; ++j) {
                ann[j] = mulmod(A[r][j], f, N);
                nz |= ann[j] != 0;
            }
            if (nz) A.push_back(std::move(ann));
        }
        ++r;
    }
    std::vector<IVec> out;
    for (auto& row : A)
        if (std::any_of(row.begin(), row.end(), [](u64 x) { return x != 0; })) out.push_back(std::move(row));
    // Rows are produced in pivot order; keep only the first r (the rest are zero).
    out.resize(std::min(out.size(), r));
    return out;
}

bool howell_member(const std::vector<IVec>& basis, IVec v, std::uint64_t N) {
    for (auto& x : v) x %= N;
    for (const auto& row : basis) {
        std::size_t c = 0;
        while (row[c] == 0) ++c;
        u64 d = row[c];
        if (v[c] % d != 0) return false;
        row_axpy(v, row, v[c] / d, N);
    }
    return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

// ---------------------------------------------------------------- Matrix

Matrix::Matrix(RingPtr r, std::size_t m, std::size_t n) : ring(std::move(r)), rows(m), cols(n), a(m * n, ring->zero()) {}

Vec Matrix::row(std::size_t i) const { return Vec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

void Matrix::set_row(std::size_t i, const Vec& v) {
    if (v.size() != cols) throw Error(ErrorCode::DimensionMismatch, "row length");
    std::copy(v.begin(), v.end(), a.begin() + i * cols);
}

Matrix Matrix::identity(const RingPtr& r, std::size_t n) {
    Matrix m(r, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = r->one();
    return m;
}

Matrix Matrix::from_rows(const RingPtr& r, const std::vector<Vec>& rows, std::size_t cols) {
    Matrix m(r, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

Matrix Matrix::from_ints(const RingPtr& r, const std::vector<std::vector<long>>& rows) {
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    Matrix m(r, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = r->from_long(rows[i].at(j));
    return m;
}

bool operator==(const Matrix& x, const Matrix& y) { return x.rows == y.rows && x.cols == y.cols && x.a == y.a; }

Matrix operator*(const Matrix& x, const Matrix& y) {
    if (x.cols != y.rows) throw Error(ErrorCode::DimensionMismatch, "matrix product");
    const Ring& R = *x.ring;
    Matrix z(x.ring, x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Elem& xik = x(i, k);
            if (R.is_zero(xik)) continue;
            for (std::size_t j = 0; j < y.cols; ++j)
                if (!R.is_zero(y(k, j))) z(i, j) = R.add(z(i, j), R.mul(xik, y(k, j)));
        }
    return z;
}

Matrix operator+(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
    Matrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.ring->add(x.a[i], y.a[i]);
    return z;
}

Matrix operator-(const Matrix& x, const Matrix& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
    Matrix z = x;
    for (std::size_t i = 0; i < z.a.size(); ++i) z.a[i] = x.ring->sub(x.a[i], y.a[i]);
    return z;
}

Matrix scale(const Elem& c, const Matrix& x) {
    Matrix z = x;
    for (auto& e : z.a) e = x.ring->mul(c, e);
    return z;
}

Matrix transpose(const Matrix& x) {
    Matrix z(x.ring, x.cols, x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t j = 0; j < x.cols; ++j) z(j, i) = x(i, j);
    return z;
}

Vec zero_vec(const Ring& r, std::size_t n) { return Vec(n, r.zero()); }

Vec unit_vec(const Ring& r, std::size_t n, std::size_t i) {
    Vec v(n, r.zero());
    v[i] = r.one();
    return v;
}

Vec vec_add(const Ring& r, const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = r.add(x[i], y[i]);
    return z;
}

Vec vec_sub(const Ring& r, const Vec& x, const Vec& y) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = r.sub(x[i], y[i]);
    return z;
}

Vec vec_scale(const Ring& r, const Elem& c, const Vec& x) {
    Vec z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = r.mul(c, x[i]);
    return z;
}

Vec vec_mat(const Vec& v, const Matrix& m) {
    if (v.size() != m.rows) throw Error(ErrorCode::DimensionMismatch, "vector times matrix");
    const Ring& R = *m.ring;
    Vec out(m.cols, R.zero());
    for (std::size_t i = 0; i < m.rows; ++i) {
        if (R.is_zero(v[i])) continue;
        for (std::size_t j = 0; j < m.cols; ++j)
            if (!R.is_zero(m(i, j))) out[j] = R.add(out[j], R.mul(v[i], m(i, j)));
    }
    return out;
}

bool vec_is_zero(const Ring& r, const Vec& v) {
    return std::all_of(v.begin(), v.end(), [&](const Elem& e) { return r.is_zero(e); });
}

std::vector<std::string> vec_str(const Ring& r, const Vec& v) {
    std::vector<std::string> out;
    for (const auto& e : v) out.push_back(r.str(e));
    return out;
}

// ---------------------------------------------------------------- Submodules

bool operator==(const Submodule& x, const Submodule& y) { return x.n == y.n && x.basis == y.basis; }

Submodule canonicalize(const RingPtr& r, const std::vector<Vec>& rows, std::size_t n) {
    require_canonical_ring(*r);
    for (const auto& v : rows)
        if (v.size() != n) throw Error(ErrorCode::DimensionMismatch, "generator length");
    Submodule s;
    s.ring = r;
    s.n = n;
    if (r->is_field()) {
        std::vector<Vec> work = rows;
        rref_inplace(*r, work, n);
        s.basis = std::move(work);
    } else {
        std::vector<IVec> iv;
        iv.reserve(rows.size());
        for (const auto& v : rows) iv.push_back(to_ivec(v));
        for (auto& row : howell_form(std::move(iv), n, modulus(*r))) s.basis.push_back(from_ivec(row));
    }
    return s;
}

Submodule full_module(const RingPtr& r, std::size_t n) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < n; ++i) rows.push_back(unit_vec(*r, n, i));
    return canonicalize(r, rows, n);
}

bool member(const Submodule& s, const Vec& v) {
    if (v.size() != s.n) throw Error(ErrorCode::DimensionMismatch, "vector length differs from ambient dimension");
    const Ring& R = *s.ring;
    if (R.is_field()) {
        Vec w = v;
        for (const auto& row : s.basis) {
            std::size_t c = pivot_col(R, row);
            if (R.is_zero(w[c])) continue;
            Elem f = w[c];
            for (std::size_t j = c; j < s.n; ++j) w[j] = R.sub(w[j], R.mul(f, row[j]));
        }
        return vec_is_zero(R, w);
    }
    std::vector<IVec> b;
    for (const auto& row : s.basis) b.push_back(to_ivec(row));
    return howell_member(b, to_ivec(v), modulus(R));
}

bool contains(const Submodule& big, const Submodule& small) {
    return std::all_of(small.basis.begin(), small.basis.end(), [&](const Vec& v) { return member(big, v); });
}

Submodule module_sum(const Submodule& x, const Submodule& y) {
    std::vector<Vec> rows = x.basis;
    rows.insert(rows.end(), y.basis.begin(), y.basis.end());
    return canonicalize(x.ring, rows, x.n);
}

Submodule intersection(const Submodule& x, const Submodule& y) {
    // kernel of the stacked generators (x ; y) gives pairs (a, b) with aX = -bY
    std::vector<Vec> rows = x.basis;
    rows.insert(rows.end(), y.basis.begin(), y.basis.end());
    if (rows.empty()) return canonicalize(x.ring, {}, x.n);
    Matrix S = Matrix::from_rows(x.ring, rows, x.n);
    Submodule k = nullspace(S);
    std::vector<Vec> gens;
    for (const auto& kv : k.basis) {
        Vec a(kv.begin(), kv.begin() + x.basis.size());
        Vec g = zero_vec(*x.ring, x.n);
        for (std::size_t i = 0; i < a.size(); ++i) g = vec_add(*x.ring, g, vec_scale(*x.ring, a[i], x.basis[i]));
        gens.push_back(g);
    }
    return canonicalize(x.ring, gens, x.n);
}

std::uint64_t module_size(const Submodule& s) {
    u64 q = s.ring->cardinality().value();
    u64 size = 1;
    if (s.ring->is_field()) {
        for (std::size_t i = 0; i < s.rank(); ++i) size *= q;
        return size;
    }
    for (const auto& row : s.basis) {
        std::size_t c = pivot_col(*s.ring, row);
        size *= q / row[c].code();
    }
    return size;
}

Submodule nullspace(const Matrix& A) {
    const RingPtr& R = A.ring;
    require_canonical_ring(*R);
    std::size_t m = A.rows, n = A.cols;
    if (R->is_field()) {
        // right kernel of A^T
        std::vector<Vec> t;
        t.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            Vec col(m);
            for (std::size_t i = 0; i < m; ++i) col[i] = A(i, j);
            t.push_back(std::move(col));
        }
        auto piv = rref_inplace(*R, t, m);
        std::vector<bool> is_piv(m, false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<Vec> gens;
        for (std::size_t f = 0; f < m; ++f) {
            if (is_piv[f]) continue;
            Vec x = zero_vec(*R, m);
            x[f] = R->one();
            for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = R->neg(t[k][f]);
            gens.push_back(std::move(x));
        }
        return canonicalize(R, gens, m);
    }
    // Howell form of [A | I]; rows vanishing on the A block span the kernel.
    u64 N = modulus(*R);
    std::vector<IVec> rows;
    for (std::size_t i = 0; i < m; ++i) {
        IVec r(n + m, 0);
        for (std::size_t j = 0; j < n; ++j) r[j] = A(i, j).code();
        r[n + i] = 1 % N;
        rows.push_back(std::move(r));
    }
    auto H = howell_form(std::move(rows), n + m, N);
    std::vector<Vec> gens;
    for (const auto& row : H) {
        if (std::any_of(row.begin(), row.begin() + n, [](u64 x) { return x != 0; })) continue;
        gens.push_back(from_ivec(IVec(row.begin() + n, row.end())));
    }
    return canonicalize(R, gens, m);
}

std::size_t rank(const Matrix& A) {
    if (!A.ring->is_field()) throw Error(ErrorCode::UnsupportedRing, "rank is defined here over fields");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < A.rows; ++i) rows.push_back(A.row(i));
    return rref_inplace(*A.ring, rows, A.cols).size();
}

namespace {

// Determinant by expansion over column subsets, memoized; n <= 16.
Elem det_subsets(const Matrix& A) {
    std::size_t n = A.rows;
    const Ring& R = *A.ring;
    std::vector<Elem> memo(std::size_t(1) << n, R.zero());
    std::vector<bool> done(std::size_t(1) << n, false);
    // memo[mask] = det of rows [n - popcount(mask), n) against columns in mask
    std::function<Elem(std::size_t)> go = [&](std::size_t mask) -> Elem {
        if (mask == 0) return R.one();
        if (done[mask]) return memo[mask];
        std::size_t row = n - static_cast<std::size_t>(__builtin_popcountll(mask));
        Elem acc = R.zero();
        int sign_pos = 0;
        for (std::size_t c = 0; c < n; ++c) {
            if (!(mask >> c & 1)) continue;
            if (!R.is_zero(A(row, c))) {
                Elem t = R.mul(A(row, c), go(mask & ~(std::size_t(1) << c)));
                acc = (sign_pos % 2 == 0) ? R.add(acc, t) : R.sub(acc, t);
            }
            ++sign_pos;
        }
        done[mask] = true;
        memo[mask] = acc;
        return acc;
    };
    return go((std::size_t(1) << n) - 1);
}

Matrix minor_of(const Matrix& A, std::size_t r, std::size_t c) {
    Matrix M(A.ring, A.rows - 1, A.cols - 1);
    for (std::size_t i = 0, ii = 0; i < A.rows; ++i) {
        if (i == r) continue;
        for (std::size_t j = 0, jj = 0; j < A.cols; ++j) {
            if (j == c) continue;
            M(ii, jj++) = A(i, j);
        }
        ++ii;
    }
    return M;
}

}  // namespace

Elem determinant(const Matrix& A) {
    if (A.rows != A.cols) throw Error(ErrorCode::NotSquare, "determinant of a non-square matrix");
    if (A.rows > 16) throw Error(ErrorCode::SizeLimit, "determinant expansion limited to 16x16");
    return det_subsets(A);
}

std::optional<Matrix> invert(const Matrix& A) {
    if (A.rows != A.cols) throw Error(ErrorCode::NotSquare, "cannot invert a non-square matrix");
    const RingPtr& R = A.ring;
    std::size_t n = A.rows;
    if (R->is_field()) {
        std::vector<Vec> rows;
        for (std::size_t i = 0; i < n; ++i) {
            Vec r = A.row(i);
            Vec e = unit_vec(*R, n, i);
            r.insert(r.end(), e.begin(), e.end());
            rows.push_back(std::move(r));
        }
        auto piv = rref_inplace(*R, rows, 2 * n);
        if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
        Matrix inv(R, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = rows[i][n + j];
        return inv;
    }
    if (is_zn(*R)) {
        u64 N = modulus(*R);
        std::vector<IVec> rows;
        for (std::size_t i = 0; i < n; ++i) {
            IVec r(2 * n, 0);
            for (std::size_t j = 0; j < n; ++j) r[j] = A(i, j).code();
            r[n + i] = 1;
            rows.push_back(std::move(r));
        }
        auto H = howell_form(std::move(rows), 2 * n, N);
        if (H.size() < n) return std::nullopt;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (H[i][j] != (i == j ? 1u : 0u)) return std::nullopt;
        Matrix inv(R, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) inv(i, j) = Elem(H[i][n + j]);
        return inv;
    }
    // Other rings: adjugate over the determinant.
    if (n > 8) throw Error(ErrorCode::Unsupported, "inversion over " + R->spec() + " limited to 8x8");
    Elem d = determinant(A);
    auto dinv = R->inv(d);
    if (!dinv) return std::nullopt;
    Matrix inv(R, n, n);
    if (n == 1) {
        inv(0, 0) = *dinv;
        return inv;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Elem c = determinant(minor_of(A, i, j));
            if ((i + j) % 2) c = R->neg(c);
            inv(j, i) = R->mul(c, *dinv);
        }
    return inv;
}

}  // namespace lieform
