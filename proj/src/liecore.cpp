#include "lieform/liecore.hpp"

#include <algorithm>

#include <json.hpp>

namespace lieform {

namespace {

using json = nlohmann::json;

bool same_ring(const Ring& a, const Ring& b) { return &a == &b || a.spec() == b.spec(); }

void require_field(const Ring& r, const char* what) {
    if (!r.is_field()) throw Error(ErrorCode::UnsupportedRing, std::string(what) + " needs a field, got " + r.spec());
}

std::vector<std::string> numbered(const std::string& stem, int count) {
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) out.push_back(stem + std::to_string(i));
    return out;
}

using IMat = std::vector<std::vector<long>>;

IMat imul(const IMat& x, const IMat& y) {
    std::size_t n = x.size();
    IMat z(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) z[i][j] += x[i][k] * y[k][j];
    return z;
}

IMat icomm(const IMat& x, const IMat& y) {
    IMat a = imul(x, y), b = imul(y, x);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) a[i][j] -= b[i][j];
    return a;
}

// Coordinates of a skew matrix in the a_ij basis.
std::vector<long> skew_coords(const IMat& m) {
    std::vector<long> out;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = i + 1; j < m.size(); ++j) out.push_back(m[i][j]);
    return out;
}

std::vector<IntTriple> o_triples(int n) {
    auto B = o_basis_matrices(n);
    std::vector<IntTriple> t;
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = i + 1; j < B.size(); ++j) {
            auto co = skew_coords(icomm(B[i], B[j]));
            for (std::size_t k = 0; k < co.size(); ++k)
                if (co[k] != 0) t.emplace_back(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k), co[k]);
        }
    return t;
}

std::vector<std::string> o_labels(int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) out.push_back("a" + std::to_string(i) + std::to_string(j));
    return out;
}

}  // namespace

Vec Algebra::basis_bracket(std::size_t i, std::size_t j) const {
    return Vec(c.begin() + (i * dim + j) * dim, c.begin() + (i * dim + j + 1) * dim);
}

std::size_t Algebra::index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == label) return i;
    throw Error(ErrorCode::BadParams, "no basis element named " + std::string(label) + " in " + name);
}

std::vector<std::vector<std::vector<long>>> o_basis_matrices(int n) {
    std::vector<IMat> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            IMat m(n, std::vector<long>(n, 0));
            m[i][j] = 1;
            m[j][i] = -1;
            out.push_back(m);
        }
    return out;
}

void validate_algebra(const Algebra& L) {
    const Ring& R = *L.ring;
    std::size_t d = L.dim;
    if (L.labels.size() != d || L.c.size() != d * d * d)
        throw Error(ErrorCode::VerificationFailed, L.name + ": table shape");
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                if (i == j && !R.is_zero(L.C(i, i, k)))
                    throw Error(ErrorCode::VerificationFailed, L.name + ": [b,b] != 0");
                if (L.C(i, j, k) != R.neg(L.C(j, i, k)))
                    throw Error(ErrorCode::VerificationFailed, L.name + ": table not alternating");
            }
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k) {
                Vec s = bracket(L, L.basis_bracket(i, j), unit_vec(R, d, k));
                s = vec_add(R, s, bracket(L, L.basis_bracket(j, k), unit_vec(R, d, i)));
                s = vec_add(R, s, bracket(L, L.basis_bracket(k, i), unit_vec(R, d, j)));
                if (!vec_is_zero(R, s))
                    throw Error(ErrorCode::VerificationFailed,
                                L.name + ": Jacobi fails on " + L.labels[i] + "," + L.labels[j] + "," + L.labels[k]);
            }
}

AlgebraPtr algebra_from_constants(std::string name, const RingPtr& r, std::vector<std::string> labels,
                                  std::vector<Elem> c) {
    auto L = std::make_shared<Algebra>();
    L->name = std::move(name);
    L->ring = r;
    L->dim = labels.size();
    L->labels = std::move(labels);
    L->c = std::move(c);
    validate_algebra(*L);
    return L;
}

AlgebraPtr algebra_from_integers(std::string name, const RingPtr& r, std::vector<std::string> labels,
                                 const std::vector<IntTriple>& triples) {
    std::size_t d = labels.size();
    std::vector<Elem> c(d * d * d, r->zero());
    for (auto [i, j, k, v] : triples) {
        if (i < 0 || j < 0 || k < 0 || static_cast<std::size_t>(std::max({i, j, k})) >= d || i >= j)
            throw Error(ErrorCode::BadParams, "structure triple out of range");
        c[(i * d + j) * d + k] = r->from_long(v);
        c[(j * d + i) * d + k] = r->from_long(-v);
    }
    return algebra_from_constants(std::move(name), r, std::move(labels), std::move(c));
}

std::vector<IntTriple> catalog_triples(std::string_view name, int n, std::vector<std::string>& labels) {
    if (name == "lorentz") {
        labels = numbered("b", 6);
        return {{0, 1, 3, 1},  {0, 2, 4, 1},  {0, 3, 1, 1},  {0, 4, 2, 1},  {1, 2, 5, 1}, {1, 3, 0, -1},
                {1, 5, 2, 1},  {2, 4, 0, -1}, {2, 5, 1, -1}, {3, 4, 5, -1}, {3, 5, 4, 1}, {4, 5, 3, -1}};
    }
    if (name == "o") {
        if (n < 2 || n > 6) throw Error(ErrorCode::BadParams, "o(n) needs 2 <= n <= 6");
        labels = o_labels(n);
        return o_triples(n);
    }
    if (name.size() == 2 && name[0] == 'o' && name[1] >= '2' && name[1] <= '6')
        return catalog_triples("o", name[1] - '0', labels);
    if (name == "sl2") {
        labels = {"h", "e", "f"};
        return {{0, 1, 1, 2}, {0, 2, 2, -2}, {1, 2, 0, 1}};
    }
    if (name == "sl2_pair") {
        labels = {"h1", "e1", "f1", "h2", "e2", "f2"};
        return {{0, 1, 1, 2}, {0, 2, 2, -2}, {1, 2, 0, 1}, {3, 4, 4, 2}, {3, 5, 5, -2}, {4, 5, 3, 1}};
    }
    if (name == "poincare") {
        // translations t1..t4 then o(4); [(v,M),(v',M')] = (vM' - v'M, [M,M'])
        labels = numbered("t", 4);
        for (auto& l : o_labels(4)) labels.push_back(l);
        std::vector<IntTriple> t;
        auto B = o_basis_matrices(4);
        for (int a = 0; a < 4; ++a)
            for (std::size_t m = 0; m < B.size(); ++m)
                for (int k = 0; k < 4; ++k)
                    if (B[m][a][k] != 0) t.emplace_back(a, 4 + static_cast<int>(m), k, B[m][a][k]);
        for (auto [i, j, k, v] : o_triples(4)) t.emplace_back(4 + i, 4 + j, 4 + k, v);
        return t;
    }
    throw Error(ErrorCode::BadParams, "unknown algebra " + std::string(name));
}

AlgebraPtr make_algebra(std::string_view name, const RingPtr& r, int n) {
    std::vector<std::string> labels;
    auto t = catalog_triples(name, n, labels);
    std::string full(name);
    if (name == "o") full = "o" + std::to_string(n);
    return algebra_from_integers(full, r, std::move(labels), t);
}

Vec bracket(const Algebra& L, const Vec& x, const Vec& y) {
    if (x.size() != L.dim || y.size() != L.dim) throw Error(ErrorCode::AlgebraMismatch, "element does not belong to " + L.name);
    const Ring& R = *L.ring;
    Vec out = zero_vec(R, L.dim);
    for (std::size_t i = 0; i < L.dim; ++i) {
        if (R.is_zero(x[i])) continue;
        for (std::size_t j = 0; j < L.dim; ++j) {
            if (R.is_zero(y[j]) || i == j) continue;
            Elem xy = R.mul(x[i], y[j]);
            for (std::size_t k = 0; k < L.dim; ++k)
                if (!R.is_zero(L.C(i, j, k))) out[k] = R.add(out[k], R.mul(xy, L.C(i, j, k)));
        }
    }
    return out;
}

Matrix ad(const Algebra& L, const Vec& x) {
    Matrix m(L.ring, L.dim, L.dim);
    for (std::size_t j = 0; j < L.dim; ++j) m.set_row(j, bracket(L, x, unit_vec(*L.ring, L.dim, j)));
    return m;
}

LinearMap identity_map(const AlgebraPtr& L) { return {L, L, Matrix::identity(L->ring, L->dim)}; }

bool is_homomorphism(const LinearMap& f) {
    const Algebra& S = *f.source;
    const Algebra& T = *f.target;
    if (!same_ring(*S.ring, *T.ring)) throw Error(ErrorCode::RingMismatch, S.ring->spec() + " vs " + T.ring->spec());
    if (f.m.rows != S.dim || f.m.cols != T.dim) throw Error(ErrorCode::DimensionMismatch, "map shape");
    std::vector<Vec> img;
    for (std::size_t i = 0; i < S.dim; ++i) img.push_back(f.m.row(i));
    for (std::size_t i = 0; i < S.dim; ++i)
        for (std::size_t j = i + 1; j < S.dim; ++j)
            if (f.apply(S.basis_bracket(i, j)) != bracket(T, img[i], img[j])) return false;
    return true;
}

bool is_automorphism(const LinearMap& f) {
    if (f.source->dim != f.target->dim) return false;
    return is_homomorphism(f) && invert(f.m).has_value();
}

bool is_derivation(const Algebra& L, const Matrix& D) {
    const Ring& R = *L.ring;
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = i + 1; j < L.dim; ++j) {
            Vec lhs = vec_mat(L.basis_bracket(i, j), D);
            Vec rhs = vec_add(R, bracket(L, D.row(i), unit_vec(R, L.dim, j)), bracket(L, unit_vec(R, L.dim, i), D.row(j)));
            if (lhs != rhs) return false;
        }
    return true;
}

Vec flatten(const Matrix& m) { return m.a; }

Matrix unflatten(const RingPtr& r, const Vec& v, std::size_t rows, std::size_t cols) {
    Matrix m(r, rows, cols);
    m.a = v;
    return m;
}

DerivationSpace derivation_space(const Algebra& L) {
    require_field(*L.ring, "derivation_space");
    const Ring& R = *L.ring;
    std::size_t d = L.dim;
    std::size_t pairs = d * (d - 1) / 2;
    // unknown D[a][b] sits at row a*d+b; equation (pair p, coordinate k) at column p*d+k
    Matrix A(L.ring, d * d, pairs * d);
    std::size_t p = 0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j, ++p)
            for (std::size_t k = 0; k < d; ++k) {
                std::size_t col = p * d + k;
                for (std::size_t l = 0; l < d; ++l) {
                    if (!R.is_zero(L.C(i, j, l))) A(l * d + k, col) = R.add(A(l * d + k, col), L.C(i, j, l));
                    if (!R.is_zero(L.C(l, j, k))) A(i * d + l, col) = R.sub(A(i * d + l, col), L.C(l, j, k));
                    if (!R.is_zero(L.C(i, l, k))) A(j * d + l, col) = R.sub(A(j * d + l, col), L.C(i, l, k));
                }
            }
    DerivationSpace out;
    out.span = nullspace(A);
    out.dim = out.span.rank();
    for (const auto& v : out.span.basis) {
        Matrix D = unflatten(L.ring, v, d, d);
        if (!is_derivation(L, D)) throw Error(ErrorCode::VerificationFailed, "nullspace vector is not a derivation");
        out.basis.push_back(std::move(D));
    }
    return out;
}

Submodule inner_derivation_span(const Algebra& L) {
    require_field(*L.ring, "inner_derivation_span");
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < L.dim; ++i) rows.push_back(flatten(ad(L, unit_vec(*L.ring, L.dim, i))));
    return canonicalize(L.ring, rows, L.dim * L.dim);
}

Submodule center(const Algebra& L) {
    std::size_t d = L.dim;
    Matrix A(L.ring, d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) A(i, j * d + k) = L.C(i, j, k);
    return nullspace(A);
}

Submodule derived_subalgebra(const Algebra& L) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < L.dim; ++i)
        for (std::size_t j = i + 1; j < L.dim; ++j) rows.push_back(L.basis_bracket(i, j));
    return canonicalize(L.ring, rows, L.dim);
}

AlgebraPtr restrict_scalars(const Algebra& L) {
    if (L.ring->kind() != RingKind::Dup) throw Error(ErrorCode::NotDupRing, L.ring->spec() + " is not a duplication ring");
    RingPtr base = component(*L.ring, 0);
    const Ring& R = *base;
    std::size_t d = L.dim, D = 2 * d;
    std::vector<Elem> c(D * D * D, R.zero());
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y = 0; y < 2; ++y)
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t k = 0; k < d; ++k) {
                        auto [u, v] = split_pair(*L.ring, L.C(i, j, k));
                        // multiply u + v*i by i^(x+y)
                        Elem re = u, im = v;
                        for (std::size_t s = 0; s < x + y; ++s) {
                            Elem t = R.neg(im);
                            im = re;
                            re = t;
                        }
                        std::size_t I = x * d + i, J = y * d + j;
                        c[(I * D + J) * D + k] = re;
                        c[(I * D + J) * D + d + k] = im;
                    }
    std::vector<std::string> labels = L.labels;
    for (const auto& l : L.labels) labels.push_back(l + "'");
    return algebra_from_constants(L.name + "^R", base, std::move(labels), std::move(c));
}

std::string export_json(const Algebra& L) {
    json j;
    j["name"] = L.name;
    j["dim"] = L.dim;
    j["labels"] = L.labels;
    j["ring"] = L.ring->spec();
    json t = json::array();
    for (std::size_t a = 0; a < L.dim; ++a)
        for (std::size_t b = a + 1; b < L.dim; ++b)
            for (std::size_t k = 0; k < L.dim; ++k)
                if (!L.ring->is_zero(L.C(a, b, k))) t.push_back(json::array({a, b, k, L.ring->str(L.C(a, b, k))}));
    j["triples"] = t;
    return j.dump();
}

AlgebraPtr import_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    try {
        RingPtr r = make_ring(j.at("ring").get<std::string>());
        std::size_t d = j.at("dim").get<std::size_t>();
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
        else labels = numbered("b", static_cast<int>(d));
        if (labels.size() != d) throw Error(ErrorCode::ParseError, "label count differs from dim");
        std::vector<Elem> c(d * d * d, r->zero());
        for (const auto& t : j.at("triples")) {
            auto a = t.at(0).get<std::size_t>(), b = t.at(1).get<std::size_t>(), k = t.at(2).get<std::size_t>();
            if (a >= b || b >= d || k >= d) throw Error(ErrorCode::ParseError, "triple indices out of range");
            Elem v = t.at(3).is_string() ? r->parse(t.at(3).get<std::string>()) : r->from_long(t.at(3).get<long>());
            c[(a * d + b) * d + k] = v;
            c[(b * d + a) * d + k] = r->neg(v);
        }
        std::string name = j.value("name", std::string("imported"));
        return algebra_from_constants(name, r, std::move(labels), std::move(c));
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
}

}  // namespace lieform
