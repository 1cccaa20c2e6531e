#include "lieform/witnesses.hpp"

#include <optional>
#include <tuple>

#include <json.hpp>

namespace lieform {

using json = nlohmann::json;

namespace {

Elem half(const Ring& R) {
    auto h = R.inv(R.from_long(2));
    if (!h) throw Error(ErrorCode::MissingInverse2, "2 is not a unit in " + R.spec());
    return *h;
}

Elem iota(const RingPtr& r) {
    std::optional<Elem> s;
    try {
        s = sqrt_minus_one(r);
    } catch (const Error&) {
        s.reset();
    }
    if (!s) throw Error(ErrorCode::NoSqrtMinusOne, r->spec() + " has no square root of -1");
    return *s;
}

void require_char2(const RingPtr& k) {
    if (!k->is_field() || k->characteristic() != 2)
        throw Error(ErrorCode::WrongCharacteristic, k->spec() + " is not a field of characteristic 2");
}

Matrix from_elems(const RingPtr& r, const std::vector<std::vector<Elem>>& rows) {
    Matrix m(r, rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i].at(j);
    return m;
}

Matrix inverse_or_fail(const Matrix& m, const char* what) {
    auto inv = invert(m);
    if (!inv) throw Error(ErrorCode::VerificationFailed, std::string(what) + " is not invertible");
    return *inv;
}

// A ring ideal from its full member list, with a single generator when one suffices.
RingIdeal ideal_of_members(const RingPtr& r, const std::vector<Elem>& members) {
    RingIdeal all = ideal_generated(r, members);
    for (const auto& g : members) {
        if (r->is_zero(g) && members.size() > 1) continue;
        auto p = ideal_generated(r, {g});
        if (p == all) return p;
    }
    return all;
}

}  // namespace

void verify_iso(const IsoWitness& w) {
    if (!is_homomorphism(w.map)) throw Error(ErrorCode::VerificationFailed, w.name + " is not a homomorphism");
    if (w.map.m.rows != w.map.m.cols || !invert(w.map.m))
        throw Error(ErrorCode::VerificationFailed, w.name + " is not invertible");
}

std::string export_witness(const IsoWitness& w) {
    const Ring& R = *w.map.m.ring;
    json m = json::array();
    for (std::size_t i = 0; i < w.map.m.rows; ++i) m.push_back(vec_str(R, w.map.m.row(i)));
    json j;
    j["name"] = w.name;
    j["ring"] = R.spec();
    j["source"] = w.map.source->name;
    j["target"] = w.map.target->name;
    j["matrix"] = m;
    j["verified"] = w.verified;
    j["anchor"] = w.notes;
    return j.dump();
}

IsoWitness lemma_one_iso(const RingPtr& r) {
    Elem i = iota(r);
    const Ring& R = *r;
    auto L = make_algebra("lorentz", r);
    auto O = make_algebra("o", r, 4);
    Matrix m(r, 6, 6);
    for (std::size_t k = 0; k < 3; ++k) m(k, k) = R.neg(i);
    for (std::size_t k = 3; k < 6; ++k) m(k, k) = R.one();
    IsoWitness w{"lemma_one_iso", {L, O, m}, false, "lorentz-to-o4"};
    verify_iso(w);
    w.verified = true;
    return w;
}

Sl2Split sl2_split(const RingPtr& r) {
    const Ring& R = *r;
    Elem hf = half(R);
    Elem i = iota(r);
    Elem z = R.zero(), ni = R.neg(i), ih = R.mul(i, hf), nih = R.neg(ih), nh = R.neg(hf);
    Sl2Split s;
    // coordinates a12, a13, a14, a23, a24, a34
    s.alpha = {{ni, z, z, z, z, ni}, {z, hf, ih, ih, nh, z}, {z, nh, ih, ih, hf, z}};
    s.beta = {{i, z, z, z, z, ni}, {z, nh, nih, ih, nh, z}, {z, hf, nih, ih, hf, z}};
    auto O = make_algebra("o", r, 4);
    auto P = make_algebra("sl2_pair", r);
    s.I = canonicalize(r, s.alpha, 6);
    s.J = canonicalize(r, s.beta, 6);
    for (const auto& x : s.alpha)
        for (const auto& y : s.beta)
            if (!vec_is_zero(R, bracket(*O, x, y))) throw Error(ErrorCode::VerificationFailed, "[I, J] is not zero");
    if (module_sum(s.I, s.J) != full_module(r, 6) || !intersection(s.I, s.J).is_zero())
        throw Error(ErrorCode::VerificationFailed, "I + J is not a direct sum equal to o4");
    if (!is_bracket_stable(*O, s.I) || !is_bracket_stable(*O, s.J))
        throw Error(ErrorCode::VerificationFailed, "summands are not ideals");
    std::vector<Vec> rows = s.alpha;
    rows.insert(rows.end(), s.beta.begin(), s.beta.end());
    Matrix B = Matrix::from_rows(r, rows, 6);
    s.iso = {"sl2_split", {P, O, B}, false, "sl2-pair-to-o4"};
    verify_iso(s.iso);
    s.iso.verified = true;
    Matrix swap(r, 6, 6);
    for (std::size_t k = 0; k < 3; ++k) swap(k, k + 3) = swap(k + 3, k) = R.one();
    Matrix T = inverse_or_fail(B, "sl2_split basis") * swap * B;
    s.exchange = {"exchange", {O, O, T}, false, "exchange-automorphism"};
    verify_iso(s.exchange);
    s.exchange.verified = true;
    return s;
}

Matrix dup_basis(const RingPtr& r) {
    // alpha, beta, gamma, u, v, w = b1..b6
    return Matrix::from_ints(r, {{0, -2, -2, 0, 0, -2},
                                 {2, 0, 0, 0, 2, 0},
                                 {1, 0, 0, -1, 0, 0},
                                 {2, 0, 0, -2, 2, 0},
                                 {0, 2, 0, 0, 0, 2},
                                 {0, 0, 1, 0, 0, 1}});
}

IsoWitness dup_iso(const RingPtr& r) {
    half(*r);
    auto L = make_algebra("lorentz", r);
    auto T = restrict_scalars(*make_algebra("sl2", make_dup(r)));
    Matrix X = dup_basis(r);
    IsoWitness w{"dup_iso", {L, T, inverse_or_fail(X, "x basis")}, false, "lorentz-to-sl2-dup"};
    verify_iso(w);
    if (table_mismatches(*T, Matrix::identity(r, 6), printed_restricted_table()) != 0)
        throw Error(ErrorCode::VerificationFailed, "restricted sl2 table differs from the printed one");
    if (table_mismatches(*L, X, printed_x_table()) != 0)
        throw Error(ErrorCode::VerificationFailed, "x table differs from the printed one");
    w.verified = true;
    return w;
}

const PrintedTable& printed_restricted_table() {
    // h e f h' e' f' = 0..5
    static const PrintedTable t = {
        {{0, -1}, {2, 1}, {-2, 2}, {0, -1}, {2, 4}, {-2, 5}},
        {{-2, 1}, {0, -1}, {1, 0}, {-2, 4}, {0, -1}, {1, 3}},
        {{2, 2}, {-1, 0}, {0, -1}, {2, 5}, {-1, 3}, {0, -1}},
        {{0, -1}, {2, 4}, {-2, 5}, {0, -1}, {-2, 1}, {2, 2}},
        {{-2, 4}, {0, -1}, {1, 3}, {2, 1}, {0, -1}, {-1, 0}},
        {{2, 5}, {-1, 3}, {0, -1}, {-2, 2}, {1, 0}, {0, -1}},
    };
    return t;
}

const PrintedTable& printed_x_table() {
    // x1..x6 = 0..5
    static const PrintedTable t = {
        {{0, -1}, {2, 1}, {-2, 2}, {0, -1}, {2, 4}, {-2, 5}},
        {{-2, 1}, {0, -1}, {1, 0}, {-2, 4}, {0, -1}, {1, 3}},
        {{2, 2}, {-1, 0}, {0, -1}, {2, 5}, {-1, 3}, {0, -1}},
        {{0, -1}, {2, 4}, {-2, 5}, {0, -1}, {-2, 1}, {2, 2}},
        {{-2, 4}, {0, -1}, {1, 3}, {2, 1}, {0, -1}, {-1, 0}},
        {{2, 5}, {-1, 3}, {0, -1}, {-2, 2}, {1, 0}, {0, -1}},
    };
    return t;
}

std::size_t table_mismatches(const Algebra& L, const Matrix& basis, const PrintedTable& t) {
    const Ring& R = *L.ring;
    std::size_t bad = 0;
    for (std::size_t i = 0; i < basis.rows; ++i)
        for (std::size_t j = 0; j < basis.rows; ++j) {
            Vec got = bracket(L, basis.row(i), basis.row(j));
            const auto& e = t[i][j];
            Vec want = e.index < 0 ? zero_vec(R, L.dim) : vec_scale(R, R.from_long(e.coef), basis.row(e.index));
            bad += got != want;
        }
    return bad;
}

PairDecomposition sl2pair_decompose(const Algebra& L, const Submodule& I, const Submodule* J) {
    const RingPtr& r = L.ring;
    if (L.dim != 6 || L.labels != std::vector<std::string>{"h1", "e1", "f1", "h2", "e2", "f2"})
        throw Error(ErrorCode::AlgebraMismatch, "expected sl2_pair");
    if (!r->finite()) throw Error(ErrorCode::UnsupportedRing, "decompositions are computed over finite rings");
    half(*r);
    const Ring& R = *r;
    auto split = [&](const Submodule& S) {
        if (!is_bracket_stable(L, S)) throw Error(ErrorCode::NotAnIdeal, "submodule is not bracket-stable");
        std::vector<Elem> a, b;
        for (const auto& x : R.elements()) {
            if (member(S, vec_scale(R, x, unit_vec(R, 6, 0)))) a.push_back(x);
            if (member(S, vec_scale(R, x, unit_vec(R, 6, 3)))) b.push_back(x);
        }
        std::vector<Vec> rows;
        for (const auto& g : a)
            for (std::size_t k = 0; k < 3; ++k) rows.push_back(vec_scale(R, g, unit_vec(R, 6, k)));
        for (const auto& g : b)
            for (std::size_t k = 3; k < 6; ++k) rows.push_back(vec_scale(R, g, unit_vec(R, 6, k)));
        if (canonicalize(r, rows, 6) != S) throw Error(ErrorCode::NotAnIdeal, "ideal is not sl2(i) x sl2(j)");
        return std::make_pair(ideal_of_members(r, a), ideal_of_members(r, b));
    };
    PairDecomposition out;
    std::tie(out.i, out.j) = split(I);
    if (J) {
        auto [ja, jb] = split(*J);
        if (!(ja == out.j && jb == out.i))
            throw Error(ErrorCode::PreconditionFailed, "J is not sl2(b) x sl2(a) for I = sl2(a) x sl2(b)");
        // R = a + b with a and b meeting in 0
        std::vector<Elem> gens = out.i.generators;
        gens.insert(gens.end(), out.j.generators.begin(), out.j.generators.end());
        bool whole = ideal_generated(r, gens).is_whole();
        bool disjoint = true;
        for (auto c : out.i.codes)
            if (c != R.zero().code() && out.j.contains(Elem(c))) disjoint = false;
        if (!whole || !disjoint) throw Error(ErrorCode::PreconditionFailed, "the ideals do not split R");
        out.ab = std::make_pair(out.i, out.j);
    }
    return out;
}

AlgebraPtr cross_model(const RingPtr& k) {
    require_char2(k);
    std::vector<IntTriple> t;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            int c = 3 - a - b;  // e_a ^ e_b = e_c in characteristic 2
            if (a < b) {
                t.emplace_back(a, b, c, 1);
                t.emplace_back(a, b, 3 + c, 1);
            }
            t.emplace_back(a, 3 + b, 3 + c, 1);
        }
    return algebra_from_integers("cross_model", k, {"i0", "j0", "k0", "0i", "0j", "0k"}, t);
}

Matrix char2_basis(const RingPtr& k) {
    return Matrix::from_ints(k, {{1, 0, 0, 0, 0, 1},
                                 {0, 1, 0, 0, 1, 0},
                                 {0, 0, 1, 1, 0, 0},
                                 {1, 0, 0, 0, 0, 0},
                                 {0, 1, 0, 0, 0, 0},
                                 {0, 0, 1, 0, 0, 0}});
}

IsoWitness char2_crossmodel(const RingPtr& k) {
    auto V = cross_model(k);
    auto L = make_algebra("lorentz", k);
    // (e_i, 0) -> b_i and (0, e_i) -> x_i
    Matrix P = char2_basis(k);
    Matrix m(k, 6, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        m.set_row(i, P.row(3 + i));
        m.set_row(3 + i, P.row(i));
    }
    IsoWitness w{"char2_crossmodel", {V, L, m}, false, "cross-model"};
    verify_iso(w);
    w.verified = true;
    return w;
}

LinearMap char2_kernel_aut(const RingPtr& k, const Elem& a, const std::vector<std::vector<Elem>>& S) {
    require_char2(k);
    const Ring& R = *k;
    if (!R.is_unit(a)) throw Error(ErrorCode::NotUnit, "a must be a unit");
    if (S.size() != 3) throw Error(ErrorCode::NotSymmetricTraceless, "S must be 3x3");
    Elem tr = R.zero();
    for (std::size_t i = 0; i < 3; ++i) {
        if (S[i].size() != 3) throw Error(ErrorCode::NotSymmetricTraceless, "S must be 3x3");
        tr = R.add(tr, S[i][i]);
        for (std::size_t j = 0; j < 3; ++j)
            if (S[i][j] != S[j][i]) throw Error(ErrorCode::NotSymmetricTraceless, "S is not symmetric");
    }
    if (!R.is_zero(tr)) throw Error(ErrorCode::NotSymmetricTraceless, "S has nonzero trace");
    Elem a1 = R.add(a, R.one());
    Matrix K(k, 6, 6);
    for (std::size_t i = 0; i < 3; ++i) {
        K(i, i) = a;
        K(3 + i, 3 + i) = R.one();
        for (std::size_t j = 0; j < 3; ++j) K(3 + i, j) = i == j ? R.add(a1, S[i][j]) : S[i][j];
    }
    Matrix P = char2_basis(k);
    auto L = make_algebra("lorentz", k);
    LinearMap f{L, L, inverse_or_fail(P, "x, b basis") * K * P};
    if (!is_automorphism(f)) throw Error(ErrorCode::VerificationFailed, "kernel element is not an automorphism");
    return f;
}

std::pair<Elem, std::vector<std::vector<Elem>>> char2_kernel_params(const RingPtr& k, const Matrix& m_b) {
    require_char2(k);
    const Ring& R = *k;
    Matrix P = char2_basis(k);
    Matrix K = P * m_b * inverse_or_fail(P, "x, b basis");
    Elem a = K(0, 0);
    std::vector<std::vector<Elem>> S(3, std::vector<Elem>(3));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            bool d = i == j;
            if (K(i, j) != (d ? a : R.zero()) || !R.is_zero(K(i, 3 + j)) || K(3 + i, 3 + j) != (d ? R.one() : R.zero()))
                throw Error(ErrorCode::VerificationFailed, "matrix is not of kernel block form");
            S[i][j] = d ? R.sub(K(3 + i, j), R.add(a, R.one())) : K(3 + i, j);
        }
    return {a, S};
}

Char2Lift char2_lift_o3(const RingPtr& k, const std::vector<std::vector<Elem>>& g, const std::vector<Elem>& alpha) {
    require_char2(k);
    const Ring& R = *k;
    Matrix G = from_elems(k, g);
    if (G.rows != 3 || G.cols != 3 || G * transpose(G) != Matrix::identity(k, 3))
        throw Error(ErrorCode::NotOrthogonal, "g g^t is not the identity");
    if (*k->cardinality() == 2)
        throw Error(ErrorCode::AlphaConditionUnsatisfiable, "over F_2 every unit is 1 and three of them sum to 1");
    if (alpha.size() != 3) throw Error(ErrorCode::BadParams, "three scalars alpha are needed");
    Elem sum = R.zero();
    for (const auto& x : alpha) {
        if (!R.is_unit(x)) throw Error(ErrorCode::NotUnit, "alpha entries must be units");
        sum = R.add(sum, x);
    }
    if (R.is_one(sum)) throw Error(ErrorCode::AlphaConditionUnsatisfiable, "alpha1 + alpha2 + alpha3 = 1");
    Elem a0 = R.add(sum, R.one());

    auto V = cross_model(k);
    Matrix F(k, 6, 6);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            F(i, j) = G(i, j);
            F(i, 3 + j) = R.mul(alpha[i], G(i, j));
            F(3 + i, 3 + j) = R.mul(a0, G(i, j));
        }
    Char2Lift out;
    out.model_map = {V, V, F};
    if (!is_automorphism(out.model_map)) throw Error(ErrorCode::VerificationFailed, "lift is not an automorphism of the model");
    auto iso = char2_crossmodel(k);
    auto L = iso.map.target;
    out.map = {L, L, inverse_or_fail(iso.map.m, "model isomorphism") * F * iso.map.m};
    if (!is_automorphism(out.map)) throw Error(ErrorCode::VerificationFailed, "lift is not an automorphism");
    // L / I: b1, b2, b3 and b6, b5, b4 have the same images
    Matrix Q = Matrix::from_ints(k, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    out.induced = Matrix(k, 3, 3);
    for (std::size_t i = 0; i < 3; ++i) out.induced.set_row(i, vec_mat(out.map.m.row(i), Q));
    if (out.induced != G) throw Error(ErrorCode::VerificationFailed, "induced map on the quotient differs from g");
    return out;
}

Matrix sl2_ad(const RingPtr& k, const std::vector<std::vector<Elem>>& P) {
    const Ring& R = *k;
    Matrix Pm = from_elems(k, P);
    Matrix Pi = inverse_or_fail(Pm, "P");
    std::vector<Matrix> basis = {Matrix::from_ints(k, {{1, 0}, {0, -1}}), Matrix::from_ints(k, {{0, 1}, {0, 0}}),
                                 Matrix::from_ints(k, {{0, 0}, {1, 0}})};
    Matrix out(k, 3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        Matrix Y = Pm * basis[i] * Pi;
        out.set_row(i, Vec{Y(0, 0), Y(0, 1), Y(1, 0)});
        if (R.add(Y(0, 0), Y(1, 1)) != R.zero()) throw Error(ErrorCode::VerificationFailed, "conjugate left sl2");
    }
    return out;
}

std::vector<std::vector<Elem>> sl2_inner_form(const RingPtr& k, const Matrix& theta) {
    if (!k->is_field() || k->characteristic() == 2)
        throw Error(ErrorCode::WrongCharacteristic, "needs a field of characteristic other than 2");
    const Ring& R = *k;
    auto sl = make_algebra("sl2", k);
    if (!is_automorphism({sl, sl, theta})) throw Error(ErrorCode::PreconditionFailed, "theta is not an automorphism of sl2");
    Elem z = R.zero(), one = R.one();
    Vec h = theta.row(0);
    std::vector<std::vector<Elem>> P;
    if (h == Vec{one, z, z}) {
        P = {{theta(1, 1), z}, {z, one}};
    } else if (h == Vec{R.neg(one), z, z}) {
        auto mu = R.inv(theta(1, 2));
        if (!mu) throw Error(ErrorCode::PreconditionFailed, "theta(e) is not a unit multiple of f");
        P = {{z, *mu}, {one, z}};
    } else {
        throw Error(ErrorCode::NotDiagonalOnH, "theta(h) is neither h nor -h");
    }
    if (sl2_ad(k, P) != theta) throw Error(ErrorCode::VerificationFailed, "Ad(P) differs from theta");
    return P;
}

EtiqReport etiq_cocycles(const RingPtr& k) {
    if (!k->is_field() || k->characteristic() == 2)
        throw Error(ErrorCode::WrongCharacteristic, "needs a field of characteristic other than 2");
    const Ring& R = *k;
    auto O = make_algebra("o", k, 4);
    auto A = o_basis_matrices(4);
    // unknown beta(a_m)_c at row m*4+c; equation (pair p, coordinate c) at column p*4+c
    Matrix E(k, 24, 15 * 4);
    std::size_t p = 0;
    for (std::size_t m = 0; m < 6; ++m)
        for (std::size_t n = m + 1; n < 6; ++n, ++p)
            for (std::size_t c = 0; c < 4; ++c) {
                std::size_t col = p * 4 + c;
                // beta([a_m, a_n]) - beta(a_m) A_n + beta(a_n) A_m = 0
                for (std::size_t l = 0; l < 6; ++l) E(l * 4 + c, col) = R.add(E(l * 4 + c, col), O->C(m, n, l));
                for (std::size_t j = 0; j < 4; ++j) {
                    E(m * 4 + j, col) = R.sub(E(m * 4 + j, col), R.from_long(A[n][j][c]));
                    E(n * 4 + j, col) = R.add(E(n * 4 + j, col), R.from_long(A[m][j][c]));
                }
            }
    EtiqReport rep;
    rep.solutions = nullspace(E);
    rep.dim = rep.solutions.rank();
    // the maps M -> vM for v in K^4
    std::vector<Vec> vm;
    for (std::size_t t = 0; t < 4; ++t) {
        Vec row;
        for (std::size_t m = 0; m < 6; ++m)
            for (std::size_t c = 0; c < 4; ++c) row.push_back(R.from_long(A[m][t][c]));
        vm.push_back(std::move(row));
    }
    Submodule V = canonicalize(k, vm, 24);
    rep.all_of_vm_form = V.rank() == 4 && V == rep.solutions;
    return rep;
}

}  // namespace lieform
