#include "lieform/poincare.hpp"

#include <algorithm>
#include <numeric>

#include "lieform/error.hpp"

namespace lieform {

namespace {

constexpr std::size_t kT = 4;  // translations come first

void require_poincare(const Algebra& P) {
    if (P.name != "poincare" || P.dim != 10) throw Error(ErrorCode::AlgebraMismatch, "expected poincare, got " + P.name);
}

void require_finite_field(const Ring& K) {
    if (!K.is_field() || !K.finite()) throw Error(ErrorCode::UnsupportedRing, K.spec() + " is not a finite field");
}

Matrix to_matrix(const RingPtr& r, const SquareMat& m) {
    Matrix out(r, m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) out(i, j) = m[i][j];
    return out;
}

SquareMat to_square(const Matrix& m) {
    SquareMat out(m.rows, std::vector<Elem>(m.cols));
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) out[i][j] = m(i, j);
    return out;
}

std::vector<Matrix> o4_basis(const RingPtr& r) {
    std::vector<Matrix> out;
    for (const auto& b : o_basis_matrices(4)) out.push_back(Matrix::from_ints(r, b));
    return out;
}

// o4 coordinates of C, or nothing when C is not skew.
std::optional<Vec> skew_coords(const Ring& R, const Matrix& C) {
    Vec c;
    for (std::size_t i = 0; i < 4; ++i) {
        if (!R.is_zero(C(i, i))) return std::nullopt;
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (C(j, i) != R.neg(C(i, j))) return std::nullopt;
            c.push_back(C(i, j));
        }
    }
    return c;
}

Vec lift_o4(const Ring& R, const Vec& o) {
    Vec v = zero_vec(R, 10);
    std::copy(o.begin(), o.end(), v.begin() + kT);
    return v;
}

Elem q_form(const Ring& R, const Vec& v) {
    Elem s = R.zero();
    for (std::size_t a = 0; a < kT; ++a) s = R.add(s, R.mul(v[a], v[a]));
    return s;
}

Elem random_elem(const RingPtr& r, std::mt19937_64& rng) {
    const Ring& R = *r;
    if (auto q = R.cardinality()) return R.from_code(rng() % *q);
    if (R.kind() == RingKind::Dup) {
        auto base = component(R, 0);
        return make_pair_elem(R, random_elem(base, rng), random_elem(base, rng));
    }
    return R.from_long(static_cast<long>(rng() % 11) - 5);
}

Elem random_unit(const RingPtr& r, std::mt19937_64& rng) {
    while (true) {
        Elem e = random_elem(r, rng);
        if (r->is_unit(e)) return e;
    }
}

Vec random_vec(const RingPtr& r, std::size_t n, std::mt19937_64& rng) {
    Vec v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(random_elem(r, rng));
    return v;
}

LinearMap quotient_map(const AlgebraPtr& P, const Matrix& to_pair, std::size_t keep) {
    const RingPtr& r = P->ring;
    Matrix m(r, 10, 3);
    for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t c = 0; c < 3; ++c) m(kT + k, c) = to_pair(k, keep + c);
    return {P, make_algebra("sl2", r), m};
}

}  // namespace

Submodule radical(const Algebra& P) {
    require_poincare(P);
    std::vector<Vec> rows;
    for (std::size_t a = 0; a < kT; ++a) rows.push_back(unit_vec(*P.ring, 10, a));
    return canonicalize(P.ring, rows, 10);
}

PoincareWitness build_lattice(const RingPtr& r) {
    auto split = sl2_split(r);
    const Ring& R = *r;
    PoincareWitness W;
    W.ring = r;
    W.algebra = make_algebra("poincare", r);
    const Algebra& P = *W.algebra;
    W.r = radical(P);
    auto lifted = [&](const std::vector<Vec>& sl) {
        auto rows = W.r.basis;
        for (const auto& x : sl) rows.push_back(lift_o4(R, x));
        return canonicalize(r, rows, 10);
    };
    W.i = lifted(split.alpha);
    W.j = lifted(split.beta);

    for (std::size_t a = 0; a < kT; ++a)
        for (std::size_t b = 0; b < kT; ++b)
            if (!vec_is_zero(R, P.basis_bracket(a, b))) throw Error(ErrorCode::VerificationFailed, "r is not abelian");
    for (const auto* S : {&W.r, &W.i, &W.j})
        if (!is_bracket_stable(P, *S)) throw Error(ErrorCode::VerificationFailed, "lattice member is not an ideal");
    if (intersection(W.i, W.j) != W.r) throw Error(ErrorCode::VerificationFailed, "i and j do not meet in r");
    if (module_sum(W.i, W.j) != full_module(r, 10)) throw Error(ErrorCode::VerificationFailed, "i + j is not p");
    if (R.is_field() && (W.r.rank() != 4 || W.i.rank() != 7 || W.j.rank() != 7))
        throw Error(ErrorCode::VerificationFailed, "unexpected lattice ranks");

    auto inv = invert(split.iso.map.m);
    if (!inv) throw Error(ErrorCode::VerificationFailed, "sl2 pair basis is not invertible");
    const Matrix& to_pair = *inv;
    W.to_sl2_mod_i = quotient_map(W.algebra, to_pair, 3);
    W.to_sl2_mod_j = quotient_map(W.algebra, to_pair, 0);
    // each map kills its ideal and is bijective on the lift of the other summand, so its kernel is that ideal
    auto check = [&](const LinearMap& f, const Submodule& ker, const std::vector<Vec>& section) {
        if (!is_homomorphism(f)) throw Error(ErrorCode::VerificationFailed, "quotient map is not a homomorphism");
        for (const auto& b : ker.basis)
            if (!vec_is_zero(R, f.apply(b))) throw Error(ErrorCode::VerificationFailed, "quotient map does not kill its ideal");
        for (std::size_t c = 0; c < 3; ++c)
            if (f.apply(lift_o4(R, section[c])) != unit_vec(R, 3, c))
                throw Error(ErrorCode::VerificationFailed, "quotient map is not onto sl2");
    };
    check(W.to_sl2_mod_i, W.i, split.beta);
    check(W.to_sl2_mod_j, W.j, split.alpha);
    return W;
}

MinimalityReport radical_minimality(const AlgebraPtr& P) {
    require_poincare(*P);
    const Ring& K = *P->ring;
    require_finite_field(K);
    const std::uint64_t q = *K.cardinality();
    if (q > 31) throw Error(ErrorCode::SizeLimit, "translation sweep needs |K|^4 <= 10^6");
    ClosureEngine E(P);
    std::vector<IVec> rgens;
    for (std::size_t a = 0; a < kT; ++a) {
        IVec v(10, 0);
        v[a] = K.code(K.one());
        rgens.push_back(v);
    }
    const auto rkey = E.close(rgens);

    MinimalityReport rep;
    rep.value = true;
    rep.elements = q * q * q * q - 1;
    // lines through the origin: leading coordinate 1
    for (std::size_t lead = 0; lead < kT; ++lead) {
        std::uint64_t tail = 1;
        for (std::size_t a = lead + 1; a < kT; ++a) tail *= q;
        for (std::uint64_t t = 0; t < tail; ++t) {
            IVec v(10, 0);
            v[lead] = K.code(K.one());
            std::uint64_t x = t;
            for (std::size_t a = kT; a-- > lead + 1;) {
                v[a] = x % q;
                x /= q;
            }
            ++rep.closures;
            Vec e;
            for (auto c : v) e.push_back(K.from_code(c));
            (K.is_zero(q_form(K, e)) ? rep.isotropic : rep.nonisotropic) += 1;
            if (E.close({v}) != rkey && rep.value) {
                rep.value = false;
                rep.offender = e;
            }
        }
    }
    return rep;
}

SpectrumReport ideal_spectrum_sample(const PoincareWitness& W, const SweepOptions& opt) {
    const Algebra& P = *W.algebra;
    const Ring& R = *W.ring;
    ClosureEngine E(W.algebra);
    SweepOptions o = opt;
    o.force_sampled = true;
    SpectrumReport rep;
    rep.sweep = sweep_closures(E, o);
    const auto full = full_module(W.ring, 10);
    for (const auto& c : rep.sweep.classes) {
        std::string name;
        if (c.closure == W.r) name = "r";
        else if (c.closure == W.i) name = "i";
        else if (c.closure == W.j) name = "j";
        else if (c.closure == full) name = "full";
        else {
            name = "other-" + std::to_string(c.rank);
            rep.counterexamples.push_back(c.representative);
        }
        rep.fingerprints[name] += c.count;
        bool central_mod_r = true;
        for (const auto& b : c.closure.basis)
            for (std::size_t k = 0; k < P.dim && central_mod_r; ++k)
                central_mod_r = member(W.r, bracket(P, b, unit_vec(R, P.dim, k)));
        if (central_mod_r && !contains(W.r, c.closure)) rep.zur_shadow = false;
    }
    return rep;
}

Matrix poincare_d(const Algebra& P, const Elem& lambda, const Vec& v0) {
    require_poincare(P);
    const RingPtr& r = P.ring;
    Matrix d(r, 10, 10);
    for (std::size_t a = 0; a < kT; ++a) d(a, a) = lambda;
    auto B = o4_basis(r);
    for (std::size_t m = 0; m < B.size(); ++m) {
        Vec w = vec_mat(v0, B[m]);
        for (std::size_t a = 0; a < kT; ++a) d(kT + m, a) = w[a];
    }
    return d;
}

PoincareDerReport poincare_der(const AlgebraPtr& P, std::size_t samples, std::uint64_t seed) {
    require_poincare(*P);
    const RingPtr& K = P->ring;
    const Ring& R = *K;
    if (!R.is_field()) throw Error(ErrorCode::UnsupportedRing, R.spec() + " is not a field");
    if (R.characteristic() == 2) throw Error(ErrorCode::WrongCharacteristic, "characteristic 2");
    PoincareDerReport rep;
    auto D = derivation_space(*P);
    rep.dim = D.dim;
    auto inner = inner_derivation_span(*P);
    rep.inner_dim = inner.rank();
    rep.inner_inside = contains(D.span, inner);

    std::mt19937_64 rng(seed);
    std::vector<std::pair<Elem, Vec>> params;
    for (std::size_t s = 0; s < samples; ++s) {
        params.emplace_back(random_elem(K, rng), random_vec(K, kT, rng));
        if (is_derivation(*P, poincare_d(*P, params.back().first, params.back().second))) ++rep.d_checked;
    }
    for (std::size_t s = 0; s + 1 < params.size(); ++s) {
        const auto& [l1, v1] = params[s];
        const auto& [l2, v2] = params[s + 1];
        Matrix M1 = poincare_d(*P, l1, v1), M2 = poincare_d(*P, l2, v2);
        // matrix of d1 d2 is M2 M1
        Matrix C = M2 * M1 - M1 * M2;
        Vec w = vec_sub(R, vec_scale(R, l1, v2), vec_scale(R, l2, v1));
        if (C == poincare_d(*P, R.zero(), w)) ++rep.commutators_checked;
    }

    auto O = make_algebra("o", K, 4);
    rep.q_shadow = true;
    for (const auto& d : D.basis) {
        Matrix sub(K, 6, 6);
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b) sub(a, b) = d(kT + a, kT + b);
        if (!is_derivation(*O, sub)) rep.q_shadow = false;
    }
    return rep;
}

LinearMap aut_family(const AlgebraPtr& P, const Elem& lambda, const Vec& v0, const SquareMat& x0) {
    require_poincare(*P);
    const RingPtr& K = P->ring;
    const Ring& R = *K;
    if (!R.is_unit(lambda)) throw Error(ErrorCode::NotUnit, "lambda is not a unit");
    if (x0.size() != 4 || v0.size() != 4) throw Error(ErrorCode::DimensionMismatch, "x0 must be 4 x 4 and v0 of length 4");
    Matrix X = to_matrix(K, x0);
    auto Xi = invert(X);
    if (!Xi) throw Error(ErrorCode::NotStabilizing, "x0 is not invertible");
    Matrix f(K, 10, 10);
    for (std::size_t a = 0; a < kT; ++a) {
        Vec row = vec_scale(R, lambda, Xi->row(a));
        for (std::size_t b = 0; b < kT; ++b) f(a, b) = row[b];
    }
    auto B = o4_basis(K);
    for (std::size_t m = 0; m < B.size(); ++m) {
        Matrix C = X * B[m] * *Xi;
        auto c = skew_coords(R, C);
        if (!c) throw Error(ErrorCode::NotStabilizing, "x0 does not normalize o4");
        Vec w = vec_mat(v0, C);
        for (std::size_t b = 0; b < kT; ++b) f(kT + m, b) = w[b];
        for (std::size_t b = 0; b < 6; ++b) f(kT + m, kT + b) = (*c)[b];
    }
    LinearMap out{P, P, f};
    if (!is_automorphism(out)) throw Error(ErrorCode::VerificationFailed, "f_{lambda,v0,x0} is not an automorphism");
    return out;
}

SquareMat random_orthogonal(const RingPtr& k, std::size_t n, std::mt19937_64& rng, int factors) {
    const Ring& R = *k;
    require_finite_field(R);
    std::vector<std::pair<Elem, Elem>> cs;
    for (const auto& c : R.elements())
        for (const auto& s : R.elements())
            if (R.add(R.mul(c, c), R.mul(s, s)) == R.one()) cs.emplace_back(c, s);
    Matrix G = Matrix::identity(k, n);
    for (int f = 0; f < factors; ++f) {
        Matrix F(k, n, n);
        if (rng() % 2 == 0 || n < 2) {
            std::vector<std::size_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            for (std::size_t i = 0; i < n; ++i) F(i, perm[i]) = rng() % 2 ? R.one() : R.neg(R.one());
        } else {
            F = Matrix::identity(k, n);
            std::size_t i = rng() % n, j = rng() % (n - 1);
            if (j >= i) ++j;
            const auto& [c, s] = cs[rng() % cs.size()];
            F(i, i) = c;
            F(i, j) = s;
            F(j, i) = R.neg(s);
            F(j, j) = c;
        }
        G = G * F;
    }
    return to_square(G);
}

AutRelations check_aut_relations(const AlgebraPtr& P, std::size_t triples, std::uint64_t seed) {
    require_poincare(*P);
    const RingPtr& K = P->ring;
    const Ring& R = *K;
    require_finite_field(R);
    std::mt19937_64 rng(seed);
    AutRelations rep;
    const Matrix I10 = Matrix::identity(K, 10);
    for (std::size_t t = 0; t < triples; ++t) {
        ++rep.triples;
        Elem l = random_unit(K, rng), mu = random_unit(K, rng);
        Vec v0 = random_vec(K, kT, rng), v1 = random_vec(K, kT, rng);
        SquareMat x0 = random_orthogonal(K, 4, rng), x1 = random_orthogonal(K, 4, rng);
        Matrix X0 = to_matrix(K, x0), X0i = *invert(X0);
        auto F = aut_family(P, l, v0, x0);
        auto G = aut_family(P, mu, v1, x1);
        rep.automorphisms_ok += is_automorphism(F) && is_automorphism(G);
        // f g = f_{l mu, l v1 x0^-1 + v0, x0 x1}; matrix of f g is M_g M_f
        Vec v = vec_add(R, vec_scale(R, l, vec_mat(v1, X0i)), v0);
        auto FG = aut_family(P, R.mul(l, mu), v, to_square(X0 * to_matrix(K, x1)));
        if (G.m * F.m == FG.m) ++rep.composition_ok;
        Elem li = *R.inv(l);
        auto Fi = aut_family(P, li, vec_scale(R, R.neg(li), vec_mat(v0, X0)), to_square(X0i));
        if (F.m * Fi.m == I10 && Fi.m * F.m == I10) ++rep.inverse_ok;
    }
    return rep;
}

}  // namespace lieform
