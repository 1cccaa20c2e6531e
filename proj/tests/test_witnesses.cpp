#include <doctest.h>

#include <random>

#include "lieform/witnesses.hpp"

using namespace lieform;

namespace {

using EMat = std::vector<std::vector<Elem>>;

EMat ints(const RingPtr& r, const std::vector<std::vector<long>>& m) {
    EMat out;
    for (const auto& row : m) {
        std::vector<Elem> v;
        for (long x : row) v.push_back(r->from_long(x));
        out.push_back(v);
    }
    return out;
}

Matrix as_matrix(const RingPtr& r, const EMat& m) {
    Matrix out(r, m.size(), m[0].size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[0].size(); ++j) out(i, j) = m[i][j];
    return out;
}

EMat random_sym_traceless(const RingPtr& k, std::mt19937_64& rng) {
    const Ring& R = *k;
    std::uint64_t q = *k->cardinality();
    EMat S(3, std::vector<Elem>(3, R.zero()));
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) S[i][j] = S[j][i] = Elem(rng() % q);
    S[0][0] = Elem(rng() % q);
    S[1][1] = Elem(rng() % q);
    S[2][2] = R.neg(R.add(S[0][0], S[1][1]));
    return S;
}

Elem random_unit(const RingPtr& k, std::mt19937_64& rng) {
    while (true) {
        Elem e(rng() % *k->cardinality());
        if (k->is_unit(e)) return e;
    }
}

// Orthogonal 3x3 matrices from permutations and 2x2 rotation blocks [[c,s],[-s,c]] with c^2+s^2 = 1.
std::vector<EMat> orthogonal_samples(const RingPtr& k) {
    const Ring& R = *k;
    std::vector<EMat> out;
    std::vector<int> perm = {0, 1, 2};
    do {
        EMat P(3, std::vector<Elem>(3, R.zero()));
        for (int i = 0; i < 3; ++i) P[i][perm[i]] = R.one();
        out.push_back(P);
    } while (std::next_permutation(perm.begin(), perm.end()));
    for (const auto& c : R.elements())
        for (const auto& s : R.elements()) {
            if (R.is_zero(s) || R.add(R.mul(c, c), R.mul(s, s)) != R.one()) continue;
            EMat B(3, std::vector<Elem>(3, R.zero()));
            B[0][0] = c;
            B[0][1] = s;
            B[1][0] = R.neg(s);
            B[1][1] = c;
            B[2][2] = R.one();
            out.push_back(B);
        }
    return out;
}

}  // namespace

TEST_SUITE("witnesses") {
    TEST_CASE("lemma one isomorphism") {
        for (const char* spec : {"fp:13", "fq:3^2", "fp:5", "dup(q)", "dup(fp:7)", "zn:65"}) {
            INFO(spec);
            auto w = lemma_one_iso(make_ring(spec));
            CHECK(w.verified);
            CHECK(is_automorphism({w.map.source, w.map.source, Matrix::identity(w.map.m.ring, 6)}));
            CHECK(is_homomorphism(w.map));
        }
        auto f13 = make_ring("fp:13");
        CHECK(lemma_one_iso(f13).map.m(0, 0) == f13->from_long(-5));
        CHECK_THROWS_AS(lemma_one_iso(make_ring("fp:7")), Error);
        CHECK_THROWS_AS(lemma_one_iso(make_rationals()), Error);
    }

    TEST_CASE("sl2 split of o4") {
        for (const char* spec : {"fq:3^2", "fp:13", "dup(q)", "fp:5", "zn:65"}) {
            INFO(spec);
            auto r = make_ring(spec);
            const Ring& R = *r;
            auto s = sl2_split(r);
            CHECK(s.I.rank() == 3);
            CHECK(s.J.rank() == 3);
            auto O = make_algebra("o", r, 4);
            // [h_a, v_a] = 2 v_a, [h_a, v_-a] = -2 v_-a, [v_a, v_-a] = h_a, likewise for beta
            for (const auto* t : {&s.alpha, &s.beta}) {
                const auto& x = *t;
                CHECK(bracket(*O, x[0], x[1]) == vec_scale(R, R.from_long(2), x[1]));
                CHECK(bracket(*O, x[0], x[2]) == vec_scale(R, R.from_long(-2), x[2]));
                CHECK(bracket(*O, x[1], x[2]) == x[0]);
            }
            CHECK(is_automorphism(s.exchange.map));
            CHECK(s.exchange.map.m * s.exchange.map.m == Matrix::identity(r, 6));
            CHECK(vec_mat(s.alpha[0], s.exchange.map.m) == s.beta[0]);
        }
        CHECK_THROWS_AS(sl2_split(make_ring("fp:7")), Error);
        CHECK_THROWS_AS(sl2_split(make_ring("fp:2")), Error);
        CHECK_THROWS_AS(sl2_split(make_rationals()), Error);
    }

    TEST_CASE("duplication isomorphism") {
        auto Q = make_rationals();
        auto w = dup_iso(Q);
        CHECK(w.verified);
        auto L = make_algebra("lorentz", Q);
        auto X = dup_basis(Q);
        // [x2, x3] = x1 and its image [e, f] = h
        CHECK(bracket(*L, X.row(1), X.row(2)) == X.row(0));
        CHECK(w.map.apply(X.row(0)) == unit_vec(*Q, 6, 0));
        CHECK(table_mismatches(*L, X, printed_x_table()) == 0);
        CHECK(table_mismatches(*w.map.target, Matrix::identity(Q, 6), printed_restricted_table()) == 0);
        // the printed first combination has rank five and fails the table
        Matrix Y = X;
        Y.set_row(0, Vec{Q->from_long(-2), Q->from_long(-2), Q->zero(), Q->zero(), Q->zero(), Q->from_long(-2)});
        CHECK(rank(Y) == 5);
        CHECK(table_mismatches(*L, Y, printed_x_table()) > 0);

        auto f7 = make_ring("fp:7");
        CHECK(dup_iso(f7).verified);
        CHECK(dup_iso(make_ring("zn:15")).verified);
        CHECK_THROWS_AS(dup_iso(make_ring("fp:2")), Error);
    }

    TEST_CASE("sl2 pair decompositions") {
        auto z15 = make_ring("zn:15");
        auto L = make_algebra("sl2_pair", z15);
        auto gen = [&](long a, long b) {
            std::vector<Vec> rows;
            for (std::size_t k = 0; k < 3; ++k) {
                rows.push_back(vec_scale(*z15, z15->from_long(a), unit_vec(*z15, 6, k)));
                rows.push_back(vec_scale(*z15, z15->from_long(b), unit_vec(*z15, 6, 3 + k)));
            }
            return ideal_closure(*L, rows);
        };
        auto I = gen(6, 10), J = gen(10, 6);
        auto d = sl2pair_decompose(*L, I, &J);
        CHECK(d.i == ideal_generated(z15, {z15->from_long(6)}));
        CHECK(d.j == ideal_generated(z15, {z15->from_long(10)}));
        REQUIRE(d.ab);
        CHECK(d.ab->first == d.i);
        CHECK(d.ab->second == d.j);
        auto z = sl2pair_decompose(*L, canonicalize(z15, {}, 6));
        CHECK(z.i.is_zero());
        CHECK(z.j.is_zero());
        auto f = sl2pair_decompose(*L, full_module(z15, 6));
        CHECK(f.i.is_whole());
        CHECK(f.j.is_whole());
        CHECK_THROWS_AS(sl2pair_decompose(*L, canonicalize(z15, {unit_vec(*z15, 6, 0)}, 6)), Error);
        auto K = gen(3, 0);
        CHECK_THROWS_AS(sl2pair_decompose(*L, I, &K), Error);
        // every closure of a single element splits
        std::mt19937_64 rng(8);
        for (int t = 0; t < 100; ++t) {
            Vec v;
            for (int i = 0; i < 6; ++i) v.push_back(Elem(rng() % 15));
            CHECK_NOTHROW(sl2pair_decompose(*L, ideal_closure(*L, {v})));
        }
    }

    TEST_CASE("characteristic two cross model") {
        for (const char* spec : {"fp:2", "fq:2^2", "fq:2^3"}) {
            INFO(spec);
            auto k = make_ring(spec);
            auto w = char2_crossmodel(k);
            CHECK(w.verified);
            auto V = cross_model(k);
            // i ^ j = k in the first component
            Vec ij = bracket(*V, unit_vec(*k, 6, 0), unit_vec(*k, 6, 1));
            CHECK(ij[2] == k->one());
            CHECK(ij[0] == k->zero());
            // 0 x V is the ideal I
            auto img = canonicalize(k, {w.map.m.row(3), w.map.m.row(4), w.map.m.row(5)}, 6);
            CHECK(img == char2_ideal(make_algebra("lorentz", k)).ideal);
        }
        CHECK_THROWS_AS(char2_crossmodel(make_ring("fp:3")), Error);
    }

    TEST_CASE("characteristic two kernel automorphisms") {
        auto f2 = make_ring("fp:2");
        auto id = char2_kernel_aut(f2, f2->one(), ints(f2, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}));
        CHECK(id.m == Matrix::identity(f2, 6));
        CHECK(is_automorphism(char2_kernel_aut(f2, f2->one(), ints(f2, {{0, 1, 0}, {1, 0, 0}, {0, 0, 0}}))));
        auto f4 = make_ring("fq:2^2");
        Elem w(2);  // the class of x
        CHECK(is_automorphism(char2_kernel_aut(f4, w, ints(f4, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}))));
        CHECK_THROWS_AS(char2_kernel_aut(f2, f2->one(), ints(f2, {{0, 1, 0}, {0, 0, 0}, {0, 0, 0}})), Error);
        CHECK_THROWS_AS(char2_kernel_aut(f2, f2->one(), ints(f2, {{1, 0, 0}, {0, 0, 0}, {0, 0, 0}})), Error);
        CHECK_THROWS_AS(char2_kernel_aut(f2, f2->zero(), ints(f2, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})), Error);
        CHECK_THROWS_AS(char2_kernel_aut(make_ring("fp:3"), Elem(1), ints(make_ring("fp:3"), {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}})), Error);

        // composition law (a a', a' S + S') over F_4
        std::mt19937_64 rng(12);
        const Ring& R = *f4;
        for (int t = 0; t < 50; ++t) {
            Elem a = random_unit(f4, rng), b = random_unit(f4, rng);
            auto S = random_sym_traceless(f4, rng), T = random_sym_traceless(f4, rng);
            auto F = char2_kernel_aut(f4, a, S), G = char2_kernel_aut(f4, b, T);
            auto [c, U] = char2_kernel_params(f4, F.m * G.m);
            CHECK(c == R.mul(a, b));
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) CHECK(U[i][j] == R.add(R.mul(b, S[i][j]), T[i][j]));
            CHECK(is_automorphism({F.source, F.target, F.m * G.m}));
            auto [a2, S2] = char2_kernel_params(f4, F.m);
            CHECK(a2 == a);
            CHECK(S2 == S);
        }
    }

    TEST_CASE("kernel family is the whole block-form stabilizer over F_2") {
        // oracle: every matrix [[1,0],[M,1]] over F_2 that is an automorphism has M = S symmetric traceless
        auto f2 = make_ring("fp:2");
        auto L = make_algebra("lorentz", f2);
        Matrix P = char2_basis(f2);
        Matrix Pi = *invert(P);
        std::size_t found = 0;
        for (unsigned bits = 0; bits < 512; ++bits) {
            Matrix K = Matrix::identity(f2, 6);
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) K(3 + i, j) = Elem((bits >> (3 * i + j)) & 1);
            if (!is_automorphism({L, L, Pi * K * P})) continue;
            ++found;
            auto [a, S] = char2_kernel_params(f2, Pi * K * P);
            CHECK(a == f2->one());
            CHECK(S[0][1] == S[1][0]);
            CHECK(S[0][2] == S[2][0]);
            CHECK(S[1][2] == S[2][1]);
            CHECK(f2->add(S[0][0], f2->add(S[1][1], S[2][2])) == f2->zero());
        }
        CHECK(found == 32);
    }

    TEST_CASE("characteristic two lifts of orthogonal maps") {
        auto f4 = make_ring("fq:2^2");
        const Ring& R = *f4;
        Elem w(2);
        std::vector<Elem> alpha = {w, w, w};
        auto I3 = ints(f4, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
        auto lift = char2_lift_o3(f4, I3, alpha);
        CHECK(is_automorphism(lift.map));
        CHECK(lift.induced == as_matrix(f4, I3));
        auto swap = ints(f4, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}});
        CHECK(char2_lift_o3(f4, swap, alpha).induced == as_matrix(f4, swap));
        std::size_t rotations = 0;
        for (const auto& g : orthogonal_samples(f4)) {
            auto l = char2_lift_o3(f4, g, {w, Elem(3), w});  // sum w + 1
            CHECK(l.induced == as_matrix(f4, g));
            rotations += g[2][2] == R.one() && g[0][1] != R.zero() && g[0][0] != R.zero();
        }
        CHECK(rotations > 0);
        // the lift preserves I
        auto I = char2_ideal(make_algebra("lorentz", f4)).ideal;
        for (const auto& row : I.basis) CHECK(member(I, lift.map.apply(row)));

        CHECK_THROWS_AS(char2_lift_o3(f4, ints(f4, {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}), alpha), Error);
        CHECK_THROWS_AS(char2_lift_o3(f4, I3, {w, w, R.one()}), Error);  // w + w + 1 = 1
        auto f2 = make_ring("fp:2");
        CHECK_THROWS_AS(char2_lift_o3(f2, ints(f2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}), {f2->one(), f2->one(), f2->one()}), Error);
    }

    TEST_CASE("inner form of sl2 automorphisms") {
        auto f7 = make_ring("fp:7");
        auto P = sl2_inner_form(f7, Matrix::from_ints(f7, {{1, 0, 0}, {0, 3, 0}, {0, 0, 5}}));
        CHECK(P == ints(f7, {{3, 0}, {0, 1}}));
        auto f5 = make_ring("fp:5");
        auto P2 = sl2_inner_form(f5, Matrix::from_ints(f5, {{-1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
        CHECK(P2 == ints(f5, {{0, 1}, {1, 0}}));
        auto Q = make_rationals();
        CHECK(sl2_inner_form(Q, Matrix::identity(Q, 3)) == ints(Q, {{1, 0}, {0, 1}}));
        // h -> -h, e -> 2f, f -> e/2 over Q
        Matrix th(Q, 3, 3);
        th(0, 0) = Q->from_long(-1);
        th(1, 2) = Q->from_long(2);
        th(2, 1) = *Q->inv(Q->from_long(2));
        auto P3 = sl2_inner_form(Q, th);
        CHECK(sl2_ad(Q, P3) == th);
        CHECK_THROWS_AS(sl2_inner_form(f7, Matrix::from_ints(f7, {{1, 0, 0}, {0, 3, 0}, {0, 0, 3}})), Error);
        // conjugation by [[1,1],[0,1]] moves h off the line K h
        auto U = sl2_ad(f7, ints(f7, {{1, 1}, {0, 1}}));
        CHECK_THROWS_AS(sl2_inner_form(f7, U), Error);
        CHECK_THROWS_AS(sl2_inner_form(make_ring("fp:2"), Matrix::identity(make_ring("fp:2"), 3)), Error);
        // Ad is a homomorphism GL2 -> Aut(sl2)
        auto sl = make_algebra("sl2", f7);
        std::mt19937_64 rng(3);
        for (int t = 0; t < 30; ++t) {
            EMat A(2, std::vector<Elem>(2)), B(2, std::vector<Elem>(2));
            for (auto* M : {&A, &B})
                do {
                    for (auto& row : *M)
                        for (auto& e : row) e = Elem(rng() % 7);
                } while (!invert(as_matrix(f7, *M)));
            Matrix AB = as_matrix(f7, A) * as_matrix(f7, B);
            EMat ab = {{AB(0, 0), AB(0, 1)}, {AB(1, 0), AB(1, 1)}};
            // X -> AB X (AB)^-1 is Ad(B) then Ad(A) in row convention
            CHECK(sl2_ad(f7, ab) == sl2_ad(f7, B) * sl2_ad(f7, A));
            CHECK(is_automorphism({sl, sl, sl2_ad(f7, A)}));
        }
    }

    TEST_CASE("cocycles are of the form M -> vM") {
        for (const char* spec : {"fp:3", "fp:5", "q", "fp:7", "fq:3^2"}) {
            INFO(spec);
            auto rep = etiq_cocycles(make_ring(spec));
            CHECK(rep.dim == 4);
            CHECK(rep.all_of_vm_form);
        }
        CHECK_THROWS_AS(etiq_cocycles(make_ring("fp:2")), Error);
    }

    TEST_CASE("witness export") {
        auto w = lemma_one_iso(make_ring("fp:13"));
        auto s = export_witness(w);
        CHECK(s.find("\"verified\":true") != std::string::npos);
        CHECK(s.find("\"ring\":\"fp:13\"") != std::string::npos);
        CHECK(s.find("\"8\"") != std::string::npos);  // -5 in F_13
    }
}
