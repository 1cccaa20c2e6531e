#include <doctest.h>

#include <algorithm>
#include <random>
#include <map>
#include <set>

#include "lieform/exactla.hpp"

using namespace lieform;

namespace {

Vec ints(const RingPtr& r, std::vector<long> xs) {
    Vec v;
    for (long x : xs) v.push_back(r->from_long(x));
    return v;
}

// All vectors of R^n for a finite ring, in code order.
std::vector<Vec> all_vectors(const RingPtr& r, std::size_t n) {
    std::vector<Vec> out{Vec{}};
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vec> next;
        for (const auto& v : out)
            for (const auto& e : r->elements()) {
                Vec w = v;
                w.push_back(e);
                next.push_back(w);
            }
        out = std::move(next);
    }
    return out;
}

std::vector<std::uint64_t> key(const Vec& v) {
    std::vector<std::uint64_t> k;
    for (const auto& e : v) k.push_back(e.code());
    return k;
}

// Oracle: the span of gens by closing {0} under adding r*g.
std::set<std::vector<std::uint64_t>> brute_span(const RingPtr& r, const std::vector<Vec>& gens, std::size_t n) {
    std::set<std::vector<std::uint64_t>> span{key(zero_vec(*r, n))};
    bool grown = true;
    while (grown) {
        grown = false;
        std::vector<std::vector<std::uint64_t>> cur(span.begin(), span.end());
        for (const auto& s : cur)
            for (const auto& g : gens)
                for (const auto& c : r->elements()) {
                    Vec sv;
                    for (auto x : s) sv.push_back(Elem(x));
                    auto k = key(vec_add(*r, sv, vec_scale(*r, c, g)));
                    if (span.insert(k).second) grown = true;
                }
    }
    return span;
}

Matrix random_matrix(const RingPtr& r, std::size_t m, std::size_t n, std::mt19937_64& rng) {
    Matrix A(r, m, n);
    for (auto& e : A.a) {
        if (r->finite()) e = Elem(rng() % *r->cardinality());
        else e = r->from_long(static_cast<long>(rng() % 7) - 3);
    }
    return A;
}

}  // namespace

TEST_SUITE("exactla") {
    TEST_CASE("canonicalize examples") {
        auto f3 = make_ring("fp:3");
        auto s = canonicalize(f3, {ints(f3, {1, 1, 0}), ints(f3, {2, 2, 0})}, 3);
        REQUIRE(s.rank() == 1);
        CHECK(s.basis[0] == ints(f3, {1, 1, 0}));

        auto z4 = make_ring("zn:4");
        auto h = canonicalize(z4, {ints(z4, {2, 0}), ints(z4, {0, 2})}, 2);
        REQUIRE(h.rank() == 2);
        CHECK(h.basis[0] == ints(z4, {2, 0}));
        CHECK(h.basis[1] == ints(z4, {0, 2}));
        CHECK(member(h, ints(z4, {2, 2})));
        CHECK_FALSE(member(h, ints(z4, {1, 0})));

        auto e = canonicalize(make_rationals(), {}, 4);
        CHECK(e.rank() == 0);
        CHECK(member(e, zero_vec(*make_rationals(), 4)));
        CHECK_THROWS_AS(canonicalize(make_ring("dup(fp:5)"), {}, 2), Error);
        CHECK_THROWS_AS(member(e, zero_vec(*make_rationals(), 3)), Error);

        auto f5 = make_ring("fp:5");
        CHECK(member(canonicalize(f5, {ints(f5, {1, 0, 0})}, 3), ints(f5, {3, 0, 0})));
    }

    TEST_CASE("howell form keeps the annihilator row") {
        // span{(2,1)} over Z_4 contains 2*(2,1) = (0,2)
        auto z4 = make_ring("zn:4");
        auto h = canonicalize(z4, {ints(z4, {2, 1})}, 2);
        REQUIRE(h.rank() == 2);
        CHECK(h.basis[1] == ints(z4, {0, 2}));
        CHECK(module_size(h) == 4);
    }

    TEST_CASE("canonical form is idempotent and order-insensitive") {
        std::mt19937_64 rng(7);
        for (const char* spec : {"fp:5", "zn:12", "zn:9", "fq:2^2", "q"}) {
            auto r = make_ring(spec);
            for (int trial = 0; trial < 5; ++trial) {
                auto G = random_matrix(r, 4, 5, rng);
                std::vector<Vec> rows;
                for (std::size_t i = 0; i < G.rows; ++i) rows.push_back(G.row(i));
                auto base = canonicalize(r, rows, 5);
                CHECK(canonicalize(r, base.basis, 5) == base);
                for (int s = 0; s < 100; ++s) {
                    std::shuffle(rows.begin(), rows.end(), rng);
                    REQUIRE(canonicalize(r, rows, 5) == base);
                }
            }
        }
    }

    TEST_CASE("membership agrees with brute-force spans on every small submodule") {
        struct Case {
            const char* spec;
            std::size_t n;
            std::size_t gens;
        };
        for (auto c : {Case{"zn:4", 2, 2}, Case{"zn:6", 2, 2}, Case{"fp:2", 3, 3}, Case{"fp:3", 2, 2}}) {
            auto r = make_ring(c.spec);
            auto vecs = all_vectors(r, c.n);
            std::map<std::set<std::vector<std::uint64_t>>, Submodule> seen;
            std::size_t total = vecs.size();
            std::vector<std::size_t> idx(c.gens, 0);
            // every generator tuple of the given length
            while (true) {
                std::vector<Vec> gens;
                for (auto i : idx) gens.push_back(vecs[i]);
                auto S = canonicalize(r, gens, c.n);
                auto span = brute_span(r, gens, c.n);
                for (const auto& v : vecs) REQUIRE(member(S, v) == (span.count(key(v)) == 1));
                CHECK(module_size(S) == span.size());
                auto it = seen.find(span);
                if (it == seen.end()) seen.emplace(span, S);
                else REQUIRE(it->second == S);  // equal spans give identical bases
                std::size_t k = 0;
                while (k < c.gens && ++idx[k] == total) idx[k++] = 0;
                if (k == c.gens) break;
            }
            // distinct spans give distinct bases
            std::set<std::vector<std::vector<std::uint64_t>>> bases;
            for (const auto& [span, S] : seen) {
                std::vector<std::vector<std::uint64_t>> b;
                for (const auto& row : S.basis) b.push_back(key(row));
                bases.insert(b);
            }
            CHECK(bases.size() == seen.size());
        }
    }

    TEST_CASE("nullspace examples") {
        auto f7 = make_ring("fp:7");
        CHECK(nullspace(Matrix::identity(f7, 3)).rank() == 0);
        auto Q = make_rationals();
        CHECK(nullspace(Matrix(Q, 2, 2)).rank() == 2);
        auto f5 = make_ring("fp:5");
        auto N = nullspace(Matrix::from_ints(f5, {{1, 2}, {2, 4}}));
        CHECK(N.rank() == 1);
        CHECK(member(N, ints(f5, {3, 1})));
        CHECK_THROWS_AS(nullspace(Matrix(make_ring("prod(fp:3,fp:5)"), 2, 2)), Error);
    }

    TEST_CASE("rank plus nullity") {
        std::mt19937_64 rng(11);
        for (const char* spec : {"fp:2", "fp:3", "fp:5", "q"}) {
            auto r = make_ring(spec);
            for (int t = 0; t < 200; ++t) {
                std::size_t m = 1 + rng() % 6, n = 1 + rng() % 6;
                auto A = random_matrix(r, m, n, rng);
                auto N = nullspace(A);
                REQUIRE(rank(A) + N.rank() == m);
                for (const auto& x : N.basis) REQUIRE(vec_is_zero(*r, vec_mat(x, A)));
            }
        }
    }

    TEST_CASE("kernels over Z/n match brute force") {
        std::mt19937_64 rng(5);
        for (const char* spec : {"zn:4", "zn:6", "zn:8", "zn:9"}) {
            auto r = make_ring(spec);
            for (int t = 0; t < 20; ++t) {
                auto A = random_matrix(r, 3, 2, rng);
                auto N = nullspace(A);
                std::size_t count = 0;
                for (const auto& x : all_vectors(r, 3)) {
                    bool in_kernel = vec_is_zero(*r, vec_mat(x, A));
                    count += in_kernel;
                    REQUIRE(member(N, x) == in_kernel);
                }
                CHECK(module_size(N) == count);
            }
        }
    }

    TEST_CASE("inversion") {
        for (const char* spec : {"fp:3", "zn:4", "q", "dup(fp:5)"}) {
            auto r = make_ring(spec);
            CHECK(*invert(Matrix::identity(r, 3)) == Matrix::identity(r, 3));
        }
        auto z4 = make_ring("zn:4");
        CHECK_FALSE(invert(Matrix::from_ints(z4, {{2, 0}, {0, 1}})));
        auto f3 = make_ring("fp:3");
        auto P = Matrix::from_ints(f3, {{0, 1}, {1, 0}});
        CHECK(*invert(P) == P);
        CHECK_THROWS_AS(invert(Matrix(f3, 2, 3)), Error);

        std::mt19937_64 rng(3);
        for (const char* spec : {"fp:5", "zn:12", "zn:9", "q", "fq:3^2", "dup(fp:5)", "prod(fp:3,zn:4)"}) {
            auto r = make_ring(spec);
            int inverted = 0;
            for (int t = 0; t < 60; ++t) {
                auto A = random_matrix(r, 3, 3, rng);
                auto inv = invert(A);
                bool unit_det = r->is_unit(determinant(A));
                REQUIRE(inv.has_value() == unit_det);
                if (inv) {
                    ++inverted;
                    REQUIRE(*inv * A == Matrix::identity(r, 3));
                    REQUIRE(A * *inv == Matrix::identity(r, 3));
                }
            }
            CHECK(inverted > 0);
        }
    }

    TEST_CASE("intersection and sum") {
        auto f5 = make_ring("fp:5");
        auto x = canonicalize(f5, {ints(f5, {1, 0, 0}), ints(f5, {0, 1, 0})}, 3);
        auto y = canonicalize(f5, {ints(f5, {0, 1, 0}), ints(f5, {0, 0, 1})}, 3);
        CHECK(intersection(x, y) == canonicalize(f5, {ints(f5, {0, 1, 0})}, 3));
        CHECK(module_sum(x, y) == full_module(f5, 3));
        auto z12 = make_ring("zn:12");
        auto a = canonicalize(z12, {ints(z12, {2, 0})}, 2);
        auto b = canonicalize(z12, {ints(z12, {3, 0})}, 2);
        CHECK(intersection(a, b) == canonicalize(z12, {ints(z12, {6, 0})}, 2));
        CHECK(module_sum(a, b) == canonicalize(z12, {ints(z12, {1, 0})}, 2));
    }
}
