#include <doctest.h>

#include <set>

#include "lieform/scalars.hpp"

using namespace lieform;

namespace {

// Odd prime powers up to a bound, as (p, n).
std::vector<std::pair<std::uint64_t, unsigned>> odd_prime_powers(std::uint64_t bound) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t p = 3; p <= bound; p += 2) {
        if (!is_prime(p)) continue;
        std::uint64_t q = p;
        for (unsigned n = 1; q <= bound; ++n, q *= p) out.emplace_back(p, n);
    }
    return out;
}

// Independent oracle: a monic quadratic over F_p is irreducible iff it has no root.
std::vector<std::uint64_t> least_quadratic_by_roots(std::uint64_t p) {
    for (std::uint64_t a = 0; a < p; ++a)
        for (std::uint64_t b = 0; b < p; ++b) {
            bool root = false;
            for (std::uint64_t x = 0; x < p && !root; ++x) root = (x * x + a * x + b) % p == 0;
            if (!root) return {b, a, 1};
        }
    return {};
}

std::set<std::uint64_t> idempotents_oracle(std::uint64_t n) {
    std::set<std::uint64_t> out;
    for (std::uint64_t e = 0; e < n; ++e)
        if (e * e % n == e) out.insert(e);
    return out;
}

}  // namespace

TEST_SUITE("scalars") {
    TEST_CASE("make_ring basics") {
        auto f7 = make_ring("fp:7");
        CHECK(f7->cardinality() == 7u);
        CHECK(f7->characteristic() == 7);
        CHECK(f7->is_field());

        auto f9 = make_ring("fq:3^2");
        CHECK(fq_polynomial(*f9) == std::vector<std::uint64_t>{1, 0, 1});
        CHECK(fq_polynomial(*f9) == least_quadratic_by_roots(3));
        for (std::uint64_t p : {5, 7, 11, 13})
            CHECK(fq_polynomial(*make_fq(p, 2)) == least_quadratic_by_roots(p));

        auto dq = make_ring("dup(q)");
        auto Q = make_rationals();
        Elem i = make_pair_elem(*dq, Q->zero(), Q->one());
        CHECK(dq->mul(i, i) == make_pair_elem(*dq, Q->from_long(-1), Q->zero()));
        CHECK(dq->is_field());
        CHECK_FALSE(make_ring("dup(fp:5)")->is_field());
        CHECK(make_ring("dup(fp:7)")->is_field());
        CHECK(make_ring("prod(fp:3,zn:4)")->characteristic() == 12);
        CHECK(make_ring("fq:2^2:1,1,1")->spec() == "fq:2^2:1,1,1");
    }

    TEST_CASE("make_ring errors") {
        auto code_of = [](const char* spec) {
            try {
                make_ring(spec);
            } catch (const Error& e) {
                return e.code();
            }
            return ErrorCode::VerificationFailed;
        };
        CHECK(code_of("fp:6") == ErrorCode::NonPrimeModulus);
        CHECK(code_of("fq:3^2:2,0,1") == ErrorCode::ReduciblePolynomial);
        CHECK(code_of("fq:2^30") == ErrorCode::SizeLimit);
        CHECK(code_of("fp:") == ErrorCode::ParseError);
        CHECK(code_of("dup(fp:7") == ErrorCode::ParseError);
        CHECK(code_of("zz:3") == ErrorCode::ParseError);
    }

    TEST_CASE("element text round trip") {
        for (const char* spec : {"fp:7", "zn:12", "fq:3^2", "fq:2^3", "dup(fp:3)", "prod(fp:2,zn:4)"}) {
            auto r = make_ring(spec);
            for (const auto& e : r->elements()) CHECK(r->parse(r->str(e)) == e);
        }
        auto Q = make_rationals();
        CHECK(Q->str(Q->parse("6/4")) == "3/2");
        CHECK(Q->parse("-2/-4") == Q->parse("1/2"));
        auto f9 = make_ring("fq:3^2");
        CHECK(f9->str(f9->parse("x^2")) == "2");  // x^2 = -1
        CHECK(f9->str(f9->parse("2x+1")) == "2x+1");
        auto dq = make_ring("dup(q)");
        CHECK(dq->str(dq->parse("(1/2,-3)")) == "(1/2,-3)");
    }

    TEST_CASE("codes follow lexicographic coordinate order") {
        auto f9 = make_ring("fq:3^2");
        CHECK(f9->str(Elem(std::uint64_t{3})) == "x");
        CHECK(f9->str(Elem(std::uint64_t{5})) == "x+2");
        auto d = make_ring("dup(fp:3)");
        CHECK(d->str(Elem(std::uint64_t{1})) == "(0,1)");
        CHECK(d->str(Elem(std::uint64_t{3})) == "(1,0)");
    }

    TEST_CASE("ring axioms on samples") {
        for (const char* spec : {"fp:2", "fp:101", "zn:15", "zn:1000003", "fq:2^2", "fq:5^3", "fq:3^5", "q", "dup(q)",
                                 "dup(fp:7)", "dup(zn:15)", "prod(fp:3,fp:5)", "prod(q,fp:3)", "dup(dup(q))"}) {
            auto r = make_ring(spec);
            CHECK(check_ring_axioms(*r, 1000) >= std::min<std::uint64_t>(1000, r->finite() ? *r->cardinality() * *r->cardinality() * *r->cardinality() : 1000));
        }
    }

    TEST_CASE("duplication product formula by enumeration") {
        for (const char* base : {"fp:3", "zn:6", "fq:2^2"}) {
            auto b = make_ring(base);
            auto d = make_dup(b);
            for (const auto& x : b->elements())
                for (const auto& y : b->elements())
                    for (const auto& u : b->elements())
                        for (const auto& v : b->elements()) {
                            Elem lhs = d->mul(make_pair_elem(*d, x, y), make_pair_elem(*d, u, v));
                            Elem rhs = make_pair_elem(*d, b->sub(b->mul(x, u), b->mul(y, v)), b->add(b->mul(x, v), b->mul(y, u)));
                            REQUIRE(lhs == rhs);
                        }
        }
    }

    TEST_CASE("units and inverses") {
        for (const char* spec : {"zn:12", "fq:2^3", "dup(fp:5)", "prod(zn:4,fp:3)"}) {
            auto r = make_ring(spec);
            for (const auto& e : r->elements()) {
                auto iv = r->inv(e);
                CHECK(iv.has_value() == r->is_unit(e));
                if (iv) CHECK(r->mul(e, *iv) == r->one());
            }
        }
    }

    TEST_CASE("sqrt_minus_one examples") {
        auto f5 = make_ring("fp:5");
        auto s = sqrt_minus_one(f5);
        REQUIRE(s);
        CHECK(f5->str(*s) == "2");
        CHECK_FALSE(sqrt_minus_one(make_ring("fp:7")));
        auto d7 = make_ring("dup(fp:7)");
        CHECK(d7->str(*sqrt_minus_one(d7)) == "(0,1)");
        CHECK_FALSE(sqrt_minus_one(make_rationals()));
        CHECK_THROWS_AS(sqrt_minus_one(make_ring("prod(q,fp:3)")), Error);
    }

    TEST_CASE("sqrt of -1 exists exactly when q = 1 mod 4") {
        for (auto [p, n] : odd_prime_powers(2000)) {
            auto r = make_fq(p, n);
            std::uint64_t q = *r->cardinality();
            CHECK_MESSAGE(sqrt_minus_one(r).has_value() == (q % 4 == 1), "q=" << q);
        }
    }

    TEST_CASE("q_form_check") {
        CHECK(q_form_check(5));
        CHECK_FALSE(q_form_check(7));
        CHECK(q_form_check(13));
        for (std::uint64_t q = 2; q <= 2000; ++q) CHECK(q_form_check(q) == (q % 4 == 1));
    }

    TEST_CASE("two formally real") {
        auto f3 = make_ring("fp:3");
        CHECK(is_m_two_formally_real(f3, maximal_ideals(f3)[0]));
        auto f5 = make_ring("fp:5");
        CHECK_FALSE(is_m_two_formally_real(f5, maximal_ideals(f5)[0]));
        auto z15 = make_ring("zn:15");
        auto m5 = ideal_generated(z15, {z15->from_long(5)});
        CHECK_FALSE(is_m_two_formally_real(z15, m5));
        auto m3 = ideal_generated(z15, {z15->from_long(3)});
        CHECK(is_m_two_formally_real(z15, m3));
        auto z9 = make_ring("zn:9");
        CHECK(is_m_two_formally_real(z9, maximal_ideals(z9)[0]));
        CHECK_THROWS_AS(is_m_two_formally_real(z15, ideal_generated(z15, {})), Error);

        for (auto [p, n] : odd_prime_powers(289)) {
            auto r = make_fq(p, n);
            CHECK(is_m_two_formally_real(r, maximal_ideals(r)[0]) == !sqrt_minus_one(r).has_value());
        }
    }

    TEST_CASE("maximal ideals") {
        auto z15 = make_ring("zn:15");
        auto m = maximal_ideals(z15);
        REQUIRE(m.size() == 2);
        CHECK(m[0].str() == "(3)");
        CHECK(m[1].str() == "(5)");
        CHECK(m[0].size() == 5);
        auto f9 = maximal_ideals(make_ring("fq:3^2"));
        REQUIRE(f9.size() == 1);
        CHECK(f9[0].is_zero());
        auto z9 = maximal_ideals(make_ring("zn:9"));
        REQUIRE(z9.size() == 1);
        CHECK(z9[0].str() == "(3)");
        CHECK(maximal_ideals(make_ring("prod(fp:3,zn:4)")).size() == 2);
        CHECK_THROWS_AS(maximal_ideals(make_rationals()), Error);
    }

    TEST_CASE("decompositions") {
        for (std::uint64_t n : {15u, 6u, 7u, 30u, 12u}) {
            auto r = make_zn(n);
            auto d = decompositions(r);
            auto idem = idempotents_oracle(n);
            // one pair per {e, 1-e} with e != 0
            CHECK(d.size() == (idem.size()) / 2);
            for (const auto& [a, b] : d) {
                CHECK(a.size() * b.size() == n);
                CHECK(idem.count(a.generators[0].code()) == 1);
            }
        }
        auto z15 = decompositions(make_ring("zn:15"));
        REQUIRE(z15.size() == 2);
        CHECK(z15[0].first.is_whole());
        CHECK(z15[0].second.is_zero());
        CHECK(z15[1].first.str() == "(6)");
        CHECK(z15[1].second.str() == "(10)");
        auto z6 = decompositions(make_ring("zn:6"));
        REQUIRE(z6.size() == 2);
        CHECK(z6[1].first.str() == "(3)");
        CHECK(z6[1].second.str() == "(4)");
        CHECK(decompositions(make_ring("fp:7")).size() == 1);
    }

    TEST_CASE("dup automorphisms count mu_2") {
        auto f7 = make_ring("fp:7");
        auto a = dup_automorphisms(f7);
        REQUIRE(a.size() == 2);
        CHECK(a[0].matrix[1][1] == f7->one());
        CHECK(a[1].matrix[1][1] == f7->from_long(-1));
        CHECK(dup_automorphisms(make_ring("zn:15")).size() == 4);
        CHECK(dup_automorphisms(make_ring("fp:3")).size() == 2);
        CHECK_THROWS_AS(dup_automorphisms(make_ring("fp:2")), Error);

        std::vector<RingPtr> rings;
        for (std::uint64_t n = 3; n <= 99; n += 2) rings.push_back(make_zn(n));
        for (auto [p, k] : odd_prime_powers(99))
            if (k > 1) rings.push_back(make_fq(p, k));
        for (const auto& r : rings) {
            std::size_t mu2 = 0;
            for (const auto& b : r->elements()) mu2 += r->mul(b, b) == r->one();
            CHECK_MESSAGE(dup_automorphisms(r).size() == mu2, r->spec());
        }
    }

    TEST_CASE("finite tables agree with ring operations") {
        auto r = make_ring("dup(fp:7)");
        auto t = build_tables(*r);
        for (std::uint32_t x = 0; x < t.q; ++x)
            for (std::uint32_t y = 0; y < t.q; ++y) {
                CHECK(t.a(x, y) == r->add(Elem(std::uint64_t{x}), Elem(std::uint64_t{y})).code());
                CHECK(t.m(x, y) == r->mul(Elem(std::uint64_t{x}), Elem(std::uint64_t{y})).code());
            }
    }
}
