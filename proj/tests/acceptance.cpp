// Acceptance runner: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "lieform/error.hpp"
#include "lieform/poincare.hpp"

using namespace lieform;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

RingPtr field(std::uint64_t q) {
    auto f = prime_factors(q);
    unsigned n = 0;
    for (std::uint64_t x = q; x > 1; x /= f[0]) ++n;
    return n == 1 ? make_fp(q) : make_fq(f[0], n);
}

Outcome simplicity_dichotomy() {
    Outcome o;
    for (std::uint64_t q : {3, 5, 7, 9, 11, 13, 25, 27, 49}) {
        SweepOptions opt;
        opt.samples = 1'000'000;
        auto rep = is_simple(make_algebra("lorentz", field(q)), opt);
        std::string tag = "F_" + std::to_string(q);
        o.require(rep.value == (q % 4 == 3), tag + " simplicity");
        if (q <= 11) o.require(!rep.sweep.sampled, tag + " not swept fully");
        else o.require(!rep.sweep.sampled || rep.sweep.closures >= 1'000'000, tag + " undersampled");
        o.detail += (o.detail.empty() ? "" : ", ") + tag + (rep.sweep.sampled ? " sampled " : " full ") +
                    std::to_string(rep.sweep.closures);
    }
    return o;
}

Outcome sqrt_criterion() {
    Outcome o;
    std::size_t n = 0;
    for (std::uint64_t q = 3; q <= 2000; q += 2) {
        if (prime_factors(q).size() != 1) continue;
        ++n;
        bool want = q % 4 == 1;
        o.require(sqrt_minus_one(field(q)).has_value() == want, "sqrt(-1) wrong for q = " + std::to_string(q));
        o.require(q_form_check(q) == want, "q_form_check wrong for q = " + std::to_string(q));
    }
    if (o.ok) o.detail = std::to_string(n) + " odd prime powers";
    return o;
}

Outcome derivation_dimensions() {
    Outcome o;
    struct Case {
        const char* algebra;
        const char* ring;
        std::size_t dim;
    };
    const Case cases[] = {{"sl2", "q", 3},          {"lorentz", "fq:3^2", 6},   {"lorentz", "fp:13", 6},
                          {"lorentz", "dup(q)", 6}, {"lorentz", "fp:2", 12},    {"lorentz", "fq:2^2", 12},
                          {"o3", "fp:2", 5},        {"o3", "fq:2^2", 5},        {"poincare", "fq:3^2", 11},
                          {"poincare", "dup(q)", 11}};
    for (const auto& c : cases) {
        auto d = derivation_space(*make_algebra(c.algebra, make_ring(c.ring))).dim;
        o.require(d == c.dim, std::string(c.algebra) + "(" + c.ring + ") gave " + std::to_string(d));
    }
    if (o.ok) o.detail = "10 algebras; poincare 11 reported as derived";
    return o;
}

Outcome char2_structure() {
    Outcome o;
    for (const char* spec : {"fp:2", "fq:2^2"}) {
        auto c = char2_ideal(make_algebra("lorentz", make_ring(spec)));
        std::string s(spec);
        o.require(c.ideal.rank() == 3, s + " ideal rank");
        o.require(c.abelian && c.minimal && c.unique && c.quotient_is_o3, s + " structure flags");
        o.require(c.closure_ranks == std::vector<std::size_t>{3, 6}, s + " closures not exactly {I, L}");
    }
    return o;
}

Outcome notsimple_witnesses() {
    Outcome o;
    for (auto [q, y] : {std::pair{5L, 2L}, std::pair{13L, 5L}}) {
        auto K = make_fp(q);
        auto L = make_algebra("lorentz", K);
        auto ir = notsimple_witness(L, ideal_generated(K, {K->zero()}), K->one(), K->from_long(y));
        std::string s = "F_" + std::to_string(q);
        o.require(ir.closure.rank() == 3, s + " rank");
        o.require(is_bracket_stable(*L, ir.closure), s + " not stable");
        o.require(!ir.closure.is_zero() && ir.closure != full_module(K, 6), s + " not proper");
    }
    return o;
}

Outcome m_simplicity() {
    Outcome o;
    auto z9 = make_zn(9);
    auto r9 = is_m_simple(make_algebra("lorentz", z9), ideal_generated(z9, {z9->from_long(3)}));
    o.require(r9.value && !r9.sweep.sampled, "Z_9 at (3)");

    auto z15 = make_zn(15);
    auto L15 = make_algebra("lorentz", z15);
    auto m5 = ideal_generated(z15, {z15->from_long(5)}), m3 = ideal_generated(z15, {z15->from_long(3)});
    auto w = notsimple_witness(L15, m5, z15->one(), z15->from_long(2));
    o.require(w.cls == IdealClass::Neither, "Z_15 witness at (5) is " + std::string(class_name(w.cls)));
    SweepOptions opt;
    opt.samples = 100'000;
    opt.force_sampled = true;
    o.require(!is_m_simple(L15, m5, opt).value, "Z_15 at (5) reported m-simple");
    auto s3 = is_m_simple(L15, m3, opt);
    o.require(s3.value && s3.sweep.sampled, "Z_15 at (3)");

    auto z21 = make_zn(21);
    auto L21 = make_algebra("lorentz", z21);
    auto L3 = m_times(*L21, ideal_generated(z21, {z21->from_long(3)}));
    auto L7 = m_times(*L21, ideal_generated(z21, {z21->from_long(7)}));
    o.require(module_sum(L3, L7) == full_module(z21, 6) && intersection(L3, L7).is_zero(), "3L + 7L not direct");
    auto sw = sweep_closures(ClosureEngine(L21), opt);
    for (const auto& c : sw.classes)
        o.require(c.closure == L3 || c.closure == L7 || c.closure == full_module(z21, 6),
                  "Z_21 closure of rank " + std::to_string(c.rank));
    if (o.ok)
        o.detail = "Z_9 full " + std::to_string(r9.sweep.elements) + " elements, Z_21 " + std::to_string(sw.classes.size()) +
                   " closure classes";
    return o;
}

Outcome iso_witnesses() {
    Outcome o;
    auto run = [&](const std::string& what, const std::function<bool()>& f) {
        try {
            o.require(f(), what);
        } catch (const Error& e) {
            o.require(false, what + ": " + e.what());
        }
    };
    for (const char* s : {"fq:3^2", "fp:13"}) run(std::string("lemma_one ") + s, [&] { return lemma_one_iso(make_ring(s)).verified; });
    for (const char* s : {"fq:3^2", "fp:13", "dup(q)"})
        run(std::string("sl2_split ") + s, [&] {
            auto r = make_ring(s);
            const Ring& R = *r;
            auto sp = sl2_split(r);
            auto O = make_algebra("o", r, 4);
            bool ok = sp.iso.verified && sp.exchange.verified;
            for (const auto* t : {&sp.alpha, &sp.beta}) {
                const auto& x = *t;
                ok = ok && bracket(*O, x[0], x[1]) == vec_scale(R, R.from_long(2), x[1]) &&
                     bracket(*O, x[0], x[2]) == vec_scale(R, R.from_long(-2), x[2]) && bracket(*O, x[1], x[2]) == x[0];
            }
            for (const auto& x : sp.alpha)
                for (const auto& y : sp.beta) ok = ok && vec_is_zero(R, bracket(*O, x, y));
            return ok;
        });
    for (const char* s : {"q", "fp:7"})
        run(std::string("dup_iso ") + s, [&] {
            auto r = make_ring(s);
            auto w = dup_iso(r);
            return w.verified && table_mismatches(*w.map.source, dup_basis(r), printed_x_table()) == 0 &&
                   table_mismatches(*w.map.target, Matrix::identity(r, 6), printed_restricted_table()) == 0;
        });
    for (const char* s : {"fp:2", "fq:2^2"})
        run(std::string("char2_crossmodel ") + s, [&] { return char2_crossmodel(make_ring(s)).verified; });
    return o;
}

Outcome dimension_exclusion() {
    Outcome o;
    for (std::uint64_t p : {2, 3, 5}) {
        auto rep = dimension_exclusion_check(make_algebra("lorentz", make_fp(p)));
        o.require(rep.value && !rep.sweep.sampled, "F_" + std::to_string(p));
    }
    return o;
}

Outcome poincare_suite() {
    Outcome o;
    auto W = build_lattice(make_ring("fq:3^2"));
    o.require(W.r.rank() == 4 && W.i.rank() == 7 && W.j.rank() == 7, "ranks");
    auto mr = radical_minimality(W.algebra);
    o.require(mr.value && mr.elements == 6560, "radical minimality");
    o.require(center(*W.algebra).is_zero(), "center");
    auto der = poincare_der(W.algebra);
    o.require(der.dim == 11 && der.inner_dim == 10 && der.inner_inside, "derivations");
    o.require(der.d_checked == 20 && der.commutators_checked == 19 && der.q_shadow, "kernel derivations");
    SweepOptions opt;
    opt.samples = 100'000;
    auto sp = ideal_spectrum_sample(W, opt);
    o.require(sp.sweep.closures == 100'000 && sp.counterexamples.empty() && sp.zur_shadow, "spectrum");
    auto rel = check_aut_relations(W.algebra, 50);
    o.require(rel.composition_ok == 50 && rel.inverse_ok == 50 && rel.automorphisms_ok == 50, "aut relations");
    if (o.ok) {
        o.detail = "spectrum observed:";
        for (const auto& [k, n] : sp.fingerprints) o.detail += " " + k + "=" + std::to_string(n);
    }
    return o;
}

Outcome cocycles() {
    Outcome o;
    for (const char* s : {"fp:3", "fp:5", "q"}) {
        auto e = etiq_cocycles(make_ring(s));
        o.require(e.dim == 4 && e.all_of_vm_form, s);
    }
    return o;
}

Outcome mu2_and_kernel() {
    Outcome o;
    for (const char* s : {"fp:3", "fp:7", "zn:15"}) {
        auto r = make_ring(s);
        const Ring& R = *r;
        std::size_t mu2 = 0;
        for (const auto& x : R.elements()) mu2 += R.is_one(R.mul(x, x));
        o.require(dup_automorphisms(r).size() == mu2, std::string("Aut count over ") + s);
    }
    auto k = make_ring("fq:2^2");
    const Ring& R = *k;
    std::mt19937_64 rng(2025);
    auto unit = [&] { return R.from_code(1 + rng() % 3); };
    auto sym = [&] {
        std::vector<std::vector<Elem>> S(3, std::vector<Elem>(3, R.zero()));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i; j < 3; ++j) S[i][j] = S[j][i] = R.from_code(rng() % 4);
        S[2][2] = R.add(S[0][0], S[1][1]);
        return S;
    };
    std::size_t closed = 0;
    for (int t = 0; t < 50; ++t) {
        Elem a = unit(), b = unit();
        auto S = sym(), T = sym();
        auto F = char2_kernel_aut(k, a, S), G = char2_kernel_aut(k, b, T);
        // (a, S)(b, T) = (ab, bS + T)
        std::vector<std::vector<Elem>> U(3, std::vector<Elem>(3));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) U[i][j] = R.add(R.mul(b, S[i][j]), T[i][j]);
        closed += F.m * G.m == char2_kernel_aut(k, R.mul(a, b), U).m;
    }
    o.require(closed == 50, "kernel family closed on " + std::to_string(closed) + "/50 pairs");
    return o;
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"simplicity dichotomy over F_q", simplicity_dichotomy},
        {"sqrt(-1) criterion for q <= 2000", sqrt_criterion},
        {"derivation dimensions", derivation_dimensions},
        {"characteristic 2 ideal structure", char2_structure},
        {"notsimple witnesses over F_5 and F_13", notsimple_witnesses},
        {"m-simplicity over Z_9, Z_15, Z_21", m_simplicity},
        {"isomorphism witnesses", iso_witnesses},
        {"no closures of dimension 4 or 5", dimension_exclusion},
        {"Poincare suite over F_9", poincare_suite},
        {"cocycle lemma", cocycles},
        {"Aut(dup R) and the char 2 kernel family", mu2_and_kernel},
    };
    int failed = 0, n = 0;
    for (const auto& [name, fn] : criteria) {
        ++n;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("threw ") + e.what();
        }
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("criterion %2d: %s  %s (%.1f s)%s%s\n", n, o.ok ? "PASS" : "FAIL", name, s,
                    o.detail.empty() ? "" : "  ", o.detail.c_str());
        std::fflush(stdout);
        failed += !o.ok;
    }
    std::printf("%d/%d criteria passed\n", n - failed, n);
    return failed ? 1 : 0;
}
