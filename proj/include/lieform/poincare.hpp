#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lieform/witnesses.hpp"

namespace lieform {

// poincare(R) has basis t1..t4 (translations) then a12..a34 (o4).
struct PoincareWitness {
    RingPtr ring;
    AlgebraPtr algebra;
    Submodule r, i, j;
    LinearMap to_sl2_mod_i, to_sl2_mod_j;  // p -> sl2(R) with kernels i and j
};
PoincareWitness build_lattice(const RingPtr& r);

// Translation span t1..t4 of poincare(R).
Submodule radical(const Algebra& P);

struct MinimalityReport {
    bool value = false;
    std::uint64_t elements = 0;  // nonzero translations covered
    std::uint64_t closures = 0;  // one per line
    std::uint64_t isotropic = 0, nonisotropic = 0;  // lines by q(v) = 0 or not
    std::optional<Vec> offender;
};
// Full sweep of the nonzero translations of poincare(K), K a finite field.
MinimalityReport radical_minimality(const AlgebraPtr& P);

struct SpectrumReport {
    SweepResult sweep;
    std::map<std::string, std::uint64_t> fingerprints;  // r, i, j, full, or other-<rank>
    std::vector<Vec> counterexamples;  // representatives of closures outside {r, i, j, p}
    bool zur_shadow = true;            // [K, p] in r implies K in r for every closure found
};
SpectrumReport ideal_spectrum_sample(const PoincareWitness& W, const SweepOptions& opt);

struct PoincareDerReport {
    std::size_t dim = 0;
    std::size_t inner_dim = 0;
    bool inner_inside = false;
    std::size_t d_checked = 0;           // d_{lambda,v0} verified as derivations
    std::size_t commutators_checked = 0;
    bool q_shadow = false;               // projections to o4 are derivations of o4
};
// Matrix of d_{lambda,v0}: (v, x) -> (lambda v + v0 x, 0).
Matrix poincare_d(const Algebra& P, const Elem& lambda, const Vec& v0);
PoincareDerReport poincare_der(const AlgebraPtr& P, std::size_t samples = 20, std::uint64_t seed = 2025);

using SquareMat = std::vector<std::vector<Elem>>;
// f(v, x) = (lambda v x0^-1 + v0 x0 x x0^-1, x0 x x0^-1).
LinearMap aut_family(const AlgebraPtr& P, const Elem& lambda, const Vec& v0, const SquareMat& x0);

// Random orthogonal n x n matrix: a product of signed permutations and
// rotation blocks [[c, s], [-s, c]] with c^2 + s^2 = 1. Finite fields only.
SquareMat random_orthogonal(const RingPtr& k, std::size_t n, std::mt19937_64& rng, int factors = 3);

struct AutRelations {
    std::size_t triples = 0;
    std::size_t composition_ok = 0;
    std::size_t inverse_ok = 0;
    std::size_t automorphisms_ok = 0;
};
AutRelations check_aut_relations(const AlgebraPtr& P, std::size_t triples, std::uint64_t seed = 2025);

}  // namespace lieform
