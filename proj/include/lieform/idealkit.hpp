#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lieform/liecore.hpp"

namespace lieform {

// Least bracket-stable submodule containing gens. Field or Z/n rings.
Submodule ideal_closure(const Algebra& L, const std::vector<Vec>& gens);
bool is_bracket_stable(const Algebra& L, const Submodule& I);

enum class IdealClass { Zero, Full, MNull, MTotal, Neither };
const char* class_name(IdealClass c);

// m-null / m-total relative to a maximal ideal m of the ring of L.
IdealClass classify(const Algebra& L, const RingIdeal& m, const Submodule& I);

// Closures over a finite field (q <= 1024) or Z/n, on raw codes. The
// fingerprint of a closure is its canonical basis flattened row by row.
class ClosureEngine {
public:
    explicit ClosureEngine(const AlgebraPtr& L);

    using Key = std::vector<std::uint32_t>;
    Key close(const std::vector<IVec>& gens) const;
    Submodule to_submodule(const Key& k) const;
    std::size_t rank_of(const Key& k) const { return k.size() / dim_; }
    bool full(const Key& k) const;

    const AlgebraPtr& algebra() const { return L_; }
    bool field() const { return field_; }

private:
    Key close_field(const std::vector<IVec>& gens) const;
    Key close_ring(const std::vector<IVec>& gens) const;
    IVec bracket_basis(const std::uint32_t* v, std::size_t i) const;

    AlgebraPtr L_;
    std::size_t dim_;
    bool field_;
    std::uint64_t N_ = 0;
    FiniteTables T_;
    std::vector<std::uint32_t> c_;  // structure constants as codes
    Key full_key_;
};

struct SweepOptions {
    std::uint64_t budget = 5'000'000;  // full sweep when it needs at most this many closures
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 2025;
    unsigned threads = 1;
    bool force_sampled = false;
    bool allow_sampling = true;
    std::optional<RingIdeal> m;  // classification target; the zero ideal when absent over a field
};

struct ClosureClass {
    Submodule closure;
    std::size_t rank = 0;
    std::uint64_t size = 0;
    IdealClass cls = IdealClass::Zero;
    Vec representative;
    std::uint64_t count = 0;  // closures in the sweep that landed here
};

struct SweepResult {
    bool sampled = false;
    std::uint64_t seed = 0;
    std::uint64_t closures = 0;  // closures computed
    std::uint64_t elements = 0;  // elements of the domain they stand for
    std::vector<ClosureClass> classes;  // ordered by first occurrence
};

// Closure of every nonzero element of the domain (all of L by default). Over
// a field one representative per line is used.
SweepResult sweep_closures(const ClosureEngine& E, const SweepOptions& opt, const Submodule* domain = nullptr);

struct SimplicityReport {
    bool value = false;
    SweepResult sweep;
    std::optional<Vec> witness;  // nonzero element with a proper closure, or an offending one
};

SimplicityReport is_simple(const AlgebraPtr& L, const SweepOptions& opt = {});
SimplicityReport is_m_simple(const AlgebraPtr& L, const RingIdeal& m, const SweepOptions& opt = {});

struct IdealReport {
    std::string generators;
    Submodule closure;
    IdealClass cls = IdealClass::Neither;
    std::size_t image_rank = 0;  // rank of the image in L/mL
};

// I = closure of {x b1 + y b6, x b2 - y b5, x b3 + y b4} together with m L.
IdealReport notsimple_witness(const AlgebraPtr& L, const RingIdeal& m, const Elem& x, const Elem& y);

struct Char2Report {
    Submodule ideal;
    bool abelian = false;
    bool minimal = false;
    bool maximal = false;
    bool unique = false;
    bool quotient_is_o3 = false;
    std::uint64_t closures = 0;
    std::vector<std::size_t> closure_ranks;  // distinct nonzero closure ranks in the full sweep
};
Char2Report char2_ideal(const AlgebraPtr& L, const SweepOptions& opt = {});

struct ExclusionReport {
    bool value = false;
    std::vector<std::size_t> ranks;  // distinct closure ranks, including 0
    std::optional<Vec> offender;
    SweepResult sweep;
};
ExclusionReport dimension_exclusion_check(const AlgebraPtr& L, const SweepOptions& opt = {});

// For I an ideal of sl2(R) with 2 a unit: the ring ideal i with I = i sl2(R).
RingIdeal sl2_ideal_form(const Algebra& L, const Submodule& I);

// Ideal m L generated by g b_i for the generators g of m.
Submodule m_times(const Algebra& L, const RingIdeal& m);

}  // namespace lieform
