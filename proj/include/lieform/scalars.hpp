#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "lieform/error.hpp"

namespace lieform {

// Ring element. Finite rings store a code in [0, |R|) whose numeric order is
// the lexicographic order of the canonical coordinates. Rationals store a
// reduced mpq. Pairs over an infinite component store their two coordinates.
struct Elem;
using ElemPair = std::pair<Elem, Elem>;

struct Elem {
    std::variant<std::uint64_t, mpq_class, std::shared_ptr<const ElemPair>> v;

    Elem() : v(std::uint64_t{0}) {}
    explicit Elem(std::uint64_t c) : v(c) {}
    explicit Elem(mpq_class q) : v(std::move(q)) {}
    explicit Elem(std::shared_ptr<const ElemPair> p) : v(std::move(p)) {}

    bool is_code() const { return v.index() == 0; }
    std::uint64_t code() const { return std::get<0>(v); }
    const mpq_class& rat() const { return std::get<1>(v); }
    const ElemPair& pair() const { return *std::get<2>(v); }
};

bool operator==(const Elem& a, const Elem& b);
inline bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

enum class RingKind { Fp, Fq, Zn, Rationals, Product, Dup };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
public:
    virtual ~Ring() = default;

    virtual RingKind kind() const = 0;
    virtual std::string spec() const = 0;
    virtual mpz_class characteristic() const = 0;
    // Absent for infinite rings.
    virtual std::optional<std::uint64_t> cardinality() const = 0;
    virtual bool is_field() const = 0;

    virtual Elem from_int(const mpz_class& n) const = 0;
    virtual Elem add(const Elem& a, const Elem& b) const = 0;
    virtual Elem neg(const Elem& a) const = 0;
    virtual Elem mul(const Elem& a, const Elem& b) const = 0;
    virtual bool is_unit(const Elem& a) const = 0;
    virtual std::optional<Elem> inv(const Elem& a) const = 0;
    virtual std::string str(const Elem& a) const = 0;
    virtual Elem parse(std::string_view s) const = 0;
    // Size measure used for pivot choice over Q; constant elsewhere.
    virtual std::size_t bitsize(const Elem&) const { return 1; }

    Elem zero() const { return from_int(0); }
    Elem one() const { return from_int(1); }
    Elem from_long(long n) const { return from_int(mpz_class(n)); }
    Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
    bool is_zero(const Elem& a) const { return a == zero(); }
    bool is_one(const Elem& a) const { return a == one(); }
    bool finite() const { return cardinality().has_value(); }

    // Finite rings only: the element with the given code and back.
    Elem from_code(std::uint64_t c) const;
    std::uint64_t code(const Elem& a) const;
    std::vector<Elem> elements() const;
};

// Parses `fp:<p>`, `fq:<p>^<n>[:coeffs]`, `zn:<n>`, `q`, `dup(<spec>)`,
// `prod(<spec>,<spec>)`.
RingPtr make_ring(std::string_view spec);
RingPtr make_fp(std::uint64_t p);
RingPtr make_fq(std::uint64_t p, unsigned n, std::vector<std::uint64_t> poly = {});
RingPtr make_zn(std::uint64_t n);
RingPtr make_rationals();
RingPtr make_product(RingPtr a, RingPtr b);
RingPtr make_dup(RingPtr base);

// Accessors for structured rings.
std::uint64_t modulus(const Ring& r);                    // Fp, Zn
std::pair<std::uint64_t, unsigned> prime_power(const Ring& r);  // Fp, Fq
std::vector<std::uint64_t> fq_polynomial(const Ring& r);  // Fq, constant term first
RingPtr component(const Ring& r, int which);              // Product, Dup (base for both)
Elem make_pair_elem(const Ring& r, const Elem& a, const Elem& b);
ElemPair split_pair(const Ring& r, const Elem& e);

// Lexicographically least monic irreducible of degree n over F_p; the
// comparison reads coefficients from the highest non-leading one down.
std::vector<std::uint64_t> least_irreducible(std::uint64_t p, unsigned n);
bool is_irreducible(std::uint64_t p, const std::vector<std::uint64_t>& monic);

bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);  // distinct, ascending

// Ideals of finite rings, kept as sorted element codes.
struct RingIdeal {
    RingPtr ring;
    std::vector<Elem> generators;
    std::vector<std::uint64_t> codes;

    bool contains(const Elem& e) const;
    std::size_t size() const { return codes.size(); }
    bool is_zero() const { return codes.size() == 1; }
    bool is_whole() const;
    std::string str() const;
    bool operator==(const RingIdeal& o) const { return codes == o.codes; }
};

RingIdeal ideal_generated(const RingPtr& r, const std::vector<Elem>& gens);

std::optional<Elem> sqrt_minus_one(const RingPtr& r);
bool is_m_two_formally_real(const RingPtr& r, const RingIdeal& m);
std::vector<RingIdeal> maximal_ideals(const RingPtr& r);
std::vector<std::pair<RingIdeal, RingIdeal>> decompositions(const RingPtr& r);

// R-algebra automorphisms of Dup(R), as 2x2 matrices over R in row
// convention on the basis (1,0), (0,1).
struct DupAutomorphism {
    Elem image_of_i;                 // image of (0,1), as an element of Dup(R)
    std::vector<std::vector<Elem>> matrix;
};
std::vector<DupAutomorphism> dup_automorphisms(const RingPtr& r);

bool q_form_check(std::uint64_t q);

// Dense operation tables over codes for small finite rings.
struct FiniteTables {
    std::uint32_t q = 0;
    std::vector<std::uint32_t> add, mul, neg, inv;  // inv = q for non-units
    static constexpr std::uint32_t kMax = 1024;

    std::uint32_t a(std::uint32_t x, std::uint32_t y) const { return add[x * q + y]; }
    std::uint32_t m(std::uint32_t x, std::uint32_t y) const { return mul[x * q + y]; }
};
FiniteTables build_tables(const Ring& r);

// Checks associativity, commutativity and the unit law on a deterministic
// sample (or all triples when fewer); returns the number of triples checked.
std::size_t check_ring_axioms(const Ring& r, std::size_t max_triples, std::uint64_t seed = 2025);

}  // namespace lieform
