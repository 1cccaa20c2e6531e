#pragma once

#include <string>
#include <vector>

#include "lieform/idealkit.hpp"

namespace lieform {

struct IsoWitness {
    std::string name;
    LinearMap map;
    bool verified = false;
    std::string notes;
};

// Throws VerificationFailed unless f is a homomorphism with invertible matrix.
void verify_iso(const IsoWitness& w);
std::string export_witness(const IsoWitness& w);

// lorentz(R) -> o4(R): b1, b2, b3 -> -i a12, -i a13, -i a14 and b4, b5, b6 -> a23, a24, a34.
IsoWitness lemma_one_iso(const RingPtr& r);

struct Sl2Split {
    Submodule I, J;                 // inside o4(R)
    std::vector<Vec> alpha, beta;   // h, v+, v- for each summand, in o4 coordinates
    IsoWitness iso;                 // sl2_pair(R) -> o4(R)
    IsoWitness exchange;            // swaps the two summands
};
Sl2Split sl2_split(const RingPtr& r);

// Basis change x1..x6 of lorentz(R) in terms of b1..b6.
Matrix dup_basis(const RingPtr& r);
// lorentz(R) -> sl2(dup R)^R sending x1..x6 to h, e, f, h', e', f'.
IsoWitness dup_iso(const RingPtr& r);

// Printed tables, as (coefficient, index) per entry; index -1 for zero.
struct TableEntry {
    long coef;
    int index;
};
using PrintedTable = std::vector<std::vector<TableEntry>>;
const PrintedTable& printed_restricted_table();  // basis h, e, f, h', e', f'
const PrintedTable& printed_x_table();           // basis x1..x6
// Number of entries where the algebra, in the given basis (rows), differs from the table.
std::size_t table_mismatches(const Algebra& L, const Matrix& basis, const PrintedTable& t);

struct PairDecomposition {
    RingIdeal i, j;
    std::optional<std::pair<RingIdeal, RingIdeal>> ab;  // a, b with R = a + b when J is given
};
PairDecomposition sl2pair_decompose(const Algebra& L, const Submodule& I, const Submodule* J = nullptr);

// The algebra K^3 x K^3 with [(x,y),(z,t)] = (x^z, x^z + x^t + y^z) in characteristic 2.
AlgebraPtr cross_model(const RingPtr& k);
IsoWitness char2_crossmodel(const RingPtr& k);
// Rows x1, x2, x3, b1, b2, b3 of lorentz in the b basis.
Matrix char2_basis(const RingPtr& k);

// Automorphism of lorentz(K), char 2, with block matrix [[a 1, 0], [(a+1) 1 + S, 1]]
// in the basis x1, x2, x3, b1, b2, b3; returned in the b basis.
LinearMap char2_kernel_aut(const RingPtr& k, const Elem& a, const std::vector<std::vector<Elem>>& S);
// Block parameters (a, S) of a matrix in the x, b basis.
std::pair<Elem, std::vector<std::vector<Elem>>> char2_kernel_params(const RingPtr& k, const Matrix& m_b);

struct Char2Lift {
    LinearMap model_map;  // on cross_model(K)
    LinearMap map;        // on lorentz(K), b basis
    Matrix induced;       // 3x3 induced map on L / I in the basis of b1, b2, b3 images
};
Char2Lift char2_lift_o3(const RingPtr& k, const std::vector<std::vector<Elem>>& g, const std::vector<Elem>& alpha);

// P with Ad(P) = theta on sl2(K); theta rows are the images of h, e, f.
std::vector<std::vector<Elem>> sl2_inner_form(const RingPtr& k, const Matrix& theta);
// Matrix of X -> P X P^-1 on sl2 in the basis h, e, f.
Matrix sl2_ad(const RingPtr& k, const std::vector<std::vector<Elem>>& P);

struct EtiqReport {
    std::size_t dim = 0;
    bool all_of_vm_form = false;
    Submodule solutions;  // flattened 6 x 4 matrices, row m = beta(a_m)
};
EtiqReport etiq_cocycles(const RingPtr& k);

}  // namespace lieform
