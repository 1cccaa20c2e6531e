#include "lieform/idealkit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <thread>

namespace lieform {

namespace {

using u64 = std::uint64_t;
using u32 = std::uint32_t;

bool in_ideal(const RingIdeal& m, const Elem& e) { return m.contains(e); }

RingIdeal zero_ideal(const RingPtr& r) { return ideal_generated(r, {}); }

void require_maximal(const RingPtr& r, const RingIdeal& m) {
    for (const auto& M : maximal_ideals(r))
        if (M == m) return;
    throw Error(ErrorCode::NotMaximal, m.str() + " is not a maximal ideal of " + r->spec());
}

// |A| for a submodule over a finite ring, or a saturating power.
u64 checked_pow(u64 base, std::size_t e) {
    long double v = std::pow(static_cast<long double>(base), static_cast<long double>(e));
    if (v > 9.0e18L) return ~u64(0);
    u64 out = 1;
    for (std::size_t i = 0; i < e; ++i) out *= base;
    return out;
}

}  // namespace

const char* class_name(IdealClass c) {
    switch (c) {
        case IdealClass::Zero: return "zero";
        case IdealClass::Full: return "full";
        case IdealClass::MNull: return "m-null";
        case IdealClass::MTotal: return "m-total";
        case IdealClass::Neither: return "neither";
    }
    return "?";
}

Submodule ideal_closure(const Algebra& L, const std::vector<Vec>& gens) {
    Submodule S = canonicalize(L.ring, gens, L.dim);
    while (true) {
        std::vector<Vec> extra;
        for (const auto& r : S.basis)
            for (std::size_t i = 0; i < L.dim; ++i) {
                Vec w = bracket(L, r, unit_vec(*L.ring, L.dim, i));
                if (!member(S, w)) extra.push_back(std::move(w));
            }
        if (extra.empty()) return S;
        extra.insert(extra.end(), S.basis.begin(), S.basis.end());
        S = canonicalize(L.ring, extra, L.dim);
    }
}

bool is_bracket_stable(const Algebra& L, const Submodule& I) {
    for (const auto& r : I.basis)
        for (std::size_t i = 0; i < L.dim; ++i)
            if (!member(I, bracket(L, r, unit_vec(*L.ring, L.dim, i)))) return false;
    return true;
}

Submodule m_times(const Algebra& L, const RingIdeal& m) {
    std::vector<Vec> rows;
    for (const auto& g : m.generators)
        for (std::size_t i = 0; i < L.dim; ++i) rows.push_back(vec_scale(*L.ring, g, unit_vec(*L.ring, L.dim, i)));
    return canonicalize(L.ring, rows, L.dim);
}

IdealClass classify(const Algebra& L, const RingIdeal& m, const Submodule& I) {
    require_maximal(L.ring, m);
    if (I.is_zero()) return IdealClass::Zero;
    Submodule full = full_module(L.ring, L.dim);
    if (I == full) return IdealClass::Full;
    bool null = std::all_of(I.basis.begin(), I.basis.end(), [&](const Vec& row) {
        return std::all_of(row.begin(), row.end(), [&](const Elem& e) { return in_ideal(m, e); });
    });
    if (null) return IdealClass::MNull;
    if (module_sum(I, m_times(L, m)) == full) return IdealClass::MTotal;
    return IdealClass::Neither;
}

// ---------------------------------------------------------------- engine

ClosureEngine::ClosureEngine(const AlgebraPtr& L) : L_(L), dim_(L->dim) {
    const Ring& R = *L->ring;
    auto card = R.cardinality();
    if (!card) throw Error(ErrorCode::UnsupportedRing, "closure sweeps need a finite ring");
    if (R.is_field() && *card <= FiniteTables::kMax) {
        field_ = true;
        T_ = build_tables(R);
    } else if (R.kind() == RingKind::Zn && modulus(R) < (u64(1) << 31)) {
        field_ = false;
        N_ = modulus(R);
    } else {
        throw Error(ErrorCode::UnsupportedRing, "closure sweeps support fields of order <= 1024 and Z/n");
    }
    c_.resize(L->c.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = static_cast<u32>(L->c[i].code());
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) full_key_.push_back(i == j ? static_cast<u32>(R.one().code()) : 0);
}

bool ClosureEngine::full(const Key& k) const { return k == full_key_; }

IVec ClosureEngine::bracket_basis(const u32* v, std::size_t i) const {
    IVec w(dim_, 0);
    for (std::size_t j = 0; j < dim_; ++j) {
        if (v[j] == 0) continue;
        const u32* row = &c_[(j * dim_ + i) * dim_];
        for (std::size_t k = 0; k < dim_; ++k) {
            if (row[k] == 0) continue;
            if (field_) w[k] = T_.a(static_cast<u32>(w[k]), T_.m(v[j], row[k]));
            else w[k] = (w[k] + static_cast<u64>(v[j]) * row[k]) % N_;
        }
    }
    return w;
}

ClosureEngine::Key ClosureEngine::close_field(const std::vector<IVec>& gens) const {
    const std::size_t d = dim_;
    std::vector<u32> rows(d * d);
    std::vector<std::size_t> piv(d);
    std::size_t rank = 0;
    auto insert = [&](const IVec& in) {
        u32 w[16];
        for (std::size_t k = 0; k < d; ++k) w[k] = static_cast<u32>(in[k]);
        for (std::size_t r = 0; r < rank; ++r) {
            u32 f = w[piv[r]];
            if (f == 0) continue;
            u32 nf = T_.neg[f];
            const u32* row = &rows[r * d];
            for (std::size_t k = piv[r]; k < d; ++k)
                if (row[k]) w[k] = T_.a(w[k], T_.m(nf, row[k]));
        }
        std::size_t p = 0;
        while (p < d && w[p] == 0) ++p;
        if (p == d) return;
        u32 s = T_.inv[w[p]];
        u32* dst = &rows[rank * d];
        for (std::size_t k = 0; k < d; ++k) dst[k] = k < p ? 0 : T_.m(s, w[k]);
        piv[rank++] = p;
    };
    for (const auto& g : gens) {
        insert(g);
        if (rank == d) return full_key_;
    }
    for (std::size_t next = 0; next < rank; ++next)
        for (std::size_t i = 0; i < d; ++i) {
            insert(bracket_basis(&rows[next * d], i));
            if (rank == d) return full_key_;
        }
    // reduced echelon form, rows ordered by pivot
    std::vector<std::size_t> order(rank);
    for (std::size_t r = 0; r < rank; ++r) order[r] = r;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return piv[a] < piv[b]; });
    Key key(rank * d);
    for (std::size_t r = 0; r < rank; ++r) std::copy_n(&rows[order[r] * d], d, &key[r * d]);
    for (std::size_t r = rank; r-- > 0;) {
        std::size_t p = piv[order[r]];
        for (std::size_t a = 0; a < r; ++a) {
            u32 f = key[a * d + p];
            if (f == 0) continue;
            u32 nf = T_.neg[f];
            for (std::size_t k = p; k < d; ++k)
                if (key[r * d + k]) key[a * d + k] = T_.a(key[a * d + k], T_.m(nf, key[r * d + k]));
        }
    }
    return key;
}

ClosureEngine::Key ClosureEngine::close_ring(const std::vector<IVec>& gens) const {
    std::vector<IVec> H = howell_form(gens, dim_, N_);
    std::vector<u32> tmp(dim_);
    while (true) {
        std::vector<IVec> extra;
        for (const auto& row : H) {
            for (std::size_t k = 0; k < dim_; ++k) tmp[k] = static_cast<u32>(row[k]);
            for (std::size_t i = 0; i < dim_; ++i) {
                IVec w = bracket_basis(tmp.data(), i);
                if (!howell_member(H, w, N_)) extra.push_back(std::move(w));
            }
        }
        if (extra.empty()) break;
        extra.insert(extra.end(), H.begin(), H.end());
        H = howell_form(std::move(extra), dim_, N_);
    }
    Key key;
    for (const auto& row : H)
        for (u64 x : row) key.push_back(static_cast<u32>(x));
    return key;
}

ClosureEngine::Key ClosureEngine::close(const std::vector<IVec>& gens) const {
    for (const auto& g : gens)
        if (g.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "generator length");
    return field_ ? close_field(gens) : close_ring(gens);
}

Submodule ClosureEngine::to_submodule(const Key& k) const {
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < k.size() / dim_; ++r) {
        Vec v;
        for (std::size_t j = 0; j < dim_; ++j) v.push_back(Elem(static_cast<u64>(k[r * dim_ + j])));
        rows.push_back(std::move(v));
    }
    return canonicalize(L_->ring, rows, dim_);
}

// ---------------------------------------------------------------- sweeps

namespace {

constexpr u64 kChunk = 4096;

struct Found {
    ClosureEngine::Key key;
    IVec rep;
    u64 count = 0;
};

struct ChunkResult {
    std::vector<Found> found;  // in order of first occurrence
};

class Domain {
public:
    Domain(const ClosureEngine& E, const Submodule* dom) : E_(E) {
        const Algebra& L = *E.algebra();
        q_ = *L.ring->cardinality();
        d_ = L.dim;
        if (dom) {
            for (const auto& row : dom->basis) {
                IVec v;
                for (const auto& e : row) v.push_back(e.code());
                basis_.push_back(std::move(v));
            }
        } else {
            for (std::size_t i = 0; i < d_; ++i) {
                IVec v(d_, 0);
                v[i] = L.ring->one().code();
                basis_.push_back(std::move(v));
            }
        }
        k_ = basis_.size();
        if (E.field()) {
            T_ = build_tables(*L.ring);
            radix_.assign(k_, q_);
        } else {
            // Howell rows: each element is uniquely sum c_i row_i with c_i < N / pivot_i
            for (const auto& row : basis_) {
                std::size_t c = 0;
                while (row[c] == 0) ++c;
                radix_.push_back(q_ / std::gcd(row[c], q_));
            }
        }
    }

    std::size_t k() const { return k_; }
    u64 q() const { return q_; }
    u64 radix(std::size_t i) const { return radix_[i]; }

    // Number of nonzero elements, saturating.
    u64 nonzero() const {
        u64 n = 1;
        for (u64 r : radix_) {
            if (n > ~u64(0) / r) return ~u64(0);
            n *= r;
        }
        return n - 1;
    }

    IVec combine(const IVec& coef) const {
        IVec v(d_, 0);
        for (std::size_t t = 0; t < k_; ++t) {
            if (coef[t] == 0) continue;
            for (std::size_t j = 0; j < d_; ++j) {
                if (E_.field()) v[j] = T_.a(static_cast<u32>(v[j]), T_.m(static_cast<u32>(coef[t]), static_cast<u32>(basis_[t][j])));
                else v[j] = (v[j] + coef[t] * basis_[t][j]) % q_;
            }
        }
        return v;
    }

    // Over a field: index of a line, first nonzero coefficient 1.
    IVec projective(u64 t) const {
        IVec c(k_, 0);
        for (std::size_t p = 0; p < k_; ++p) {
            u64 block = checked_pow(q_, k_ - 1 - p);
            if (t < block) {
                c[p] = 1;
                for (std::size_t j = k_; j-- > p + 1;) {
                    c[j] = t % q_;
                    t /= q_;
                }
                return c;
            }
            t -= block;
        }
        throw Error(ErrorCode::BadParams, "projective index out of range");
    }

    IVec digits(u64 t) const {
        IVec c(k_, 0);
        for (std::size_t j = k_; j-- > 0;) {
            c[j] = t % radix_[j];
            t /= radix_[j];
        }
        return c;
    }

private:
    const ClosureEngine& E_;
    u64 q_ = 0;
    std::size_t d_ = 0, k_ = 0;
    std::vector<IVec> basis_;
    std::vector<u64> radix_;
    FiniteTables T_;
};

void record(ChunkResult& out, std::map<ClosureEngine::Key, std::size_t>& index, ClosureEngine::Key key, const IVec& rep) {
    auto it = index.find(key);
    if (it == index.end()) {
        index.emplace(key, out.found.size());
        out.found.push_back({std::move(key), rep, 1});
    } else {
        ++out.found[it->second].count;
    }
}

}  // namespace

SweepResult sweep_closures(const ClosureEngine& E, const SweepOptions& opt, const Submodule* domain) {
    const Algebra& L = *E.algebra();
    Domain D(E, domain);
    const u64 q = D.q();
    const std::size_t k = D.k();
    u64 total_elems = D.nonzero();
    u64 full_count = E.field() && total_elems != ~u64(0) ? total_elems / (q - 1) : total_elems;

    SweepResult res;
    res.seed = opt.seed;
    if (opt.force_sampled || full_count > opt.budget) {
        if (!opt.allow_sampling)
            throw Error(ErrorCode::SizeLimit, "full sweep needs " + std::to_string(full_count) + " closures, budget " +
                                                  std::to_string(opt.budget));
        res.sampled = true;
    }
    if (k == 0) return res;
    const u64 n = res.sampled ? opt.samples : full_count;
    const u64 chunks = (n + kChunk - 1) / kChunk;
    std::vector<ChunkResult> results(chunks);
    std::atomic<u64> next{0};

    auto work = [&]() {
        while (true) {
            u64 c = next.fetch_add(1);
            if (c >= chunks) return;
            ChunkResult& out = results[c];
            std::map<ClosureEngine::Key, std::size_t> index;
            u64 lo = c * kChunk, hi = std::min(n, lo + kChunk);
            std::mt19937_64 rng(opt.seed + c * 0x9E3779B97F4A7C15ULL);
            for (u64 t = lo; t < hi; ++t) {
                IVec coef;
                if (res.sampled) {
                    do {
                        coef.assign(k, 0);
                        for (std::size_t i = 0; i < k; ++i) coef[i] = rng() % D.radix(i);
                    } while (std::all_of(coef.begin(), coef.end(), [](u64 x) { return x == 0; }));
                } else {
                    coef = E.field() ? D.projective(t) : D.digits(t + 1);
                }
                IVec v = D.combine(coef);
                record(out, index, E.close({v}), v);
            }
        }
    };
    unsigned threads = std::max(1u, opt.threads);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    std::map<ClosureEngine::Key, std::size_t> index;
    std::vector<Found> merged;
    for (auto& cr : results)
        for (auto& f : cr.found) {
            auto it = index.find(f.key);
            if (it == index.end()) {
                index.emplace(f.key, merged.size());
                merged.push_back(std::move(f));
            } else {
                merged[it->second].count += f.count;
            }
        }

    res.closures = n;
    res.elements = res.sampled ? n : total_elems;
    std::optional<RingIdeal> m = opt.m;
    if (!m && L.ring->is_field()) m = zero_ideal(L.ring);
    Submodule full = full_module(L.ring, L.dim);
    for (auto& f : merged) {
        ClosureClass cc;
        cc.closure = E.to_submodule(f.key);
        cc.rank = cc.closure.rank();
        cc.size = module_size(cc.closure);
        if (m) {
            cc.cls = classify(L, *m, cc.closure);
        } else {
            cc.cls = cc.closure.is_zero() ? IdealClass::Zero : cc.closure == full ? IdealClass::Full : IdealClass::Neither;
        }
        for (u64 x : f.rep) cc.representative.push_back(Elem(x));
        cc.count = f.count;
        res.classes.push_back(std::move(cc));
    }
    return res;
}

SimplicityReport is_simple(const AlgebraPtr& L, const SweepOptions& opt) {
    if (!L->ring->is_field() || !L->ring->finite())
        throw Error(ErrorCode::UnsupportedRing, "simplicity sweeps need a finite field");
    ClosureEngine E(L);
    SimplicityReport rep;
    rep.sweep = sweep_closures(E, opt);
    rep.value = true;
    for (const auto& c : rep.sweep.classes)
        if (c.cls != IdealClass::Full) {
            rep.value = false;
            if (!rep.witness) rep.witness = c.representative;
        }
    return rep;
}

SimplicityReport is_m_simple(const AlgebraPtr& L, const RingIdeal& m, const SweepOptions& opt) {
    require_maximal(L->ring, m);
    ClosureEngine E(L);
    SweepOptions o = opt;
    o.m = m;
    SimplicityReport rep;
    rep.sweep = sweep_closures(E, o);
    rep.value = true;
    for (const auto& c : rep.sweep.classes)
        if (c.cls == IdealClass::Neither) {
            rep.value = false;
            if (!rep.witness) rep.witness = c.representative;
        }
    return rep;
}

namespace {

void require_lorentz(const Algebra& L) {
    if (L.name != "lorentz" || L.dim != 6) throw Error(ErrorCode::AlgebraMismatch, "expected the Lorentz type algebra");
}

std::size_t image_rank(const Algebra& L, const RingIdeal& m, const Submodule& I) {
    Submodule mL = m_times(L, m);
    u64 num = module_size(module_sum(I, mL)), den = module_size(mL);
    u64 residue = *L.ring->cardinality() / m.size();
    std::size_t r = 0;
    for (u64 x = num / den; x > 1; x /= residue) ++r;
    return r;
}

}  // namespace

IdealReport notsimple_witness(const AlgebraPtr& Lp, const RingIdeal& m, const Elem& x, const Elem& y) {
    const Algebra& L = *Lp;
    require_lorentz(L);
    require_maximal(L.ring, m);
    const Ring& R = *L.ring;
    if (!m.contains(R.add(R.mul(x, x), R.mul(y, y))))
        throw Error(ErrorCode::PreconditionFailed, "x^2 + y^2 is not in " + m.str());
    if (m.contains(x) || m.contains(y)) throw Error(ErrorCode::PreconditionFailed, "x and y must lie outside " + m.str());
    auto b = [&](std::size_t i) { return unit_vec(R, 6, i); };
    std::vector<Vec> gens = {vec_add(R, vec_scale(R, x, b(0)), vec_scale(R, y, b(5))),
                             vec_sub(R, vec_scale(R, x, b(1)), vec_scale(R, y, b(4))),
                             vec_add(R, vec_scale(R, x, b(2)), vec_scale(R, y, b(3)))};
    for (const auto& row : m_times(L, m).basis) gens.push_back(row);
    IdealReport rep;
    rep.generators = "x b1 + y b6, x b2 - y b5, x b3 + y b4 with x = " + R.str(x) + ", y = " + R.str(y) + ", plus " +
                     m.str() + " L";
    rep.closure = ideal_closure(L, gens);
    if (!is_bracket_stable(L, rep.closure)) throw Error(ErrorCode::VerificationFailed, "closure is not bracket-stable");
    rep.cls = classify(L, m, rep.closure);
    rep.image_rank = image_rank(L, m, rep.closure);
    return rep;
}

Char2Report char2_ideal(const AlgebraPtr& Lp, const SweepOptions& opt) {
    const Algebra& L = *Lp;
    require_lorentz(L);
    const RingPtr& r = L.ring;
    if (r->characteristic() != 2 || !r->is_field() || !r->finite())
        throw Error(ErrorCode::WrongCharacteristic, "char2_ideal needs a finite field of characteristic 2");
    const Ring& R = *r;
    auto b = [&](std::size_t i) { return unit_vec(R, 6, i); };
    Char2Report rep;
    rep.ideal = canonicalize(r, {vec_add(R, b(0), b(5)), vec_add(R, b(1), b(4)), vec_add(R, b(2), b(3))}, 6);

    rep.abelian = true;
    for (const auto& u : rep.ideal.basis)
        for (const auto& v : rep.ideal.basis) rep.abelian &= vec_is_zero(R, bracket(L, u, v));

    ClosureEngine E(Lp);
    SweepOptions o = opt;
    o.allow_sampling = false;
    o.force_sampled = false;
    auto inner = sweep_closures(E, o, &rep.ideal);
    rep.minimal = !inner.classes.empty() &&
                  std::all_of(inner.classes.begin(), inner.classes.end(), [&](const ClosureClass& c) { return c.closure == rep.ideal; });

    auto all = sweep_closures(E, o);
    rep.closures = all.closures + inner.closures;
    Submodule full = full_module(r, 6);
    rep.unique = true;
    bool saw_ideal = false;
    for (const auto& c : all.classes) {
        rep.closure_ranks.push_back(c.rank);
        if (c.closure == rep.ideal) saw_ideal = true;
        else if (c.closure != full) rep.unique = false;
    }
    rep.unique &= saw_ideal;
    std::sort(rep.closure_ranks.begin(), rep.closure_ranks.end());

    // maximal: every element outside I together with I generates L
    std::vector<IVec> ibasis;
    for (const auto& row : rep.ideal.basis) {
        IVec v;
        for (const auto& e : row) v.push_back(e.code());
        ibasis.push_back(std::move(v));
    }
    rep.maximal = true;
    u64 q = *r->cardinality();
    for (u64 t = 1; t < checked_pow(q, 6); ++t) {
        IVec v(6);
        u64 s = t;
        for (std::size_t j = 6; j-- > 0;) {
            v[j] = s % q;
            s /= q;
        }
        std::vector<IVec> gens = ibasis;
        gens.push_back(v);
        Vec ev;
        for (u64 x : v) ev.push_back(Elem(x));
        if (member(rep.ideal, ev)) continue;
        if (!E.full(E.close(gens))) {
            rep.maximal = false;
            break;
        }
        ++rep.closures;
    }

    // L / I is o(3): b1, b2, b3 -> a12, a13, a23 and b4, b5, b6 -> a23, a13, a12
    auto o3 = make_algebra("o", r, 3);
    Matrix f = Matrix::from_ints(r, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
    rep.quotient_is_o3 = is_homomorphism({Lp, o3, f}) && nullspace(f) == rep.ideal;
    return rep;
}

ExclusionReport dimension_exclusion_check(const AlgebraPtr& L, const SweepOptions& opt) {
    if (derived_subalgebra(*L) != full_module(L->ring, L->dim))
        throw Error(ErrorCode::NotPerfect, L->name + " over " + L->ring->spec() + " is not perfect");
    ClosureEngine E(L);
    ExclusionReport rep;
    rep.sweep = sweep_closures(E, opt);
    rep.ranks.push_back(0);
    rep.value = true;
    for (const auto& c : rep.sweep.classes) {
        rep.ranks.push_back(c.rank);
        if ((c.rank == 4 || c.rank == 5) && rep.value) {
            rep.value = false;
            rep.offender = c.representative;
        }
    }
    std::sort(rep.ranks.begin(), rep.ranks.end());
    rep.ranks.erase(std::unique(rep.ranks.begin(), rep.ranks.end()), rep.ranks.end());
    return rep;
}

RingIdeal sl2_ideal_form(const Algebra& L, const Submodule& I) {
    const RingPtr& r = L.ring;
    if (L.dim != 3 || L.labels != std::vector<std::string>{"h", "e", "f"})
        throw Error(ErrorCode::AlgebraMismatch, "expected sl2");
    if (!r->finite()) throw Error(ErrorCode::UnsupportedRing, "ideal forms are computed over finite rings");
    if (!r->is_unit(r->from_long(2))) throw Error(ErrorCode::TwoNotInvertible, r->spec());
    if (!is_bracket_stable(L, I)) throw Error(ErrorCode::NotAnIdeal, "submodule is not bracket-stable");
    const Ring& R = *r;
    std::vector<Elem> gens;
    for (const auto& x : R.elements())
        if (member(I, vec_scale(R, x, unit_vec(R, 3, 0)))) gens.push_back(x);
    RingIdeal i = ideal_generated(r, gens);
    std::vector<Vec> rows;
    for (const auto& g : gens)
        for (std::size_t k = 0; k < 3; ++k) rows.push_back(vec_scale(R, g, unit_vec(R, 3, k)));
    if (canonicalize(r, rows, 3) != I) throw Error(ErrorCode::NotAnIdeal, "I is not of the form i sl2(R)");
    // report a single generator when the ideal is principal on its smallest element
    for (const auto& g : gens) {
        if (R.is_zero(g) && gens.size() > 1) continue;
        auto p = ideal_generated(r, {g});
        if (p == i) return p;
    }
    return i;
}

}  // namespace lieform
