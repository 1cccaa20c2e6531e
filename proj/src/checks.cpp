#include "lieform/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "lieform/error.hpp"
#include "lieform/poincare.hpp"

namespace lieform {

namespace {

struct Check {
    std::string summary;
    std::function<bool(const CheckDescriptor&, json&)> run;
};

std::string param_str(const CheckDescriptor& d, const char* key, std::string fallback = "") {
    auto it = d.params.find(key);
    if (it == d.params.end()) return fallback;
    if (it->is_string()) return it->get<std::string>();
    return it->dump();
}

std::uint64_t param_u64(const CheckDescriptor& d, const char* key, std::uint64_t fallback) {
    auto it = d.params.find(key);
    if (it == d.params.end()) return fallback;
    if (it->is_number_unsigned() || it->is_number_integer()) return it->get<std::uint64_t>();
    try {
        return std::stoull(it->get<std::string>());
    } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, std::string("parameter ") + key + " is not a number");
    }
}

RingPtr ring_of(const CheckDescriptor& d, const char* fallback = nullptr) {
    if (!d.ring.empty()) return make_ring(d.ring);
    if (fallback) return make_ring(fallback);
    throw Error(ErrorCode::ParseError, d.check + " needs --ring");
}

AlgebraPtr algebra_of(const CheckDescriptor& d, const RingPtr& r, const char* fallback) {
    return make_algebra(d.algebra.empty() ? fallback : d.algebra, r);
}

SweepOptions sweep_options(const CheckDescriptor& d) {
    SweepOptions o;
    o.budget = d.budget;
    o.seed = d.seed;
    o.threads = d.threads;
    if (d.samples) o.samples = *d.samples;
    if (d.mode == "sampled") o.force_sampled = true;
    else if (d.mode == "full") o.allow_sampling = false;
    else if (!d.mode.empty()) throw Error(ErrorCode::ParseError, "mode must be full or sampled");
    return o;
}

json vec_json(const Ring& R, const Vec& v) { return vec_str(R, v); }

json basis_json(const Submodule& S) {
    json out = json::array();
    for (const auto& b : S.basis) out.push_back(vec_json(*S.ring, b));
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (std::size_t i = 0; i < m.rows; ++i) out.push_back(vec_json(*m.ring, m.row(i)));
    return out;
}

void note_sweep(json& rep, const SweepResult& s) {
    rep["mode"] = s.sampled ? "sampled" : "full";
    rep["closures"] = s.closures;
    rep["elements"] = s.elements;
    if (!s.sampled) rep["seed_ignored"] = true;
    json cls = json::array();
    for (const auto& c : s.classes)
        cls.push_back({{"rank", c.rank}, {"size", c.size}, {"class", class_name(c.cls)}, {"count", c.count}});
    rep["classes"] = cls;
}

RingIdeal zero_ideal(const RingPtr& r) { return ideal_generated(r, {r->zero()}); }

RingIdeal parse_ideal(const RingPtr& r, const std::string& text) {
    std::vector<Elem> gens;
    std::stringstream ss(text);
    std::string g;
    while (std::getline(ss, g, ',')) gens.push_back(r->parse(g));
    return ideal_generated(r, gens);
}

// x, y outside m with x^2 + y^2 in m.
std::optional<std::pair<Elem, Elem>> sum_of_squares_witness(const RingPtr& r, const RingIdeal& m) {
    const Ring& R = *r;
    for (const auto& x : R.elements()) {
        if (m.contains(x)) continue;
        for (const auto& y : R.elements())
            if (!m.contains(y) && m.contains(R.add(R.mul(x, x), R.mul(y, y)))) return std::make_pair(x, y);
    }
    return std::nullopt;
}

json ideal_report_json(const Ring& R, const IdealReport& ir) {
    return {{"generators", ir.generators},
            {"rank", ir.closure.rank()},
            {"size", R.finite() ? json(module_size(ir.closure)) : json(nullptr)},
            {"class", class_name(ir.cls)},
            {"image_rank", ir.image_rank}};
}

// Lorentz simplicity against the sqrt(-1) and m-2-formally-real criteria.
bool check_simplicity(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    const Ring& R = *r;
    auto L = algebra_of(d, r, "lorentz");
    auto opt = sweep_options(d);
    std::vector<RingIdeal> ms;
    if (d.params.contains("m")) ms.push_back(parse_ideal(r, param_str(d, "m")));
    else if (R.is_field()) ms.push_back(zero_ideal(r));
    else ms = maximal_ideals(r);
    bool pass = true;
    json results = json::array();
    for (const auto& m : ms) {
        json one;
        one["m"] = m.str();
        auto s = R.is_field() && m.is_zero() ? is_simple(L, opt) : is_m_simple(L, m, opt);
        bool expected = is_m_two_formally_real(r, m);
        one["simple"] = s.value;
        one["expected_simple"] = expected;
        note_sweep(one, s.sweep);
        if (!s.value) {
            if (s.witness) one["element"] = vec_json(R, *s.witness);
            if (auto xy = sum_of_squares_witness(r, m)) {
                auto ir = notsimple_witness(L, m, xy->first, xy->second);
                json w = ideal_report_json(R, ir);
                w["x"] = R.str(xy->first);
                w["y"] = R.str(xy->second);
                one["witness"] = w;
            }
        }
        pass = pass && s.value == expected;
        results.push_back(one);
    }
    if (results.size() == 1) {
        for (auto& [k, v] : results[0].items()) rep[k] = v;
    } else {
        rep["ideals"] = results;
        rep["mode"] = results.empty() ? "full" : results[0]["mode"];
    }
    return pass;
}

bool check_sqrt_criterion(const CheckDescriptor& d, json& rep) {
    std::uint64_t qmax = param_u64(d, "qmax", 2000);
    std::uint64_t tested = 0;
    json bad = json::array();
    for (std::uint64_t q = 3; q <= qmax; q += 2) {
        auto f = prime_factors(q);
        if (f.size() != 1) continue;
        unsigned n = 0;
        for (std::uint64_t x = q; x > 1; x /= f[0]) ++n;
        auto K = n == 1 ? make_fp(q) : make_fq(f[0], n);
        bool has = sqrt_minus_one(K).has_value();
        bool want = q % 4 == 1;
        ++tested;
        if (has != want || q_form_check(q) != want) bad.push_back(q);
    }
    rep["mode"] = "full";
    rep["fields_tested"] = tested;
    rep["mismatches"] = bad;
    return bad.empty();
}

bool check_derivations(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    auto L = algebra_of(d, r, "lorentz");
    auto D = derivation_space(*L);
    rep["mode"] = "full";
    rep["dim"] = D.dim;
    rep["inner_dim"] = inner_derivation_span(*L).rank();
    if (L->name == "poincare") {
        rep["derived"] = true;
        rep["note"] = "computed by nullspace; the value proved over algebraically closed fields is 11";
    }
    if (d.params.contains("expect")) {
        rep["expected"] = param_u64(d, "expect", 0);
        return D.dim == param_u64(d, "expect", 0);
    }
    return true;
}

bool check_theorem_nine(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    if (r->characteristic() != 2 || !r->is_field())
        throw Error(ErrorCode::WrongCharacteristic, "needs a field of characteristic 2");
    auto D = derivation_space(*make_algebra("lorentz", r));
    rep["mode"] = "full";
    rep["dim"] = D.dim;
    rep["expected"] = 12;
    return D.dim == 12;
}

bool check_hideput(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    auto c = char2_ideal(make_algebra("lorentz", r), sweep_options(d));
    rep["mode"] = "full";
    rep["seed_ignored"] = true;
    rep["ideal"] = basis_json(c.ideal);
    rep["rank"] = c.ideal.rank();
    rep["abelian"] = c.abelian;
    rep["minimal"] = c.minimal;
    rep["maximal"] = c.maximal;
    rep["unique"] = c.unique;
    rep["quotient_is_o3"] = c.quotient_is_o3;
    rep["closures"] = c.closures;
    rep["closure_ranks"] = c.closure_ranks;
    return c.ideal.rank() == 3 && c.abelian && c.minimal && c.maximal && c.unique && c.quotient_is_o3 &&
           c.closure_ranks == std::vector<std::size_t>{3, 6};
}

bool check_notsimple(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    const Ring& R = *r;
    auto L = make_algebra("lorentz", r);
    auto m = d.params.contains("m") ? parse_ideal(r, param_str(d, "m")) : zero_ideal(r);
    Elem x = R.parse(param_str(d, "x", "1"));
    Elem y;
    if (d.params.contains("y")) y = R.parse(param_str(d, "y"));
    else if (auto xy = sum_of_squares_witness(r, m)) x = xy->first, y = xy->second;
    else throw Error(ErrorCode::PreconditionFailed, "no x, y with x^2 + y^2 in " + m.str());
    auto ir = notsimple_witness(L, m, x, y);
    rep = ideal_report_json(R, ir);
    rep["x"] = R.str(x);
    rep["y"] = R.str(y);
    rep["m"] = m.str();
    rep["mode"] = "full";
    rep["bracket_stable"] = is_bracket_stable(*L, ir.closure);
    bool proper = ir.closure != full_module(r, 6), nonzero = !ir.closure.is_zero();
    rep["proper"] = proper;
    rep["nonzero"] = nonzero;
    bool dim_ok = !R.is_field() || ir.closure.rank() == 3;
    return dim_ok && proper && nonzero && rep["bracket_stable"].get<bool>();
}

// Splitting along R = a + b: ideals aL and bL with aL + bL = L, aL and bL meeting in 0,
// and every sampled closure among 0, aL, bL, L.
bool check_subdirect(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    auto L = make_algebra("lorentz", r);
    auto decs = decompositions(r);
    if (std::none_of(decs.begin(), decs.end(), [](const auto& p) { return !p.first.is_zero() && !p.second.is_zero(); })) throw Error(ErrorCode::PreconditionFailed, r->spec() + " has no nontrivial decomposition");
    ClosureEngine E(L);
    auto s = sweep_closures(E, sweep_options(d));
    note_sweep(rep, s);
    bool pass = true;
    json parts = json::array();
    for (const auto& [a, b] : decs) {
        if (a.is_zero() || b.is_zero()) continue;
        auto aL = m_times(*L, a), bL = m_times(*L, b);
        bool sum = module_sum(aL, bL) == full_module(r, 6), meet = intersection(aL, bL).is_zero();
        std::set<std::string> names;
        std::size_t outside = 0;
        for (const auto& c : s.classes) {
            if (c.closure == aL) names.insert(a.str() + "L");
            else if (c.closure == bL) names.insert(b.str() + "L");
            else if (c.closure == full_module(r, 6)) names.insert("L");
            else ++outside;
        }
        parts.push_back({{"a", a.str()}, {"b", b.str()}, {"direct_sum", sum && meet}, {"closures_seen", names}, {"outside", outside}});
        pass = pass && sum && meet && outside == 0;
    }
    rep["decompositions"] = parts;
    return pass;
}

bool check_exclusion(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    auto e = dimension_exclusion_check(algebra_of(d, r, "lorentz"), sweep_options(d));
    note_sweep(rep, e.sweep);
    rep["ranks"] = e.ranks;
    if (e.offender) rep["offender"] = vec_json(*r, *e.offender);
    return e.value;
}

bool report_witness(const IsoWitness& w, json& rep) {
    rep["mode"] = "full";
    rep["witness"] = json::parse(export_witness(w));
    return w.verified;
}

bool check_lemma_one(const CheckDescriptor& d, json& rep) { return report_witness(lemma_one_iso(ring_of(d)), rep); }

bool check_sl2_split(const CheckDescriptor& d, json& rep) {
    auto s = sl2_split(ring_of(d));
    rep["I"] = basis_json(s.I);
    rep["J"] = basis_json(s.J);
    rep["exchange_verified"] = s.exchange.verified;
    return report_witness(s.iso, rep) && s.exchange.verified;
}

bool check_dup_iso(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    auto w = dup_iso(r);
    rep["x_table_mismatches"] = table_mismatches(*w.map.source, dup_basis(r), printed_x_table());
    rep["restricted_table_mismatches"] =
        table_mismatches(*w.map.target, Matrix::identity(r, 6), printed_restricted_table());
    return report_witness(w, rep) && rep["x_table_mismatches"] == 0 && rep["restricted_table_mismatches"] == 0;
}

bool check_crossmodel(const CheckDescriptor& d, json& rep) { return report_witness(char2_crossmodel(ring_of(d)), rep); }

bool check_etiq(const CheckDescriptor& d, json& rep) {
    auto e = etiq_cocycles(ring_of(d));
    rep["mode"] = "full";
    rep["dim"] = e.dim;
    rep["all_of_vm_form"] = e.all_of_vm_form;
    return e.dim == 4 && e.all_of_vm_form;
}

bool check_mu2(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    const Ring& R = *r;
    if (!R.finite()) throw Error(ErrorCode::UnsupportedRing, "mu2 counts need a finite ring");
    std::size_t mu2 = 0;
    for (const auto& x : R.elements()) mu2 += R.is_one(R.mul(x, x));
    auto auts = dup_automorphisms(r);
    rep["mode"] = "full";
    rep["automorphisms"] = auts.size();
    rep["mu2"] = mu2;
    json imgs = json::array();
    for (const auto& a : auts) imgs.push_back(make_dup(r)->str(a.image_of_i));
    rep["images_of_i"] = imgs;
    return auts.size() == mu2;
}

bool check_char2_kernel(const CheckDescriptor& d, json& rep) {
    auto k = ring_of(d, "fq:2^2");
    const Ring& R = *k;
    if (!R.finite() || !R.is_field() || R.characteristic() != 2)
        throw Error(ErrorCode::WrongCharacteristic, "needs a finite field of characteristic 2");
    std::uint64_t q = *R.cardinality(), pairs = param_u64(d, "pairs", 50);
    std::mt19937_64 rng(d.seed);
    auto unit = [&] {
        while (true) {
            Elem e = R.from_code(rng() % q);
            if (R.is_unit(e)) return e;
        }
    };
    auto sym = [&] {
        std::vector<std::vector<Elem>> S(3, std::vector<Elem>(3, R.zero()));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = i + 1; j < 3; ++j) S[i][j] = S[j][i] = R.from_code(rng() % q);
        S[0][0] = R.from_code(rng() % q);
        S[1][1] = R.from_code(rng() % q);
        S[2][2] = R.add(S[0][0], S[1][1]);
        return S;
    };
    std::uint64_t ok = 0;
    for (std::uint64_t t = 0; t < pairs; ++t) {
        Elem a = unit(), b = unit();
        auto S = sym(), T = sym();
        auto F = char2_kernel_aut(k, a, S), G = char2_kernel_aut(k, b, T);
        LinearMap FG{F.source, F.target, F.m * G.m};
        auto [c, U] = char2_kernel_params(k, FG.m);
        bool good = is_automorphism(FG) && c == R.mul(a, b);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) good = good && U[i][j] == R.add(R.mul(b, S[i][j]), T[i][j]);
        ok += good;
    }
    rep["mode"] = "sampled";
    rep["pairs"] = pairs;
    rep["closed"] = ok;
    return ok == pairs;
}

bool check_poincare(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d, "fq:3^2");
    auto W = build_lattice(r);
    json failures = json::array();
    rep["ranks"] = {W.r.rank(), W.i.rank(), W.j.rank()};
    if (rep["ranks"] != json({4, 7, 7})) failures.push_back("ranks");

    auto mr = radical_minimality(W.algebra);
    rep["radical"] = {{"minimal", mr.value},
                      {"elements", mr.elements},
                      {"closures", mr.closures},
                      {"isotropic_lines", mr.isotropic},
                      {"nonisotropic_lines", mr.nonisotropic}};
    if (!mr.value) failures.push_back("radical-minimality");

    bool centerless = center(*W.algebra).is_zero();
    rep["centerless"] = centerless;
    if (!centerless) failures.push_back("center");

    auto der = poincare_der(W.algebra, 20, d.seed);
    rep["der_dim"] = der.dim;
    rep["inner_dim"] = der.inner_dim;
    rep["der_status"] = "derived";
    if (der.dim != 11 || der.inner_dim != 10 || !der.inner_inside) failures.push_back("derivations");
    if (der.d_checked != 20 || der.commutators_checked != 19 || !der.q_shadow) failures.push_back("kernel-derivations");

    auto opt = sweep_options(d);
    if (!d.samples) opt.samples = 100'000;
    auto sp = ideal_spectrum_sample(W, opt);
    json counterexamples = json::array();
    for (const auto& v : sp.counterexamples) counterexamples.push_back(vec_json(*r, v));
    rep["spectrum"] = {{"samples", sp.sweep.closures},
                       {"seed", sp.sweep.seed},
                       {"fingerprints", sp.fingerprints},
                       {"counterexamples", counterexamples},
                       {"zur_shadow", sp.zur_shadow},
                       {"status", "observed"}};
    rep["mode"] = "sampled";
    if (!sp.counterexamples.empty() || !sp.zur_shadow) failures.push_back("spectrum");

    auto rel = check_aut_relations(W.algebra, param_u64(d, "triples", 50), d.seed);
    rep["relations_checked"] = rel.triples;
    if (rel.composition_ok != rel.triples || rel.inverse_ok != rel.triples || rel.automorphisms_ok != rel.triples)
        failures.push_back("aut-relations");
    rep["failures"] = failures;
    return failures.empty();
}

// The identity matrix between two algebras, claimed to be an isomorphism.
bool check_claim_iso(const CheckDescriptor& d, json& rep) {
    auto r = ring_of(d);
    auto src = make_algebra(param_str(d, "source", "lorentz"), r);
    auto dst = make_algebra(param_str(d, "target", "o4"), r);
    if (src->dim != dst->dim) throw Error(ErrorCode::DimensionMismatch, "source and target dimensions differ");
    LinearMap f{src, dst, Matrix::identity(r, src->dim)};
    bool hom = is_homomorphism(f);
    rep["mode"] = "full";
    rep["homomorphism"] = hom;
    rep["matrix"] = matrix_json(f.m);
    return hom;
}

const std::map<std::string, Check>& registry() {
    static const std::map<std::string, Check> m = {
        {"simplicity", {"lorentz(K) simple iff K has no square root of -1", check_simplicity}},
        {"snss", {"lorentz(R) m-simple iff R is m-2-formally real, for each maximal m", check_simplicity}},
        {"sqrt-criterion", {"sqrt(-1) in F_q iff q = 1 mod 4, for odd prime powers up to qmax", check_sqrt_criterion}},
        {"derivations", {"dimension of Der(algebra); param expect", check_derivations}},
        {"theorem-nine", {"dim Der lorentz(K) = 12 in characteristic 2", check_theorem_nine}},
        {"hideput", {"characteristic 2: the unique proper ideal is 3-dimensional, abelian, with quotient o(3)", check_hideput}},
        {"notsimple", {"ideal from x, y with x^2 + y^2 in m is proper and nonzero", check_notsimple}},
        {"subdirect", {"lorentz(R) splits along every decomposition R = a + b", check_subdirect}},
        {"cuatrocinco", {"no single-element closure of dimension 4 or 5", check_exclusion}},
        {"lemma-one", {"lorentz(R) is isomorphic to o(4, R)", check_lemma_one}},
        {"sl2-split", {"o(4, R) = I + J with I, J copies of sl2(R)", check_sl2_split}},
        {"dup-iso", {"lorentz(R) is isomorphic to sl2(dup R) restricted to R", check_dup_iso}},
        {"char2-crossmodel", {"lorentz(K) in characteristic 2 as K^3 x K^3", check_crossmodel}},
        {"etiq", {"cocycles o(4) -> K^4 are x -> v x", check_etiq}},
        {"mu2", {"automorphisms of dup(R) over R correspond to mu_2(R)", check_mu2}},
        {"char2-kernel", {"kernel automorphisms compose as (a a', a' S + S')", check_char2_kernel}},
        {"poincare-lattice", {"Poincare ideals, minimal radical, derivations and automorphism family", check_poincare}},
        {"claim-iso", {"identity matrix claimed as an isomorphism source -> target", check_claim_iso}},
    };
    return m;
}

constexpr const char* kFullManifest = R"manifest([
  {"check": "simplicity", "ring": "fp:3"},
  {"check": "simplicity", "ring": "fp:5"},
  {"check": "simplicity", "ring": "fp:7"},
  {"check": "simplicity", "ring": "fq:3^2"},
  {"check": "simplicity", "ring": "fp:11"},
  {"check": "simplicity", "ring": "fp:13"},
  {"check": "simplicity", "ring": "fq:5^2", "mode": "sampled"},
  {"check": "simplicity", "ring": "fq:3^3", "mode": "sampled"},
  {"check": "simplicity", "ring": "fq:7^2", "mode": "sampled"},
  {"check": "sqrt-criterion", "params": {"qmax": 2000}},
  {"check": "derivations", "algebra": "sl2", "ring": "q", "params": {"expect": 3}},
  {"check": "derivations", "algebra": "lorentz", "ring": "fq:3^2", "params": {"expect": 6}},
  {"check": "derivations", "algebra": "lorentz", "ring": "fp:13", "params": {"expect": 6}},
  {"check": "derivations", "algebra": "lorentz", "ring": "dup(q)", "params": {"expect": 6}},
  {"check": "theorem-nine", "ring": "fp:2"},
  {"check": "theorem-nine", "ring": "fq:2^2"},
  {"check": "derivations", "algebra": "o3", "ring": "fp:2", "params": {"expect": 5}},
  {"check": "derivations", "algebra": "o3", "ring": "fq:2^2", "params": {"expect": 5}},
  {"check": "derivations", "algebra": "poincare", "ring": "fq:3^2", "params": {"expect": 11}},
  {"check": "derivations", "algebra": "poincare", "ring": "dup(q)", "params": {"expect": 11}},
  {"check": "hideput", "ring": "fp:2"},
  {"check": "hideput", "ring": "fq:2^2"},
  {"check": "notsimple", "ring": "fp:5", "params": {"x": "1", "y": "2"}},
  {"check": "notsimple", "ring": "fp:13", "params": {"x": "1", "y": "5"}},
  {"check": "snss", "ring": "zn:9", "mode": "full", "params": {"m": "3"}},
  {"check": "snss", "ring": "zn:15", "samples": 100000, "params": {"m": "5"}},
  {"check": "snss", "ring": "zn:15", "mode": "sampled", "samples": 100000, "params": {"m": "3"}},
  {"check": "subdirect", "ring": "zn:21", "mode": "sampled", "samples": 100000},
  {"check": "lemma-one", "ring": "fq:3^2"},
  {"check": "lemma-one", "ring": "fp:13"},
  {"check": "sl2-split", "ring": "fq:3^2"},
  {"check": "sl2-split", "ring": "fp:13"},
  {"check": "sl2-split", "ring": "dup(q)"},
  {"check": "dup-iso", "ring": "q"},
  {"check": "dup-iso", "ring": "fp:7"},
  {"check": "char2-crossmodel", "ring": "fp:2"},
  {"check": "char2-crossmodel", "ring": "fq:2^2"},
  {"check": "cuatrocinco", "ring": "fp:2"},
  {"check": "cuatrocinco", "ring": "fp:3"},
  {"check": "cuatrocinco", "ring": "fp:5"},
  {"check": "poincare-lattice", "ring": "fq:3^2", "samples": 100000},
  {"check": "etiq", "ring": "fp:3"},
  {"check": "etiq", "ring": "fp:5"},
  {"check": "etiq", "ring": "q"},
  {"check": "mu2", "ring": "fp:3"},
  {"check": "mu2", "ring": "fp:7"},
  {"check": "mu2", "ring": "zn:15"},
  {"check": "char2-kernel", "ring": "fq:2^2", "params": {"pairs": 50}}
])manifest";

}  // namespace

CheckDescriptor descriptor_from_json(const json& j) {
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "descriptor must be an object");
    static const std::set<std::string> known = {"check", "ring", "algebra", "mode", "samples", "seed", "budget", "threads", "params"};
    for (const auto& [k, v] : j.items())
        if (!known.count(k)) throw Error(ErrorCode::ParseError, "unknown descriptor field " + k);
    CheckDescriptor d;
    try {
        d.check = j.at("check").get<std::string>();
        d.ring = j.value("ring", "");
        d.algebra = j.value("algebra", "");
        d.mode = j.value("mode", "");
        if (j.contains("samples")) d.samples = j["samples"].get<std::uint64_t>();
        d.seed = j.value("seed", d.seed);
        d.budget = j.value("budget", d.budget);
        d.threads = j.value("threads", d.threads);
        if (j.contains("params")) d.params = j["params"];
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!d.params.is_object()) throw Error(ErrorCode::ParseError, "params must be an object");
    return d;
}

json descriptor_to_json(const CheckDescriptor& d) {
    json j = {{"check", d.check}, {"seed", d.seed}, {"budget", d.budget}};
    if (!d.ring.empty()) j["ring"] = d.ring;
    if (!d.algebra.empty()) j["algebra"] = d.algebra;
    if (!d.mode.empty()) j["mode"] = d.mode;
    if (d.samples) j["samples"] = *d.samples;
    if (!d.params.empty()) j["params"] = d.params;
    return j;
}

std::vector<CheckDescriptor> parse_manifest(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.is_array()) throw Error(ErrorCode::ParseError, "manifest must be a JSON array");
    std::vector<CheckDescriptor> out;
    for (const auto& e : j) out.push_back(descriptor_from_json(e));
    return out;
}

std::string bundled_manifest(std::string_view name) { return name == "paper-full" ? kFullManifest : ""; }

std::vector<std::string> check_ids() {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
}

std::string check_summary(const std::string& id) {
    auto it = registry().find(id);
    return it == registry().end() ? "" : it->second.summary;
}

CheckOutcome run_check(const CheckDescriptor& d) {
    CheckOutcome out;
    json& rep = out.report;
    rep = descriptor_to_json(d);
    rep["schema"] = 1;
    auto t0 = std::chrono::steady_clock::now();
    auto it = registry().find(d.check);
    if (it == registry().end()) {
        rep["verdict"] = "error";
        rep["error"] = {{"code", error_name(ErrorCode::UnknownCheck)}, {"message", "unknown check " + d.check}};
        out.exit_code = kUsage;
        return out;
    }
    try {
        json body = json::object();
        bool pass = it->second.run(d, body);
        for (auto& [k, v] : body.items()) rep[k] = v;
        rep["verdict"] = pass ? "pass" : "fail";
        out.exit_code = pass ? kPass : kFail;
    } catch (const Error& e) {
        rep["error"] = {{"code", error_name(e.code())}, {"message", e.what()}};
        switch (e.code()) {
        case ErrorCode::VerificationFailed:
            rep["verdict"] = "fail";
            out.exit_code = kFail;
            break;
        case ErrorCode::SizeLimit:
            rep["verdict"] = "error";
            out.exit_code = kSize;
            break;
        case ErrorCode::UnknownCheck:
        case ErrorCode::ParseError:
            rep["verdict"] = "error";
            out.exit_code = kUsage;
            break;
        default:
            rep["verdict"] = "error";
            out.exit_code = kPrecondition;
        }
    }
    rep["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

CheckOutcome run_suite(const std::vector<CheckDescriptor>& checks, unsigned workers) {
    std::vector<CheckOutcome> results(checks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < checks.size();) results[i] = run_check(checks[i]);
    };
    std::vector<std::future<void>> pool;
    for (unsigned w = 1; w < std::max(1u, workers); ++w) pool.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& f : pool) f.get();

    CheckOutcome out;
    json& rep = out.report;
    rep["schema"] = 1;
    rep["checks"] = json::array();
    std::size_t passed = 0;
    std::int64_t total_ms = 0;
    for (const auto& r : results) {
        rep["checks"].push_back(r.report);
        passed += r.exit_code == kPass;
        total_ms += r.report.value("elapsed_ms", 0);
    }
    rep["total"] = results.size();
    rep["passed"] = passed;
    rep["failed"] = results.size() - passed;
    rep["elapsed_ms"] = total_ms;
    rep["verdict"] = passed == results.size() ? "pass" : "fail";
    out.exit_code = passed == results.size() ? kPass : kFail;
    return out;
}

json strip_timing(json report) {
    report.erase("elapsed_ms");
    if (report.contains("checks"))
        for (auto& c : report["checks"]) c.erase("elapsed_ms");
    return report;
}

}  // namespace lieform
