// Batch verification runner. One JSON document on stdout per invocation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "lieform/checks.hpp"
#include "lieform/error.hpp"
#include "lieform/witnesses.hpp"

using namespace lieform;

namespace {

int emit(const json& doc, const std::string& out) {
    std::string text = doc.dump(2);
    std::cout << text << "\n";
    if (!out.empty()) {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "cannot write " << out << "\n";
            return kUsage;
        }
        f << text << "\n";
    }
    return 0;
}

json usage_error(const std::string& code, const std::string& msg) {
    return {{"schema", 1}, {"verdict", "error"}, {"error", {{"code", code}, {"message", msg}}}};
}

json parse_params(const std::vector<std::string>& kv) {
    json p = json::object();
    for (const auto& s : kv) {
        auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::ParseError, "--param expects key=value, got " + s);
        p[s.substr(0, eq)] = s.substr(eq + 1);
    }
    return p;
}

std::string read_manifest(const std::string& where) {
    if (auto b = bundled_manifest(where); !b.empty()) return b;
    std::ifstream f(where);
    if (!f) throw Error(ErrorCode::ParseError, "cannot read manifest " + where);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

IsoWitness witness_by_name(const std::string& name, const RingPtr& r) {
    if (name == "lemma-one") return lemma_one_iso(r);
    if (name == "sl2-split") return sl2_split(r).iso;
    if (name == "dup-iso") return dup_iso(r);
    if (name == "char2-crossmodel") return char2_crossmodel(r);
    throw Error(ErrorCode::UnknownCheck, "unknown witness " + name);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lieform: exact checks for Lorentz and Poincare type Lie algebras"};
    app.require_subcommand(1);

    CheckDescriptor d;
    std::vector<std::string> kv;
    std::string mode, out, manifest = "paper-full", witness;
    std::uint64_t samples = 0;
    unsigned workers = 1;

    auto* run = app.add_subcommand("run", "run one named check");
    run->add_option("check", d.check, "check id (see list)")->required();
    auto add_common = [&](CLI::App* c) {
        c->add_option("--ring", d.ring, "ring spec: fp:p, fq:p^n, zn:n, q, dup(..), prod(a,b)");
        c->add_option("--algebra", d.algebra, "lorentz, sl2, sl2_pair, o3, o4, poincare");
        c->add_option("--out", out, "also write the report here");
    };
    add_common(run);
    run->add_option("--mode", mode, "full or sampled")->check(CLI::IsMember({"full", "sampled"}));
    run->add_option("--samples", samples, "closures to sample");
    run->add_option("--seed", d.seed, "sampling seed")->capture_default_str();
    run->add_option("--budget", d.budget, "largest full sweep")->capture_default_str();
    run->add_option("--threads", d.threads, "sweep threads")->capture_default_str();
    run->add_option("--param", kv, "check parameter key=value");

    auto* suite = app.add_subcommand("suite", "run a manifest of checks");
    suite->add_option("--manifest", manifest, "path, or a bundled name (paper-full)")->capture_default_str();
    suite->add_option("--workers", workers, "checks run at once")->capture_default_str();
    suite->add_option("--out", out, "also write the report here");

    auto* list = app.add_subcommand("list", "list check ids");

    auto* exp = app.add_subcommand("export", "export an algebra or a witness as JSON");
    add_common(exp);
    exp->add_option("--witness", witness, "lemma-one, sl2-split, dup-iso, char2-crossmodel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << e.what() << "\n";
        emit(usage_error("ParseError", e.what()), "");
        return kUsage;
    }

    try {
        if (*list) {
            json ids = json::array();
            for (const auto& id : check_ids()) ids.push_back({{"id", id}, {"summary", check_summary(id)}});
            emit({{"schema", 1}, {"checks", ids}}, "");
            return kPass;
        }
        if (*exp) {
            auto r = make_ring(d.ring.empty() ? "q" : d.ring);
            json doc;
            if (!witness.empty()) doc = json::parse(export_witness(witness_by_name(witness, r)));
            else doc = json::parse(export_json(*make_algebra(d.algebra.empty() ? "lorentz" : d.algebra, r)));
            doc["schema"] = 1;
            return emit(doc, out) ? kUsage : kPass;
        }
        if (*run) {
            d.mode = mode;
            if (samples) d.samples = samples;
            d.params = parse_params(kv);
            std::cerr << "running " << d.check << (d.ring.empty() ? "" : " over " + d.ring) << "\n";
            auto res = run_check(d);
            std::cerr << d.check << ": " << res.report.value("verdict", "?") << "\n";
            return emit(res.report, out) ? kUsage : res.exit_code;
        }
        auto checks = parse_manifest(read_manifest(manifest));
        std::cerr << "suite of " << checks.size() << " checks\n";
        auto res = run_suite(checks, workers);
        for (const auto& c : res.report["checks"])
            std::cerr << "  " << c.value("check", "?") << " " << c.value("ring", "") << ": " << c.value("verdict", "?")
                      << " (" << c.value("elapsed_ms", 0) << " ms)\n";
        return emit(res.report, out) ? kUsage : res.exit_code;
    } catch (const Error& e) {
        int code = e.code() == ErrorCode::SizeLimit                                                 ? kSize
                   : e.code() == ErrorCode::ParseError || e.code() == ErrorCode::UnknownCheck ? kUsage
                                                                                                    : kPrecondition;
        emit(usage_error(error_name(e.code()), e.what()), "");
        return code;
    }
}
