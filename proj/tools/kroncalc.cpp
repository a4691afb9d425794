#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kroncalc/errors.hpp"
#include "kroncalc/json_io.hpp"
#include "kroncalc/lattice.hpp"
#include "kroncalc/oracle.hpp"
#include "kroncalc/os_bases.hpp"
#include "kroncalc/rep_theory.hpp"
#include "kroncalc/residue.hpp"

using namespace kroncalc;

namespace {

IntVec parse_vec(const std::string& s) {
    IntVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.find_first_not_of(" \t") == std::string::npos) continue;
        size_t used = 0;
        long x = 0;
        try {
            x = std::stol(tok, &used);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Input, "not an integer: '" + tok + "'");
        }
        if (tok.find_first_not_of(" \t", used) != std::string::npos)
            throw Error(ErrorKind::Input, "not an integer: '" + tok + "'");
        v.push_back(x);
    }
    return v;
}

IntMat parse_mat(const std::string& s) {
    IntMat m;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, ';')) m.push_back(parse_vec(row));
    return m;
}

RatVec parse_ratvec(const std::string& s) {
    RatVec v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(parse_rational(tok));
    return v;
}

std::string vec_text(const IntVec& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

struct Common {
    bool json_out = false;
    bool validate = false;
    long q_override = 0;
    int threads = 0;
    std::string cache_dir;
    bool exact = false;
    long oracle_cap = 12;
    bool verbose = false;

    EngineOptions engine() const {
        EngineOptions e;
        e.threads = threads;
        e.field = exact ? FieldKind::Exact : FieldKind::Modular;
        if (verbose) e.diagnostics = &std::cerr;
        return e;
    }
    void apply_env() const {
        if (!cache_dir.empty()) setenv("KRONCALC_CACHE_DIR", cache_dir.c_str(), 1);
    }
};

void add_common(CLI::App* app, Common& c) {
    app->add_flag("--json", c.json_out, "JSON output");
    app->add_flag("--validate-with-oracle", c.validate, "compare with the brute-force oracle where feasible");
    app->add_option("--q", c.q_override, "override the roots-of-unity modulus q");
    app->add_option("--threads", c.threads, "worker threads (default KRONCALC_THREADS or 1)");
    app->add_option("--cache-dir", c.cache_dir, "arrangement cache directory (default KRONCALC_CACHE_DIR)");
    app->add_flag("--exact", c.exact, "exact cyclotomic arithmetic instead of modular lanes");
    app->add_option("--oracle-cap", c.oracle_cap, "content cap for the oracle");
    app->add_flag("-v,--verbose", c.verbose, "per-term diagnostics on stderr");
}

[[noreturn]] void mismatch(const json& reproducer) {
    std::cerr << "oracle mismatch, reproducer:\n" << reproducer.dump(2) << "\n";
    throw Error(ErrorKind::OracleMismatch, "result disagrees with the oracle");
}

void print_quasi(const QuasiPolynomial& p, long q, json out, const Common& c) {
    QuasiPolynomial r = p.reduced();
    if (c.json_out) {
        out["quasi_polynomial"] = to_json(r);
        out["text"] = r.to_string();
        out["q"] = q;
        std::cout << out.dump() << "\n";
    } else {
        std::cout << r.to_string() << "\n";
    }
}

void print_hilbert(const QuasiPolynomial& p, json out, const Common& c) {
    HilbertSeries h = quasipoly_to_generating_series(p.reduced());
    if (c.json_out) {
        out["hilbert_series"] = to_json(h);
        out["text"] = h.to_string();
        std::cout << out.dump() << "\n";
    } else {
        std::cout << h.to_string() << "\n";
    }
}

void print_value(const Integer& v, json out, const Common& c) {
    if (c.json_out) {
        out["value"] = to_string(v);
        std::cout << out.dump() << "\n";
    } else {
        std::cout << v << "\n";
    }
}

json stats(const BranchingResult& r) {
    return json{{"q", r.q},
                {"cosets", r.cosets},
                {"valid_cosets", r.valid_cosets},
                {"terms_total", r.terms_total},
                {"terms_evaluated", r.terms_evaluated}};
}

// ---- kron ----

struct KronArgs {
    std::string dims, parts, problem;
    bool dilated = false, hilbert = false, rectangular = false;
    std::uint64_t seed = 1;
};

void load_problem(KronArgs& a) {
    std::ifstream f(a.problem);
    if (!f) throw Error(ErrorKind::Input, "cannot read " + a.problem);
    json j;
    try {
        j = json::parse(f);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Input, std::string("bad problem JSON: ") + e.what());
    }
    if (!j.contains("dims") || !j.contains("partitions")) throw Error(ErrorKind::Input, "problem needs dims and partitions");
    std::string d, p;
    for (long x : j["dims"].get<std::vector<long>>()) d += (d.empty() ? "" : ",") + std::to_string(x);
    for (const auto& row : j["partitions"]) p += (p.empty() ? "" : ";") + vec_text(row.get<IntVec>());
    a.dims = d;
    a.parts = p;
    std::string mode = j.value("mode", "numeric");
    if (mode == "dilated") a.dilated = true;
    else if (mode == "hilbert") a.hilbert = true;
    else if (mode != "numeric") throw Error(ErrorKind::Input, "unknown mode " + mode);
}

std::vector<int> to_dims(const IntVec& v) {
    std::vector<int> d;
    for (long x : v) d.push_back(static_cast<int>(x));
    return d;
}

int run_kron(KronArgs a, const Common& c) {
    if (!a.problem.empty()) load_problem(a);
    if (a.dims.empty() || a.parts.empty()) throw Error(ErrorKind::Input, "kron needs --dims and --parts (or --problem)");
    auto dims = to_dims(parse_vec(a.dims));
    auto parts = parse_mat(a.parts);
    BranchingOptions o;
    o.engine = c.engine();
    o.q_override = c.q_override;
    o.seed = a.seed;
    o.rectangular = a.rectangular;
    bool dil = a.dilated || a.hilbert;
    auto r = kronecker(dims, parts, dil, o);
    json out{{"command", "kron"}, {"dims", dims}, {"partitions", parts}, {"stats", stats(r.detail)}};
    json repro{{"command", "kron"}, {"dims", dims}, {"partitions", parts}, {"mode", dil ? "dilated" : "numeric"}};
    if (c.validate) {
        long content = 0;
        for (long x : parts[0]) content += x;
        if (!dil) {
            if (content <= c.oracle_cap && kronecker_bruteforce(dims, parts, c.oracle_cap) != r.value) mismatch(repro);
        } else {
            for (long k = 1; k <= 2; ++k) {
                if (content * k > c.oracle_cap) break;
                std::vector<IntVec> pk = parts;
                for (auto& p : pk)
                    for (auto& x : p) x *= k;
                if (Rational(kronecker_bruteforce(dims, pk, c.oracle_cap)) != r.quasi(k)) mismatch(repro);
            }
        }
    }
    if (a.hilbert) {
        out["mode"] = "hilbert";
        print_hilbert(r.quasi, out, c);
    } else if (dil) {
        out["mode"] = "dilated";
        print_quasi(r.quasi, r.detail.q, out, c);
    } else {
        out["mode"] = "numeric";
        print_value(r.value, out, c);
    }
    return 0;
}

// ---- branch ----

struct BranchArgs {
    long g = 0;
    std::string k, lambda, mu;
    bool torus = false, dilated = false;
    std::uint64_t seed = 1;
};

int run_branch(const BranchArgs& a, const Common& c) {
    RestrictedRoots rr;
    std::vector<int> blocks;
    if (a.torus) {
        if (a.g < 1) throw Error(ErrorKind::Input, "--torus needs --g");
        rr = torus_roots(a.g);
        blocks.assign(a.g, 1);
    } else {
        blocks = to_dims(parse_vec(a.k));
        rr = restricted_roots(blocks);
        if (a.g && a.g != rr.M) throw Error(ErrorKind::Input, "--g must equal the product of the block ranks");
    }
    IntVec lambda = parse_vec(a.lambda);
    IntVec mu;
    for (const auto& row : parse_mat(a.mu)) mu.insert(mu.end(), row.begin(), row.end());
    for (size_t i = 1; i < lambda.size(); ++i)
        if (lambda[i] > lambda[i - 1]) throw Error(ErrorKind::Input, "lambda is not dominant");
    BranchingOptions o;
    o.engine = c.engine();
    o.q_override = c.q_override;
    o.seed = a.seed;
    auto r = branching_multiplicity(rr, lambda, mu, a.dilated, o);
    json repro{{"command", "branch"}, {"M", rr.M}, {"blocks", blocks}, {"lambda", lambda}, {"mu", mu},
               {"mode", a.dilated ? "dilated" : "numeric"}};
    if (c.validate && rr.M <= 6) {
        if (!a.dilated) {
            if (kostant_branching_bruteforce(static_cast<int>(rr.M), blocks, lambda, mu) != r.value) mismatch(repro);
        } else {
            for (long k = 1; k <= 2; ++k) {
                IntVec lk = lambda, mk = mu;
                for (auto& x : lk) x *= k;
                for (auto& x : mk) x *= k;
                if (Rational(kostant_branching_bruteforce(static_cast<int>(rr.M), blocks, lk, mk)) != r.quasi(k))
                    mismatch(repro);
            }
        }
    }
    json out{{"command", "branch"}, {"M", rr.M}, {"blocks", blocks}, {"stats", stats(r)}};
    if (a.dilated) print_quasi(r.quasi, r.q, out, c);
    else print_value(r.value, out, c);
    return 0;
}

// ---- weight systems (partition, dh, arrangement, os) ----

struct SystemArgs {
    std::string weights, roots, lattice = "generated";
};

void add_system(CLI::App* app, SystemArgs& s) {
    app->add_option("--weights", s.weights, "weights as rows, e.g. \"2,0;1,1;0,2\"")->required();
    app->add_option("--roots", s.roots, "positive roots of K (rows); empty for the torus");
    app->add_option("--lattice", s.lattice, "generated | standard")->check(CLI::IsMember({"generated", "standard"}));
}

WeightSystem make_system(const SystemArgs& s) {
    IntMat w = parse_mat(s.weights);
    if (w.empty()) throw Error(ErrorKind::Input, "empty weight list");
    for (const auto& r : w)
        if (r.size() != w[0].size()) throw Error(ErrorKind::Input, "weights of different lengths");
    Lattice l = s.lattice == "standard" ? Lattice::standard(static_cast<long>(w[0].size())) : Lattice::generated_by(w);
    return {w, l, ""};
}

struct PartitionArgs {
    SystemArgs sys;
    std::string mu, rho;
    bool dilated = false;
};

int run_partition(const PartitionArgs& a, const Common& c) {
    WeightSystem ws = make_system(a.sys);
    IntVec mu = parse_vec(a.mu);
    IntMat roots = a.sys.roots.empty() ? IntMat{} : parse_mat(a.sys.roots);
    MultiplicityOptions o;
    o.engine = c.engine();
    o.q_override = c.q_override;
    json out{{"command", "partition"}, {"mu", mu}};
    auto oracle = [&](const IntVec& m) {
        if (roots.empty()) return partition_count_dp(ws.weights, m);
        IntVec rho;
        if (!a.rho.empty()) {
            rho = parse_vec(a.rho);
        } else {
            rho.assign(m.size(), 0);
            for (const auto& b : roots)
                for (size_t i = 0; i < m.size(); ++i) rho[i] += b[i];
            for (auto& x : rho) {
                if (x % 2) throw Error(ErrorKind::Input, "half the root sum is not integral, pass --rho");
                x /= 2;
            }
        }
        return multiplicity_K_bruteforce(ws.weights, roots, rho, m);
    };
    if (a.dilated) {
        auto q = roots.empty() ? multiplicity_T_dilated(ws, mu, o) : multiplicity_K_dilated(ws, roots, mu, o);
        if (c.validate)
            for (long k = 1; k <= 2; ++k) {
                IntVec m = mu;
                for (auto& x : m) x *= k;
                if (Rational(oracle(m)) != q(k)) mismatch(json{{"command", "partition"}, {"weights", ws.weights}, {"mu", mu}});
            }
        print_quasi(q, q.period(), out, c);
    } else {
        Integer v = roots.empty() ? multiplicity_T(ws, mu, o) : multiplicity_K(ws, roots, mu, o);
        if (c.validate && oracle(mu) != v) mismatch(json{{"command", "partition"}, {"weights", ws.weights}, {"mu", mu}});
        print_value(v, out, c);
    }
    return 0;
}

struct DhArgs {
    SystemArgs sys;
    std::string ray;
    long samples = 0;
    std::string tmax = "1";
};

int run_dh(const DhArgs& a, const Common& c) {
    WeightSystem ws = make_system(a.sys);
    IntMat roots = a.sys.roots.empty() ? IntMat{} : parse_mat(a.sys.roots);
    MultiplicityOptions o;
    o.engine = c.engine();
    UniPoly p = dh_volume(ws, roots, parse_ratvec(a.ray), o);
    Rational tmax = parse_rational(a.tmax);
    json table = json::array();
    for (long i = 0; i <= a.samples && a.samples > 0; ++i) {
        Rational t = tmax * Rational(i, a.samples);
        t.canonicalize();
        table.push_back({rational_to_json(t), rational_to_json(p(t))});
    }
    if (c.json_out) {
        json coeffs = json::array();
        for (const auto& x : p.coeffs()) coeffs.push_back(rational_to_json(x));
        std::cout << json{{"command", "dh"}, {"polynomial", coeffs}, {"text", p.to_string("t")}, {"samples", table}}.dump()
                  << "\n";
    } else {
        std::cout << p.to_string("t") << "\n";
        if (a.samples > 0) {
            std::cout << "t,dh\n";
            for (const auto& row : table) std::cout << row[0].get<std::string>() << "," << row[1].get<std::string>() << "\n";
        }
    }
    return 0;
}

int run_arrangement(const SystemArgs& s, const Common& c) {
    WeightSystem ws = make_system(s);
    ReducedSystem R = reduce_system(ws);
    IntMat H = admissible_hyperplanes(R);
    auto idx = system_index_data(R, 100000000L, c.q_override);
    if (c.json_out) {
        std::cout << json{{"command", "arrangement"},
                          {"rank", R.rank},
                          {"vectors", R.vectors},
                          {"hyperplanes", H},
                          {"ambient_normals", ambient_normals(R, H)},
                          {"index", idx.q},
                          {"torsion_points", idx.torsion.size()}}
                         .dump()
                  << "\n";
    } else {
        std::cout << "rank " << R.rank << "\nindex " << idx.q << "\ntorsion points " << idx.torsion.size()
                  << "\nhyperplanes " << H.size() << "\n";
        for (const auto& h : H) std::cout << "  " << vec_text(h) << "\n";
    }
    return 0;
}

struct OsArgs {
    SystemArgs sys;
    std::string point;
};

int run_os(const OsArgs& a, const Common& c) {
    WeightSystem ws = make_system(a.sys);
    ReducedSystem R = reduce_system(ws);
    IntMat H = admissible_hyperplanes(R);
    auto bases = a.point.empty() ? os_bases(R, H) : adapted_os_bases(R, R.reduce(parse_ratvec(a.point)), H);
    json rows = json::array();
    for (const auto& b : bases) {
        IntMat m;
        for (long i : b) m.push_back(R.vectors[i]);
        rows.push_back(m);
    }
    if (c.json_out) {
        std::cout << json{{"command", "os"}, {"count", bases.size()}, {"bases", rows}}.dump() << "\n";
    } else {
        std::cout << bases.size() << " bases\n";
        for (const auto& b : rows) {
            std::string line;
            for (const auto& v : b) line += (line.empty() ? "" : " | ") + vec_text(v.get<IntVec>());
            std::cout << "  " << line << "\n";
        }
    }
    return 0;
}

// ---- oracle ----

struct OracleArgs {
    std::string dims, parts, k, lambda, mu, weights;
    long g = 0;
    bool torus = false;
};

int run_oracle(const OracleArgs& a, const Common& c) {
    Integer v;
    json out{{"command", "oracle"}};
    if (!a.dims.empty()) {
        v = kronecker_bruteforce(to_dims(parse_vec(a.dims)), parse_mat(a.parts), c.oracle_cap);
    } else if (!a.lambda.empty()) {
        IntVec lambda = parse_vec(a.lambda);
        std::vector<int> blocks = a.torus ? std::vector<int>(lambda.size(), 1) : to_dims(parse_vec(a.k));
        IntVec mu;
        for (const auto& row : parse_mat(a.mu)) mu.insert(mu.end(), row.begin(), row.end());
        v = kostant_branching_bruteforce(static_cast<int>(lambda.size()), blocks, lambda, mu);
    } else if (!a.weights.empty()) {
        v = partition_count_dp(parse_mat(a.weights), parse_vec(a.mu));
    } else {
        throw Error(ErrorKind::Input, "oracle needs --dims/--parts, --lambda/--mu or --weights/--mu");
    }
    print_value(v, out, c);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kronecker coefficients, branching multiplicities and partition functions by iterated residues"};
    app.require_subcommand(1);
    Common common;

    KronArgs ka;
    auto* kron = app.add_subcommand("kron", "Kronecker coefficient g(nu_1, ..., nu_s)");
    kron->add_option("--dims", ka.dims, "dimensions, e.g. 4,2,2");
    kron->add_option("--parts", ka.parts, "partitions separated by ';', e.g. \"5,3,2,1;6,5;6,5\"");
    kron->add_option("--problem", ka.problem, "problem JSON file");
    kron->add_flag("--dilated", ka.dilated, "quasi-polynomial in k of g(k nu)");
    kron->add_flag("--hilbert", ka.hilbert, "generating series of the dilated coefficients");
    kron->add_flag("--rectangular", ka.rectangular, "merge all equal runs of the first partition");
    kron->add_option("--seed", ka.seed, "seed for the interior point");
    add_common(kron, common);

    BranchArgs ba;
    auto* branch = app.add_subcommand("branch", "multiplicity of a U(n_1) x ... x U(n_r) module in a U(M) module");
    branch->add_option("--g", ba.g, "M");
    branch->add_option("--k", ba.k, "block ranks, e.g. 2,2");
    branch->add_flag("--torus", ba.torus, "branch to the maximal torus of U(M)");
    branch->add_option("--lambda", ba.lambda, "highest weight for U(M)")->required();
    branch->add_option("--mu", ba.mu, "block weights separated by ';'")->required();
    branch->add_flag("--dilated", ba.dilated, "quasi-polynomial in k");
    branch->add_option("--seed", ba.seed, "seed for the interior point");
    add_common(branch, common);

    PartitionArgs pa;
    auto* part = app.add_subcommand("partition", "vector partition function, or a K-multiplicity with --roots");
    add_system(part, pa.sys);
    part->add_option("--mu", pa.mu, "point")->required();
    part->add_flag("--dilated", pa.dilated, "quasi-polynomial in k");
    part->add_option("--rho", pa.rho, "integral rho for oracle validation with --roots");
    add_common(part, common);

    DhArgs da;
    auto* dh = app.add_subcommand("dh", "Duistermaat-Heckman density along a ray");
    add_system(dh, da.sys);
    dh->add_option("--ray", da.ray, "ray direction, rational entries")->required();
    dh->add_option("--samples", da.samples, "number of sample intervals on [0, tmax]");
    dh->add_option("--tmax", da.tmax, "end of the sample range");
    add_common(dh, common);

    SystemArgs sa;
    auto* arr = app.add_subcommand("arrangement", "admissible hyperplanes and lattice index of a weight system");
    add_system(arr, sa);
    add_common(arr, common);

    OsArgs oa;
    auto* os = app.add_subcommand("os", "ordered OS bases, or those adapted to a point");
    add_system(os, oa.sys);
    os->add_option("--point", oa.point, "regular point (ambient coordinates)");
    add_common(os, common);

    OracleArgs ra;
    auto* orc = app.add_subcommand("oracle", "brute-force values, same inputs as kron / branch / partition");
    orc->add_option("--dims", ra.dims, "dimensions");
    orc->add_option("--parts", ra.parts, "partitions");
    orc->add_option("--g", ra.g, "M (informational)");
    orc->add_option("--k", ra.k, "block ranks");
    orc->add_flag("--torus", ra.torus, "torus branching");
    orc->add_option("--lambda", ra.lambda, "highest weight for U(M)");
    orc->add_option("--mu", ra.mu, "weight");
    orc->add_option("--weights", ra.weights, "weight rows for a partition function");
    add_common(orc, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        common.apply_env();
        if (*kron) return run_kron(ka, common);
        if (*branch) return run_branch(ba, common);
        if (*part) return run_partition(pa, common);
        if (*dh) return run_dh(da, common);
        if (*arr) return run_arrangement(sa, common);
        if (*os) return run_os(oa, common);
        if (*orc) return run_oracle(ra, common);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
