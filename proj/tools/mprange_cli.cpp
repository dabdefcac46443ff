// Batch front door for the multiple-point-range toolkit: enumeration of
// balanced matrices, kernel integrals, graph sums, moment expansions,
// characteristic functions, walk oracles, and the generating-function
// cross-check suite.  Exit codes: 0 ok, 2 usage, 3 missing cache, 4 numeric
// failure.

#include <chrono>
#include <complex>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "mprange/feynman.hpp"
#include "mprange/graph_enum.hpp"
#include "mprange/lattice_green.hpp"
#include "mprange/moments.hpp"
#include "mprange/walk_oracle.hpp"

namespace {

using nlohmann::json;

struct MissingCache : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string out;
    std::string format = "csv";
    std::string cache_dir = "cache";
    bool no_timestamp = false;
    int threads = 0;
    std::string config;  // filled from the parsed command line
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "output file (default stdout)");
    cmd->add_option("--format", c.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--cache-dir", c.cache_dir, "graph-sum cache directory");
    cmd->add_option("--threads", c.threads, "worker threads (0 = auto)")
        ->envname("MPRANGE_THREADS");
    cmd->add_flag("--no-timestamp", c.no_timestamp, "omit the timestamp header");
}

std::string timestamp() {
    const std::time_t t =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// Every run records its configuration; the timestamp line is suppressible so
// reruns are byte-identical.
void emit(const Common& c, const std::string& body) {
    std::ostringstream os;
    os << "# config: " << c.config << "\n";
    if (!c.no_timestamp) os << "# timestamp: " << timestamp() << "\n";
    os << body;
    if (c.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(c.out);
        if (!f) throw std::runtime_error("cannot open output file " + c.out);
        f << os.str();
    }
}

std::string join_config(const CLI::App* cmd) {
    std::ostringstream os;
    os << cmd->get_name();
    for (const auto* opt : cmd->get_options()) {
        if (opt->count() == 0) continue;
        os << " " << opt->get_name();
        const auto& rs = opt->results();
        for (const auto& r : rs) os << " " << r;
    }
    return os.str();
}

// Graph sums for r = 2..rmax: r = 2 from quadrature, r >= 3 from the cache.
std::vector<mpr::GraphSumRecord> gather_sums(int rmax, const std::string& cache_dir) {
    std::vector<mpr::GraphSumRecord> sums;
    std::vector<int> missing;
    for (int r = 2; r <= rmax; ++r) {
        if (r == 2) {
            sums.push_back(mpr::graph_sum(2, 0));
            continue;
        }
        auto rec = mpr::load_graph_sum(r, cache_dir);
        if (rec)
            sums.push_back(*rec);
        else
            missing.push_back(r);
    }
    if (!missing.empty()) {
        std::ostringstream os;
        os << "missing graph-sum cache entries for r =";
        for (int r : missing) os << " " << r;
        os << " (run: mprange graph-sums --r <r>)";
        throw MissingCache(os.str());
    }
    return sums;
}

mpr::WalkClass parse_walk(const std::string& s) {
    if (s == "closed") return mpr::WalkClass::closed;
    if (s == "unrestricted") return mpr::WalkClass::unrestricted;
    throw CLI::ValidationError("--walk must be closed or unrestricted");
}

std::string matrix_str(const mpr::BalancedMatrix& F) {
    std::ostringstream os;
    for (int i = 0; i < F.r; ++i) {
        if (i) os << ";";
        for (int j = 0; j < F.r; ++j) {
            if (j) os << " ";
            os << F.rows[i][j];
        }
    }
    return os.str();
}

int run_enumerate(const Common& c, int r, const std::vector<int>& h) {
    std::ostringstream os;
    for (const auto& F : mpr::enumerate_balanced(r, h)) os << json(F) << "\n";
    emit(c, os.str());
    return 0;
}

int run_weights(const Common& c, int r, const std::vector<int>& h) {
    std::ostringstream os;
    if (c.format == "csv") os << "matrix,cof,mult,trails\n";
    for (const auto& F : mpr::enumerate_balanced(r, h)) {
        const mpr::GraphWeights w = mpr::graph_weights(F);
        if (c.format == "csv")
            os << matrix_str(F) << "," << w.cof << "," << w.mult << ","
               << w.trails << "\n";
        else
            os << json{{"matrix", json(F)},
                       {"cof", w.cof},
                       {"mult", w.mult.get_d()},
                       {"trails", w.trails.get_str()}}
               << "\n";
    }
    emit(c, os.str());
    return 0;
}

int run_integrals(const Common& c, int r, const std::vector<int>& h, long long budget,
                  std::uint64_t seed) {
    std::ostringstream os;
    os << "matrix,I,I_stderr,scriptI,scriptI_stderr,method,samples\n";
    for (const auto& F : mpr::enumerate_balanced(r, h)) {
        const mpr::GraphIntegral I = mpr::integral_I(F, budget, seed);
        const mpr::GraphIntegral S = mpr::integral_scriptI(F, budget, seed);
        os << matrix_str(F) << "," << I.value << "," << I.stderr_ << ","
           << S.value << "," << S.stderr_ << "," << I.method << "," << I.samples
           << "\n";
    }
    emit(c, os.str());
    return 0;
}

int run_graph_sums(const Common& c, int r, long long budget, std::uint64_t seed) {
    const mpr::GraphSumRecord rec = mpr::graph_sum(r, budget, seed);
    mpr::save_graph_sum(rec, c.cache_dir);
    json j{{"r", rec.r},
           {"count", rec.count},
           {"sum_I", rec.sum_I},
           {"sum_I_stderr", rec.sum_I_stderr},
           {"sum_scriptI", rec.sum_scriptI},
           {"sum_scriptI_stderr", rec.sum_scriptI_stderr},
           {"seed", rec.seed},
           {"budget", rec.budget}};
    emit(c, j.dump(2) + "\n");
    return 0;
}

int run_moments(const Common& c, const std::string& walk, const std::vector<int>& k,
                double n, int M, long long budget, std::uint64_t seed) {
    const mpr::MomentExpansion e =
        mpr::moment_full(parse_walk(walk), k, M, budget, seed);
    std::ostringstream os;
    os << e.csv();
    if (n > 0) os << "# value at n=" << n << ": " << e.eval(n) << "\n";
    emit(c, os.str());
    return 0;
}

int run_central(const Common& c, const std::string& walk, int p,
                const std::vector<int>& k) {
    const auto sums = gather_sums(p, c.cache_dir);
    const double v = mpr::central_moment_leading(parse_walk(walk), p, k, sums);
    std::ostringstream os;
    os << "order,leading_constant\n" << p << "," << v << "\n";
    emit(c, os.str());
    return 0;
}

int run_charfn(const Common& c, const std::string& which, double t, int rmax,
               const std::vector<double>& lambda) {
    const auto sums = gather_sums(rmax, c.cache_dir);
    const mpr::CharResult res = which == "brownian"
                                    ? mpr::char_brownian(t, rmax, sums)
                                    : mpr::char_closed(lambda, t, rmax, sums);
    json j = res.series.to_json();
    j["value"] = {{"re", res.value.real()}, {"im", res.value.imag()}};
    j["t"] = t;
    emit(c, j.dump(2) + "\n");
    return 0;
}

int run_oracle(const Common& c, const std::string& walk, int n, long long budget,
               std::uint64_t seed, bool exact) {
    const mpr::WalkClass cls = parse_walk(walk);
    std::ostringstream os;
    if (exact) {
        os << "n,walks,k,sum_N\n";
        if (cls == mpr::WalkClass::closed) {
            const auto e = mpr::enumerate_closed(2 * n, 6);
            for (size_t k = 0; k < e.sum_N.size(); ++k)
                os << n << "," << e.walks << "," << (k + 1) << "," << e.sum_N[k]
                   << "\n";
        } else {
            const auto e = mpr::enumerate_unrestricted(n, 6);
            for (size_t k = 0; k < e.sum_N.size(); ++k)
                os << n << "," << e.walks << "," << (k + 1) << "," << e.sum_N[k]
                   << "\n";
        }
    } else {
        const mpr::SeedSpec spec{seed, budget};
        const mpr::WalkStats st = cls == mpr::WalkClass::closed
                                      ? mpr::mc_closed(n, spec)
                                      : mpr::mc_unrestricted(n, spec);
        os << st.csv();
    }
    emit(c, os.str());
    return 0;
}

int run_crosscheck(const Common& c, const std::string& suite, int Lmax) {
    if (suite != "gf") throw CLI::ValidationError("--suite must be gf");
    std::ostringstream os;
    os << "check,L,expected,actual,status\n";
    bool ok = true;
    const int N = std::min(Lmax, 12);
    for (int k = 1; k <= 3; ++k) {
        const mpr::PowerSeries gf = mpr::first_moment_gf(k, N);
        for (int L = 2; L <= N; L += 2) {
            const auto e = mpr::enumerate_closed(L, k);
            const mpz_class expect = e.sum_N[k - 1];
            const bool pass = gf[L] == mpq_class(expect);
            ok = ok && pass;
            os << "first_moment_gf(k=" << k << ")," << L << "," << expect << ","
               << gf[L] << "," << (pass ? "pass" : "FAIL") << "\n";
        }
    }
    const std::vector<std::array<int, 2>> ys = {{1, 0}, {1, 1}, {2, 0}};
    const int Lfix = std::min(Lmax, 10);
    for (const auto& y : ys) {
        for (int k = 1; k <= 2; ++k) {
            const mpr::PowerSeries gf =
                mpr::multiplicity_fixed_gf({y[0], y[1], 0}, k, Lfix);
            for (int L = 2; L <= Lfix; L += 2) {
                const auto e = mpr::enumerate_closed(L, 1, {}, {{y, k}});
                const bool pass = gf[L] == mpq_class(e.fixed_counts[0]);
                ok = ok && pass;
                os << "multiplicity_fixed_gf(y=(" << y[0] << " " << y[1]
                   << "),k=" << k << ")," << L << "," << e.fixed_counts[0] << ","
                   << gf[L] << "," << (pass ? "pass" : "FAIL") << "\n";
            }
        }
    }
    emit(c, os.str());
    return ok ? 0 : 4;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multiple point range toolkit"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);

    Common c;
    int r = 2, n = 0, M = 5, rmax = 2, p = 2, Lmax = 10;
    double nval = 0.0, t = 0.0;
    long long budget = 100000;
    std::uint64_t seed = 1;
    bool exact = false;
    std::vector<int> h, k;
    std::vector<double> lambda{1.0};
    std::string walk = "closed", which = "brownian", suite = "gf";

    auto* enumerate = app.add_subcommand("enumerate", "balanced matrices H(r,h)");
    enumerate->set_help_flag("--help", "print help");
    enumerate->add_option("--r", r)->required();
    enumerate->add_option("--h", h)->required()->delimiter(',');
    add_common(enumerate, c);

    auto* weights = app.add_subcommand("weights", "cofactors, multiplicities, trails");
    weights->set_help_flag("--help", "print help");
    weights->add_option("--r", r)->required();
    weights->add_option("--h", h)->required()->delimiter(',');
    add_common(weights, c);

    auto* integrals = app.add_subcommand("integrals", "kernel integrals I, scriptI");
    integrals->set_help_flag("--help", "print help");
    integrals->add_option("--r", r)->required();
    integrals->add_option("--h", h)->required()->delimiter(',');
    integrals->add_option("--budget", budget);
    integrals->add_option("--seed", seed);
    add_common(integrals, c);

    auto* gsums = app.add_subcommand("graph-sums", "weighted per-r sums, cached");
    gsums->set_help_flag("--help", "print help");
    gsums->add_option("--r", r)->required();
    gsums->add_option("--budget", budget);
    gsums->add_option("--seed", seed);
    add_common(gsums, c);

    auto* moments = app.add_subcommand("moments", "raw moment expansion");
    moments->set_help_flag("--help", "print help");
    moments->add_option("--walk", walk);
    moments->add_option("--k", k)->required()->delimiter(',');
    moments->add_option("--n", nval);
    moments->add_option("--M", M);
    moments->add_option("--budget", budget);
    moments->add_option("--seed", seed);
    add_common(moments, c);

    auto* central = app.add_subcommand("central", "leading centralized moment");
    central->set_help_flag("--help", "print help");
    central->add_option("--walk", walk);
    central->add_option("--p", p)->required();
    central->add_option("--k", k)->delimiter(',');
    add_common(central, c);

    auto* charfn = app.add_subcommand("charfn", "characteristic functions");
    charfn->set_help_flag("--help", "print help");
    charfn->add_option("--which", which)->check(CLI::IsMember({"brownian", "closed"}));
    charfn->add_option("--t", t);
    charfn->add_option("--rmax", rmax);
    charfn->add_option("--lambda", lambda)->delimiter(',');
    add_common(charfn, c);

    auto* oracle = app.add_subcommand("oracle", "walk enumeration / sampling");
    oracle->set_help_flag("--help", "print help");
    oracle->add_option("--walk", walk);
    oracle->add_option("--n", n)->required();
    oracle->add_option("--budget", budget);
    oracle->add_option("--seed", seed);
    oracle->add_flag("--exact", exact);
    add_common(oracle, c);

    auto* crosscheck = app.add_subcommand("crosscheck", "identity suite");
    crosscheck->set_help_flag("--help", "print help");
    crosscheck->add_option("--suite", suite);
    crosscheck->add_option("--Lmax", Lmax);
    add_common(crosscheck, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        c.config = join_config(sub);
        if (sub == enumerate) return run_enumerate(c, r, h);
        if (sub == weights) return run_weights(c, r, h);
        if (sub == integrals) return run_integrals(c, r, h, budget, seed);
        if (sub == gsums) return run_graph_sums(c, r, budget, seed);
        if (sub == moments) return run_moments(c, walk, k, nval, M, budget, seed);
        if (sub == central) return run_central(c, walk, p, k);
        if (sub == charfn) return run_charfn(c, which, t, rmax, lambda);
        if (sub == oracle) return run_oracle(c, walk, n, budget, seed, exact);
        if (sub == crosscheck) return run_crosscheck(c, suite, Lmax);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MissingCache& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}
