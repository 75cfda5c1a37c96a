// Command-line front end: build certified state-preserving models, verify
// user-supplied generators, run convergence experiments, and emit reports.
//
// Exit codes: 0 success / fully certified; 1 failed certificate or no decay;
// 2 validation error; 3 malformed input file.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "absorbing/analysis.hpp"
#include "absorbing/flowbuild.hpp"
#include "absorbing/generator.hpp"
#include "absorbing/serialize.hpp"
#include "absorbing/state.hpp"

using namespace absorbing;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_decimal(const std::string& token) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    while (begin < end && *begin == ' ') ++begin;
    while (end > begin && end[-1] == ' ') --end;
    double v = 0.0;
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw Error("eigenvalues: '" + token + "' is not a decimal number");
    return v;
}

// Comma-separated decimals; renormalized only when the sum is already
// within 1e-9 of 1, otherwise rejected so typos are not papered over.
std::vector<double> parse_eigenvalues(const std::string& text) {
    std::vector<double> list;
    size_t pos = 0;
    while (true) {
        const size_t comma = text.find(',', pos);
        list.push_back(parse_decimal(
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos)));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    double sum = 0.0;
    for (double v : list) sum += v;
    if (std::abs(sum - 1.0) > 1e-9)
        throw Error("eigenvalues must sum to 1 (got " + fmt6(sum) + ")");
    for (double& v : list) v /= sum;
    return list;
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    const char* env = std::getenv("ABSORBING_FLOWS_SEED");
    if (env == nullptr || *env == '\0') return 0;
    std::uint64_t v = 0;
    const char* end = env + std::string(env).size();
    const auto res = std::from_chars(env, end, v);
    if (res.ec != std::errc() || res.ptr != end)
        throw Error("ABSORBING_FLOWS_SEED must be a nonnegative integer, got '" +
                    std::string(env) + "'");
    return v;
}

// Decreasing non-constant list 2(r-k)/(r(r+1)), k = 0..r-1; sums to 1.
std::vector<double> sloped_list(int r) {
    std::vector<double> list;
    for (int k = 0; k < r; ++k) list.push_back(2.0 * (r - k) / (r * (r + 1.0)));
    return list;
}

void print_certificate(std::ostream& os, const PurityCertificate& cert) {
    os << "pure: " << (cert.pure() ? "true" : "false") << " (ergodic "
       << (cert.ergodic ? "true" : "false") << ", irreducible "
       << (cert.irreducible ? "true" : "false") << ")\n"
       << "fixed-point dimension: " << cert.fixed_point_dim << "\n"
       << "commutant dimension: " << cert.commutant_dim << "\n"
       << "spectral gap estimate: " << fmt6(cert.spectral_gap_estimate)
       << " (envelope constant " << fmt6(cert.gap_constant) << ")\n";
    if (!cert.method_notes.empty()) os << "notes: " << cert.method_notes << "\n";
}

void print_index(std::ostream& os, const IndexResult& idx) {
    os << "index: " << idx.index << " (span dimension " << idx.space.dim
       << ", meets scalars: " << (idx.space.intersects_scalars ? "true" : "false") << ")\n";
}

// ---------------------------------------------------------------- build ---

struct BuildConfig {
    std::string eigenvalues;
    int n = 1;
    bool n_given = false;
    std::string preset = "pure";
    std::string out = "model.json";
    std::optional<std::uint64_t> seed;
};

PureFlowModel make_preset_model(const BuildConfig& cfg) {
    const std::vector<double> list = parse_eigenvalues(cfg.eigenvalues);
    if (cfg.preset == "pure") {
        if (!cfg.n_given) throw Error("build: --index is required for the pure preset");
        return build_pure_model(list, cfg.n, resolve_seed(cfg.seed));
    }
    PureFlowModel model;
    model.state = make_state(list, ComplexMatrix::identity(static_cast<int>(list.size())));
    const int r = model.state.r;
    if (cfg.preset == "depolarizing") {
        model.gen = depolarizing_generator(model.state);
    } else {  // conjugation: a single diagonal unitary, intentionally non-pure
        ComplexMatrix u(r, r);
        for (int k = 0; k < r; ++k) u(k, k) = std::polar(1.0, 2.0 * kPi * k / r);
        model.gen.r = r;
        model.gen.kraus = {u};
        model.gen.drift = ComplexMatrix::identity(r) * cplx(-0.5);
    }
    model.certificate = purity_verdict(model.gen, model.state);
    model.index = numerical_index(model.gen).index;
    model.branch = model.state.tracial() ? "tracial" : "non-tracial";
    return model;
}

int run_build(const BuildConfig& cfg) {
    const PureFlowModel model = make_preset_model(cfg);
    write_text_atomic(cfg.out, model_to_json(model).dump(2) + "\n");

    std::cout << "branch: " << model.branch << "\n";
    print_index(std::cout, numerical_index(model.gen));
    print_certificate(std::cout, model.certificate);
    std::cout << "unitality defect: " << fmt6(unitality_defect(model.gen)) << "\n"
              << "invariance defect: " << fmt6(invariance_defect(model.gen, model.state))
              << "\n"
              << "model written: " << cfg.out << "\n";
    return model.certificate.pure() ? 0 : 1;
}

// --------------------------------------------------------------- verify ---

struct VerifyConfig {
    std::string model;
    double tol = 1e-8;
};

int run_verify(const VerifyConfig& cfg) {
    const LoadedGenerator lg = generator_from_json(read_json_file(cfg.model));
    std::vector<std::string> failures;

    const double udef = unitality_defect(lg.gen);
    const double idef = invariance_defect(lg.gen, lg.state);
    std::cout << "unitality defect: " << fmt6(udef) << "\n"
              << "invariance defect: " << fmt6(idef) << "\n";
    if (udef > cfg.tol) failures.push_back("unitality defect exceeds tolerance");
    if (idef > cfg.tol) failures.push_back("invariance defect exceeds tolerance");

    LindbladGenerator cp_part;
    cp_part.r = lg.gen.r;
    cp_part.kraus = lg.gen.kraus;
    cp_part.drift = ComplexMatrix(lg.gen.r, lg.gen.r);
    const CriterionResult crit = admits_preserving_drift(as_superoperator(cp_part), lg.state);
    std::cout << "preserving-drift criterion: " << (crit.holds ? "holds" : "fails")
              << " (residual " << fmt6(crit.residual) << ")\n";
    if (!crit.holds) failures.push_back("preserving-drift criterion fails");

    const Superoperator l = as_superoperator(lg.gen);
    for (double t : {0.1, 1.0}) {
        const ChoiReport choi = choi_positive(evolve(l, t), cfg.tol);
        std::cout << "choi minimum eigenvalue at t=" << fmt6(t) << ": "
                  << fmt6(choi.min_eigenvalue) << (choi.positive ? " (positive)" : " (NEGATIVE)")
                  << "\n";
        if (!choi.positive)
            failures.push_back("semigroup element at t=" + fmt6(t) + " is not completely positive");
    }

    try {
        const PurityCertificate cert = purity_verdict(lg.gen, lg.state, cfg.tol);
        print_certificate(std::cout, cert);
        if (!cert.pure()) failures.push_back("certificate is not pure");
    } catch (const Error& e) {
        std::cout << "purity certificate unavailable: " << e.what() << "\n";
        failures.push_back("purity certificate unavailable");
    }

    print_index(std::cout, numerical_index(lg.gen));

    if (failures.empty()) {
        std::cout << "verdict: certified\n";
        return 0;
    }
    std::cout << "verdict: NOT certified";
    for (size_t i = 0; i < failures.size(); ++i)
        std::cout << (i == 0 ? " (" : "; ") << failures[i];
    std::cout << ")\n";
    return 1;
}

// --------------------------------------------------------------- evolve ---

struct EvolveConfig {
    std::string model;
    std::string rho0 = "maximally-mixed";
    double tmax = 0.0;  // 0 = derive from the gap
    int steps = 64;
    bool linear_grid = false;
    std::string out;
};

ComplexMatrix parse_rho0(const std::string& spec, const FaithfulState& state) {
    const int r = state.r;
    if (spec == "maximally-mixed") {
        ComplexMatrix rho = ComplexMatrix::identity(r);
        return rho * cplx(1.0 / r);
    }
    if (spec.rfind("pure-", 0) == 0) {
        const std::string tail = spec.substr(5);
        int k = -1;
        const auto res = std::from_chars(tail.data(), tail.data() + tail.size(), k);
        if (res.ec != std::errc() || res.ptr != tail.data() + tail.size() || k < 0 || k >= r)
            throw Error("rho0: '" + spec + "' does not name a basis column in [0, " +
                        std::to_string(r - 1) + "]");
        ComplexMatrix rho(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                rho(i, j) = state.basis(i, k) * std::conj(state.basis(j, k));
        return rho;
    }
    return matrix_from_json(read_json_file(spec));
}

int run_evolve(const EvolveConfig& cfg) {
    if (cfg.steps < 2) throw Error("evolve: --steps must be at least 2");
    if (cfg.tmax < 0.0) throw Error("evolve: --tmax must be positive");

    const LoadedGenerator lg = generator_from_json(read_json_file(cfg.model));
    const ComplexMatrix rho0 = parse_rho0(cfg.rho0, lg.state);

    const SpectralGap gap = spectral_gap(as_superoperator(lg.gen), lg.state);
    const double t_end =
        cfg.tmax > 0.0 ? cfg.tmax : (gap.epsilon > 1e-9 ? 50.0 / gap.epsilon : 50.0);
    const std::vector<double> times = default_time_grid(t_end, cfg.steps, !cfg.linear_grid);

    const ConvergenceReport rep = trajectory(lg.gen, lg.state, rho0, times, gap);
    const std::string csv = report_to_csv(rep);

    std::ostream& info = cfg.out.empty() ? std::cerr : std::cout;
    if (cfg.out.empty())
        std::cout << csv;
    else {
        write_text_atomic(cfg.out, csv);
        info << "trajectory written: " << cfg.out << "\n";
    }

    const double final_distance = rep.distances.back();
    info << "gap estimate: " << fmt6(rep.epsilon) << " (bound rate " << fmt6(rep.rate)
         << ", fitted constant " << fmt6(rep.fitted_constant) << ")\n"
         << "initial distance: " << fmt6(rep.initial_distance) << "\n"
         << "final distance at t=" << fmt6(rep.times.back()) << ": " << fmt6(final_distance)
         << "\n";
    if (final_distance <= 1e-6) return 0;
    info << "no decay detected (final distance above 1e-06)\n";
    return 1;
}

// ------------------------------------------------------------------ gap ---

struct GapConfig {
    std::string model;
    double tol = 1e-8;
    std::string out;
};

int run_gap(const GapConfig& cfg) {
    const LoadedGenerator lg = generator_from_json(read_json_file(cfg.model));
    const PurityCertificate cert = purity_verdict(lg.gen, lg.state, cfg.tol);
    print_certificate(std::cout, cert);
    print_index(std::cout, numerical_index(lg.gen));
    if (!cfg.out.empty()) {
        write_text_atomic(cfg.out, certificate_to_json(cert).dump(2) + "\n");
        std::cout << "certificate written: " << cfg.out << "\n";
    }
    return 0;
}

// --------------------------------------------------- demo-perturbation ----

struct DemoConfig {
    std::string eigenvalues;
    double epsilon = 0.1;
    std::string out;
};

int run_demo(const DemoConfig& cfg) {
    const std::vector<double> list = parse_eigenvalues(cfg.eigenvalues);
    const FaithfulState state =
        make_state(list, ComplexMatrix::identity(static_cast<int>(list.size())));
    const PerturbationDemo demo = perturbation_demo(state, cfg.epsilon);

    std::cout << "epsilon: " << fmt6(cfg.epsilon) << "\n"
              << "invariance defect before: " << fmt6(demo.defect_before) << "\n"
              << "invariance defect after: " << fmt6(demo.defect_after) << "\n"
              << "drift correction norm: " << fmt6(demo.ell.frobenius_norm()) << "\n"
              << "unitality defect after: " << fmt6(unitality_defect(demo.after)) << "\n";

    if (!cfg.out.empty()) {
        json j;
        j["epsilon"] = cfg.epsilon;
        j["defect_before"] = demo.defect_before;
        j["defect_after"] = demo.defect_after;
        j["ell"] = matrix_to_json(demo.ell);
        j["before"] = generator_to_json(demo.before, state);
        j["after"] = generator_to_json(demo.after, state);
        write_text_atomic(cfg.out, j.dump(2) + "\n");
        std::cout << "record written: " << cfg.out << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------- sweep ---

struct SweepConfig {
    int rmax = 3;
    std::string out = "sweep";
    std::optional<std::uint64_t> seed;
};

struct SweepRow {
    int r = 0;
    int n = 0;
    std::string kind;  // "constant" or "sloped"
    std::string branch = "-";
    bool certified = false;
    bool pure = false;
    int index = -1;
    double gap = 0.0;
    double max_defect = 0.0;
    std::string error;
};

SweepRow sweep_case(int r, int n, const std::string& kind, std::uint64_t seed,
                    const std::string& out_dir) {
    SweepRow row;
    row.r = r;
    row.n = n;
    row.kind = kind;
    try {
        const std::vector<double> list =
            kind == "constant" ? std::vector<double>(static_cast<size_t>(r), 1.0 / r)
                               : sloped_list(r);
        const PureFlowModel model = build_pure_model(list, n, seed);
        row.branch = model.branch;
        row.pure = model.certificate.pure();
        row.index = model.index;
        row.gap = model.certificate.spectral_gap_estimate;
        row.max_defect =
            std::max(unitality_defect(model.gen), invariance_defect(model.gen, model.state));
        row.certified =
            row.pure && row.index == n && row.max_defect <= 1e-9 && row.gap > 0.0;
        const std::string file = out_dir + "/model_r" + std::to_string(r) + "_n" +
                                 std::to_string(n) + "_" + kind + ".json";
        write_text_atomic(file, model_to_json(model).dump(2) + "\n");
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

int run_sweep(const SweepConfig& cfg) {
    if (cfg.rmax < 2 || cfg.rmax > 5)
        throw Error("sweep: r_max " + std::to_string(cfg.rmax) +
                    " is outside the supported range [2, 5] (cap exceeded)");
    std::filesystem::create_directories(cfg.out);
    const std::uint64_t seed = resolve_seed(cfg.seed);

    // Launch all cases concurrently; collect in deterministic order.
    std::vector<std::future<SweepRow>> jobs;
    for (int r = 2; r <= cfg.rmax; ++r)
        for (int n = 1; n <= r * r - 1; ++n)
            for (const char* kind : {"constant", "sloped"})
                jobs.push_back(std::async(std::launch::async, sweep_case, r, n,
                                          std::string(kind), seed, cfg.out));

    std::string csv = "r,n,branch,pure,index,gap,max_defect\n";
    int certified = 0;
    for (auto& job : jobs) {
        const SweepRow row = job.get();
        csv += std::to_string(row.r) + ',' + std::to_string(row.n) + ',' + row.branch + ',' +
               (row.pure ? "true" : "false") + ',' + std::to_string(row.index) + ',' +
               fmt17(row.gap) + ',' + fmt17(row.max_defect) + '\n';
        if (row.certified)
            ++certified;
        else
            std::cerr << "sweep: r=" << row.r << " n=" << row.n << " (" << row.kind
                      << ") failed"
                      << (row.error.empty() ? "" : ": " + row.error) << "\n";
        std::cout << "r=" << row.r << " n=" << row.n << " " << row.kind << ": branch="
                  << row.branch << " pure=" << (row.pure ? "true" : "false")
                  << " index=" << row.index << " gap=" << fmt6(row.gap)
                  << " max_defect=" << fmt6(row.max_defect) << "\n";
    }
    write_text_atomic(cfg.out + "/summary.csv", csv);

    const int total = static_cast<int>(jobs.size());
    std::cout << "certified " << certified << "/" << total << " rows; summary written: "
              << cfg.out << "/summary.csv\n";
    return certified == total ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"State-preserving completely positive semigroups on matrix algebras"};
    app.require_subcommand(1);

    BuildConfig build_cfg;
    CLI::App* cmd_build = app.add_subcommand(
        "build", "Construct a certified model and write it as JSON");
    cmd_build->add_option("--eigenvalues", build_cfg.eigenvalues,
                          "Comma-separated state eigenvalue list, decreasing, summing to 1")
        ->required();
    CLI::Option* n_opt = cmd_build->add_option(
        "--index", build_cfg.n, "Requested number of independent kraus words (1..r^2-1)");
    cmd_build->add_option("--preset", build_cfg.preset,
                          "Model family: pure (certified builder), depolarizing, or "
                          "conjugation (intentionally non-pure)")
        ->check(CLI::IsMember({"pure", "depolarizing", "conjugation"}));
    cmd_build->add_option("--out", build_cfg.out, "Output model path (default model.json)");
    cmd_build->add_option("--seed", build_cfg.seed,
                          "Basis-search seed (fallback: ABSORBING_FLOWS_SEED, then 0)");

    VerifyConfig verify_cfg;
    CLI::App* cmd_verify = app.add_subcommand(
        "verify", "Check a generator or model file and print its certificate");
    cmd_verify->add_option("--model", verify_cfg.model, "Model or generator JSON path")
        ->required();
    cmd_verify->add_option("--tol", verify_cfg.tol, "Certification tolerance (default 1e-8)");

    EvolveConfig evolve_cfg;
    CLI::App* cmd_evolve = app.add_subcommand(
        "evolve", "Integrate a density toward equilibrium and emit the CSV trajectory");
    cmd_evolve->add_option("--model", evolve_cfg.model, "Model or generator JSON path")
        ->required();
    cmd_evolve->add_option("--rho0", evolve_cfg.rho0,
                           "Initial density: maximally-mixed, pure-k, or a matrix JSON path");
    cmd_evolve->add_option("--tmax", evolve_cfg.tmax,
                           "Final time (default 50/gap, or 50 when no gap)");
    cmd_evolve->add_option("--steps", evolve_cfg.steps, "Grid size (default 64)");
    CLI::Option* log_opt =
        cmd_evolve->add_flag("--log-grid", "Log-spaced time grid (the default)");
    CLI::Option* lin_opt =
        cmd_evolve->add_flag("--linear-grid", evolve_cfg.linear_grid, "Linear time grid");
    log_opt->excludes(lin_opt);
    cmd_evolve->add_option("--out", evolve_cfg.out,
                           "CSV output path (default: CSV on stdout, summary on stderr)");

    GapConfig gap_cfg;
    CLI::App* cmd_gap = app.add_subcommand(
        "gap", "Print the purity certificate and spectral gap of a model");
    cmd_gap->add_option("--model", gap_cfg.model, "Model or generator JSON path")->required();
    cmd_gap->add_option("--tol", gap_cfg.tol, "Certification tolerance (default 1e-8)");
    cmd_gap->add_option("--out", gap_cfg.out, "Optional certificate JSON output path");

    DemoConfig demo_cfg;
    CLI::App* cmd_demo = app.add_subcommand(
        "demo-perturbation",
        "Perturb a state off the centralizer and restore invariance with a drift correction");
    cmd_demo->add_option("--eigenvalues", demo_cfg.eigenvalues,
                         "Comma-separated state eigenvalue list (non-constant)")
        ->required();
    cmd_demo->add_option("--epsilon", demo_cfg.epsilon,
                         "Perturbation size (default 0.1; the new density must stay positive)");
    cmd_demo->add_option("--out", demo_cfg.out, "Optional JSON record output path");

    SweepConfig sweep_cfg;
    CLI::App* cmd_sweep = app.add_subcommand(
        "sweep", "Build and certify every (r, n) case up to --rmax, for two list families");
    cmd_sweep->add_option("--rmax", sweep_cfg.rmax, "Largest dimension, in [2, 5] (default 3)");
    cmd_sweep->add_option("--out", sweep_cfg.out, "Output directory (default sweep)");
    cmd_sweep->add_option("--seed", sweep_cfg.seed,
                          "Basis-search seed (fallback: ABSORBING_FLOWS_SEED, then 0)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        build_cfg.n_given = n_opt->count() > 0;
        if (app.got_subcommand(cmd_build)) return run_build(build_cfg);
        if (app.got_subcommand(cmd_verify)) return run_verify(verify_cfg);
        if (app.got_subcommand(cmd_evolve)) return run_evolve(evolve_cfg);
        if (app.got_subcommand(cmd_gap)) return run_gap(gap_cfg);
        if (app.got_subcommand(cmd_demo)) return run_demo(demo_cfg);
        return run_sweep(sweep_cfg);
    } catch (const SchemaViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConstructionFailed& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NoInvariantState& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const NotInvariant& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
