// spinlab: exact desk-scale analysis of Glauber/block/field dynamics for
// anti-ferromagnetic two-spin systems. One subcommand per capability:
// sample, gap, unique, si, saw, couple, limit, verify, sweep.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "spinlab/coupling.hpp"
#include "spinlab/dynamics.hpp"
#include "spinlab/gibbs.hpp"
#include "spinlab/graphgen.hpp"
#include "spinlab/influence.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/potential.hpp"
#include "spinlab/report.hpp"
#include "spinlab/spectral.hpp"
#include "spinlab/transition.hpp"
#include "spinlab/tree.hpp"
#include "spinlab/uniqueness.hpp"
#include "spinlab/verify.hpp"

using namespace spinlab;

namespace {

struct ModelOptions {
    std::string graph_path;
    std::string model = "general";
    double beta = 0.0;
    double gamma = 1.0;
    double lambda = 1.0;
    std::string fields_path;

    void attach(CLI::App* cmd, bool graph_required = true) {
        auto* g = cmd->add_option("--graph", graph_path, "edge-list file (n m header)");
        if (graph_required) g->required()->check(CLI::ExistingFile);
        cmd->add_option("--model", model, "hardcore | ising | general")
            ->check(CLI::IsMember({"hardcore", "ising", "general"}));
        cmd->add_option("--beta", beta, "edge activity for +1/+1 edges");
        cmd->add_option("--gamma", gamma, "edge activity for -1/-1 edges");
        cmd->add_option("--lambda", lambda, "vertex activity")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--fields", fields_path,
                        "file with n per-vertex activities, one per line")
            ->check(CLI::ExistingFile);
    }

    TwoSpinSystem build() const {
        Graph g = load_edge_list(graph_path);
        double b = beta, c = gamma;
        if (model == "hardcore") {
            b = 0.0;
            c = 1.0;
        } else if (model == "ising") {
            c = b;
        }
        if (!fields_path.empty()) {
            std::ifstream f(fields_path);
            FieldVector lv;
            double x;
            while (f >> x) lv.push_back(x);
            if (static_cast<int>(lv.size()) != g.n)
                throw CLI::ValidationError("--fields", "expected exactly n values");
            return TwoSpinSystem(std::move(g), b, c, std::move(lv));
        }
        return TwoSpinSystem(std::move(g), b, c, lambda);
    }
};

struct OutputOptions {
    std::string out_path;
    void attach(CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the report here instead of stdout");
    }
    void emit(const std::string& payload) const {
        if (out_path.empty())
            std::cout << payload;
        else
            report::atomic_write(out_path, payload);
    }
};

DynamicsSpec parse_dynamics(const std::string& dyn, int ell, double theta, int k,
                            int inner) {
    DynamicsSpec spec;
    if (dyn == "glauber") {
        spec.kind = DynamicsSpec::Kind::Glauber;
    } else if (dyn == "block") {
        spec.kind = DynamicsSpec::Kind::Block;
        spec.ell = ell;
    } else if (dyn == "field") {
        spec.kind = DynamicsSpec::Kind::Field;
        if (!(theta > 0 && theta < 1))
            throw CLI::ValidationError("--theta", "theta must lie in (0,1)");
        spec.theta = theta;
        spec.inner_glauber_sweeps = inner;
    } else if (dyn == "projected") {
        spec.kind = DynamicsSpec::Kind::ProjectedBlock;
        spec.k = k;
        spec.ell = ell;
    } else {
        throw CLI::ValidationError("--dyn", "expected glauber|block|field|projected");
    }
    return spec;
}

uint64_t resolve_seed(const std::optional<uint64_t>& seed, bool required) {
    if (seed) return *seed;
    if (const char* env = std::getenv("SPINLAB_SEED")) return std::stoull(env);
    if (required)
        throw CLI::ValidationError(
            "--seed", "stochastic subcommands need --seed or SPINLAB_SEED");
    return 12345;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinlab: exact two-spin dynamics and uniqueness analysis"};
    app.require_subcommand(1);

    // ---- sample
    auto* sample = app.add_subcommand("sample", "run a chain, emit trajectory stats");
    ModelOptions sample_model;
    OutputOptions sample_out;
    sample_model.attach(sample);
    sample_out.attach(sample);
    std::string sample_dyn = "glauber", sample_start, traj_path;
    int sample_ell = 1, sample_k = 1, sample_inner = 0;
    double sample_theta = 0.5;
    uint64_t sample_steps = 1000, sample_thin = 1;
    std::optional<uint64_t> sample_seed;
    sample->add_option("--dyn", sample_dyn, "glauber|block|field|projected");
    sample->add_option("--ell", sample_ell, "block size");
    sample->add_option("--theta", sample_theta, "field parameter in (0,1)");
    sample->add_option("--k", sample_k, "projected-block lift parameter");
    sample->add_option("--inner", sample_inner,
                       "field: approximate the block resample with this many "
                       "inner Glauber sweeps (0 = exact)");
    sample->add_option("--steps", sample_steps, "number of transition steps");
    sample->add_option("--thin", sample_thin, "record every thin-th state");
    sample->add_option("--seed", sample_seed, "RNG seed (mandatory; env SPINLAB_SEED)");
    sample->add_option("--start", sample_start, "start configuration, e.g. '+--+'");
    sample->add_option("--traj", traj_path, "also write the trajectory CSV here");

    // ---- gap
    auto* gap = app.add_subcommand("gap", "exact transition matrix and spectral report");
    ModelOptions gap_model;
    OutputOptions gap_out;
    gap_model.attach(gap);
    gap_out.attach(gap);
    std::string gap_dyn = "glauber";
    int gap_ell = 1, gap_k = 1;
    double gap_theta = 0.5;
    gap->add_option("--dyn", gap_dyn, "glauber|block|field|projected");
    gap->add_option("--ell", gap_ell, "block size");
    gap->add_option("--theta", gap_theta, "field parameter in (0,1)");
    gap->add_option("--k", gap_k, "projected-block lift parameter");

    // ---- unique
    auto* unique = app.add_subcommand("unique", "tree-uniqueness report");
    OutputOptions unique_out;
    unique_out.attach(unique);
    double u_beta = 0.0, u_gamma = 1.0, u_lambda = 1.0, u_delta = 0.1;
    int u_d = 0;
    std::string u_Delta;
    unique->add_option("--beta", u_beta)->required();
    unique->add_option("--gamma", u_gamma)->required();
    unique->add_option("--lambda", u_lambda)->required()->check(CLI::PositiveNumber);
    unique->add_option("--delta", u_delta, "gap in (0,1)")->required();
    unique->add_option("--d", u_d, "check a single degree d >= 1");
    unique->add_option("--Delta,--delta-max", u_Delta,
                       "check all 1 <= d < Delta; 'inf' allowed");
    bool u_certify = false;
    unique->add_flag("--certify", u_certify,
                     "attach sqrt(|h|)-potential contraction/boundedness "
                     "certificates per degree");

    // ---- si
    auto* si = app.add_subcommand("si", "spectral-independence grid estimate");
    ModelOptions si_model;
    OutputOptions si_out;
    si_model.attach(si);
    si_out.attach(si);
    int si_scalars = 20, si_random = 50, si_refine = 0;
    std::optional<uint64_t> si_seed;
    std::string si_csv_path;
    bool si_flip = false;
    si->add_option("--scalars", si_scalars, "scalar field grid points");
    si->add_option("--random", si_random, "random field vectors");
    si->add_option("--refine", si_refine, "refinement rounds around the argmax");
    si->add_option("--seed", si_seed, "grid RNG seed");
    si->add_flag("--flip", si_flip, "estimate on flip(mu, good direction)");
    si->add_option("--csv", si_csv_path, "write per-field-point rho values here");

    // ---- saw
    auto* saw = app.add_subcommand("saw", "self-avoiding-walk tree of a graph");
    ModelOptions saw_model;
    OutputOptions saw_out;
    saw_model.attach(saw);
    saw_out.attach(saw);
    int saw_root = 0;
    std::string saw_dot;
    saw->add_option("--root", saw_root, "root vertex");
    saw->add_option("--dot", saw_dot, "write a DOT rendering here");

    // ---- couple
    auto* couple = app.add_subcommand("couple", "path-coupling contraction certificate");
    ModelOptions couple_model;
    OutputOptions couple_out;
    couple_model.attach(couple);
    couple_out.attach(couple);
    std::string couple_weights = "degree";
    double couple_delta = 0.1, couple_theta = 0.0;
    couple->add_option("--weights", couple_weights, "degree | unit")
        ->check(CLI::IsMember({"degree", "unit"}));
    couple->add_option("--delta", couple_delta, "gap used by the paper weights");
    couple->add_option("--theta", couple_theta,
                       "magnetize along the good direction by theta first "
                       "(0 = off)");

    // ---- limit
    auto* limit = app.add_subcommand(
        "limit", "projected-block vs field-dynamics entrywise convergence");
    ModelOptions limit_model;
    OutputOptions limit_out;
    limit_model.attach(limit);
    limit_out.attach(limit);
    double limit_theta = 0.5;
    std::vector<int> limit_ks{2, 4, 8, 16, 32, 64};
    limit->add_option("--theta", limit_theta, "field parameter in (0,1)");
    limit->add_option("--ks", limit_ks, "lift parameters to compare");

    // ---- verify
    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    OutputOptions verify_out;
    verify_out.attach(verify_cmd);
    std::string verify_suite = "all";
    verify::Options vopt;
    std::optional<uint64_t> verify_seed;
    verify_cmd->add_option("--suite", verify_suite, "core|exact|si|tree|couple|dynamics|all");
    verify_cmd->add_option("--nmax", vopt.nmax, "graph-size ceiling");
    verify_cmd->add_option("--jobs", vopt.jobs, "worker threads");
    verify_cmd->add_option("--seed", verify_seed, "sweep RNG seed");
    verify_cmd->add_option("--grid-random", vopt.grid_random, "random SI field points");
    verify_cmd->add_option("--refine-rounds", vopt.refine_rounds,
                           "SI grid refinement rounds before reporting failure");
    verify_cmd->add_flag("--quick", vopt.quick, "trimmed sweeps for smoke runs");
    verify_cmd->add_flag("--inject-fault", vopt.inject_fault,
                         "negative control: corrupt one golden value");

    // ---- sweep
    auto* sweep = app.add_subcommand("sweep", "parameter sweep, CSV output");
    ModelOptions sweep_model;
    OutputOptions sweep_out;
    sweep_model.attach(sweep);
    sweep_out.attach(sweep);
    std::string sweep_param = "lambda", sweep_dyn = "glauber";
    double sweep_from = 0.1, sweep_to = 2.0, sweep_theta = 0.5;
    int sweep_points = 16, sweep_jobs = 1, sweep_ell = 1, sweep_k = 1;
    sweep->add_option("--param", sweep_param, "lambda | theta")
        ->check(CLI::IsMember({"lambda", "theta"}));
    sweep->add_option("--from", sweep_from)->required();
    sweep->add_option("--to", sweep_to)->required();
    sweep->add_option("--points", sweep_points)->check(CLI::PositiveNumber);
    sweep->add_option("--dyn", sweep_dyn, "glauber|block|field|projected");
    sweep->add_option("--ell", sweep_ell);
    sweep->add_option("--k", sweep_k);
    sweep->add_option("--theta", sweep_theta, "field parameter when fixed");
    sweep->add_option("--jobs", sweep_jobs, "worker threads");

    try {
        app.parse(argc, argv);

        if (*sample) {
            const auto sys = sample_model.build();
            const auto spec =
                parse_dynamics(sample_dyn, sample_ell, sample_theta, sample_k, sample_inner);
            const uint64_t seed = resolve_seed(sample_seed, /*required=*/true);
            Configuration start = sample_start.empty()
                                      ? Configuration(sys.graph.n, -1)
                                      : parse_spin_string(sample_start);
            const auto traj = run_chain(sys, spec, start, sample_steps, seed, sample_thin);
            if (!traj_path.empty())
                report::atomic_write(traj_path, report::trajectory_csv(traj));
            sample_out.emit(report::sample_summary_json(sys, spec, sample_steps, seed, traj));
        } else if (*gap) {
            const auto sys = gap_model.build();
            const auto spec = parse_dynamics(gap_dyn, gap_ell, gap_theta, gap_k, 0);
            const auto table = enumerate_distribution(sys);
            const auto tm = transition_matrix(spec, table);
            const auto rep = spectral_report(tm);
            std::vector<report::NamedCheck> checks;
            checks.push_back({"detailed-balance", rep.db_residual, 1e-10,
                              rep.db_residual <= 1e-10});
            const double st = stationarity_residual(tm);
            checks.push_back({"stationarity", st, 1e-10, st <= 1e-10});
            gap_out.emit(report::gap_json(sys, spec.label(), rep, checks));
        } else if (*unique) {
            UniquenessQuery q{u_beta, u_gamma, u_lambda, u_delta};
            UniquenessReport rep;
            if (u_d > 0) {
                rep = uniqueness_check(q, u_d);
            } else if (u_Delta == "inf") {
                rep = uniqueness_check_up_to(q, std::nullopt);
            } else if (!u_Delta.empty()) {
                rep = uniqueness_check_up_to(q, std::stoi(u_Delta));
            } else {
                throw CLI::ValidationError("--d/--Delta", "pick a degree or a ceiling");
            }
            std::vector<report::DegreeCertificates> certs;
            if (u_certify) {
                for (const auto& rec : rep.degrees) {
                    if (!rec.pass) continue;
                    certs.push_back({rec.d, contraction_certificate(q, rec.d),
                                     boundedness_certificate(q, rec.d, rec.d)});
                }
            }
            unique_out.emit(report::unique_json(q, rep, certs));
        } else if (*si) {
            auto sys = si_model.build();
            auto table = enumerate_distribution(sys);
            if (si_flip) table = flip_table(table, good_direction(sys));
            SIGridSpec grid;
            grid.scalar_points = si_scalars;
            grid.random_points = si_random;
            grid.refine_rounds = si_refine;
            grid.seed = resolve_seed(si_seed, false);
            grid.collect_rows = !si_csv_path.empty();
            const auto est = complete_si_estimate(table, grid);
            if (!si_csv_path.empty())
                report::atomic_write(si_csv_path, report::si_csv(est));
            si_out.emit(report::si_json(sys, est));
        } else if (*saw) {
            const auto sys = saw_model.build();
            const auto tree = saw_tree(sys.graph, saw_root);
            const auto inst = saw_instance(tree, sys);
            if (!saw_dot.empty()) report::atomic_write(saw_dot, saw_tree_dot(tree));
            saw_out.emit(report::saw_json(tree, inst));
        } else if (*couple) {
            auto sys = couple_model.build();
            if (couple_theta > 0) {
                const auto chi = good_direction(sys);
                FieldVector phi(sys.graph.n);
                for (int v = 0; v < sys.graph.n; ++v)
                    phi[v] = chi[v] > 0 ? couple_theta : 1.0 / couple_theta;
                sys = magnetize(sys, phi);
            }
            const auto metric = couple_weights == "degree"
                                    ? WeightedHamming::degree_weights(sys.graph, couple_delta)
                                    : WeightedHamming::unit_weights(sys.graph.n);
            const auto cert = path_coupling_certificate(sys, metric);
            std::vector<report::NamedCheck> checks;
            if (cert.pass && sys.graph.n <= kMatrixCapN) {
                const auto tm = glauber_matrix(enumerate_distribution(sys));
                const double lambda2 = spectral_report(tm).eigenvalues.size() > 1
                                           ? spectral_report(tm).eigenvalues[1]
                                           : 0.0;
                checks.push_back({"gap-bridge", 1.0 - lambda2, cert.r,
                                  coupling_gap_bridge(cert, tm)});
            }
            couple_out.emit(report::couple_json(sys, cert, checks));
        } else if (*limit) {
            const auto sys = limit_model.build();
            if (!(limit_theta > 0 && limit_theta < 1))
                throw CLI::ValidationError("--theta", "theta must lie in (0,1)");
            const auto table = enumerate_distribution(sys);
            const auto fd = field_matrix(table, limit_theta);
            std::vector<double> dists;
            for (int k : limit_ks) {
                const int ell = static_cast<int>(
                    std::ceil(limit_theta * k * table.free_count()));
                dists.push_back(
                    max_entry_distance(projected_block_matrix(table, k, ell), fd));
            }
            limit_out.emit(report::limit_json(sys, limit_theta, limit_ks, dists,
                                              verify::kProjectedLimitThreshold));
        } else if (*verify_cmd) {
            vopt.seed = resolve_seed(verify_seed, false);
            const auto results = verify::run_suite(verify_suite, vopt);
            bool all_pass = true;
            for (const auto& r : results) {
                all_pass = all_pass && r.pass;
                std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " (" << r.cases
                          << " cases, worst " << r.worst << ", threshold " << r.threshold
                          << ")" << (r.note.empty() ? "" : " - " + r.note) << "\n";
            }
            verify_out.emit(report::verify_json(results));
            return all_pass ? 0 : 2;
        } else if (*sweep) {
            const auto base = sweep_model.build();
            std::vector<std::vector<double>> rows(sweep_points);
            std::vector<std::string> errors(sweep_points);
            parallel_for(sweep_points, sweep_jobs, [&](size_t i) {
                const double x = sweep_points == 1
                                     ? sweep_from
                                     : sweep_from + (sweep_to - sweep_from) * i /
                                           (sweep_points - 1);
                try {
                    TwoSpinSystem sys = base;
                    double theta = sweep_theta;
                    if (sweep_param == "lambda")
                        sys = TwoSpinSystem(base.graph, base.beta, base.gamma, x);
                    else
                        theta = x;
                    const auto spec =
                        parse_dynamics(sweep_dyn, sweep_ell, theta, sweep_k, 0);
                    const auto table = enumerate_distribution(sys);
                    const auto rep = spectral_report(transition_matrix(spec, table));
                    rows[i] = {x, rep.gap, rep.abs_gap, rep.db_residual};
                } catch (const std::exception& e) {
                    errors[i] = e.what();
                }
            });
            for (const auto& e : errors)
                if (!e.empty()) throw std::runtime_error("sweep point failed: " + e);
            sweep_out.emit(report::sweep_csv(
                {sweep_param, "gap", "abs_gap", "db_residual"}, rows));
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "spinlab: " << e.what() << "\n";
        return 1;
    }
}
