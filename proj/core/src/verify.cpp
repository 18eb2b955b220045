#include "spinlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>

#include "spinlab/coupling.hpp"
#include "spinlab/dynamics.hpp"
#include "spinlab/gibbs.hpp"
#include "spinlab/graphgen.hpp"
#include "spinlab/influence.hpp"
#include "spinlab/parallel.hpp"
#include "spinlab/potential.hpp"
#include "spinlab/spectral.hpp"
#include "spinlab/transition.hpp"
#include "spinlab/tree.hpp"
#include "spinlab/uniqueness.hpp"

namespace spinlab::verify {

namespace {

// Thread-safe residual/margin accumulator. Residual checks fold maxima
// against an upper threshold; margin checks fold minima against -tolerance.
struct MaxAcc {
    std::mutex mu;
    double worst = 0.0;
    long cases = 0;
    void fold(double value, long c = 1) {
        std::lock_guard<std::mutex> lock(mu);
        worst = std::max(worst, value);
        cases += c;
    }
};

struct MinAcc {
    std::mutex mu;
    double worst = std::numeric_limits<double>::infinity();
    long cases = 0;
    void fold(double value, long c = 1) {
        std::lock_guard<std::mutex> lock(mu);
        worst = std::min(worst, value);
        cases += c;
    }
};

TwoSpinSystem make_system(const Graph& g, const std::array<double, 3>& p) {
    return TwoSpinSystem(g, p[0], p[1], p[2]);
}

// residual-style result: pass iff the largest residual stays below threshold
void finish_max(CheckResult& res, MaxAcc& acc) {
    res.cases = acc.cases;
    res.worst = acc.cases ? acc.worst : 0.0;
    res.pass = res.worst <= res.threshold;
    if (!acc.cases) res.note = "no applicable instances at this nmax";
}

// margin-style result: pass iff the smallest margin stays above threshold
void finish_min(CheckResult& res, MinAcc& acc) {
    res.cases = acc.cases;
    res.worst = acc.cases ? acc.worst : 0.0;
    res.pass = res.worst >= res.threshold;
    if (!acc.cases) res.note = "no applicable instances at this nmax";
}

std::vector<Graph> connected_graphs_up_to(int nmax, bool quick) {
    std::vector<Graph> out;
    if (quick) {
        out.push_back(single_edge());
        out.push_back(path_graph(std::min(3, std::max(2, nmax))));
        if (nmax >= 4) out.push_back(cycle_graph(4));
        if (nmax >= 4) out.push_back(star_graph(3));
        return out;
    }
    for (int n = 2; n <= nmax; ++n)
        for (auto& g : all_graphs(n, true)) out.push_back(std::move(g));
    return out;
}

std::vector<Graph> all_graphs_up_to(int nmax, bool quick) {
    std::vector<Graph> out;
    if (quick) return connected_graphs_up_to(nmax, true);
    for (int n = 1; n <= nmax; ++n)
        for (auto& g : all_graphs(n, false)) out.push_back(std::move(g));
    return out;
}

std::vector<std::array<double, 3>> grid_for(const Options& opt) {
    auto grid = antiferro_grid();
    if (opt.quick) grid.resize(3);
    return grid;
}

CheckResult golden_values(const Options& opt) {
    CheckResult res;
    res.name = "golden-values";
    res.suite = "core";
    res.threshold = 1e-10;
    double worst = 0.0;
    const double lc3_expect = opt.inject_fault ? 4.1 : 4.0;
    worst = std::max(worst, std::abs(lambda_c(3) - lc3_expect));
    worst = std::max(worst, std::abs(lambda_c(4) - 1.6875));
    UniquenessQuery q{0.0, 1.0, 4.0, 0.1};
    const double x = fixed_point(q, 2);
    worst = std::max(worst, std::abs(x - 1.0));
    worst = std::max(worst, std::abs(decay_function(q, 2, x) - 1.0));
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    worst = std::max(worst, std::abs(spectral_report(glauber_matrix(table)).gap - 0.25));
    res.cases = 5;
    res.worst = worst;
    res.pass = worst <= res.threshold;
    if (opt.inject_fault) res.note = "fault injected into lambda_c(3)";
    return res;
}

CheckResult chain_equalities(const Options& opt) {
    CheckResult res;
    res.name = "chain-equalities";
    res.suite = "core";
    res.threshold = 1e-12;
    MaxAcc acc;
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 3), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        for (const auto& p : grid) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            acc.fold(max_entry_distance(glauber_matrix(table), block_matrix(table, 1)));
            const int n = graphs[gi].n;
            for (int k : {1, 2, 3}) {
                if (n * k > 9) continue;
                const int ell = std::max(1, k * n / 2);
                acc.fold(max_entry_distance(
                    projected_block_matrix(table, k, ell),
                    projected_block_matrix_by_pushforward(table, k, ell)));
            }
        }
    });
    finish_max(res, acc);
    return res;
}

CheckResult field_reversibility(const Options& opt) {
    CheckResult res;
    res.name = "field-reversibility";
    res.suite = "exact";
    res.threshold = 1e-10;
    MaxAcc acc;
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 5), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        for (const auto& p : grid) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            for (double theta : {0.2, 0.5, 0.8}) {
                const auto tm = field_matrix(table, theta);
                acc.fold(std::max(detailed_balance_residual(tm),
                                  stationarity_residual(tm)));
                // irreducible and aperiodic: every entry between feasible
                // states is strictly positive
                if (tm.P.minCoeff() <= 0.0) acc.fold(1.0);
            }
        }
    });
    finish_max(res, acc);
    return res;
}

CheckResult dirichlet_identity(const Options& opt) {
    CheckResult res;
    res.name = "dirichlet-identity";
    res.suite = "exact";
    res.threshold = 1e-9;
    MaxAcc acc;
    const auto graphs = all_graphs_up_to(std::min(opt.nmax, 4), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        std::mt19937_64 eng(opt.seed + gi);
        std::normal_distribution<double> gauss;
        for (const auto& p : grid) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            for (double theta : {0.3, 0.7}) {
                for (int trial = 0; trial < 20; ++trial) {
                    ObservableFunction f(table.size());
                    for (int i = 0; i < table.size(); ++i) f(i) = gauss(eng);
                    acc.fold(field_dirichlet_identity_check(table, theta, f).residual);
                }
            }
        }
    });
    finish_max(res, acc);
    return res;
}

CheckResult comparison_lemma(const Options& opt) {
    CheckResult res;
    res.name = "comparison-lemma";
    res.suite = "exact";
    res.threshold = -1e-9; // margin lower bound
    MinAcc acc;
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 5), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        for (const auto& p : grid) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            const double gap_gd = spectral_report(glauber_matrix(table)).gap;
            for (double theta : {0.2, 0.5, 0.8}) {
                const double gap_fd = spectral_report(field_matrix(table, theta)).gap;
                const double mg = min_gap(magnetize_table(table, theta));
                acc.fold(gap_gd - gap_fd * mg);
            }
        }
    });
    finish_min(res, acc);
    return res;
}

CheckResult projected_limit(const Options&) {
    CheckResult res;
    res.name = "projected-limit";
    res.suite = "exact";
    res.threshold = kProjectedLimitThreshold;
    const auto table = enumerate_distribution(TwoSpinSystem::hardcore(single_edge(), 1.0));
    const double theta = 0.5;
    const auto fd = field_matrix(table, theta);
    auto dist = [&](int k) {
        const int ell = static_cast<int>(std::ceil(theta * k * 2));
        return max_entry_distance(projected_block_matrix(table, k, ell), fd);
    };
    const double d2 = dist(2), d64 = dist(64);
    res.cases = 2;
    res.worst = d64;
    res.pass = d64 < d2 && d64 <= res.threshold;
    res.note = "dist(k=2)=" + std::to_string(d2) + " dist(k=64)=" + std::to_string(d64);
    return res;
}

CheckResult block_gap_bound(const Options& opt) {
    CheckResult res;
    res.name = "block-gap-bound";
    res.suite = "exact";
    res.threshold = -1e-9;
    MinAcc acc;
    MaxAcc psd; // block chains must be PSD: smallest eigenvalue >= -1e-9
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 5), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        const int n = graphs[gi].n;
        for (const auto& p : grid) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            const double eta = max_rho_over_pinnings(table);
            const int ceta = static_cast<int>(std::ceil(eta - 1e-12));
            for (int ell = std::max(1, 2 * ceta); ell <= n; ++ell) {
                const auto tm = block_matrix(table, ell);
                const auto rep = spectral_report(tm);
                psd.fold(-rep.eigenvalues.back());
                if (ell < 2 * ceta) continue;
                acc.fold(rep.gap - std::pow(ell / (2.0 * n), 2 * ceta + 1));
            }
        }
    });
    finish_min(res, acc);
    res.pass = res.pass && (psd.cases == 0 || psd.worst <= 1e-9);
    if (acc.cases)
        res.note = "min block eigenvalue " + std::to_string(psd.cases ? -psd.worst : 0.0);
    return res;
}

CheckResult mixing_lemma(const Options& opt) {
    CheckResult res;
    res.name = "mixing-lemma";
    res.suite = "exact";
    res.threshold = 0.0; // conservative check; failures refine the grid first
    MinAcc acc;
    MaxAcc refined;
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 5), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        for (const auto& p : grid) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            SIGridSpec si;
            si.seed = opt.seed;
            si.random_points = opt.quick ? 10 : opt.grid_random;
            si.track_signed = false;
            if (opt.quick) si.scalar_points = 10;
            double eta = complete_si_estimate(table, si).eta_hat;
            for (double theta : {0.2, 0.5, 0.8}) {
                const double gap_fd = spectral_report(field_matrix(table, theta)).gap;
                double margin = gap_fd - std::pow(theta / 2.0, 2 * eta + 7);
                if (margin < 0) {
                    // lower bound of the true complete-SI constant: refine
                    // before reporting
                    SIGridSpec fine = si;
                    fine.refine_rounds = opt.refine_rounds;
                    fine.random_points = 2 * si.random_points;
                    eta = std::max(eta, complete_si_estimate(table, fine).eta_hat);
                    margin = gap_fd - std::pow(theta / 2.0, 2 * eta + 7);
                    refined.fold(1.0, 1);
                }
                acc.fold(margin);
            }
        }
    });
    finish_min(res, acc);
    if (refined.cases > 0)
        res.note = std::to_string(refined.cases) + " instances needed grid refinement";
    return res;
}

CheckResult si_ceilings(const Options& opt) {
    CheckResult res;
    res.name = "si-ceilings";
    res.suite = "si";
    res.threshold = 1.0; // reported as eta_hat / ceiling
    MaxAcc acc;
    std::vector<Graph> graphs;
    for (auto& g : connected_graphs_up_to(std::min(opt.nmax, 5), opt.quick))
        if (g.max_degree() >= 3) graphs.push_back(std::move(g));
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        const Graph& g = graphs[gi];
        const int Delta = g.max_degree();
        SIGridSpec si;
        si.seed = opt.seed;
        si.random_points = opt.quick ? 10 : opt.grid_random;
        si.track_signed = false;
        // hardcore up to uniqueness: eta_hat <= 144 / delta
        for (double frac : {0.25, 0.5, 0.75}) {
            const double lam = frac * lambda_c(Delta);
            const double delta = solved_gap(0.0, 1.0, lam, Delta);
            if (delta <= 0.01) continue;
            const auto sys = TwoSpinSystem::hardcore(g, lam);
            const auto nu = flip_table(enumerate_distribution(sys), good_direction(sys));
            const auto est = complete_si_estimate(nu, si);
            acc.fold(est.eta_hat / (144.0 / delta));
        }
        // Ising inside the delta-interval: eta_hat <= 4 / delta
        const double delta = 0.5;
        const double lo = (Delta - 2 + delta) / (Delta - delta);
        const double hi = std::min((Delta - delta) / (Delta - 2 + delta), 0.999);
        for (double frac : {0.3, 0.7}) {
            const double beta = lo + frac * (hi - lo);
            for (double lam : {0.5, 1.0}) {
                const auto sys = TwoSpinSystem::ising(g, beta, lam);
                const auto nu = flip_table(enumerate_distribution(sys), good_direction(sys));
                const auto est = complete_si_estimate(nu, si);
                acc.fold(est.eta_hat / (4.0 / delta));
            }
        }
    });
    finish_max(res, acc);
    res.pass = res.worst <= res.threshold + 1e-9;
    return res;
}

CheckResult ktransform_si(const Options& opt) {
    CheckResult res;
    res.name = "ktransform-si";
    res.suite = "si";
    res.threshold = -1e-9;
    MinAcc acc;
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 3), opt.quick);
    const std::vector<std::array<double, 3>> params = {
        {0.0, 1.0, 1.0}, {0.6, 0.6, 1.0}, {0.2, 0.8, 1.2}};
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        for (const auto& p : params) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            SIGridSpec si;
            si.seed = opt.seed;
            si.random_points = opt.quick ? 10 : opt.grid_random;
            si.track_signed = false;
            const double eta = complete_si_estimate(table, si).eta_hat;
            for (int k : {2, 3}) {
                if (table.n * k > 9) continue;
                const auto lifted = k_transform_table(table, k);
                const double rho = max_rho_over_pinnings(lifted);
                acc.fold(eta + 2.0 - rho);
            }
        }
    });
    finish_min(res, acc);
    return res;
}

CheckResult flavor_agreement(const Options& opt) {
    CheckResult res;
    res.name = "flavor-agreement";
    res.suite = "si";
    res.threshold = 1e-9;
    MaxAcc acc;
    long mismatches = 0;
    std::mutex mm;
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 4), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        for (const auto& p : grid) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            SIGridSpec si;
            si.seed = opt.seed;
            si.scalar_points = 5;
            si.random_points = 5;
            const auto est = complete_si_estimate(table, si);
            acc.fold(est.flavor_gap);
            std::lock_guard<std::mutex> lock(mm);
            mismatches += est.flavor_mismatches;
        }
    });
    finish_max(res, acc);
    res.pass = true; // reported, not asserted
    res.note = std::to_string(mismatches) + " pinnings with |rho_abs - rho_signed| > 1e-9";
    return res;
}

CheckResult saw_preservation(const Options& opt) {
    CheckResult res;
    res.name = "saw-preservation";
    res.suite = "tree";
    res.threshold = 1e-9;
    MaxAcc acc;
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 6), opt.quick);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        for (double lam : {0.5, 1.0}) {
            const auto sys = TwoSpinSystem::hardcore(graphs[gi], lam);
            for (int root = 0; root < graphs[gi].n; ++root)
                acc.fold(saw_influence_residual(sys, root));
        }
    });
    finish_max(res, acc);
    return res;
}

CheckResult potential_certificates(const Options& opt) {
    CheckResult res;
    res.name = "potential-certificates";
    res.suite = "tree";
    res.threshold = -1e-9;
    MinAcc acc;
    std::mt19937_64 eng(opt.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int points = opt.quick ? 20 : 100;
    int made = 0;
    while (made < points) {
        UniquenessQuery q;
        q.gamma = 0.5 + 1.5 * u(eng);
        q.beta = u(eng) < 0.3 ? 0.0 : u(eng) * std::min(q.gamma, 0.999 / q.gamma);
        const int Delta = 3 + static_cast<int>(u(eng) * 3);
        q.lambda = (0.1 + 0.85 * u(eng)) *
                   (q.beta == 0 ? lambda_c(Delta) * std::pow(q.gamma, Delta) : 2.0);
        const double delta = solved_gap(q.beta, q.gamma, q.lambda, Delta);
        if (delta <= 0.02) continue;
        q.delta = delta * 0.999;
        ++made;
        for (int d = 1; d < Delta; ++d) {
            const auto cert = contraction_certificate(q, d, 2048, opt.quick ? 100 : 1000,
                                                      opt.seed + made);
            acc.fold(cert.bound + 1e-9 - cert.max_alpha);
            acc.fold(cert.sym_max + 1e-9 - cert.asym_max); // symmetrization
            if (!cert.precondition_ok) acc.fold(-1.0);
        }
        for (int d1 : {0, 1, Delta - 1})
            for (int d2 : {1, Delta - 1}) {
                const auto cert = boundedness_certificate(q, d1, d2);
                acc.fold(cert.bound + 1e-9 - cert.max_product);
            }
    }
    finish_min(res, acc);
    return res;
}

CheckResult potential_si_conclusion(const Options& opt) {
    CheckResult res;
    res.name = "potential-si-conclusion";
    res.suite = "tree";
    res.threshold = -1e-9;
    MinAcc acc;
    std::vector<Graph> graphs;
    for (auto& g : connected_graphs_up_to(std::min(opt.nmax, 5), opt.quick))
        if (g.max_degree() >= 3) graphs.push_back(std::move(g));
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        const Graph& g = graphs[gi];
        const int Delta = g.max_degree();
        for (double frac : {0.5, 0.8}) {
            const double lam = frac * lambda_c(Delta);
            const double delta = solved_gap(0.0, 1.0, lam, Delta);
            if (delta <= 0.02) continue;
            UniquenessQuery q{0.0, 1.0, lam, delta * 0.999};
            // alpha from the contraction quantity over the degrees present,
            // c from boundedness over degree pairs
            double max_contraction = 0.0, c_hat = 0.0;
            bool certified = true;
            std::vector<int> ds;
            for (int v = 0; v < g.n; ++v)
                if (g.degrees[v] >= 2) ds.push_back(g.degrees[v] - 1);
            std::sort(ds.begin(), ds.end());
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
            for (int d : ds) {
                const auto cert = contraction_certificate(q, d, 1024, 200, opt.seed);
                certified = certified && cert.pass;
                max_contraction = std::max(max_contraction, cert.max_alpha);
            }
            std::vector<int> all_ds;
            for (int v = 0; v < g.n; ++v) all_ds.push_back(g.degrees[v] - 1);
            std::sort(all_ds.begin(), all_ds.end());
            all_ds.erase(std::unique(all_ds.begin(), all_ds.end()), all_ds.end());
            for (int d1 : all_ds)
                for (int d2 : all_ds) {
                    const auto cert = boundedness_certificate(q, d1, d2);
                    certified = certified && cert.pass;
                    c_hat = std::max(c_hat, cert.c_hat);
                }
            if (!certified) continue;
            const double alpha_hat = 1.0 - max_contraction;
            const double bound = 2.0 * c_hat / alpha_hat;
            const auto table = enumerate_distribution(TwoSpinSystem::hardcore(g, lam));
            acc.fold(bound + 1e-9 - max_rho_over_pinnings(table));
        }
    });
    finish_min(res, acc);
    return res;
}

CheckResult coupling_certificates(const Options& opt) {
    CheckResult res;
    res.name = "coupling-certificates";
    res.suite = "couple";
    res.threshold = -1e-9;
    MinAcc acc;
    const auto graphs = connected_graphs_up_to(std::min(opt.nmax, 6), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        const Graph& g = graphs[gi];
        const int n = g.n;
        // hardcore at lambda = 1/(2 Delta), unit weights: r >= 1/(2n)
        {
            const auto sys = TwoSpinSystem::hardcore(g, 1.0 / (2.0 * g.max_degree()));
            const auto cert = path_coupling_certificate(sys, WeightedHamming::unit_weights(n),
                                                        /*with_feasible_variant=*/false);
            acc.fold(cert.r - 1.0 / (2.0 * n) + 1e-12);
            if (cert.pass && n <= 6) {
                const auto tm = glauber_matrix(enumerate_distribution(sys));
                const double lambda2 = spectral_report(tm).eigenvalues[1];
                acc.fold(1.0 - lambda2 - cert.r + 1e-9);
            }
        }
        // up-to-Delta-unique instances magnetized by theta = delta^2/64 along
        // the good direction, degree weights: r >= delta/(8n)
        if (g.max_degree() >= 3) {
            for (const auto& p : grid) {
                const double delta = solved_gap(p[0], p[1], p[2], g.max_degree());
                if (delta <= 0.02) continue;
                const double theta = delta * delta / 64.0;
                const auto base = make_system(g, p);
                const auto chi = good_direction(base);
                FieldVector phi(n);
                for (int v = 0; v < n; ++v)
                    phi[v] = chi[v] > 0 ? theta : 1.0 / theta;
                const auto sys = magnetize(base, phi);
                const auto cert = path_coupling_certificate(
                    sys, WeightedHamming::degree_weights(g, delta), false);
                acc.fold(cert.r - delta / (8.0 * n) + 1e-9);
                if (!cert.pass) continue;
                if (n <= 6) {
                    const auto table = enumerate_distribution(sys);
                    const auto tm = glauber_matrix(table);
                    acc.fold(1.0 - spectral_report(tm).eigenvalues[1] - cert.r + 1e-9);
                    if (n <= 4) {
                        // pinning-uniform: the bridge holds for every
                        // conditioned chain
                        const auto free_vs = table.free_vertices();
                        long total = 1;
                        for (size_t i = 0; i < free_vs.size(); ++i) total *= 3;
                        for (long code = 1; code < total; ++code) {
                            Pinning pin;
                            long c = code;
                            int pinned = 0;
                            for (size_t i = 0; i < free_vs.size(); ++i) {
                                const int trit = c % 3;
                                c /= 3;
                                if (trit) pin.pin(free_vs[i], trit == 1 ? -1 : +1, n), ++pinned;
                            }
                            if (pinned == n || !pinning_feasible(table, pin)) continue;
                            const auto cond = conditional_table(table, pin);
                            if (cond.size() < 2) continue;
                            const auto rep = spectral_report(glauber_matrix(cond));
                            acc.fold(1.0 - rep.eigenvalues[1] - cert.r + 1e-9);
                        }
                    }
                }
            }
        }
    });
    finish_min(res, acc);
    return res;
}

CheckResult sampler_stats(const Options& opt) {
    CheckResult res;
    res.name = "sampler-stats";
    res.suite = "dynamics";
    res.threshold = 0.01;
    const uint64_t steps = opt.quick ? 100000 : 1000000;
    const double tol = opt.quick ? 0.03 : 0.01;
    const auto sys = TwoSpinSystem::hardcore(single_edge(), 1.0);
    const auto exact = enumerate_distribution(sys);
    double worst = 0.0;
    {
        const auto traj = run_chain(sys, DynamicsSpec{DynamicsSpec::Kind::Glauber},
                                    parse_spin_string("--"), steps, opt.seed);
        worst = std::max(worst, tv_distance(empirical_distribution(traj, 2), exact));
    }
    {
        DynamicsSpec spec{DynamicsSpec::Kind::Field};
        spec.theta = 0.5;
        const auto traj = run_chain(sys, spec, parse_spin_string("--"), steps, opt.seed + 1);
        worst = std::max(worst, tv_distance(empirical_distribution(traj, 2), exact));
    }
    {
        HyperGeoParams p{3, 3, 4};
        Rng rng(opt.seed + 2);
        std::map<std::vector<int>, long> counts;
        const long draws = opt.quick ? 20000 : 100000;
        for (long t = 0; t < draws; ++t) counts[hypergeo_sample(p, rng)]++;
        double tv = 0.0;
        for (const auto& a : hypergeo_support(p)) {
            const double emp = counts.count(a) ? counts[a] / double(draws) : 0.0;
            tv += std::abs(emp - hypergeo_pmf(p, a));
        }
        worst = std::max(worst, tv / 2.0);
    }
    res.threshold = tol;
    res.cases = 3;
    res.worst = worst;
    res.pass = worst <= tol;
    return res;
}

CheckResult mixing_bound_sanity(const Options& opt) {
    CheckResult res;
    res.name = "mixing-bound-sanity";
    res.suite = "exact";
    res.threshold = 0.0; // bound minus exact time, must stay >= 0
    MinAcc acc;
    const auto graphs = all_graphs_up_to(std::min(opt.nmax, 4), opt.quick);
    const auto grid = grid_for(opt);
    parallel_for(graphs.size(), opt.jobs, [&](size_t gi) {
        for (const auto& p : grid) {
            const auto table = enumerate_distribution(make_system(graphs[gi], p));
            const auto tm = glauber_matrix(table);
            const auto rep = spectral_report(tm);
            if (rep.abs_gap <= 1e-12) continue;
            for (double eps : {0.1, 0.01}) {
                const auto bound = mixing_time_bound(rep.abs_gap, table, eps);
                const long cap = static_cast<long>(std::ceil(bound.bound)) + 1;
                const long t = exact_tv_mixing_time(tm, eps, cap);
                acc.fold(t < 0 ? -1.0 : bound.bound - static_cast<double>(t));
            }
        }
    });
    finish_min(res, acc);
    return res;
}

using CheckFn = CheckResult (*)(const Options&);

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> reg = {
        {"golden-values", golden_values},
        {"chain-equalities", chain_equalities},
        {"field-reversibility", field_reversibility},
        {"dirichlet-identity", dirichlet_identity},
        {"comparison-lemma", comparison_lemma},
        {"projected-limit", projected_limit},
        {"block-gap-bound", block_gap_bound},
        {"mixing-lemma", mixing_lemma},
        {"mixing-bound-sanity", mixing_bound_sanity},
        {"si-ceilings", si_ceilings},
        {"ktransform-si", ktransform_si},
        {"flavor-agreement", flavor_agreement},
        {"saw-preservation", saw_preservation},
        {"potential-certificates", potential_certificates},
        {"potential-si-conclusion", potential_si_conclusion},
        {"coupling-certificates", coupling_certificates},
        {"sampler-stats", sampler_stats},
    };
    return reg;
}

const std::map<std::string, std::vector<std::string>>& suites() {
    static const std::map<std::string, std::vector<std::string>> s = {
        {"core", {"golden-values", "chain-equalities"}},
        {"exact",
         {"field-reversibility", "dirichlet-identity", "comparison-lemma",
          "projected-limit", "block-gap-bound", "mixing-lemma",
          "mixing-bound-sanity"}},
        {"si", {"si-ceilings", "ktransform-si", "flavor-agreement"}},
        {"tree", {"saw-preservation", "potential-certificates", "potential-si-conclusion"}},
        {"couple", {"coupling-certificates"}},
        {"dynamics", {"sampler-stats"}},
    };
    return s;
}

} // namespace

std::vector<std::array<double, 3>> antiferro_grid() {
    return {{0.0, 1.0, 0.3}, {0.0, 1.0, 1.0}, {0.0, 1.0, 2.5},
            {0.3, 0.3, 0.6}, {0.3, 0.3, 1.7}, {0.6, 0.6, 1.0},
            {0.2, 0.8, 0.5}, {0.2, 0.8, 1.2}, {0.5, 1.5, 0.8},
            {0.1, 2.0, 1.5}, {0.4, 1.2, 0.9}, {0.7, 0.9, 1.1}};
}

std::vector<std::string> suite_names() {
    std::vector<std::string> names;
    for (const auto& [k, v] : suites()) names.push_back(k);
    names.push_back("all");
    return names;
}

std::vector<std::string> checks_in_suite(const std::string& suite) {
    if (suite == "all") {
        std::vector<std::string> names;
        for (const auto& [name, fn] : registry()) names.push_back(name);
        return names;
    }
    auto it = suites().find(suite);
    if (it == suites().end()) throw std::invalid_argument("unknown suite: " + suite);
    return it->second;
}

CheckResult run_check(const std::string& name, const Options& opt) {
    for (const auto& [n, fn] : registry())
        if (n == name) return fn(opt);
    throw std::invalid_argument("unknown check: " + name);
}

std::vector<CheckResult> run_suite(const std::string& suite, const Options& opt) {
    std::vector<CheckResult> out;
    for (const auto& name : checks_in_suite(suite)) out.push_back(run_check(name, opt));
    return out;
}

} // namespace spinlab::verify
