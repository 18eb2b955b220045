#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinlab/gibbs.hpp"
#include "spinlab/rng.hpp"
#include "spinlab/system.hpp"

namespace spinlab {

/// Which chain to run, plus its parameters.
struct DynamicsSpec {
    enum class Kind { Glauber, Block, Field, ProjectedBlock };
    Kind kind = Kind::Glauber;
    int ell = 1;        // Block / ProjectedBlock
    double theta = 0.5; // Field
    int k = 1;          // ProjectedBlock
    // Field dynamics only: resample the block with an inner Glauber chain of
    // this many sweeps instead of exact conditional enumeration. The bias at
    // finite inner length is not quantified; exact mode is the default.
    int inner_glauber_sweeps = 0;

    std::string label() const;
};

struct ChainState {
    Configuration config;
    uint64_t step = 0;
};

struct StepRecord {
    uint64_t step;
    int resampled; // |S|
    bool changed;
};

struct Trajectory {
    std::vector<uint64_t> steps;
    std::vector<Configuration> configs;
    std::vector<StepRecord> records;
};

/// One chain bound to a (possibly pinned) target system. Conditional
/// resampling enumerates the 2^{|S|} sub-block assignments exactly.
///
/// RNG stream order per step, fixed for reproducibility:
///   1. vertex/set pick (Glauber: one index; Block: Fisher-Yates prefix),
///   2. per-vertex coins in ascending vertex order (Field/ProjectedBlock),
///   3. one inverse-CDF draw over sub-block assignments in canonical order.
class ChainSampler {
  public:
    ChainSampler(TwoSpinSystem sys, DynamicsSpec spec, Pinning pin = {});

    const TwoSpinSystem& system() const { return sys_; }
    const DynamicsSpec& spec() const { return spec_; }
    const std::vector<int>& free_vertices() const { return free_; }

    bool feasible(const Configuration& sigma) const;
    /// Advances one step; returns the number of resampled vertices.
    int step(ChainState& state, Rng& rng) const;

  private:
    void glauber_step(Configuration& sigma, Rng& rng, int* resampled) const;
    void block_step(Configuration& sigma, Rng& rng, int* resampled) const;
    void field_step(Configuration& sigma, Rng& rng, int* resampled) const;
    void projected_block_step(Configuration& sigma, Rng& rng, int* resampled) const;

    void resample_block(Configuration& sigma, const std::vector<int>& block,
                        const std::vector<double>& log_scale, Rng& rng) const;

    TwoSpinSystem sys_;
    DynamicsSpec spec_;
    Pinning pin_;
    std::vector<int> free_;
    std::vector<double> theta_log_scale_; // Field: log theta on free vertices
};

/// Single steps matching the per-operation contracts; thin wrappers over
/// ChainSampler with the corresponding spec.
Configuration glauber_step(const TwoSpinSystem& sys, const Configuration& sigma,
                           Rng& rng, const Pinning& pin = {});
Configuration block_step(const TwoSpinSystem& sys, const Configuration& sigma,
                         int ell, Rng& rng, const Pinning& pin = {});
Configuration field_step(const TwoSpinSystem& sys, const Configuration& sigma,
                         double theta, Rng& rng, const Pinning& pin = {});
Configuration projected_block_step(const TwoSpinSystem& sys, const Configuration& sigma,
                                   int k, int ell, Rng& rng, const Pinning& pin = {});

Trajectory run_chain(const TwoSpinSystem& sys, const DynamicsSpec& spec,
                     const Configuration& start, uint64_t steps, uint64_t seed,
                     uint64_t thin = 1, const Pinning& pin = {});

/// Empirical state frequencies of a trajectory as a distribution table.
GibbsTable empirical_distribution(const Trajectory& traj, int n);

// ---- multivariate hypergeometric: l draws without replacement from n
// ---- buckets of k balls each.
struct HyperGeoParams {
    int n = 1;
    int k = 1;
    int ell = 0;
};

double log_binomial(int n, int k);
/// HyperGeo(a) = prod_v C(k, a_v) / C(kn, l).
double hypergeo_pmf(const HyperGeoParams& p, const std::vector<int>& a);
std::vector<int> hypergeo_sample(const HyperGeoParams& p, Rng& rng);
/// All support vectors (compositions of l with entries in [0, k]).
std::vector<std::vector<int>> hypergeo_support(const HyperGeoParams& p);

// ---- k-transformation: lift of a distribution on {-1,+1}^V to V x [k] with
// ---- a single uniformly placed +1 per +1 vertex.
/// Index of lifted vertex (v, i) in the lifted ground set, i in [0, k).
inline int lifted_vertex(int v, int i, int k) { return v * k + i; }

GibbsTable k_transform_table(const GibbsTable& table, int k);
Configuration k_transform_sample(const GibbsTable& table, int k, Rng& rng);
/// sigma*_v = +1 iff some copy (v, i) is +1.
Configuration project_config(const Configuration& lifted, int n, int k);
uint32_t project_rank(uint32_t lifted_rank, int n, int k);

} // namespace spinlab
