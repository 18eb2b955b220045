#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "spinlab/gibbs.hpp"

namespace spinlab {

enum class InfluenceFlavor { Absolute, Signed };

/// Pairwise influence matrix under a pinning: entry (u,v) is the TV distance
/// (absolute) or the +1-marginal difference (signed) between v's conditional
/// marginals as u's spin varies; zero diagonal, zero rows for vertices with
/// trivial conditional support.
struct InfluenceMatrix {
    std::vector<int> vertices; // index set V \ Lambda
    Eigen::MatrixXd psi;
    InfluenceFlavor flavor = InfluenceFlavor::Absolute;
};

InfluenceMatrix influence_matrix(const GibbsTable& table, const Pinning& pin,
                                 InfluenceFlavor flavor = InfluenceFlavor::Absolute);

/// Largest eigenvalue modulus (Perron value for nonnegative matrices).
double spectral_radius(const Eigen::MatrixXd& m);
inline double spectral_radius(const InfluenceMatrix& m) { return spectral_radius(m.psi); }

/// Maximum rho over all feasible pinnings of the table's free vertices;
/// this is the exact spectral-independence constant of the distribution.
double max_rho_over_pinnings(const GibbsTable& table,
                             InfluenceFlavor flavor = InfluenceFlavor::Absolute);

struct SIGridSpec {
    int scalar_points = 20;    // theta = 1/points, 2/points, ..., 1
    int random_points = 50;    // seeded random vectors in (0,1]^V
    uint64_t seed = 12345;
    int refine_rounds = 0;     // extra rounds of jittered points near argmax
    bool track_signed = true;  // also compute rho of the signed matrix
    bool collect_rows = false; // keep one (field, pinning, rho) row per case
};

struct SIRow {
    int field_index;
    uint32_t pin_domain;
    uint32_t pin_values;
    double rho;
};

struct SIEstimate {
    double eta_hat = 0.0;          // max over grid fields and pinnings
    int argmax_field = -1;
    FieldVector argmax_field_value;
    uint32_t argmax_pin_domain = 0;
    uint32_t argmax_pin_values = 0;
    std::vector<double> field_rho; // per grid point: max over pinnings
    std::vector<FieldVector> fields;
    /// max |rho(absolute) - rho(signed)| seen across the grid; instances
    /// where the two flavors differ beyond 1e-9 are counted, not asserted.
    double flavor_gap = 0.0;
    long flavor_mismatches = 0;
    std::vector<SIRow> rows; // populated when collect_rows is set
};

/// Certified lower bound on the complete spectral-independence constant:
/// sweeps phi over the grid (scalars plus random vectors in (0,1]^V) and all
/// feasible pinnings of mu^(phi). Capped at 6 free vertices.
SIEstimate complete_si_estimate(const GibbsTable& table, const SIGridSpec& grid = {});

/// chi_v = +1 iff lambda_v <= (gamma/beta)^{Delta_v/2}, with gamma/0 = +inf.
DirectionVector good_direction(const TwoSpinSystem& sys);

} // namespace spinlab
