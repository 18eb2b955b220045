#pragma once

#include <string>
#include <vector>

#include "spinlab/coupling.hpp"
#include "spinlab/dynamics.hpp"
#include "spinlab/influence.hpp"
#include "spinlab/potential.hpp"
#include "spinlab/spectral.hpp"
#include "spinlab/tree.hpp"
#include "spinlab/uniqueness.hpp"
#include "spinlab/verify.hpp"

namespace spinlab::report {

/// One named numeric comparison attached to a report.
struct NamedCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = false;
};

// All builders return serialized JSON (sorted keys, no timestamps), so the
// same config and seed produce byte-identical output.
std::string gap_json(const TwoSpinSystem& sys, const std::string& dynamics,
                     const SpectralReport& rep, const std::vector<NamedCheck>& checks,
                     int spectrum_cap = 16);

/// Per-degree potential certificates attached to a uniqueness report.
struct DegreeCertificates {
    int d;
    ContractionCertificate contraction;
    BoundednessCertificate boundedness;
};

std::string unique_json(const UniquenessQuery& q, const UniquenessReport& rep,
                        const std::vector<DegreeCertificates>& certs = {});
std::string si_json(const TwoSpinSystem& sys, const SIEstimate& est);
std::string si_csv(const SIEstimate& est);
std::string couple_json(const TwoSpinSystem& sys, const CouplingCertificate& cert,
                        const std::vector<NamedCheck>& checks);
std::string limit_json(const TwoSpinSystem& sys, double theta,
                       const std::vector<int>& ks, const std::vector<double>& distances,
                       double threshold);
std::string sample_summary_json(const TwoSpinSystem& sys, const DynamicsSpec& spec,
                                uint64_t steps, uint64_t seed, const Trajectory& traj);
std::string trajectory_csv(const Trajectory& traj);
std::string saw_json(const SawTree& tree, const TreeInstance& inst);
std::string verify_json(const std::vector<verify::CheckResult>& results);
std::string sweep_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

/// Writes via a temp file plus rename so readers never see partial output.
void atomic_write(const std::string& path, const std::string& content);

} // namespace spinlab::report
