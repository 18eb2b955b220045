#include "spinlab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace spinlab::report {

using nlohmann::json;

namespace {

json graph_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges) edges.push_back({u, v});
    return {{"n", g.n}, {"edges", edges}};
}

json system_json(const TwoSpinSystem& sys) {
    json j{{"beta", sys.beta}, {"gamma", sys.gamma},
           {"antiferromagnetic", sys.antiferromagnetic()},
           {"graph", graph_json(sys.graph)}};
    if (sys.uniform_field())
        j["lambda"] = sys.fields.empty() ? 1.0 : sys.fields[0];
    else
        j["lambda_v"] = sys.fields;
    return j;
}

json checks_json(const std::vector<NamedCheck>& checks) {
    json arr = json::array();
    for (const auto& c : checks)
        arr.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}});
    return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string gap_json(const TwoSpinSystem& sys, const std::string& dynamics,
                     const SpectralReport& rep, const std::vector<NamedCheck>& checks,
                     int spectrum_cap) {
    json spectrum = json::array();
    for (size_t i = 0; i < rep.eigenvalues.size() &&
                       i < static_cast<size_t>(spectrum_cap); ++i)
        spectrum.push_back(rep.eigenvalues[i]);
    json j{{"graph", graph_json(sys.graph)},
           {"params", system_json(sys)},
           {"dynamics", dynamics},
           {"gap", rep.gap},
           {"abs_gap", rep.abs_gap},
           {"db_residual", rep.db_residual},
           {"spectrum", spectrum},
           {"checks", checks_json(checks)}};
    return dump(j);
}

std::string unique_json(const UniquenessQuery& q, const UniquenessReport& rep,
                        const std::vector<DegreeCertificates>& certs) {
    json degrees = json::array();
    for (const auto& rec : rep.degrees)
        degrees.push_back({{"d", rec.d},
                           {"x_hat", rec.x_hat},
                           {"f", rec.f_value},
                           {"pass", rec.pass}});
    json roots = json::array();
    for (const auto& r : rep.roots)
        roots.push_back({{"x1", r.x1}, {"x2", r.x2}, {"lambda1", r.lambda1},
                         {"lambda2", r.lambda2}, {"zeta", r.zeta}});
    json j{{"query",
            {{"beta", q.beta}, {"gamma", q.gamma}, {"lambda", q.lambda}, {"delta", q.delta}}},
           {"pass", rep.pass},
           {"degrees", degrees},
           {"stopped_at_d", rep.stopped_at_d},
           {"bar_delta", rep.bar_delta},
           {"roots", roots},
           {"root_criterion_agrees", rep.root_criterion_agrees},
           {"all_d_certificate", rep.all_d_certificate}};
    if (rep.all_d_certificate)
        j["note"] = "all-d pass from the plateau heuristic, not a proof";
    if (!certs.empty()) {
        json arr = json::array();
        for (const auto& c : certs)
            arr.push_back(
                {{"d", c.d},
                 {"kind", "numeric certificate (sampled, falsification-oriented)"},
                 {"alpha_hat", c.contraction.max_alpha},
                 {"alpha_bound", c.contraction.bound},
                 {"alpha_pass", c.contraction.pass},
                 {"symmetrization_ok", c.contraction.symmetrization_ok},
                 {"c_hat", c.boundedness.c_hat},
                 {"boundedness_max", c.boundedness.max_product},
                 {"boundedness_bound", c.boundedness.bound},
                 {"boundedness_pass", c.boundedness.pass},
                 {"pass", c.contraction.pass && c.boundedness.pass}});
        j["certificates"] = arr;
    }
    return dump(j);
}

std::string si_json(const TwoSpinSystem& sys, const SIEstimate& est) {
    json j{{"params", system_json(sys)},
           {"eta_hat", est.eta_hat},
           {"eta_hat_kind", "certified lower bound over the field grid"},
           {"grid_points", est.fields.size()},
           {"argmax",
            {{"field_index", est.argmax_field},
             {"field", est.argmax_field_value},
             {"pin_domain", est.argmax_pin_domain},
             {"pin_values", est.argmax_pin_values}}},
           {"flavor_gap", est.flavor_gap},
           {"flavor_mismatches", est.flavor_mismatches}};
    return dump(j);
}

std::string si_csv(const SIEstimate& est) {
    std::ostringstream out;
    if (!est.rows.empty()) {
        // pinnings identified by their bit masks in state-rank convention
        out << "field_point,pin_domain,pin_values,rho\n";
        for (const auto& r : est.rows)
            out << r.field_index << ',' << r.pin_domain << ',' << r.pin_values << ','
                << r.rho << '\n';
        return out.str();
    }
    out << "field_point,rho_max_over_pinnings\n";
    for (size_t i = 0; i < est.field_rho.size(); ++i)
        out << i << ',' << est.field_rho[i] << '\n';
    return out.str();
}

std::string couple_json(const TwoSpinSystem& sys, const CouplingCertificate& cert,
                        const std::vector<NamedCheck>& checks) {
    json j{{"params", system_json(sys)},
           {"r", cert.r},
           {"pass", cert.pass},
           {"worst_vertex", cert.worst_vertex},
           {"expected_ratio", cert.expected_ratio},
           {"checks", checks_json(checks)}};
    if (cert.r_feasible) j["r_feasible"] = *cert.r_feasible;
    return dump(j);
}

std::string limit_json(const TwoSpinSystem& sys, double theta,
                       const std::vector<int>& ks, const std::vector<double>& distances,
                       double threshold) {
    json rows = json::array();
    for (size_t i = 0; i < ks.size(); ++i)
        rows.push_back({{"k", ks[i]}, {"entrywise_distance", distances[i]}});
    json j{{"params", system_json(sys)},
           {"theta", theta},
           {"distances", rows},
           {"threshold", threshold},
           {"monotone", std::is_sorted(distances.rbegin(), distances.rend())}};
    return dump(j);
}

std::string sample_summary_json(const TwoSpinSystem& sys, const DynamicsSpec& spec,
                                uint64_t steps, uint64_t seed, const Trajectory& traj) {
    const int n = sys.graph.n;
    std::vector<double> marginals(n, 0.0);
    for (const auto& c : traj.configs)
        for (int v = 0; v < n; ++v)
            if (c[v] == 1) marginals[v] += 1.0;
    for (auto& m : marginals) m /= static_cast<double>(traj.configs.size());
    long changed = 0;
    for (const auto& rec : traj.records) changed += rec.changed;
    json j{{"params", system_json(sys)},
           {"dynamics", spec.label()},
           {"steps", steps},
           {"seed", seed},
           {"samples", traj.configs.size()},
           {"empirical_marginals", marginals},
           {"changed_steps", changed}};
    return dump(j);
}

std::string trajectory_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "step,spins\n";
    for (size_t i = 0; i < traj.configs.size(); ++i)
        out << traj.steps[i] << ',' << spin_string(traj.configs[i]) << '\n';
    return out.str();
}

std::string saw_json(const SawTree& tree, const TreeInstance& inst) {
    const auto marg = tree_marginals(inst);
    json j{{"nodes", tree.size()},
           {"free_nodes", tree.free_size()},
           {"root_vertex", tree.nodes[0].orig},
           {"root_marginal_plus", marg[0]},
           {"total_influence", tree_total_influence(inst, 0)}};
    return dump(j);
}

std::string verify_json(const std::vector<verify::CheckResult>& results) {
    json arr = json::array();
    bool all_pass = true;
    for (const auto& r : results) {
        all_pass = all_pass && r.pass;
        json e{{"name", r.name},
               {"suite", r.suite},
               {"pass", r.pass},
               {"cases", r.cases},
               {"worst", r.worst},
               {"threshold", r.threshold}};
        if (!r.note.empty()) e["note"] = r.note;
        arr.push_back(e);
    }
    return dump(json{{"checks", arr}, {"pass", all_pass}});
}

std::string sweep_csv(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? ',' : '\n');
    for (const auto& row : rows)
        for (size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? ',' : '\n');
    return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for write: " + tmp);
        f << content;
        if (!f.good()) throw std::runtime_error("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("rename failed: " + path);
}

} // namespace spinlab::report
