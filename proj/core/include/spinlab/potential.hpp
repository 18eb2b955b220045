#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spinlab/uniqueness.hpp"

namespace spinlab {

/// Log-ratio derivative h(y) = -(1 - beta gamma) e^y / ((beta e^y + 1)(e^y + gamma))
/// on the extended reals, with exact endpoint values: h(-inf) = 0 always,
/// h(+inf) = 0 for beta > 0 and -1 for beta = 0.
double h_function(double beta, double gamma, double y);

/// Log-space tree recursion H_{lambda,d}(y_1..y_d) = log lambda +
/// sum log((beta e^y + 1)/(e^y + gamma)), exact at +-inf.
double log_tree_recursion(double beta, double gamma, double lambda,
                          const std::vector<double>& ys);

/// Image interval J_{lambda,d} of H: [log(lambda beta^d), log(lambda/gamma^d)]
/// for beta > 0, [-inf, log(lambda/gamma^d)] for beta = 0.
struct ImageInterval {
    double lo, hi;
};
ImageInterval image_interval(double beta, double gamma, double lambda, int d);

/// Potential function on log-ratio space; shipped evaluators are
/// phi = sqrt(|h|) (the default) and phi = 1.
struct PotentialSpec {
    double beta = 0.0;
    double gamma = 1.0;
    enum class Kind { SqrtAbsH, Unit, Custom } kind = Kind::SqrtAbsH;
    std::function<double(double)> custom; // used when kind == Custom

    double phi(double y) const;
    /// h^phi(y) = |h(y)| / phi(y), 0 where h = 0.
    double h_phi(double y) const;
    std::string label() const;
};

struct ContractionCertificate {
    bool precondition_ok = false; // (beta,gamma,lambda) d-unique with gap delta
    double max_alpha = 0.0;       // max over symmetric scan and random probes
    double sym_max = 0.0;
    double asym_max = 0.0;
    double bound = 0.0;           // sqrt(1 - delta)
    bool pass = false;
    bool symmetrization_ok = false; // asym_max <= sym_max + 1e-9
};

/// Numeric certificate (sampled, falsification-oriented) for the contraction
/// sum_i sqrt(|h(y)| |h(y_i)|) <= sqrt(1-delta): maximizes the symmetric
/// alpha_d(x) = sqrt(f_d(F_d(x)) f_d(x)) on a log grid refined by
/// golden-section, plus random asymmetric probes.
ContractionCertificate contraction_certificate(const UniquenessQuery& q, int d,
                                               int grid_points = 2048,
                                               int probes = 1000,
                                               uint64_t seed = 2024);

struct BoundednessCertificate {
    double max_product = 0.0; // max sqrt(|h(y1)||h(y2)|) over J_{d1} x J_{d2}
    double bound = 0.0;       // 72 / (d1 + d2 + 2)
    double c_hat = 0.0;       // max_product * (d1 + d2 + 2) / 2
    bool pass = false;
};

/// Boundedness of the sqrt(|h|) potential over the image intervals. |h| is
/// unimodal with peak at y* = log(gamma/beta)/2, so the maximum over an
/// interval is |h| at the clamped peak; a grid cross-check lives in tests.
BoundednessCertificate boundedness_certificate(const UniquenessQuery& q, int d1, int d2);

/// max_{y in J_{lambda,d}} |h(y)|.
double max_abs_h_on_image(double beta, double gamma, double lambda, int d);

/// Monotone-envelope check for per-vertex fields biased along the good
/// direction: max_{J_{lambda_v,d}} |h| <= max_{J_{lambda,d}} |h| + tol.
bool field_envelope_holds(const UniquenessQuery& q, double lambda_v, int d,
                          double tol = 1e-12);

} // namespace spinlab
