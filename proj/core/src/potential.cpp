#include "spinlab/potential.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace spinlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double h_function(double beta, double gamma, double y) {
    if (y == -kInf) return 0.0;
    if (y == kInf) return beta > 0 ? 0.0 : -1.0;
    if (beta == 0) return -1.0 / (1.0 + gamma * std::exp(-y));
    // -(1 - bg) / ((beta e^y + 1)(1 + gamma e^-y)) is overflow-free
    return -(1.0 - beta * gamma) /
           ((beta * std::exp(y) + 1.0) * (1.0 + gamma * std::exp(-y)));
}

double log_tree_recursion(double beta, double gamma, double lambda,
                          const std::vector<double>& ys) {
    double acc = std::log(lambda);
    for (double y : ys) {
        if (y == kInf) {
            acc += beta > 0 ? std::log(beta) : -kInf;
        } else if (y == -kInf) {
            acc += -std::log(gamma);
        } else if (y >= 0) {
            // log(beta e^y + 1) - log(e^y + gamma) = log(beta + e^-y) - log(1 + gamma e^-y)
            acc += std::log(beta + std::exp(-y)) - std::log(1.0 + gamma * std::exp(-y));
        } else {
            acc += std::log(beta * std::exp(y) + 1.0) - std::log(gamma) -
                   std::log1p(std::exp(y) / gamma);
        }
    }
    return acc;
}

ImageInterval image_interval(double beta, double gamma, double lambda, int d) {
    if (d < 0) throw std::invalid_argument("d must be >= 0");
    if (d == 0) {
        const double l = std::log(lambda);
        return {l, l};
    }
    const double hi = std::log(lambda) - d * std::log(gamma);
    if (beta == 0) return {-kInf, hi};
    const double lo = std::log(lambda) + d * std::log(beta);
    if (beta * gamma <= 1.0) return {lo, hi};
    return {hi, lo};
}

double PotentialSpec::phi(double y) const {
    switch (kind) {
        case Kind::SqrtAbsH: return std::sqrt(std::abs(h_function(beta, gamma, y)));
        case Kind::Unit: return 1.0;
        case Kind::Custom: return custom(y);
    }
    return 1.0;
}

double PotentialSpec::h_phi(double y) const {
    const double h = h_function(beta, gamma, y);
    if (h == 0.0) return 0.0;
    return std::abs(h) / phi(y);
}

std::string PotentialSpec::label() const {
    switch (kind) {
        case Kind::SqrtAbsH: return "sqrt(|h|)";
        case Kind::Unit: return "1";
        case Kind::Custom: return "custom";
    }
    return "?";
}

namespace {

// alpha_d(x) = sqrt(f_d(F_d(x)) f_d(x)), the symmetric contraction quantity
double sym_alpha(const UniquenessQuery& q, int d, double x) {
    const double fx = tree_recursion(q, d, x);
    return std::sqrt(decay_function(q, d, fx) * decay_function(q, d, x));
}

double asym_alpha(const UniquenessQuery& q, const std::vector<double>& ys) {
    const double y = log_tree_recursion(q.beta, q.gamma, q.lambda, ys);
    const double hy = std::abs(h_function(q.beta, q.gamma, y));
    double s = 0.0;
    for (double yi : ys)
        s += std::sqrt(hy * std::abs(h_function(q.beta, q.gamma, yi)));
    return s;
}

} // namespace

ContractionCertificate contraction_certificate(const UniquenessQuery& q, int d,
                                               int grid_points, int probes,
                                               uint64_t seed) {
    q.validate();
    ContractionCertificate cert;
    cert.bound = std::sqrt(1.0 - q.delta);
    const double x_hat = fixed_point(q, d);
    cert.precondition_ok = decay_function(q, d, x_hat) <= 1.0 - q.delta + 1e-12;
    if (!cert.precondition_ok) return cert;

    // symmetric scan on a log grid around the fixed point
    const double t_hat = std::log(x_hat);
    const double span = 30.0;
    double best = 0.0, best_t = t_hat;
    for (int i = 0; i < grid_points; ++i) {
        const double t = t_hat - span + 2.0 * span * i / (grid_points - 1);
        const double a = sym_alpha(q, d, std::exp(t));
        if (a > best) {
            best = a;
            best_t = t;
        }
    }
    // golden-section refinement around the grid argmax (alpha_d is unimodal
    // at its interior maximum)
    {
        const double step = 2.0 * span / (grid_points - 1);
        double lo = best_t - step, hi = best_t + step;
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = hi - gr * (hi - lo), e = lo + gr * (hi - lo);
        double fc = sym_alpha(q, d, std::exp(c)), fe = sym_alpha(q, d, std::exp(e));
        while (hi - lo > 1e-10) {
            if (fc < fe) {
                lo = c;
                c = e;
                fc = fe;
                e = lo + gr * (hi - lo);
                fe = sym_alpha(q, d, std::exp(e));
            } else {
                hi = e;
                e = c;
                fe = fc;
                c = hi - gr * (hi - lo);
                fc = sym_alpha(q, d, std::exp(c));
            }
        }
        best = std::max(best, sym_alpha(q, d, std::exp(0.5 * (lo + hi))));
    }
    cert.sym_max = best;

    // random asymmetric probes, including extended-real endpoints
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double asym = 0.0;
    for (int p = 0; p < probes; ++p) {
        std::vector<double> ys(d);
        for (int i = 0; i < d; ++i) {
            const double u = unif(eng);
            if (u < 0.05)
                ys[i] = -kInf;
            else if (u < 0.10)
                ys[i] = kInf;
            else
                ys[i] = t_hat + (2.0 * unif(eng) - 1.0) * span;
        }
        asym = std::max(asym, asym_alpha(q, ys));
    }
    cert.asym_max = asym;
    cert.symmetrization_ok = asym <= cert.sym_max + 1e-9;
    cert.max_alpha = std::max(cert.sym_max, cert.asym_max);
    cert.pass = cert.max_alpha <= cert.bound + 1e-9;
    return cert;
}

double max_abs_h_on_image(double beta, double gamma, double lambda, int d) {
    const ImageInterval j = image_interval(beta, gamma, lambda, d);
    if (beta == 0) {
        // |h| increasing in y; maximum at the right endpoint
        return std::abs(h_function(beta, gamma, j.hi));
    }
    const double peak = 0.5 * (std::log(gamma) - std::log(beta));
    const double y = std::min(std::max(peak, j.lo), j.hi);
    return std::abs(h_function(beta, gamma, y));
}

BoundednessCertificate boundedness_certificate(const UniquenessQuery& q, int d1, int d2) {
    q.validate();
    if (d1 < 0 || d2 < 0) throw std::invalid_argument("degrees must be >= 0");
    BoundednessCertificate cert;
    cert.max_product = std::sqrt(max_abs_h_on_image(q.beta, q.gamma, q.lambda, d1) *
                                 max_abs_h_on_image(q.beta, q.gamma, q.lambda, d2));
    cert.bound = 72.0 / (d1 + d2 + 2.0);
    cert.c_hat = cert.max_product * (d1 + d2 + 2.0) / 2.0;
    cert.pass = cert.max_product <= cert.bound + 1e-9;
    return cert;
}

bool field_envelope_holds(const UniquenessQuery& q, double lambda_v, int d, double tol) {
    return max_abs_h_on_image(q.beta, q.gamma, lambda_v, d) <=
           max_abs_h_on_image(q.beta, q.gamma, q.lambda, d) + tol;
}

} // namespace spinlab
