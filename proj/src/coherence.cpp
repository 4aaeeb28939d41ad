#include "himax/coherence.hpp"

#include <cmath>
#include <string>

#include "himax/approximations.hpp"
#include "himax/errors.hpp"

namespace himax {

CoherenceCertificate certify(std::size_t n, std::size_t p, double alpha) {
    if (n < 4 || p < 2) {
        throw DomainError("certify: need n >= 4 and p >= 2");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DomainError("certify: alpha must lie in (0, 1)");
    }
    const ApproxParams params(p, n, 1);
    CoherenceCertificate cert;
    cert.n = n;
    cert.p = p;
    cert.alpha = alpha;
    cert.alpha_p = params.alpha_p();
    try {
        cert.y_alpha = critical_value(params, ApproxKind::Intermediate, alpha);
    } catch (const BracketError& e) {
        throw DomainError("certify: no feasible critical value for p = " + std::to_string(p) +
                          ", alpha = " + std::to_string(alpha) +
                          "; use a larger alpha or p (" + e.what() + ")");
    }
    const double radicand = cert.y_alpha + cert.alpha_p;
    if (!(radicand > 0.0)) {
        throw DomainError("certify: y_alpha + alpha_p = " + std::to_string(radicand) +
                          " is not positive; use a larger alpha or p");
    }
    cert.m_alpha = std::sqrt(static_cast<double>(n) / radicand);
    cert.sparsity_threshold = 0.5 * (1.0 + cert.m_alpha);
    cert.certifies_nonzero = cert.sparsity_threshold > 1.0;
    return cert;
}

CoherenceCheck verify_on_sample(const DataMatrix& dictionary, const CoherenceCertificate& cert) {
    if (dictionary.rows() != cert.n || dictionary.cols() != cert.p) {
        throw UsageError("verify_on_sample: dictionary is " + std::to_string(dictionary.rows()) +
                         "x" + std::to_string(dictionary.cols()) + " but the certificate is for " +
                         std::to_string(cert.n) + "x" + std::to_string(cert.p));
    }
    CoherenceCheck out;
    out.coherence = mutual_coherence(dictionary);
    const double m = out.coherence.value;
    out.bound_holds = m * m <= (cert.y_alpha + cert.alpha_p) / static_cast<double>(cert.n);
    return out;
}

}  // namespace himax
