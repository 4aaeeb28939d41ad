#pragma once

#include <cstddef>

#include "himax/data_matrix.hpp"
#include "himax/statistics.hpp"

namespace himax {

/// Probabilistic sparse-recovery guarantee for an n x p random dictionary with
/// independent centered entries: with probability >= 1 - alpha its mutual
/// coherence satisfies M <= 1 / m_alpha, so every x with fewer than
/// (1 + m_alpha) / 2 nonzeros is the unique sparsest and unique minimum-l1
/// solution of Ax = b.
struct CoherenceCertificate {
    std::size_t n = 0;
    std::size_t p = 0;
    double alpha = 0.0;
    double y_alpha = 0.0;
    /// 4 log p - log2 p
    double alpha_p = 0.0;
    double m_alpha = 0.0;
    double sparsity_threshold = 0.0;
    /// False when sparsity_threshold <= 1, i.e. only x = 0 is covered.
    bool certifies_nonzero = false;
};

/// Throws DomainError for n < 4, p < 2, alpha outside (0, 1), or when no
/// critical value with a positive radicand exists (raise alpha or p).
CoherenceCertificate certify(std::size_t n, std::size_t p, double alpha);

struct CoherenceCheck {
    PairMax coherence;
    bool bound_holds = false;  ///< M^2 <= (y_alpha + alpha_p) / n
};

/// Throws UsageError when the dictionary is not n x p as certified.
CoherenceCheck verify_on_sample(const DataMatrix& dictionary, const CoherenceCertificate& cert);

}  // namespace himax
