#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace himax {

/// Philox4x32-10 block function (Salmon et al., SC'11). Pure: output depends
/// only on (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// SplitMix64 finalizer; used to fold stream labels into a key.
std::uint64_t splitmix64_mix(std::uint64_t z);

/// Folds a seed and a sequence of labels (cell coordinates etc.) into a key.
std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> labels);

/// Sequential view of one Philox stream. Streams with different (key, stream_id)
/// never share a counter block, so draws are independent of evaluation order.
class RandomStream {
  public:
    RandomStream(std::uint64_t key, std::uint64_t stream_id);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard normal by Box-Muller (pairs cached).
    double normal();
    /// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 via the U^{1/shape} boost.
    double gamma(double shape);
    /// chi2(dof) = 2 Gamma(dof / 2).
    double chi_square(double dof);
    /// Student t(dof) = Z / sqrt(chi2(dof) / dof).
    double student_t(double dof);

  private:
    void refill();

    PhiloxKey key_;
    PhiloxCounter counter_;
    PhiloxCounter block_{};
    int used_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

}  // namespace himax
