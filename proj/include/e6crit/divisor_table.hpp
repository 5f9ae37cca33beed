#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace e6crit {

/// Divisor power sums sigma_1, sigma_3, sigma_5 for 1 <= n <= size().
///
/// Entries are stored as doubles; sigma_5(n) exceeds 2^53 for n > 1400 or so
/// and is then correct to a relative ulp, which is all the series need.
class DivisorTable {
public:
    explicit DivisorTable(std::size_t n);

    std::size_t size() const noexcept { return sigma1_.size() - 1; }
    double sigma1(std::size_t n) const { return sigma1_[n]; }
    double sigma3(std::size_t n) const { return sigma3_[n]; }
    double sigma5(std::size_t n) const { return sigma5_[n]; }

    /// Shared table covering at least n entries. Built lazily, grown under a lock.
    static std::shared_ptr<const DivisorTable> shared(std::size_t n);

private:
    std::vector<double> sigma1_, sigma3_, sigma5_;
};

}  // namespace e6crit
