#include "e6crit/divisor_table.hpp"

#include <algorithm>
#include <mutex>

namespace e6crit {

DivisorTable::DivisorTable(std::size_t n)
    : sigma1_(n + 1, 0.0), sigma3_(n + 1, 0.0), sigma5_(n + 1, 0.0) {
    for (std::size_t d = 1; d <= n; ++d) {
        const double dd = static_cast<double>(d);
        const double d3 = dd * dd * dd;
        const double d5 = d3 * dd * dd;
        for (std::size_t m = d; m <= n; m += d) {
            sigma1_[m] += dd;
            sigma3_[m] += d3;
            sigma5_[m] += d5;
        }
    }
}

std::shared_ptr<const DivisorTable> DivisorTable::shared(std::size_t n) {
    static std::mutex mutex;
    static std::shared_ptr<const DivisorTable> table;
    std::lock_guard<std::mutex> lock(mutex);
    if (!table || table->size() < n) {
        const std::size_t grown = std::max<std::size_t>(n, table ? 2 * table->size() : 2048);
        table = std::make_shared<const DivisorTable>(grown);
    }
    return table;
}

}  // namespace e6crit
