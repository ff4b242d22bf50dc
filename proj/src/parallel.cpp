#include "genipm/parallel.hpp"

#include <algorithm>

namespace genipm {

unsigned default_workers(std::size_t bytes_per_task) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    constexpr std::size_t kBudget = std::size_t{3} << 30;  // 3 GB of concurrent scratch
    const std::size_t by_memory =
        bytes_per_task == 0 ? hw : std::max<std::size_t>(1, kBudget / bytes_per_task);
    return static_cast<unsigned>(std::min<std::size_t>(hw, by_memory));
}

}  // namespace genipm
